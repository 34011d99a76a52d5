#pragma once

#include <stdexcept>
#include <string>

namespace artin {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Two values from different prime fields were combined.
class modulus_mismatch : public error {
public:
    modulus_mismatch(unsigned long left, unsigned long right)
        : error("modulus mismatch: F_" + std::to_string(left) + " vs F_" + std::to_string(right)) {}
};

/// Matrix or vector shapes are incompatible for the requested operation.
class dimension_mismatch : public error {
public:
    explicit dimension_mismatch(const std::string& what) : error("dimension mismatch: " + what) {}
};

/// Reason codes for rejected algebra / module input.
enum class validation_code {
    not_prime,
    not_commutative,
    not_associative,
    bad_unit,
    not_local,
    not_finite_dimensional,
    unit_in_ideal,
    invalid_action,
    envelope_not_injective,
    bad_input,
};

inline const char* to_string(validation_code c) {
    switch (c) {
        case validation_code::not_prime: return "NotPrime";
        case validation_code::not_commutative: return "NotCommutative";
        case validation_code::not_associative: return "NotAssociative";
        case validation_code::bad_unit: return "BadUnit";
        case validation_code::not_local: return "NotLocal";
        case validation_code::not_finite_dimensional: return "NotFiniteDimensional";
        case validation_code::unit_in_ideal: return "UnitInIdeal";
        case validation_code::invalid_action: return "InvalidAction";
        case validation_code::envelope_not_injective: return "EnvelopeNotInjective";
        case validation_code::bad_input: return "BadInput";
    }
    return "Unknown";
}

/// Structural validation failed (bad structure constants, non-local ring, ...).
class validation_error : public error {
public:
    validation_error(validation_code code, const std::string& what)
        : error(std::string(to_string(code)) + ": " + what), code_(code) {}

    validation_code code() const { return code_; }

private:
    validation_code code_;
};

/// A bounded search ended without a certificate either way.
class budget_exceeded : public error {
public:
    explicit budget_exceeded(const std::string& what) : error("BudgetExceeded: " + what) {}
};

/// Cosyzygy of an indecomposable class split into several classes; only
/// possible over non-Gorenstein rings, where callers should fall back to
/// the syzygy-recurrence machinery.
class not_single_class : public error {
public:
    not_single_class(int class_id, std::size_t parts)
        : error("NotSingleClass: cosyzygy of class " + std::to_string(class_id) + " decomposes into " +
                std::to_string(parts) + " summands"),
          class_id_(class_id), parts_(parts) {}

    int class_id() const { return class_id_; }
    std::size_t parts() const { return parts_; }

private:
    int class_id_;
    std::size_t parts_;
};

} // namespace artin
