#pragma once

#include <cstdint>

#include "syzygy/errors.hpp"

namespace artin {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

inline std::uint32_t mod_add(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    std::uint32_t s = a + b;
    return s >= p ? s - p : s;
}

inline std::uint32_t mod_sub(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return a >= b ? a - b : a + p - b;
}

inline std::uint32_t mod_mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p);
}

inline std::uint32_t mod_neg(std::uint32_t a, std::uint32_t p) { return a == 0 ? 0 : p - a; }

/// Canonical representative in [0, p) of an arbitrary signed integer.
inline std::uint32_t mod_reduce(long long v, std::uint32_t p) {
    long long r = v % static_cast<long long>(p);
    if (r < 0) r += p;
    return static_cast<std::uint32_t>(r);
}

inline std::uint32_t mod_pow(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
    std::uint64_t base = a % p, acc = 1;
    while (e) {
        if (e & 1) acc = acc * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(acc);
}

/// Inverse mod p for a != 0; p prime so Fermat suffices.
inline std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
    if (a % p == 0) throw error("division by zero in F_" + std::to_string(p));
    return mod_pow(a % p, p - 2, p);
}

/// Element of the prime field F_p with a canonical representative.
class Fp {
public:
    Fp() : value_(0), p_(2) {}
    Fp(long long value, std::uint32_t p) : value_(mod_reduce(value, check(p))), p_(p) {}

    std::uint32_t value() const { return value_; }
    std::uint32_t modulus() const { return p_; }
    bool is_zero() const { return value_ == 0; }

    Fp operator+(const Fp& o) const { return make(mod_add(value_, matched(o), p_)); }
    Fp operator-(const Fp& o) const { return make(mod_sub(value_, matched(o), p_)); }
    Fp operator*(const Fp& o) const { return make(mod_mul(value_, matched(o), p_)); }
    Fp operator-() const { return make(mod_neg(value_, p_)); }
    Fp inverse() const { return make(mod_inverse(value_, p_)); }
    Fp operator/(const Fp& o) const { return *this * o.inverse(); }

    bool operator==(const Fp& o) const { return p_ == o.p_ && value_ == o.value_; }
    bool operator!=(const Fp& o) const { return !(*this == o); }

private:
    static std::uint32_t check(std::uint32_t p) {
        if (!is_prime(p)) throw validation_error(validation_code::not_prime, std::to_string(p) + " is not prime");
        return p;
    }
    Fp make(std::uint32_t v) const {
        Fp r;
        r.value_ = v;
        r.p_ = p_;
        return r;
    }
    std::uint32_t matched(const Fp& o) const {
        if (p_ != o.p_) throw modulus_mismatch(p_, o.p_);
        return o.value_;
    }

    std::uint32_t value_;
    std::uint32_t p_;
};

} // namespace artin
