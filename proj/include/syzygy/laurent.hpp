#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "syzygy/errors.hpp"

namespace artin {

/// Integer Laurent polynomial in one variable t. Zero coefficients are never
/// stored, so two equal polynomials compare equal term by term.
class LaurentPoly {
public:
    LaurentPoly() = default;

    static LaurentPoly zero() { return {}; }

    static LaurentPoly constant(long long c) { return monomial(0, c); }

    static LaurentPoly one() { return constant(1); }

    static LaurentPoly monomial(int exponent, long long coeff) {
        LaurentPoly r;
        if (coeff != 0) r.terms_[exponent] = coeff;
        return r;
    }

    /// t^n - 1, the annihilator shape produced by finite orbits.
    static LaurentPoly t_power_minus_one(unsigned n) {
        LaurentPoly r = monomial(static_cast<int>(n), 1);
        return r - one();
    }

    const std::map<int, long long>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    long long coeff(int exponent) const {
        auto it = terms_.find(exponent);
        return it == terms_.end() ? 0 : it->second;
    }

    int min_exponent() const {
        if (is_zero()) throw error("zero polynomial has no exponents");
        return terms_.begin()->first;
    }

    int max_exponent() const {
        if (is_zero()) throw error("zero polynomial has no exponents");
        return terms_.rbegin()->first;
    }

    LaurentPoly operator+(const LaurentPoly& o) const {
        LaurentPoly r = *this;
        for (auto& [e, c] : o.terms_) r.add_term(e, c);
        return r;
    }

    LaurentPoly operator-(const LaurentPoly& o) const {
        LaurentPoly r = *this;
        for (auto& [e, c] : o.terms_) r.add_term(e, -c);
        return r;
    }

    LaurentPoly operator-() const {
        LaurentPoly r;
        for (auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }

    LaurentPoly operator*(const LaurentPoly& o) const {
        LaurentPoly r;
        for (auto& [e1, c1] : terms_)
            for (auto& [e2, c2] : o.terms_) r.add_term(e1 + e2, c1 * c2);
        return r;
    }

    LaurentPoly scaled(long long c) const {
        LaurentPoly r;
        if (c == 0) return r;
        for (auto& [e, k] : terms_) r.terms_[e] = k * c;
        return r;
    }

    /// Multiply by t^k.
    LaurentPoly shifted(int k) const {
        LaurentPoly r;
        for (auto& [e, c] : terms_) r.terms_[e + k] = c;
        return r;
    }

    bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    /// Exact division over Z: returns q with divisor * q == dividend, or
    /// nullopt when no such integer Laurent polynomial exists. When the
    /// division is exact every leading-coefficient step divides exactly, so
    /// a failed step already certifies inexactness.
    static std::optional<LaurentPoly> try_divide(const LaurentPoly& dividend, const LaurentPoly& divisor) {
        if (divisor.is_zero()) return std::nullopt;
        if (dividend.is_zero()) return LaurentPoly::zero();
        int shift = dividend.min_exponent() - divisor.min_exponent();
        // Slide both so the lowest exponent is 0; units t^k do not affect divisibility.
        LaurentPoly rem = dividend.shifted(-dividend.min_exponent());
        LaurentPoly div = divisor.shifted(-divisor.min_exponent());
        long long lead = div.terms_.rbegin()->second;
        int lead_deg = div.max_exponent();
        LaurentPoly quot;
        while (!rem.is_zero() && rem.max_exponent() >= lead_deg) {
            long long c = rem.terms_.rbegin()->second;
            if (c % lead != 0) return std::nullopt;
            LaurentPoly step = monomial(rem.max_exponent() - lead_deg, c / lead);
            quot = quot + step;
            rem = rem - div * step;
        }
        if (!rem.is_zero()) return std::nullopt;
        return quot.shifted(shift);
    }

    static bool divides(const LaurentPoly& divisor, const LaurentPoly& dividend) {
        return try_divide(dividend, divisor).has_value();
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::ostringstream out;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            long long c = it->second;
            int e = it->first;
            if (first) {
                if (c < 0) out << "-";
            } else {
                out << (c < 0 ? " - " : " + ");
            }
            long long a = c < 0 ? -c : c;
            if (a != 1 || e == 0) out << a;
            if (e != 0) {
                if (a != 1) out << "*";
                out << "t";
                if (e != 1) out << "^" << e;
            }
            first = false;
        }
        return out.str();
    }

private:
    void add_term(int e, long long c) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (c != 0) terms_[e] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::map<int, long long> terms_;
};

namespace detail {

inline long long narrow_i128(__int128 v, const char* what) {
    if (v > static_cast<__int128>(INT64_MAX) || v < static_cast<__int128>(INT64_MIN))
        throw error(std::string("integer overflow in ") + what);
    return static_cast<long long>(v);
}

} // namespace detail

/// Coefficients of det(xI - T) for an integer matrix T, leading coefficient
/// first (so result[0] == 1). Uses the division-free Samuelson-Berkowitz
/// recursion on leading principal blocks; all arithmetic is exact.
inline std::vector<long long> char_poly(const std::vector<std::vector<long long>>& t) {
    std::size_t n = t.size();
    for (auto& row : t)
        if (row.size() != n) throw dimension_mismatch("char_poly needs a square matrix");
    std::vector<long long> cv{1};
    if (n == 0) return cv;
    cv = {1, -t[0][0]};
    for (std::size_t r = 1; r < n; ++r) {
        // w[j] = Row_r . M^j . Col_r over the leading r x r block M.
        std::vector<__int128> s(r);
        for (std::size_t i = 0; i < r; ++i) s[i] = t[i][r];
        std::vector<long long> w(r);
        for (std::size_t j = 0; j < r; ++j) {
            __int128 acc = 0;
            for (std::size_t i = 0; i < r; ++i) acc += static_cast<__int128>(t[r][i]) * s[i];
            w[j] = detail::narrow_i128(acc, "char_poly");
            if (j + 1 < r) {
                std::vector<__int128> next(r, 0);
                for (std::size_t i = 0; i < r; ++i) {
                    __int128 acc2 = 0;
                    for (std::size_t k = 0; k < r; ++k) acc2 += static_cast<__int128>(t[i][k]) * s[k];
                    next[i] = acc2;
                    detail::narrow_i128(acc2, "char_poly");
                }
                s = std::move(next);
            }
        }
        long long a = t[r][r];
        std::vector<long long> next(r + 2, 0);
        for (std::size_t i = 0; i <= r; ++i) {
            __int128 v = cv[i];
            if (i >= 1) v = static_cast<__int128>(cv[i]) - static_cast<__int128>(a) * cv[i - 1];
            // correction from Row_r adj(xI - M) Col_r at this degree
            if (i >= 2) {
                __int128 corr = 0;
                for (std::size_t k = 0; k + 2 <= i; ++k) corr += static_cast<__int128>(cv[k]) * w[i - 2 - k];
                v -= corr;
            }
            next[i] = detail::narrow_i128(v, "char_poly");
        }
        {
            __int128 v = -static_cast<__int128>(a) * cv[r];
            __int128 corr = 0;
            for (std::size_t k = 0; k + 1 <= r; ++k) corr += static_cast<__int128>(cv[k]) * w[r - 1 - k];
            next[r + 1] = detail::narrow_i128(v - corr, "char_poly");
        }
        cv = std::move(next);
    }
    return cv;
}

/// det(I - t T) as a Laurent polynomial. Substituting x = 1/t into
/// det(xI - T) and clearing t^n sends the coefficient of x^{n-i} to t^i,
/// so the result is sum_i cv[i] t^i with constant term 1.
inline LaurentPoly det_identity_minus_t(const std::vector<std::vector<long long>>& t) {
    std::vector<long long> cv = char_poly(t);
    LaurentPoly r;
    for (std::size_t i = 0; i < cv.size(); ++i) r = r + LaurentPoly::monomial(static_cast<int>(i), cv[i]);
    return r;
}

} // namespace artin
