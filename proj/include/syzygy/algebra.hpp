#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "syzygy/echelon.hpp"
#include "syzygy/errors.hpp"
#include "syzygy/matrix.hpp"
#include "syzygy/poly_parse.hpp"

namespace artin {

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Derived data of a local algebra: the maximal ideal and its powers, the
/// socle, and the classification flags the rest of the library branches on.
struct LocalProfile {
    std::vector<std::uint32_t> residues; ///< scalar residue of each basis element in R/m
    Matrix radical;                      ///< rows: basis of m
    Matrix generators;                   ///< rows: lifts of a basis of m/m^2 (algebra generators)
    Matrix socle;                        ///< rows: basis of ann(m)
    std::vector<std::size_t> radical_power_dims; ///< dim m^i for i = 1.. (last entry 0)
    std::size_t embedding_dim = 0;
    std::size_t socle_dim = 0;
    std::size_t loewy_length = 0; ///< least l with m^l = 0
    bool is_field = false;
    bool is_gorenstein = false;    ///< socle dimension one
    bool is_hypersurface = false;  ///< embedding dimension at most one
};

/// Finite-dimensional commutative local algebra over F_p, given by structure
/// constants on a fixed basis. Construction validates commutativity,
/// associativity, the unit, and locality (the nilpotents must form an ideal
/// of codimension one), so every live Algebra is local with residue field F_p.
class Algebra {
public:
    /// c is indexed as c[((i*n)+j)*n + k]: e_i * e_j = sum_k c[i][j][k] e_k.
    static AlgebraPtr from_structure_constants(std::uint32_t p, std::vector<std::string> basis_names,
                                               std::vector<std::uint32_t> c, Vec unit) {
        auto a = std::shared_ptr<Algebra>(new Algebra(p, std::move(basis_names), std::move(c), std::move(unit)));
        a->validate();
        a->compute_profile();
        a->named_elements_["1"] = a->unit_;
        for (std::size_t i = 0; i < a->dim_; ++i) {
            Vec e(a->dim_, 0);
            e[i] = 1;
            a->named_elements_.emplace(a->names_[i], e);
        }
        return a;
    }

    /// F_p[vars]/(relations), computed by closing the relation span under
    /// multiplication by each variable inside a capped monomial algebra.
    /// Caps grow until a power of every variable is detected in the closure
    /// and the quotient dimension is stable under doubling the caps; inputs
    /// whose ideal contains no power of some variable are rejected.
    static AlgebraPtr polynomial_quotient(std::uint32_t p, const std::vector<std::string>& variables,
                                          const std::vector<std::string>& relations);

    std::uint32_t modulus() const { return p_; }
    std::size_t dim() const { return dim_; }
    const std::vector<std::string>& basis_names() const { return names_; }
    const Vec& unit() const { return unit_; }
    const LocalProfile& profile() const { return profile_; }

    /// Left multiplication by the basis element e_i on the regular module.
    const Matrix& left_mul(std::size_t i) const { return left_mul_[i]; }

    std::uint32_t structure_constant(std::size_t i, std::size_t j, std::size_t k) const {
        return c_[(i * dim_ + j) * dim_ + k];
    }

    Vec multiply(const Vec& a, const Vec& b) const {
        Vec r(dim_, 0);
        for (std::size_t i = 0; i < dim_; ++i) {
            if (!a[i]) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                if (!b[j]) continue;
                std::uint64_t f = static_cast<std::uint64_t>(a[i]) * b[j] % p_;
                const std::uint32_t* ck = &c_[(i * dim_ + j) * dim_];
                for (std::size_t k = 0; k < dim_; ++k)
                    r[k] = static_cast<std::uint32_t>((r[k] + f * ck[k]) % p_);
            }
        }
        return r;
    }

    /// Multiplication-by-v matrix on the regular module.
    Matrix element_action(const Vec& v) const {
        Matrix m(dim_, dim_, p_);
        for (std::size_t i = 0; i < dim_; ++i) {
            if (!v[i]) continue;
            m = m + left_mul_[i].scaled(v[i]);
        }
        return m;
    }

    /// Image of an element in the residue field R/m = F_p.
    std::uint32_t residue_of(const Vec& v) const {
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < dim_; ++i) acc += static_cast<std::uint64_t>(v[i]) * profile_.residues[i] % p_;
        return static_cast<std::uint32_t>(acc % p_);
    }

    bool is_unit(const Vec& v) const { return residue_of(v) != 0; }

    /// Evaluates a polynomial expression in the named elements ("1", the
    /// basis names, and for polynomial quotients the original variables).
    Vec element(const std::string& expr) const {
        Vec out(dim_, 0);
        for (const PolyTerm& term : parse_poly_terms(expr)) {
            Vec acc = unit_;
            for (auto& [name, exp] : term.powers) {
                auto it = named_elements_.find(name);
                if (it == named_elements_.end())
                    throw validation_error(validation_code::bad_input, "unknown element name \"" + name + "\"");
                for (unsigned k = 0; k < exp; ++k) acc = multiply(acc, it->second);
            }
            std::uint32_t coeff = mod_reduce(term.coeff, p_);
            for (std::size_t i = 0; i < dim_; ++i)
                out[i] = static_cast<std::uint32_t>((out[i] + static_cast<std::uint64_t>(coeff) * acc[i]) % p_);
        }
        return out;
    }

    const std::map<std::string, Vec>& named_elements() const { return named_elements_; }

private:
    Algebra(std::uint32_t p, std::vector<std::string> names, std::vector<std::uint32_t> c, Vec unit)
        : p_(p), dim_(names.size()), names_(std::move(names)), c_(std::move(c)), unit_(std::move(unit)) {
        if (!is_prime(p_)) throw validation_error(validation_code::not_prime, std::to_string(p_) + " is not prime");
        if (dim_ == 0) throw validation_error(validation_code::bad_input, "algebra must have positive dimension");
        if (c_.size() != dim_ * dim_ * dim_)
            throw validation_error(validation_code::bad_input, "structure constant tensor has wrong size");
        if (unit_.size() != dim_) throw validation_error(validation_code::bad_unit, "unit vector has wrong length");
        for (auto& x : c_) x %= p_;
        for (auto& x : unit_) x %= p_;
        left_mul_.reserve(dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            Matrix m(dim_, dim_, p_);
            for (std::size_t j = 0; j < dim_; ++j)
                for (std::size_t k = 0; k < dim_; ++k) m(k, j) = structure_constant(i, j, k);
            left_mul_.push_back(std::move(m));
        }
    }

    void validate() const {
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = i + 1; j < dim_; ++j)
                for (std::size_t k = 0; k < dim_; ++k)
                    if (structure_constant(i, j, k) != structure_constant(j, i, k))
                        throw validation_error(validation_code::not_commutative,
                                               "e_" + names_[i] + " * e_" + names_[j] + " != e_" + names_[j] +
                                                   " * e_" + names_[i]);
        if (!element_action(unit_).is_identity())
            throw validation_error(validation_code::bad_unit, "unit does not act as the identity");
        // L_i L_j must equal L_{e_i e_j} = sum_k c[i][j][k] L_k on all pairs.
        for (std::size_t i = 0; i < dim_; ++i) {
            for (std::size_t j = 0; j < dim_; ++j) {
                Matrix lhs = left_mul_[i] * left_mul_[j];
                Matrix rhs(dim_, dim_, p_);
                for (std::size_t k = 0; k < dim_; ++k) {
                    std::uint32_t f = structure_constant(i, j, k);
                    if (f) rhs = rhs + left_mul_[k].scaled(f);
                }
                if (lhs != rhs)
                    throw validation_error(validation_code::not_associative,
                                           "(e_" + names_[i] + " e_" + names_[j] + ") e_k != e_" + names_[i] +
                                               " (e_" + names_[j] + " e_k)");
            }
        }
    }

    bool is_nilpotent(const Matrix& m) const {
        std::uint64_t e = 1;
        Matrix acc = m;
        while (e < dim_) {
            if (acc.is_zero()) return true;
            acc = acc * acc;
            e *= 2;
        }
        return acc.is_zero();
    }

    /// In a local algebra with residue field F_p every basis element is a
    /// scalar plus a nilpotent, so L_i has characteristic polynomial
    /// (x - lambda_i)^n for a unique lambda_i in F_p. Failing to find such a
    /// scalar for some basis element certifies non-locality.
    std::uint32_t scalar_residue(std::size_t i) const {
        const Matrix& l = left_mul_[i];
        // p does not divide n: the unique candidate is trace/n.
        if (dim_ % p_ != 0) {
            std::uint64_t tr = 0;
            for (std::size_t k = 0; k < dim_; ++k) tr += l(k, k);
            std::uint32_t lambda =
                mod_mul(static_cast<std::uint32_t>(tr % p_), mod_inverse(static_cast<std::uint32_t>(dim_ % p_), p_), p_);
            Matrix shifted = l - Matrix::identity(dim_, p_).scaled(lambda);
            if (!is_nilpotent(shifted))
                throw validation_error(validation_code::not_local,
                                       "basis element " + names_[i] + " is not scalar-plus-nilpotent");
            return lambda;
        }
        for (std::uint32_t lambda = 0; lambda < p_; ++lambda) {
            Matrix shifted = l - Matrix::identity(dim_, p_).scaled(lambda);
            if (is_nilpotent(shifted)) return lambda;
        }
        throw validation_error(validation_code::not_local,
                               "basis element " + names_[i] + " is not scalar-plus-nilpotent");
    }

    void compute_profile() {
        LocalProfile& pr = profile_;
        pr.residues.resize(dim_);
        for (std::size_t i = 0; i < dim_; ++i) pr.residues[i] = scalar_residue(i);
        {
            // the unit must have residue 1, otherwise the residue functional is degenerate
            std::uint64_t acc = 0;
            for (std::size_t i = 0; i < dim_; ++i) acc += static_cast<std::uint64_t>(unit_[i]) * pr.residues[i] % p_;
            if (acc % p_ != 1)
                throw validation_error(validation_code::not_local, "residue functional does not send 1 to 1");
        }

        // m is spanned by e_i - lambda_i * 1; each spanning vector is nilpotent
        // and sums of nilpotents are nilpotent in a commutative ring, so this
        // span is exactly the nilradical.
        EchelonBasis rad(dim_, p_);
        for (std::size_t i = 0; i < dim_; ++i) {
            Vec v(dim_, 0);
            v[i] = 1;
            std::uint32_t lambda = pr.residues[i];
            for (std::size_t k = 0; k < dim_; ++k)
                v[k] = mod_sub(v[k], mod_mul(lambda, unit_[k], p_), p_);
            rad.insert(std::move(v));
        }
        if (rad.rank() + 1 != dim_)
            throw validation_error(validation_code::not_local, "nilpotents do not form a codimension-1 subspace");
        pr.radical = rad.basis_matrix();
        pr.is_field = rad.rank() == 0;

        // powers of m until they vanish
        std::vector<Matrix> power_bases;
        power_bases.push_back(pr.radical);
        pr.radical_power_dims.push_back(pr.radical.rows());
        std::vector<Matrix> radical_actions;
        for (std::size_t r = 0; r < pr.radical.rows(); ++r) radical_actions.push_back(element_action(pr.radical.row(r)));
        while (power_bases.back().rows() > 0) {
            const Matrix& prev = power_bases.back();
            EchelonBasis next(dim_, p_);
            for (const auto& act : radical_actions)
                for (std::size_t r = 0; r < prev.rows(); ++r) next.insert(act.mul_vec(prev.row(r)));
            // Nakayama: the chain strictly decreases until it hits zero
            if (next.rank() >= prev.rows())
                throw validation_error(validation_code::not_local, "radical is not nilpotent");
            power_bases.push_back(next.basis_matrix());
            pr.radical_power_dims.push_back(next.rank());
        }
        pr.loewy_length = pr.radical_power_dims.size(); // m^l = 0 at l = dims.size() since dims[i] = dim m^{i+1}

        // lifts of a basis of m/m^2
        const Matrix& sq = power_bases.size() > 1 ? power_bases[1] : Matrix(0, dim_, p_);
        EchelonBasis mod_sq(dim_, p_);
        for (std::size_t r = 0; r < sq.rows(); ++r) mod_sq.insert(sq.row(r));
        std::vector<Vec> gens;
        for (std::size_t r = 0; r < pr.radical.rows(); ++r)
            if (mod_sq.insert(pr.radical.row(r))) gens.push_back(pr.radical.row(r));
        pr.generators = Matrix::from_rows(gens, dim_, p_);
        pr.embedding_dim = gens.size();

        // socle = common kernel of multiplication by the ideal generators
        if (pr.generators.rows() == 0) {
            pr.socle = Matrix::identity(dim_, p_);
        } else {
            Matrix stack(0, dim_, p_);
            for (std::size_t r = 0; r < pr.generators.rows(); ++r)
                stack = Matrix::vstack(stack, element_action(pr.generators.row(r)));
            pr.socle = stack.kernel_basis().transpose().row_space_basis();
        }
        pr.socle_dim = pr.socle.rows();
        pr.is_gorenstein = pr.socle_dim == 1;
        pr.is_hypersurface = pr.embedding_dim <= 1;
    }

    std::uint32_t p_;
    std::size_t dim_;
    std::vector<std::string> names_;
    std::vector<std::uint32_t> c_;
    Vec unit_;
    std::vector<Matrix> left_mul_;
    LocalProfile profile_;
    std::map<std::string, Vec> named_elements_;
};

/// Spec-level constructor names.
inline AlgebraPtr build_algebra(std::uint32_t p, std::vector<std::string> basis_names, std::vector<std::uint32_t> c,
                                Vec unit) {
    return Algebra::from_structure_constants(p, std::move(basis_names), std::move(c), std::move(unit));
}

inline const LocalProfile& analyze_local(const Algebra& a) { return a.profile(); }

namespace detail {

/// Monomial ambient F_p[x_1..x_v]/(x_i^{cap_i}) with mixed-radix indexing.
struct MonomialAmbient {
    std::vector<std::size_t> caps;
    std::vector<std::size_t> strides;
    std::size_t dim = 1;

    explicit MonomialAmbient(const std::vector<std::size_t>& c) : caps(c) {
        strides.resize(caps.size());
        for (std::size_t i = 0; i < caps.size(); ++i) {
            strides[i] = dim;
            dim *= caps[i];
        }
    }

    std::size_t index(const std::vector<std::size_t>& exp) const {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < caps.size(); ++i) idx += exp[i] * strides[i];
        return idx;
    }

    std::vector<std::size_t> exponent(std::size_t idx) const {
        std::vector<std::size_t> e(caps.size());
        for (std::size_t i = 0; i < caps.size(); ++i) {
            e[i] = idx % caps[i];
            idx /= caps[i];
        }
        return e;
    }

    /// Index of x_i * monomial(idx), or npos when it overflows the cap.
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t shift(std::size_t idx, std::size_t var) const {
        std::size_t e = (idx / strides[var]) % caps[var];
        if (e + 1 >= caps[var]) return npos;
        return idx + strides[var];
    }
};

struct QuotientClosure {
    MonomialAmbient ambient;
    EchelonBasis span;
    std::vector<long long> detected; ///< minimal d with x_i^d in the span, -1 if none
    bool all_detected = false;
    std::size_t quotient_dim = 0;
};

inline QuotientClosure close_relation_ideal(std::uint32_t p, std::size_t nvars,
                                            const std::vector<std::map<std::vector<std::size_t>, std::uint32_t>>& gens,
                                            const std::vector<std::size_t>& caps) {
    QuotientClosure out{MonomialAmbient(caps), EchelonBasis(0, p), {}, false, 0};
    out.span = EchelonBasis(out.ambient.dim, p);
    std::vector<Vec> worklist;
    for (const auto& g : gens) {
        Vec v(out.ambient.dim, 0);
        for (auto& [exp, coeff] : g) {
            bool in_range = true;
            for (std::size_t i = 0; i < nvars; ++i)
                if (exp[i] >= caps[i]) in_range = false;
            if (in_range) v[out.ambient.index(exp)] = mod_add(v[out.ambient.index(exp)], coeff, p);
        }
        if (out.span.insert(v)) worklist.push_back(std::move(v));
    }
    // Close under multiplication by every variable. Rows come from the
    // reduced basis, so the loop terminates after at most dim insertions.
    while (!worklist.empty()) {
        Vec v = std::move(worklist.back());
        worklist.pop_back();
        for (std::size_t var = 0; var < nvars; ++var) {
            Vec w(out.ambient.dim, 0);
            for (std::size_t idx = 0; idx < out.ambient.dim; ++idx) {
                if (!v[idx]) continue;
                std::size_t to = out.ambient.shift(idx, var);
                if (to != MonomialAmbient::npos) w[to] = mod_add(w[to], v[idx], p);
            }
            if (out.span.insert(w)) worklist.push_back(std::move(w));
        }
    }
    out.detected.assign(nvars, -1);
    out.all_detected = true;
    for (std::size_t var = 0; var < nvars; ++var) {
        for (std::size_t d = 1; d < caps[var]; ++d) {
            Vec mono(out.ambient.dim, 0);
            std::vector<std::size_t> exp(nvars, 0);
            exp[var] = d;
            mono[out.ambient.index(exp)] = 1;
            if (out.span.contains(mono)) {
                out.detected[var] = static_cast<long long>(d);
                break;
            }
        }
        if (out.detected[var] < 0) out.all_detected = false;
    }
    out.quotient_dim = out.ambient.dim - out.span.rank();
    return out;
}

inline std::string monomial_name(const std::vector<std::string>& vars, const std::vector<std::size_t>& exp) {
    std::string name;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (exp[i] == 0) continue;
        if (!name.empty()) name += "*";
        name += vars[i];
        if (exp[i] > 1) name += "^" + std::to_string(exp[i]);
    }
    return name.empty() ? "1" : name;
}

} // namespace detail

inline AlgebraPtr Algebra::polynomial_quotient(std::uint32_t p, const std::vector<std::string>& variables,
                                               const std::vector<std::string>& relations) {
    if (!is_prime(p)) throw validation_error(validation_code::not_prime, std::to_string(p) + " is not prime");
    const std::size_t nvars = variables.size();
    if (nvars == 0) {
        // the polynomial ring in no variables is the field itself
        return from_structure_constants(p, {"1"}, {1}, {1});
    }
    std::vector<std::map<std::vector<std::size_t>, std::uint32_t>> gens;
    std::vector<std::size_t> max_deg(nvars, 1);
    for (const std::string& rel : relations) {
        std::map<std::vector<std::size_t>, std::uint32_t> poly;
        for (const PolyTerm& term : parse_poly_terms(rel)) {
            std::vector<std::size_t> exp(nvars, 0);
            for (auto& [name, e] : term.powers) {
                auto it = std::find(variables.begin(), variables.end(), name);
                if (it == variables.end())
                    throw validation_error(validation_code::bad_input,
                                           "relation uses unknown variable \"" + name + "\"");
                exp[static_cast<std::size_t>(it - variables.begin())] += e;
            }
            for (std::size_t i = 0; i < nvars; ++i) max_deg[i] = std::max(max_deg[i], exp[i] + 1);
            std::uint32_t coeff = mod_reduce(term.coeff, p);
            auto [pos, inserted] = poly.emplace(std::move(exp), coeff);
            if (!inserted) pos->second = mod_add(pos->second, coeff, p);
        }
        gens.push_back(std::move(poly));
    }

    constexpr std::size_t ambient_limit = 4096;
    std::vector<std::size_t> caps = max_deg;
    for (auto& c : caps) c = std::max<std::size_t>(c, 2);
    std::optional<detail::QuotientClosure> accepted;
    for (int round = 0; round < 8 && !accepted; ++round) {
        std::size_t ambient_dim = 1;
        for (auto c : caps) ambient_dim *= c;
        if (ambient_dim > ambient_limit)
            throw validation_error(validation_code::not_finite_dimensional,
                                   "monomial ambient exceeds " + std::to_string(ambient_limit) +
                                       " dimensions before every variable power was detected");
        detail::QuotientClosure lo = detail::close_relation_ideal(p, nvars, gens, caps);
        if (lo.all_detected) {
            std::vector<std::size_t> doubled = caps;
            std::size_t doubled_dim = 1;
            for (auto& c : doubled) {
                c *= 2;
                doubled_dim *= c;
            }
            if (doubled_dim <= ambient_limit) {
                detail::QuotientClosure hi = detail::close_relation_ideal(p, nvars, gens, doubled);
                if (hi.all_detected && hi.quotient_dim == lo.quotient_dim) {
                    accepted = std::move(hi);
                } else {
                    caps = doubled; // not stable yet, keep growing
                }
            } else {
                // cannot double within the limit; accept the detected closure
                accepted = std::move(lo);
            }
        } else {
            for (auto& c : caps) c *= 2;
        }
    }
    if (!accepted)
        throw validation_error(validation_code::not_finite_dimensional,
                               "no power of some variable appears in the ideal closure");

    const detail::QuotientClosure& q = *accepted;
    std::vector<std::size_t> rep = q.span.non_pivots(); // ambient indices of the quotient basis
    // order the basis by total degree, then by the ambient index
    std::stable_sort(rep.begin(), rep.end(), [&](std::size_t a, std::size_t b) {
        auto ea = q.ambient.exponent(a), eb = q.ambient.exponent(b);
        std::size_t da = std::accumulate(ea.begin(), ea.end(), std::size_t{0});
        std::size_t db = std::accumulate(eb.begin(), eb.end(), std::size_t{0});
        return da != db ? da < db : a < b;
    });
    std::size_t n = rep.size();
    if (n == 0 || q.span.contains([&] {
            Vec one(q.ambient.dim, 0);
            one[0] = 1;
            return one;
        }()))
        throw validation_error(validation_code::unit_in_ideal, "the relation ideal contains a unit");

    std::vector<std::size_t> rep_pos(q.ambient.dim, detail::MonomialAmbient::npos);
    for (std::size_t i = 0; i < n; ++i) rep_pos[rep[i]] = i;
    auto reduce_to_basis = [&](Vec ambient_vec) {
        Vec red = q.span.reduce(std::move(ambient_vec));
        Vec out(n, 0);
        for (std::size_t idx = 0; idx < q.ambient.dim; ++idx)
            if (red[idx]) out[rep_pos[idx]] = red[idx];
        return out;
    };

    std::vector<std::string> names;
    names.reserve(n);
    for (auto idx : rep) names.push_back(detail::monomial_name(variables, q.ambient.exponent(idx)));

    std::vector<std::uint32_t> c(n * n * n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        auto ea = q.ambient.exponent(rep[a]);
        for (std::size_t b = 0; b < n; ++b) {
            auto eb = q.ambient.exponent(rep[b]);
            bool overflow = false;
            std::vector<std::size_t> es(nvars);
            for (std::size_t i = 0; i < nvars; ++i) {
                es[i] = ea[i] + eb[i];
                if (es[i] >= q.ambient.caps[i]) overflow = true;
            }
            if (overflow) continue; // the product lies in a detected power, hence in the ideal
            Vec prod(q.ambient.dim, 0);
            prod[q.ambient.index(es)] = 1;
            Vec coords = reduce_to_basis(std::move(prod));
            for (std::size_t k = 0; k < n; ++k) c[(a * n + b) * n + k] = coords[k];
        }
    }
    Vec unit(n, 0);
    unit[rep_pos[0]] = 1; // ambient index 0 is the monomial 1, never a pivot here

    auto alg = from_structure_constants(p, names, std::move(c), std::move(unit));
    // record the variables as named elements for element parsing
    auto mutable_alg = std::const_pointer_cast<Algebra>(alg);
    for (std::size_t i = 0; i < nvars; ++i) {
        std::vector<std::size_t> exp(nvars, 0);
        exp[i] = 1;
        Vec mono(q.ambient.dim, 0);
        mono[q.ambient.index(exp)] = 1;
        mutable_alg->named_elements_.emplace(variables[i], reduce_to_basis(std::move(mono)));
    }
    return alg;
}

/// Spec-level name.
inline AlgebraPtr quotient_from_polynomials(std::uint32_t p, const std::vector<std::string>& variables,
                                            const std::vector<std::string>& relations) {
    return Algebra::polynomial_quotient(p, variables, relations);
}

} // namespace artin
