#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "syzygy/algebra.hpp"
#include "syzygy/echelon.hpp"
#include "syzygy/errors.hpp"
#include "syzygy/matrix.hpp"

namespace artin {

/// Finitely generated module over a fixed Algebra, presented as one action
/// matrix per algebra basis element. The zero module (dim 0) is a valid value.
class Module {
public:
    Module() = default;

    static Module from_action(AlgebraPtr a, std::vector<Matrix> action, bool validate = true) {
        Module m;
        m.a_ = std::move(a);
        m.action_ = std::move(action);
        if (m.action_.size() != m.a_->dim())
            throw validation_error(validation_code::invalid_action, "need one action matrix per basis element");
        m.dim_ = m.action_.empty() ? 0 : m.action_[0].rows();
        for (const Matrix& x : m.action_)
            if (x.rows() != m.dim_ || x.cols() != m.dim_ || x.modulus() != m.a_->modulus())
                throw validation_error(validation_code::invalid_action, "action matrices must be square over F_p");
        if (validate) m.validate_axioms();
        return m;
    }

    /// Free module of the given rank: block sums of the regular representation.
    static Module free(AlgebraPtr a, std::size_t rank) {
        std::size_t n = a->dim();
        std::vector<Matrix> action;
        action.reserve(n);
        for (std::size_t b = 0; b < n; ++b) {
            Matrix big(rank * n, rank * n, a->modulus());
            const Matrix& l = a->left_mul(b);
            for (std::size_t t = 0; t < rank; ++t)
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) big(t * n + i, t * n + j) = l(i, j);
            action.push_back(std::move(big));
        }
        return from_action(std::move(a), std::move(action), false);
    }

    /// The residue field k = R/m as a module: every basis element acts by its
    /// scalar residue.
    static Module residue_field(AlgebraPtr a) {
        std::vector<Matrix> action;
        for (std::size_t b = 0; b < a->dim(); ++b) {
            Matrix m(1, 1, a->modulus());
            m(0, 0) = a->profile().residues[b];
            action.push_back(std::move(m));
        }
        return from_action(std::move(a), std::move(action), false);
    }

    AlgebraPtr algebra() const { return a_; }
    std::size_t dim() const { return dim_; }
    std::uint32_t modulus() const { return a_->modulus(); }
    const Matrix& action(std::size_t basis_index) const { return action_[basis_index]; }
    const std::vector<Matrix>& actions() const { return action_; }
    bool is_zero() const { return dim_ == 0; }

    /// Action matrix of an arbitrary ring element.
    Matrix action_of(const Vec& elem) const {
        Matrix m(dim_, dim_, modulus());
        for (std::size_t b = 0; b < elem.size(); ++b)
            if (elem[b]) m = m + action_[b].scaled(elem[b]);
        return m;
    }

    bool same_algebra(const Module& o) const { return a_.get() == o.a_.get(); }

private:
    void validate_axioms() const {
        std::size_t n = a_->dim();
        if (!action_of(a_->unit()).is_identity())
            throw validation_error(validation_code::invalid_action, "unit does not act as identity");
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                Matrix lhs = action_[i] * action_[j];
                Matrix rhs(dim_, dim_, modulus());
                for (std::size_t k = 0; k < n; ++k) {
                    std::uint32_t f = a_->structure_constant(i, j, k);
                    if (f) rhs = rhs + action_[k].scaled(f);
                }
                if (lhs != rhs)
                    throw validation_error(validation_code::invalid_action,
                                           "action does not respect e_" + std::to_string(i) + " * e_" +
                                               std::to_string(j));
            }
        }
    }

    AlgebraPtr a_;
    std::size_t dim_ = 0;
    std::vector<Matrix> action_;
};

/// Homomorphism of modules over one algebra; the matrix maps source
/// coordinates to target coordinates and intertwines the two actions.
struct ModuleMap {
    Module source;
    Module target;
    Matrix matrix;

    ModuleMap(Module src, Module tgt, Matrix m, bool validate = true)
        : source(std::move(src)), target(std::move(tgt)), matrix(std::move(m)) {
        if (!source.same_algebra(target)) throw error("module map endpoints live over different algebras");
        if (matrix.rows() != target.dim() || matrix.cols() != source.dim())
            throw dimension_mismatch("module map matrix is " + matrix.shape());
        if (validate && !intertwines())
            throw validation_error(validation_code::invalid_action, "matrix does not intertwine the actions");
    }

    /// Intertwining over the algebra generators implies intertwining over the
    /// whole algebra, since the commuting set is a subalgebra containing 1.
    bool intertwines() const {
        const Matrix& gens = source.algebra()->profile().generators;
        for (std::size_t r = 0; r < gens.rows(); ++r) {
            Vec g = gens.row(r);
            if (target.action_of(g) * matrix != matrix * source.action_of(g)) return false;
        }
        return true;
    }

    bool is_isomorphism() const {
        return source.dim() == target.dim() && (source.dim() == 0 || matrix.is_invertible());
    }

    ModuleMap inverse() const {
        if (!is_isomorphism()) throw error("map is not an isomorphism");
        return ModuleMap(target, source, source.dim() == 0 ? matrix : matrix.inverse(), false);
    }

    Vec apply(const Vec& v) const { return matrix.mul_vec(v); }
};

inline ModuleMap compose(const ModuleMap& second, const ModuleMap& first) {
    if (first.target.dim() != second.source.dim()) throw dimension_mismatch("composite of incompatible maps");
    return ModuleMap(first.source, second.target, second.matrix * first.matrix, false);
}

inline Module direct_sum(const Module& m, const Module& n) {
    if (!m.same_algebra(n)) throw error("direct sum over different algebras");
    std::vector<Matrix> action;
    for (std::size_t b = 0; b < m.algebra()->dim(); ++b)
        action.push_back(Matrix::block_diagonal(m.action(b), n.action(b)));
    return Module::from_action(m.algebra(), std::move(action), false);
}

/// Base change along an invertible matrix u: the new action is u A u^{-1}.
inline Module conjugate(const Module& m, const Matrix& u) {
    if (u.rows() != m.dim() || u.cols() != m.dim()) throw dimension_mismatch("conjugation matrix shape");
    Matrix uinv = u.inverse();
    std::vector<Matrix> action;
    for (std::size_t b = 0; b < m.algebra()->dim(); ++b) action.push_back(u * m.action(b) * uinv);
    return Module::from_action(m.algebra(), std::move(action), false);
}

/// Submodule spanned by the given columns (must already be action-invariant).
/// Returns the module on a canonical basis together with its inclusion.
inline std::pair<Module, ModuleMap> submodule_from_columns(const Module& m, const Matrix& columns) {
    Matrix basis_rows = columns.transpose().row_space_basis(); // canonical, full row rank
    Matrix incl = basis_rows.transpose();
    std::vector<Matrix> action;
    for (std::size_t b = 0; b < m.algebra()->dim(); ++b) {
        auto sol = incl.solve_matrix(m.action(b) * incl);
        if (!sol) throw error("submodule span is not action-invariant");
        action.push_back(std::move(*sol));
    }
    Module sub = Module::from_action(m.algebra(), std::move(action), false);
    return {sub, ModuleMap(sub, m, std::move(incl), false)};
}

/// Quotient of m by an action-invariant subspace given as spanning rows.
/// Returns the quotient with the projection map.
inline std::pair<Module, ModuleMap> quotient_by_rows(const Module& m, const Matrix& subspace_rows) {
    Matrix red = subspace_rows;
    RowEchelon e = red.reduce_in_place();
    std::vector<bool> is_pivot(m.dim(), false);
    for (auto c : e.pivots) is_pivot[c] = true;
    std::vector<std::size_t> rest;
    for (std::size_t j = 0; j < m.dim(); ++j)
        if (!is_pivot[j]) rest.push_back(j);
    std::size_t q = rest.size();
    std::uint32_t p = m.modulus();
    Matrix proj(q, m.dim(), p);
    for (std::size_t i = 0; i < q; ++i) proj(i, rest[i]) = 1;
    for (std::size_t r = 0; r < e.rank; ++r)
        for (std::size_t i = 0; i < q; ++i) proj(i, e.pivots[r]) = mod_neg(red(r, rest[i]), p);
    Matrix section(m.dim(), q, p);
    for (std::size_t i = 0; i < q; ++i) section(rest[i], i) = 1;
    std::vector<Matrix> action;
    for (std::size_t b = 0; b < m.algebra()->dim(); ++b) action.push_back(proj * m.action(b) * section);
    Module quot = Module::from_action(m.algebra(), std::move(action), false);
    return {quot, ModuleMap(m, quot, std::move(proj), false)};
}

/// Cyclic quotient R/I for the ideal generated by the given ring elements.
inline Module cyclic_module(AlgebraPtr a, const std::vector<Vec>& ideal_generators) {
    EchelonBasis ideal(a->dim(), a->modulus());
    std::vector<Vec> work;
    for (const Vec& g : ideal_generators) {
        if (g.size() != a->dim()) throw dimension_mismatch("ideal generator length");
        if (ideal.insert(g)) work.push_back(g);
    }
    while (!work.empty()) {
        Vec v = std::move(work.back());
        work.pop_back();
        for (std::size_t b = 0; b < a->dim(); ++b) {
            Vec w = a->left_mul(b).mul_vec(v);
            if (ideal.insert(w)) work.push_back(std::move(w));
        }
    }
    Module regular = Module::free(a, 1);
    return quotient_by_rows(regular, ideal.basis_matrix()).first;
}

/// The maximal ideal m viewed as a module (a submodule of R).
inline Module maximal_ideal_module(AlgebraPtr a) {
    Module regular = Module::free(a, 1);
    return submodule_from_columns(regular, a->profile().radical.transpose()).first;
}

/// Rows spanning mM.
inline Matrix radical_subspace_rows(const Module& m) {
    const Matrix& gens = m.algebra()->profile().generators;
    EchelonBasis span(m.dim(), m.modulus());
    for (std::size_t r = 0; r < gens.rows(); ++r) {
        Matrix act = m.action_of(gens.row(r));
        for (std::size_t j = 0; j < m.dim(); ++j) span.insert(act.column(j));
    }
    return span.basis_matrix();
}

/// nu(M) = dim M/mM, the minimal number of generators.
inline std::size_t min_generators(const Module& m) { return m.dim() - radical_subspace_rows(m).rows(); }

/// Standard basis vectors of M lifting a basis of M/mM: the non-pivot
/// coordinates of the reduced mM span.
inline std::vector<Vec> minimal_generators(const Module& m) {
    Matrix red = radical_subspace_rows(m);
    RowEchelon e = red.reduce_in_place();
    std::vector<bool> is_pivot(m.dim(), false);
    for (auto c : e.pivots) is_pivot[c] = true;
    std::vector<Vec> gens;
    for (std::size_t j = 0; j < m.dim(); ++j) {
        if (is_pivot[j]) continue;
        Vec v(m.dim(), 0);
        v[j] = 1;
        gens.push_back(std::move(v));
    }
    return gens;
}

/// Surjection R^g -> M sending the t-th free generator to generators[t].
/// Column (t*n + b) is e_b . generators[t].
inline ModuleMap cover_from_generators(const Module& m, const std::vector<Vec>& generators) {
    std::size_t n = m.algebra()->dim();
    Matrix phi(m.dim(), generators.size() * n, m.modulus());
    for (std::size_t t = 0; t < generators.size(); ++t)
        for (std::size_t b = 0; b < n; ++b) {
            Vec col = m.action(b).mul_vec(generators[t]);
            for (std::size_t i = 0; i < m.dim(); ++i) phi(i, t * n + b) = col[i];
        }
    Module source = Module::free(m.algebra(), generators.size());
    ModuleMap map(source, m, std::move(phi), false);
    if (map.matrix.rank() != m.dim()) throw error("generators do not span the module");
    return map;
}

/// Minimal free cover R^nu(M) ->> M.
inline ModuleMap free_cover(const Module& m) { return cover_from_generators(m, minimal_generators(m)); }

inline std::pair<Module, ModuleMap> kernel_module(const ModuleMap& f) {
    return submodule_from_columns(f.source, f.matrix.kernel_basis());
}

inline std::pair<Module, ModuleMap> image_module(const ModuleMap& f) {
    return submodule_from_columns(f.target, f.matrix);
}

inline std::pair<Module, ModuleMap> cokernel_module(const ModuleMap& f) {
    return quotient_by_rows(f.target, f.matrix.transpose());
}

/// Canonical syzygy: kernel of the minimal free cover, iterated.
inline Module syzygy(const Module& m, std::size_t n = 1) {
    Module cur = m;
    for (std::size_t i = 0; i < n; ++i) cur = kernel_module(free_cover(cur)).first;
    return cur;
}

/// True iff M is free; over a local ring the minimal cover of M is an
/// isomorphism exactly when nu(M) * dim R = dim M.
inline bool is_free_module(const Module& m) { return min_generators(m) * m.algebra()->dim() == m.dim(); }

/// Hom_R(M, N) as a module plus an explicit basis of concrete maps.
struct HomModule {
    Module module;                  ///< Hom as an R-module on the basis below
    std::vector<Matrix> basis;      ///< basis maps N.dim x M.dim
    Matrix flat_basis;              ///< (N.dim*M.dim) x dim Hom, vec'd basis
};

inline HomModule hom_module(const Module& m, const Module& n) {
    if (!m.same_algebra(n)) throw error("hom over different algebras");
    AlgebraPtr a = m.algebra();
    std::uint32_t p = m.modulus();
    std::size_t dm = m.dim(), dn = n.dim();
    std::size_t vars = dn * dm;
    const Matrix& gens = a->profile().generators;
    // intertwining constraints over the algebra generators
    Matrix c(gens.rows() * vars, vars, p);
    for (std::size_t g = 0; g < gens.rows(); ++g) {
        Matrix bn = n.action_of(gens.row(g));
        Matrix am = m.action_of(gens.row(g));
        std::size_t base = g * vars;
        for (std::size_t i = 0; i < dn; ++i)
            for (std::size_t j = 0; j < dm; ++j) {
                std::size_t row = base + i * dm + j;
                for (std::size_t k = 0; k < dn; ++k)
                    if (bn(i, k)) c(row, k * dm + j) = mod_add(c(row, k * dm + j), bn(i, k), p);
                for (std::size_t l = 0; l < dm; ++l)
                    if (am(l, j)) c(row, i * dm + l) = mod_sub(c(row, i * dm + l), am(l, j), p);
            }
    }
    Matrix kernel = c.kernel_basis(); // vars x s
    std::size_t s = kernel.cols();
    HomModule out{Module(), {}, kernel};
    out.basis.reserve(s);
    for (std::size_t u = 0; u < s; ++u) {
        Matrix f(dn, dm, p);
        for (std::size_t i = 0; i < dn; ++i)
            for (std::size_t j = 0; j < dm; ++j) f(i, j) = kernel(i * dm + j, u);
        out.basis.push_back(std::move(f));
    }
    // R acts on Hom through the target; express each composite in the basis
    Matrix rhs(vars, a->dim() * s, p);
    for (std::size_t b = 0; b < a->dim(); ++b)
        for (std::size_t u = 0; u < s; ++u) {
            Matrix g = n.action(b) * out.basis[u];
            for (std::size_t i = 0; i < dn; ++i)
                for (std::size_t j = 0; j < dm; ++j) rhs(i * dm + j, b * s + u) = g(i, j);
        }
    auto coords = kernel.solve_matrix(rhs);
    if (!coords) throw error("internal: Hom action left the Hom space");
    std::vector<Matrix> action;
    for (std::size_t b = 0; b < a->dim(); ++b) {
        Matrix hb(s, s, p);
        for (std::size_t u = 0; u < s; ++u)
            for (std::size_t v = 0; v < s; ++v) hb(u, v) = (*coords)(u, b * s + v);
        action.push_back(std::move(hb));
    }
    out.module = Module::from_action(a, std::move(action), false);
    return out;
}

/// M^* = Hom(M, R).
inline HomModule dual_module(const Module& m) { return hom_module(m, Module::free(m.algebra(), 1)); }

/// Natural evaluation map M -> M^{**}. Not necessarily injective when the
/// algebra is not Gorenstein; callers test invertibility.
inline ModuleMap biduality_map(const Module& m) {
    AlgebraPtr a = m.algebra();
    std::uint32_t p = m.modulus();
    HomModule dual = dual_module(m);
    HomModule bidual = hom_module(dual.module, Module::free(a, 1));
    std::size_t s = dual.basis.size();
    std::size_t na = a->dim();
    // ev_j sends a functional f (coordinates over dual.basis) to f(v_j) in R.
    Matrix rhs(na * s, m.dim(), p);
    for (std::size_t j = 0; j < m.dim(); ++j)
        for (std::size_t u = 0; u < s; ++u)
            for (std::size_t b = 0; b < na; ++b) rhs(b * s + u, j) = dual.basis[u](b, j);
    auto coords = bidual.flat_basis.solve_matrix(rhs);
    if (!coords) throw error("internal: evaluation is not a module map");
    return ModuleMap(m, bidual.module, std::move(*coords), false);
}

/// Minimal free envelope M -> R^{nu(M^*)}: the rows are a minimal system of
/// generators of M^*.
inline ModuleMap free_envelope(const Module& m) {
    AlgebraPtr a = m.algebra();
    std::uint32_t p = m.modulus();
    HomModule dual = dual_module(m);
    // minimal generators of M^* among the basis functionals
    std::vector<Vec> gen_coords = minimal_generators(dual.module);
    std::size_t t = gen_coords.size();
    std::size_t na = a->dim();
    Matrix env(t * na, m.dim(), p);
    for (std::size_t u = 0; u < t; ++u) {
        // assemble the functional with the given coordinates
        Matrix g(na, m.dim(), p);
        for (std::size_t w = 0; w < dual.basis.size(); ++w)
            if (gen_coords[u][w]) g = g + dual.basis[w].scaled(gen_coords[u][w]);
        for (std::size_t b = 0; b < na; ++b)
            for (std::size_t j = 0; j < m.dim(); ++j) env(u * na + b, j) = g(b, j);
    }
    Module target = Module::free(a, t);
    return ModuleMap(m, target, std::move(env), false);
}

/// Canonical cosyzygy: cokernel of the minimal free envelope, iterated.
inline Module cosyzygy(const Module& m, std::size_t n = 1) {
    Module cur = m;
    for (std::size_t i = 0; i < n; ++i) cur = cokernel_module(free_envelope(cur)).first;
    return cur;
}

/// M has a free summand iff the evaluation pairing M^* x M -> R hits a unit.
inline bool has_free_summand(const Module& m) {
    HomModule dual = dual_module(m);
    for (const Matrix& f : dual.basis)
        for (std::size_t j = 0; j < m.dim(); ++j)
            if (m.algebra()->residue_of(f.column(j)) != 0) return true;
    return false;
}

/// dim of {x in M : m x = 0}.
inline std::size_t module_socle_dim(const Module& m) {
    const Matrix& gens = m.algebra()->profile().generators;
    if (gens.rows() == 0) return m.dim();
    Matrix stack(0, m.dim(), m.modulus());
    for (std::size_t r = 0; r < gens.rows(); ++r) stack = Matrix::vstack(stack, m.action_of(gens.row(r)));
    return stack.kernel_basis().cols();
}

/// dims of m M, m^2 M, ... down to and including the first zero.
inline std::vector<std::size_t> radical_filtration(const Module& m) {
    const Matrix& gens = m.algebra()->profile().generators;
    std::vector<Matrix> gen_actions;
    for (std::size_t r = 0; r < gens.rows(); ++r) gen_actions.push_back(m.action_of(gens.row(r)));
    std::vector<std::size_t> dims;
    Matrix cur = Matrix::identity(m.dim(), m.modulus());
    for (std::size_t step = 0; step <= m.dim() + 1; ++step) {
        EchelonBasis next(m.dim(), m.modulus());
        for (const Matrix& g : gen_actions)
            for (std::size_t r = 0; r < cur.rows(); ++r) next.insert(g.mul_vec(cur.row(r)));
        dims.push_back(next.rank());
        cur = next.basis_matrix();
        if (dims.back() == 0) break;
    }
    return dims;
}

/// beta_0 .. beta_t, computed as nu of the canonical syzygies.
inline std::vector<std::size_t> betti_sequence(const Module& m, std::size_t t) {
    std::vector<std::size_t> betti;
    Module cur = m;
    for (std::size_t i = 0; i <= t; ++i) {
        betti.push_back(min_generators(cur));
        if (cur.is_zero()) continue; // all later syzygies stay zero
        if (i < t) cur = syzygy(cur);
    }
    return betti;
}

struct StrippedModule {
    Module module;
    std::size_t free_rank = 0;
};

/// Splits off free summands one at a time: a functional taking a unit value
/// is a split surjection onto R, and we pass to its kernel. Terminates after
/// at most nu(M) steps.
inline StrippedModule strip_free_summands(const Module& m) {
    StrippedModule out{m, 0};
    for (;;) {
        HomModule dual = dual_module(out.module);
        const Matrix* found = nullptr;
        for (const Matrix& f : dual.basis) {
            for (std::size_t j = 0; j < out.module.dim() && !found; ++j)
                if (out.module.algebra()->residue_of(f.column(j)) != 0) found = &f;
            if (found) break;
        }
        if (!found) return out;
        ModuleMap onto(out.module, Module::free(out.module.algebra(), 1), *found, false);
        out.module = kernel_module(onto).first;
        ++out.free_rank;
    }
}

} // namespace artin
