#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "syzygy/module.hpp"

namespace artin {

/// End(M) dimensions are recorded in fingerprints only up to this module
/// dimension; the cutoff depends only on dim M, so it is an iso-invariant.
inline constexpr std::size_t fingerprint_end_dim_limit = 48;

/// Cheap iso-invariants. Distinct fingerprints certify non-isomorphism;
/// equality is only a prefilter.
struct Fingerprint {
    std::size_t dim = 0;
    std::size_t min_gens = 0;
    std::size_t socle_dim = 0;
    std::vector<std::size_t> radical_filtration;
    long long end_dim = -1; ///< -1 when above the size cutoff
    std::vector<std::size_t> betti;

    bool operator==(const Fingerprint&) const = default;

    /// Name of the first field differing from o, or empty when equal.
    std::string first_difference(const Fingerprint& o) const {
        if (dim != o.dim) return "dim";
        if (min_gens != o.min_gens) return "min_generators";
        if (socle_dim != o.socle_dim) return "socle_dim";
        if (radical_filtration != o.radical_filtration) return "radical_filtration";
        if (end_dim != o.end_dim) return "end_dim";
        if (betti != o.betti) return "betti";
        return {};
    }
};

inline Fingerprint fingerprint(const Module& m, std::size_t depth) {
    Fingerprint fp;
    fp.dim = m.dim();
    fp.min_gens = min_generators(m);
    fp.socle_dim = module_socle_dim(m);
    fp.radical_filtration = radical_filtration(m);
    if (m.dim() <= fingerprint_end_dim_limit)
        fp.end_dim = static_cast<long long>(hom_module(m, m).basis.size());
    fp.betti = betti_sequence(m, depth);
    return fp;
}

struct IsoWitness {
    ModuleMap map; ///< invertible intertwiner source -> target
};

struct NonIsoCertificate {
    std::string invariant; ///< which re-checkable invariant separates the modules
    std::string detail;
};

struct IsoUnknown {
    std::size_t trials = 0;
    std::size_t hom_dim = 0;
};

using IsoVerdict = std::variant<IsoWitness, NonIsoCertificate, IsoUnknown>;

inline bool certified_iso(const IsoVerdict& v) { return std::holds_alternative<IsoWitness>(v); }
inline bool certified_non_iso(const IsoVerdict& v) { return std::holds_alternative<NonIsoCertificate>(v); }

namespace detail {

inline std::string join_sizes(const std::vector<std::size_t>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

/// p^exp if it stays within limit, otherwise nullopt.
inline std::optional<std::uint64_t> bounded_power(std::uint32_t p, std::size_t exp, std::uint64_t limit) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (r > limit / p) return std::nullopt;
        r *= p;
    }
    return r;
}

inline Matrix hom_combination(const std::vector<Matrix>& basis, const std::vector<std::uint32_t>& coeffs,
                              std::size_t rows, std::size_t cols, std::uint32_t p) {
    Matrix f(rows, cols, p);
    for (std::size_t u = 0; u < basis.size(); ++u)
        if (coeffs[u]) f = f + basis[u].scaled(coeffs[u]);
    return f;
}

} // namespace detail

/// Three-valued isomorphism test. Certified-no comes from a differing
/// invariant or from exhausting a small Hom space; certified-yes carries an
/// invertible intertwiner found by random (then exhaustive) search over
/// Hom(M, N). Randomness comes only from the given generator.
inline IsoVerdict is_isomorphic(const Module& m, const Module& n, std::size_t budget, std::mt19937_64& rng,
                                std::size_t fingerprint_depth = 4) {
    if (!m.same_algebra(n)) throw error("isomorphism test across different algebras");
    Fingerprint fm = fingerprint(m, fingerprint_depth);
    Fingerprint fn = fingerprint(n, fingerprint_depth);
    if (std::string diff = fm.first_difference(fn); !diff.empty())
        return NonIsoCertificate{diff, "left " + diff + " differs from right"};
    if (m.dim() == 0) return IsoWitness{ModuleMap(m, n, Matrix(0, 0, m.modulus()), false)};

    HomModule hom = hom_module(m, n);
    std::size_t s = hom.basis.size();
    if (fm.end_dim >= 0 && static_cast<long long>(s) != fm.end_dim)
        return NonIsoCertificate{"hom_dim", "dim Hom(M,N) = " + std::to_string(s) + " but dim End(M) = " +
                                                std::to_string(fm.end_dim)};
    std::uint32_t p = m.modulus();
    std::vector<std::uint32_t> coeffs(s, 0);
    // exhaustion is decisive, so prefer it whenever the Hom space is small
    if (auto total = detail::bounded_power(p, s, budget)) {
        for (std::uint64_t it = 0; it < *total; ++it) {
            Matrix f = detail::hom_combination(hom.basis, coeffs, n.dim(), m.dim(), p);
            if (f.rank() == m.dim()) return IsoWitness{ModuleMap(m, n, std::move(f), false)};
            // odometer step
            for (std::size_t u = 0; u < s; ++u) {
                if (++coeffs[u] < p) break;
                coeffs[u] = 0;
            }
        }
        return NonIsoCertificate{"hom_units_exhausted",
                                 "no invertible element among all " + std::to_string(*total) +
                                     " elements of Hom(M,N)"};
    }
    for (std::size_t trial = 0; trial < budget; ++trial) {
        for (auto& c : coeffs) c = static_cast<std::uint32_t>(rng() % p);
        Matrix f = detail::hom_combination(hom.basis, coeffs, n.dim(), m.dim(), p);
        if (f.rank() == m.dim()) return IsoWitness{ModuleMap(m, n, std::move(f), false)};
    }
    return IsoUnknown{budget, s};
}

/// One indecomposable summand together with its split maps:
/// project . include = id and the includes/projects assemble M.
struct SummandPiece {
    Module module;
    ModuleMap include; ///< module -> M
    ModuleMap project; ///< M -> module
    std::string certificate; ///< which tier certified indecomposability
};

namespace detail {

inline void decompose_into(const Module& m, std::size_t budget, std::mt19937_64& rng,
                           std::vector<SummandPiece>& out, const ModuleMap& include, const ModuleMap& project);

/// Fitting split along f: M = ker(f^N) + im(f^N) with N >= dim M.
inline std::optional<std::pair<Matrix, Matrix>> fitting_split(const Module& m, const Matrix& f) {
    std::size_t d = m.dim();
    std::uint64_t e = 1;
    Matrix g = f;
    while (e < d) {
        g = g * g;
        e *= 2;
    }
    Matrix ker = g.kernel_basis();
    if (ker.cols() == 0 || ker.cols() == d) return std::nullopt;
    Matrix img = g.transpose().row_space_basis().transpose();
    return std::make_pair(std::move(ker), std::move(img));
}

inline void split_and_recurse(const Module& m, const Matrix& ker_cols, const Matrix& img_cols, std::size_t budget,
                              std::mt19937_64& rng, std::vector<SummandPiece>& out, const ModuleMap& include,
                              const ModuleMap& project) {
    auto [mk, inc_k] = submodule_from_columns(m, ker_cols);
    auto [mi, inc_i] = submodule_from_columns(m, img_cols);
    Matrix u = Matrix::hstack(inc_k.matrix, inc_i.matrix);
    Matrix uinv = u.inverse();
    std::uint32_t p = m.modulus();
    Matrix proj_k(mk.dim(), m.dim(), p), proj_i(mi.dim(), m.dim(), p);
    for (std::size_t i = 0; i < mk.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) proj_k(i, j) = uinv(i, j);
    for (std::size_t i = 0; i < mi.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) proj_i(i, j) = uinv(mk.dim() + i, j);
    ModuleMap pk(m, mk, std::move(proj_k), false), pi(m, mi, std::move(proj_i), false);
    decompose_into(mk, budget, rng, out, compose(include, inc_k), compose(pk, project));
    decompose_into(mi, budget, rng, out, compose(include, inc_i), compose(pi, project));
}

inline void decompose_into(const Module& m, std::size_t budget, std::mt19937_64& rng,
                           std::vector<SummandPiece>& out, const ModuleMap& include, const ModuleMap& project) {
    if (m.dim() == 0) return;
    if (m.dim() == 1) {
        out.push_back(SummandPiece{m, include, project, "dim_one"});
        return;
    }
    // cyclic modules over a local ring have local endomorphism ring R/ann
    if (min_generators(m) == 1) {
        out.push_back(SummandPiece{m, include, project, "cyclic"});
        return;
    }
    // mM = 0: every line is a summand isomorphic to k
    if (radical_subspace_rows(m).rows() == 0) {
        std::uint32_t p = m.modulus();
        Module line = Module::residue_field(m.algebra());
        for (std::size_t j = 0; j < m.dim(); ++j) {
            Matrix inc(m.dim(), 1, p), prj(1, m.dim(), p);
            inc(j, 0) = 1;
            prj(0, j) = 1;
            ModuleMap inc_m(line, m, std::move(inc), false), prj_m(m, line, std::move(prj), false);
            out.push_back(SummandPiece{line, compose(include, inc_m), compose(prj_m, project),
                                       "radical_annihilated"});
        }
        return;
    }
    HomModule end = hom_module(m, m);
    std::size_t s = end.basis.size();
    std::uint32_t p = m.modulus();
    std::vector<std::uint32_t> coeffs(s, 0);
    if (auto total = bounded_power(p, s, budget)) {
        for (std::uint64_t it = 0; it < *total; ++it) {
            Matrix f = hom_combination(end.basis, coeffs, m.dim(), m.dim(), p);
            if (auto split = fitting_split(m, f)) {
                split_and_recurse(m, split->first, split->second, budget, rng, out, include, project);
                return;
            }
            for (std::size_t u = 0; u < s; ++u) {
                if (++coeffs[u] < p) break;
                coeffs[u] = 0;
            }
        }
        // every endomorphism is nilpotent or invertible, so End(M) is local
        out.push_back(SummandPiece{m, include, project, "exhausted_endomorphisms"});
        return;
    }
    for (std::size_t trial = 0; trial < budget; ++trial) {
        for (auto& c : coeffs) c = static_cast<std::uint32_t>(rng() % p);
        Matrix f = hom_combination(end.basis, coeffs, m.dim(), m.dim(), p);
        if (auto split = fitting_split(m, f)) {
            split_and_recurse(m, split->first, split->second, budget, rng, out, include, project);
            return;
        }
    }
    throw budget_exceeded("cannot certify indecomposability of a dim-" + std::to_string(m.dim()) +
                          " module: dim End = " + std::to_string(s) + " needs " + std::to_string(p) + "^" +
                          std::to_string(s) + " > " + std::to_string(budget) + " candidates");
}

} // namespace detail

/// Krull-Remak-Schmidt decomposition into indecomposable summands.
/// Splits are found by pow-stabilizing random endomorphisms; a module is
/// declared indecomposable only on an exhaustible End space (or the mM = 0
/// and dim-1 shortcuts). Throws budget_exceeded otherwise.
inline std::vector<SummandPiece> decompose(const Module& m, std::size_t budget, std::mt19937_64& rng) {
    std::vector<SummandPiece> out;
    Matrix id = Matrix::identity(m.dim(), m.modulus());
    ModuleMap ident(m, m, id, false);
    detail::decompose_into(m, budget, rng, out, ident, ident);
    return out;
}

/// Registry of isomorphism classes keyed by small integer ids. The stored
/// representatives are pairwise non-isomorphic; lookups go through the
/// fingerprint prefilter and then certified isomorphism tests. Also memoizes
/// the class-level syzygy and cosyzygy maps that drive the t-action.
/// Single-writer: concurrent callers must serialize access or shard by
/// algebra; everything else in the library is immutable.
class ClassRegistry {
public:
    struct Entry {
        Module representative;
        Fingerprint fp;
        bool is_free = false;
    };

    ClassRegistry(AlgebraPtr a, std::uint64_t seed, std::size_t budget = 4000, std::size_t fingerprint_depth = 4)
        : a_(std::move(a)), rng_(seed), budget_(budget), depth_(fingerprint_depth) {}

    AlgebraPtr algebra() const { return a_; }
    std::size_t size() const { return entries_.size(); }
    std::size_t budget() const { return budget_; }
    std::size_t fingerprint_depth() const { return depth_; }
    std::mt19937_64& rng() { return rng_; }

    const Entry& entry(int id) const { return entries_.at(static_cast<std::size_t>(id)); }

    /// Canonical id of an indecomposable module; inserts a new class when no
    /// stored representative is isomorphic. Unknown verdicts escalate to
    /// budget_exceeded since they would corrupt the registry invariant.
    int canonical_id(const Module& m) { return canonical_id_with_witness(m).first; }

    std::pair<int, ModuleMap> canonical_id_with_witness(const Module& m) {
        if (m.algebra().get() != a_.get()) throw error("module belongs to a different registry algebra");
        Fingerprint fp = fingerprint(m, depth_);
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            if (!(entries_[i].fp == fp)) continue;
            IsoVerdict v = is_isomorphic(m, entries_[i].representative, budget_, rng_, depth_);
            if (certified_iso(v)) return {static_cast<int>(i), std::get<IsoWitness>(std::move(v)).map};
            if (!certified_non_iso(v))
                throw budget_exceeded("isomorphism against stored representative of class " + std::to_string(i) +
                                      " is undecided");
        }
        entries_.push_back(Entry{m, std::move(fp), is_free_module(m)});
        int id = static_cast<int>(entries_.size() - 1);
        ModuleMap identity(m, entries_.back().representative, Matrix::identity(m.dim(), m.modulus()), false);
        return {id, std::move(identity)};
    }

    /// t^{-1}[id]: classes of the stripped syzygy of the representative,
    /// with multiplicities. Always defined; memoized.
    const std::vector<std::pair<int, long long>>& syzygy_classes(int id) {
        auto it = syzygy_memo_.find(id);
        if (it != syzygy_memo_.end()) return it->second;
        Module omega = strip_free_summands(syzygy(entry(id).representative)).module;
        return syzygy_memo_.emplace(id, classes_of(omega)).first->second;
    }

    /// t[id]: classes of the stripped cosyzygy of the representative. Valid
    /// as a J(R) identity only because the free envelope is checked to be
    /// injective; throws otherwise.
    const std::vector<std::pair<int, long long>>& cosyzygy_classes(int id) {
        auto it = cosyzygy_memo_.find(id);
        if (it != cosyzygy_memo_.end()) return it->second;
        const Module& rep = entry(id).representative;
        ModuleMap env = free_envelope(rep);
        if (env.matrix.rank() != rep.dim())
            throw validation_error(validation_code::envelope_not_injective,
                                   "free envelope of class " + std::to_string(id) +
                                       " is not injective; t[M] is not represented by its cokernel");
        Module cos = strip_free_summands(cokernel_module(env).first).module;
        return cosyzygy_memo_.emplace(id, classes_of(cos)).first->second;
    }

    /// Decompose an arbitrary module (frees already stripped by the caller)
    /// into a sorted (id, multiplicity) list.
    std::vector<std::pair<int, long long>> classes_of(const Module& m) {
        std::map<int, long long> acc;
        for (const SummandPiece& piece : decompose(m, budget_, rng_)) acc[canonical_id(piece.module)] += 1;
        return {acc.begin(), acc.end()};
    }

private:
    AlgebraPtr a_;
    std::mt19937_64 rng_;
    std::size_t budget_;
    std::size_t depth_;
    std::vector<Entry> entries_;
    std::map<int, std::vector<std::pair<int, long long>>> syzygy_memo_;
    std::map<int, std::vector<std::pair<int, long long>>> cosyzygy_memo_;
};

} // namespace artin
