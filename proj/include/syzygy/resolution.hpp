#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "syzygy/decomp.hpp"
#include "syzygy/laurent.hpp"
#include "syzygy/module.hpp"

namespace artin {

/// Minimal free resolution data: the canonical syzygy chain and its Betti
/// numbers beta_i = nu(Omega^i M).
struct Resolution {
    std::vector<Module> syzygies; ///< Omega^0 M .. Omega^t M (stops early at zero)
    std::vector<std::size_t> betti;
    bool reached_zero = false;
};

inline Resolution minimal_resolution(const Module& m, std::size_t steps) {
    Resolution r;
    r.syzygies.push_back(m);
    r.betti.push_back(min_generators(m));
    while (r.syzygies.size() <= steps && !r.syzygies.back().is_zero()) {
        Module next = syzygy(r.syzygies.back());
        r.betti.push_back(min_generators(next));
        r.syzygies.push_back(std::move(next));
    }
    r.reached_zero = r.syzygies.back().is_zero();
    return r;
}

/// Degree-<= t truncation of the Poincare series sum beta_i t^i.
inline LaurentPoly poincare_truncation(const Module& m, std::size_t t) {
    LaurentPoly p;
    std::vector<std::size_t> betti = betti_sequence(m, t);
    for (std::size_t i = 0; i < betti.size(); ++i)
        p = p + LaurentPoly::monomial(static_cast<int>(i), static_cast<long long>(betti[i]));
    return p;
}

/// Finite projective dimension test. Over a field everything is free; over
/// an Artinian local non-field pd M < infinity forces M free, so budget >= 1
/// makes the walk exact.
inline bool is_pd_finite(const Module& m, std::size_t budget = 8) {
    if (m.algebra()->profile().is_field) return true;
    Module cur = m;
    for (std::size_t i = 0; i <= budget; ++i) {
        if (is_free_module(cur)) return true;
        cur = syzygy(cur);
    }
    return false;
}

/// Certified eventual periodicity: an explicit isomorphism between the
/// stripped syzygies at steps lead and lead+period (free summands do not
/// change classes, so the stripped chain carries the same periodicity).
struct PeriodicWitness {
    std::size_t lead = 0;
    std::size_t period = 0;
    ModuleMap witness;
    std::vector<std::size_t> betti; ///< beta_0..beta_{lead+period}
};

struct PeriodicityBudgetExceeded {
    std::vector<std::size_t> betti; ///< evidence observed along the walk
    std::size_t steps = 0;
};

using PeriodicityVerdict = std::variant<PeriodicWitness, PeriodicityBudgetExceeded>;

inline bool certified_periodic(const PeriodicityVerdict& v) { return std::holds_alternative<PeriodicWitness>(v); }

namespace detail {

/// Cheap iso-invariant key for chain states; betti and End dims are left to
/// the full isomorphism test so that growing chains stay inexpensive.
struct ChainKey {
    std::size_t dim = 0;
    std::size_t nu = 0;
    std::size_t socle = 0;
    std::vector<std::size_t> filtration;

    bool operator==(const ChainKey&) const = default;
};

inline ChainKey chain_key(const Module& m) {
    return ChainKey{m.dim(), min_generators(m), module_socle_dim(m), radical_filtration(m)};
}

} // namespace detail

/// Walks the stripped syzygy chain Omega^0, Omega^1, ...; each new stripped
/// syzygy is compared against all earlier states (invariant prefilter, then a
/// certified isomorphism search). The first certified repeat at indices
/// lead < lead+n yields Periodic(lead, n) with the isomorphism as witness.
/// Budget overruns, and repeats the search cannot certify, degrade to
/// ExceededBudget with the observed Betti numbers as evidence.
inline PeriodicityVerdict detect_periodicity(const Module& m, std::size_t budget, ClassRegistry& reg) {
    std::vector<std::size_t> betti{min_generators(m)};
    std::vector<Module> chain{strip_free_summands(m).module};
    std::vector<detail::ChainKey> keys{detail::chain_key(chain[0])};
    for (std::size_t i = 1; i <= budget; ++i) {
        Module omega = syzygy(chain.back()); // equals Omega^i M: stripped frees do not change syzygies
        betti.push_back(min_generators(omega));
        Module stripped = strip_free_summands(omega).module;
        detail::ChainKey key = detail::chain_key(stripped);
        for (std::size_t lead = 0; lead < chain.size(); ++lead) {
            if (!(keys[lead] == key)) continue;
            IsoVerdict v = is_isomorphic(chain[lead], stripped, reg.budget(), reg.rng(), reg.fingerprint_depth());
            if (certified_iso(v))
                return PeriodicWitness{lead, i - lead, std::get<IsoWitness>(std::move(v)).map, std::move(betti)};
        }
        chain.push_back(std::move(stripped));
        keys.push_back(std::move(key));
    }
    return PeriodicityBudgetExceeded{std::move(betti), budget};
}

} // namespace artin
