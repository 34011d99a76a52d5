#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "syzygy/algebra.hpp"
#include "syzygy/decomp.hpp"
#include "syzygy/jmodule.hpp"
#include "syzygy/module.hpp"
#include "syzygy/resolution.hpp"

namespace artin {

using ordered_json = nlohmann::ordered_json;

namespace descriptor {

[[noreturn]] inline void fail(const std::string& where, const std::string& what) {
    throw validation_error(validation_code::bad_input, where + ": " + what);
}

inline std::uint32_t get_uint(const ordered_json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_number_unsigned()) fail(where, "missing or invalid \"" + key + "\"");
    return j[key].get<std::uint32_t>();
}

/// Algebra descriptor:
///   {"p": 5, "mode": "polynomial_quotient", "variables": ["x"], "relations": ["x^4"]}
///   {"p": 2, "mode": "structure_constants", "basis": ["1","x"], "unit": [1,0],
///    "table": [[[1,0],[0,1]],[[0,1],[0,0]]]}   // table[i][j] = coordinates of e_i e_j
inline AlgebraPtr parse_algebra(const ordered_json& j) {
    const std::string where = "algebra";
    if (!j.is_object()) fail(where, "descriptor must be an object");
    std::uint32_t p = get_uint(j, "p", where);
    std::string mode = j.value("mode", std::string("polynomial_quotient"));
    if (mode == "polynomial_quotient") {
        std::vector<std::string> vars, rels;
        for (auto& v : j.value("variables", ordered_json::array())) vars.push_back(v.get<std::string>());
        for (auto& r : j.value("relations", ordered_json::array())) rels.push_back(r.get<std::string>());
        return quotient_from_polynomials(p, vars, rels);
    }
    if (mode == "structure_constants") {
        std::vector<std::string> names;
        for (auto& v : j.value("basis", ordered_json::array())) names.push_back(v.get<std::string>());
        std::size_t n = names.size();
        if (n == 0) fail(where, "empty basis");
        if (!j.contains("table")) fail(where, "missing \"table\"");
        const auto& table = j["table"];
        if (!table.is_array() || table.size() != n) fail(where, "table must have one row per basis element");
        std::vector<std::uint32_t> c(n * n * n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (!table[i].is_array() || table[i].size() != n) fail(where, "table row has wrong length");
            for (std::size_t k = 0; k < n; ++k) {
                const auto& cell = table[i][k];
                if (!cell.is_array() || cell.size() != n) fail(where, "table cell has wrong length");
                for (std::size_t l = 0; l < n; ++l) c[(i * n + k) * n + l] = mod_reduce(cell[l].get<long long>(), p);
            }
        }
        Vec unit(n, 0);
        if (!j.contains("unit") || !j["unit"].is_array() || j["unit"].size() != n)
            fail(where, "missing or invalid \"unit\"");
        for (std::size_t i = 0; i < n; ++i) unit[i] = mod_reduce(j["unit"][i].get<long long>(), p);
        return build_algebra(p, std::move(names), std::move(c), std::move(unit));
    }
    fail(where, "unknown mode \"" + mode + "\"");
}

inline Module parse_module(const ordered_json& j, const AlgebraPtr& a,
                           const std::map<std::string, Module>& known, const std::string& where, int depth = 0);

inline Module resolve_summand(const ordered_json& j, const AlgebraPtr& a,
                              const std::map<std::string, Module>& known, const std::string& where, int depth) {
    if (j.is_string()) {
        auto it = known.find(j.get<std::string>());
        if (it == known.end()) fail(where, "reference to undefined module \"" + j.get<std::string>() + "\"");
        return it->second;
    }
    return parse_module(j, a, known, where, depth + 1);
}

/// Module descriptor:
///   {"type": "free", "rank": 2}
///   {"type": "residue_field"}
///   {"type": "cyclic", "generators": ["x", "y^2"]}
///   {"type": "direct_sum", "summands": [<descriptor or name>, ...]}
///   {"type": "raw", "action": [<matrix per basis element>]}
inline Module parse_module(const ordered_json& j, const AlgebraPtr& a,
                           const std::map<std::string, Module>& known, const std::string& where, int depth) {
    if (depth > 16) fail(where, "module descriptor nesting too deep");
    if (!j.is_object()) fail(where, "descriptor must be an object");
    std::string type = j.value("type", std::string());
    if (type == "free") return Module::free(a, get_uint(j, "rank", where));
    if (type == "residue_field") return Module::residue_field(a);
    if (type == "cyclic") {
        std::vector<Vec> gens;
        for (auto& g : j.value("generators", ordered_json::array())) gens.push_back(a->element(g.get<std::string>()));
        return cyclic_module(a, gens);
    }
    if (type == "maximal_ideal") return maximal_ideal_module(a);
    if (type == "direct_sum") {
        if (!j.contains("summands") || !j["summands"].is_array() || j["summands"].empty())
            fail(where, "direct_sum needs a nonempty summand list");
        Module acc = resolve_summand(j["summands"][0], a, known, where, depth);
        for (std::size_t i = 1; i < j["summands"].size(); ++i)
            acc = direct_sum(acc, resolve_summand(j["summands"][i], a, known, where, depth));
        return acc;
    }
    if (type == "syzygy" || type == "cosyzygy") {
        if (!j.contains("of")) fail(where, type + " needs \"of\"");
        Module base = resolve_summand(j["of"], a, known, where, depth);
        std::size_t n = j.value("n", 1u);
        return type == "syzygy" ? syzygy(base, n) : cosyzygy(base, n);
    }
    if (type == "raw") {
        if (!j.contains("action") || !j["action"].is_array() || j["action"].size() != a->dim())
            fail(where, "raw module needs one action matrix per basis element");
        std::vector<Matrix> action;
        for (const auto& mat : j["action"]) {
            std::size_t d = mat.size();
            Matrix m(d, d, a->modulus());
            for (std::size_t r = 0; r < d; ++r) {
                if (!mat[r].is_array() || mat[r].size() != d) fail(where, "action matrix must be square");
                for (std::size_t cjj = 0; cjj < d; ++cjj) m(r, cjj) = mod_reduce(mat[r][cjj].get<long long>(), a->modulus());
            }
            action.push_back(std::move(m));
        }
        return Module::from_action(a, std::move(action), true);
    }
    fail(where, "unknown module type \"" + type + "\"");
}

struct JobSpec {
    AlgebraPtr algebra;
    std::vector<std::pair<std::string, Module>> modules; ///< in file order
    std::uint64_t seed = 0;
};

/// Top-level file: {"algebra": {...}, "modules": {"name": {...}, ...}, "seed": 0}
inline JobSpec parse_jobspec(const ordered_json& root) {
    if (!root.is_object() || !root.contains("algebra")) fail("jobspec", "missing \"algebra\"");
    JobSpec job;
    job.algebra = parse_algebra(root["algebra"]);
    job.seed = root.value("seed", 0u);
    std::map<std::string, Module> known;
    if (root.contains("modules")) {
        for (auto& [name, desc] : root["modules"].items()) {
            Module m = parse_module(desc, job.algebra, known, "modules." + name);
            known.emplace(name, m);
            job.modules.emplace_back(name, std::move(m));
        }
    }
    return job;
}

// ---- serialization ----

inline ordered_json matrix_json(const Matrix& m) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline ordered_json module_json(const Module& m, bool with_action = true) {
    ordered_json j;
    j["dim"] = m.dim();
    j["min_generators"] = min_generators(m);
    if (with_action) {
        ordered_json action = ordered_json::array();
        for (std::size_t b = 0; b < m.algebra()->dim(); ++b) action.push_back(matrix_json(m.action(b)));
        j["action"] = std::move(action);
    }
    return j;
}

inline ordered_json profile_json(const Algebra& a) {
    const LocalProfile& pr = a.profile();
    ordered_json j;
    j["p"] = a.modulus();
    j["dim"] = a.dim();
    j["basis"] = a.basis_names();
    j["embedding_dim"] = pr.embedding_dim;
    j["socle_dim"] = pr.socle_dim;
    j["loewy_length"] = pr.loewy_length;
    j["radical_power_dims"] = pr.radical_power_dims;
    j["is_field"] = pr.is_field;
    j["is_gorenstein"] = pr.is_gorenstein;
    j["is_hypersurface"] = pr.is_hypersurface;
    return j;
}

/// Exponent -> coefficient map with string keys, e.g. {"0": -1, "2": 1}.
inline ordered_json laurent_json(const LaurentPoly& f) {
    ordered_json j = ordered_json::object();
    for (auto& [e, c] : f.terms()) j[std::to_string(e)] = c;
    return j;
}

inline ordered_json fingerprint_json(const Fingerprint& fp) {
    ordered_json j;
    j["dim"] = fp.dim;
    j["min_generators"] = fp.min_gens;
    j["socle_dim"] = fp.socle_dim;
    j["radical_filtration"] = fp.radical_filtration;
    if (fp.end_dim >= 0) j["end_dim"] = fp.end_dim;
    j["betti"] = fp.betti;
    return j;
}

inline ordered_json iso_json(const IsoVerdict& v) {
    ordered_json j;
    if (certified_iso(v)) {
        j["status"] = "iso";
        j["witness"] = matrix_json(std::get<IsoWitness>(v).map.matrix);
    } else if (certified_non_iso(v)) {
        const auto& cert = std::get<NonIsoCertificate>(v);
        j["status"] = "non_iso";
        j["certificate"] = {{"invariant", cert.invariant}, {"detail", cert.detail}};
    } else {
        const auto& u = std::get<IsoUnknown>(v);
        j["status"] = "budget_exceeded";
        j["trials"] = u.trials;
        j["hom_dim"] = u.hom_dim;
    }
    return j;
}

inline ordered_json periodicity_json(const PeriodicityVerdict& v) {
    ordered_json j;
    if (certified_periodic(v)) {
        const auto& w = std::get<PeriodicWitness>(v);
        j["status"] = "periodic";
        j["lead"] = w.lead;
        j["period"] = w.period;
        j["betti"] = w.betti;
        j["witness"] = matrix_json(w.witness.matrix);
    } else {
        const auto& b = std::get<PeriodicityBudgetExceeded>(v);
        j["status"] = "budget_exceeded";
        j["steps"] = b.steps;
        j["betti"] = b.betti;
    }
    return j;
}

inline ordered_json jelement_json(const JElement& x, ClassRegistry& reg) {
    ordered_json classes = ordered_json::array();
    for (auto& [id, c] : x.coeffs()) {
        const Module& rep = reg.entry(id).representative;
        std::vector<std::size_t> dims{rep.dim()};
        for (auto d : radical_filtration(rep)) dims.push_back(d);
        ordered_json cls;
        cls["id"] = id;
        cls["representative_dims"] = dims;
        cls["coefficient"] = c;
        classes.push_back(std::move(cls));
    }
    return ordered_json{{"classes", std::move(classes)}};
}

inline ordered_json orbit_json(const Orbit& o) {
    ordered_json j;
    if (std::holds_alternative<FiniteOrbit>(o)) {
        const auto& f = std::get<FiniteOrbit>(o);
        j["status"] = "finite";
        j["length"] = f.cycle.size();
        j["cycle"] = f.cycle;
    } else {
        j["status"] = "budget_exceeded";
        j["seen"] = std::get<OrbitBudgetExceeded>(o).seen;
    }
    return j;
}

inline ordered_json torsion_json(const TorsionVerdict& v) {
    ordered_json j;
    if (certified_torsion(v)) {
        const auto& cert = std::get<TorsionCertificate>(v);
        j["status"] = "torsion";
        j["annihilator"] = laurent_json(cert.annihilator);
        j["annihilator_text"] = cert.annihilator.to_string();
        j["method"] = cert.method;
    } else {
        const auto& b = std::get<TorsionBudgetExceeded>(v);
        j["status"] = "budget_exceeded";
        j["classes_seen"] = b.classes_seen;
        ordered_json ev = ordered_json::object();
        for (auto& [id, betti] : b.betti_evidence) ev[std::to_string(id)] = betti;
        j["betti_evidence"] = std::move(ev);
    }
    return j;
}

inline ordered_json resolution_json(const Resolution& r) {
    ordered_json j;
    j["betti"] = r.betti;
    std::vector<std::size_t> dims;
    for (const Module& m : r.syzygies) dims.push_back(m.dim());
    j["dims"] = dims;
    j["reached_zero"] = r.reached_zero;
    return j;
}

inline ordered_json hypersurface_json(const HypersurfaceReport& r) {
    ordered_json j;
    j["is_hypersurface"] = r.is_hypersurface;
    j["is_gorenstein"] = r.is_gorenstein;
    ordered_json samples = ordered_json::array();
    for (auto& s : r.samples) samples.push_back(ordered_json{{"name", s.name}, {"status", s.status}});
    j["samples"] = std::move(samples);
    if (!r.residue_field_torsion.empty()) j["residue_field_torsion"] = r.residue_field_torsion;
    j["pass"] = r.pass;
    return j;
}

} // namespace descriptor
} // namespace artin
