// Command-line front end: reads a JSON descriptor of a local algebra with
// named modules, runs one computation, and reports the result as text or
// machine-readable JSON.
//
// Exit codes: 0 certified positive / computed result, 2 certified negative,
// 3 budget exceeded, 1 input or validation error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "syzygy/descriptor.hpp"
#include "syzygy/syzygy.hpp"

using namespace artin;
using artin::ordered_json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input_error = 1;
constexpr int exit_certified_no = 2;
constexpr int exit_budget = 3;

struct Options {
    std::string file;
    std::string name;
    std::string left, right;
    std::size_t steps = 8;
    std::size_t budget = 4000;
    std::size_t n = 1;
    std::optional<std::uint64_t> seed_override;
    bool json = false;
    bool quiet = false;
};

struct Context {
    descriptor::JobSpec job;
    std::uint64_t seed = 0;
    ClassRegistry registry;
};

Context load_context(const Options& opt) {
    std::ifstream in(opt.file);
    if (!in) throw validation_error(validation_code::bad_input, "cannot open \"" + opt.file + "\"");
    ordered_json root = ordered_json::parse(in);
    descriptor::JobSpec job = descriptor::parse_jobspec(root);
    std::uint64_t seed = opt.seed_override.value_or(job.seed);
    ClassRegistry reg(job.algebra, seed, opt.budget);
    return Context{std::move(job), seed, std::move(reg)};
}

const Module& find_module(const Context& ctx, const std::string& name) {
    for (auto& [n, m] : ctx.job.modules)
        if (n == name) return m;
    throw validation_error(validation_code::bad_input, "no module named \"" + name + "\" in the descriptor");
}

void emit(const Options& opt, const std::string& command, std::uint64_t seed, const ordered_json& result,
          const std::string& text) {
    if (opt.json) {
        ordered_json out;
        out["command"] = command;
        out["seed"] = seed;
        out["result"] = result;
        std::cout << out.dump(2) << "\n";
    } else if (!opt.quiet) {
        std::cout << text;
    }
}

std::string poly_text(const std::vector<std::size_t>& betti) {
    std::ostringstream s;
    for (std::size_t i = 0; i < betti.size(); ++i) s << (i ? " " : "") << betti[i];
    return s.str();
}

int run_ring_check(const Options& opt) {
    Context ctx = load_context(opt);
    const Algebra& a = *ctx.job.algebra;
    const LocalProfile& pr = a.profile();
    std::ostringstream text;
    text << "p: " << a.modulus() << "\n"
         << "dim: " << a.dim() << "\n"
         << "embedding_dim: " << pr.embedding_dim << "\n"
         << "loewy_length: " << pr.loewy_length << "\n"
         << "Gorenstein: " << (pr.is_gorenstein ? "true" : "false") << ", socle_dim: " << pr.socle_dim << "\n"
         << "hypersurface: " << (pr.is_hypersurface ? "true" : "false") << "\n"
         << "field: " << (pr.is_field ? "true" : "false") << "\n";
    emit(opt, "ring check", ctx.seed, descriptor::profile_json(a), text.str());
    return exit_ok;
}

int run_ring_hypersurface(const Options& opt) {
    Context ctx = load_context(opt);
    HypersurfaceReport report = hypersurface_check(ctx.job.algebra, ctx.job.modules, opt.budget, ctx.registry);
    std::ostringstream text;
    text << "hypersurface: " << (report.is_hypersurface ? "true" : "false") << "\n";
    for (auto& s : report.samples) text << "  (1-t^2)[" << s.name << "] == 0: " << s.status << "\n";
    if (!report.residue_field_torsion.empty())
        text << "  [k] torsion: " << report.residue_field_torsion << "\n";
    text << (report.pass ? "PASS" : "FAIL") << "\n";
    emit(opt, "ring hypersurface-check", ctx.seed, descriptor::hypersurface_json(report), text.str());
    return report.pass ? exit_ok : exit_certified_no;
}

int run_ring_find_periodic(const Options& opt) {
    Context ctx = load_context(opt);
    auto found = find_periodic_module(ctx.job.algebra, opt.budget, opt.steps, ctx.registry);
    ordered_json j;
    std::ostringstream text;
    if (found) {
        j["found"] = true;
        j["period"] = found->second;
        j["module"] = descriptor::module_json(found->first);
        text << "periodic module of dim " << found->first.dim() << " with period " << found->second << "\n";
    } else {
        j["found"] = false;
        text << "no periodic module certified within budget\n";
    }
    emit(opt, "ring find-periodic", ctx.seed, j, text.str());
    return found ? exit_ok : exit_budget;
}

int run_module_resolve(const Options& opt) {
    Context ctx = load_context(opt);
    const Module& m = find_module(ctx, opt.name);
    Resolution res = minimal_resolution(m, opt.steps);
    PeriodicityVerdict pv = detect_periodicity(m, opt.steps, ctx.registry);
    ordered_json j = descriptor::resolution_json(res);
    j["periodicity"] = descriptor::periodicity_json(pv);
    std::ostringstream text;
    text << "betti: " << poly_text(res.betti) << "\n";
    std::ostringstream dims;
    for (std::size_t i = 0; i < res.syzygies.size(); ++i) dims << (i ? " " : "") << res.syzygies[i].dim();
    text << "dims:  " << dims.str() << "\n";
    if (certified_periodic(pv)) {
        auto& w = std::get<PeriodicWitness>(pv);
        text << "Periodic(lead=" << w.lead << ", period=" << w.period << ")\n";
    } else {
        text << "periodicity: budget exceeded\n";
    }
    emit(opt, "module resolve", ctx.seed, j, text.str());
    return exit_ok;
}

int run_module_betti(const Options& opt) {
    Context ctx = load_context(opt);
    const Module& m = find_module(ctx, opt.name);
    std::vector<std::size_t> betti = betti_sequence(m, opt.steps);
    LaurentPoly poincare = poincare_truncation(m, opt.steps);
    ordered_json j;
    j["betti"] = betti;
    j["poincare_truncation"] = descriptor::laurent_json(poincare);
    std::ostringstream text;
    text << "betti: " << poly_text(betti) << "\n"
         << "poincare: " << poincare.to_string() << "\n";
    emit(opt, "module betti", ctx.seed, j, text.str());
    return exit_ok;
}

int run_module_omega(const Options& opt, bool inverse) {
    Context ctx = load_context(opt);
    const Module& m = find_module(ctx, opt.name);
    Module result = inverse ? cosyzygy(m, opt.n) : syzygy(m, opt.n);
    std::ostringstream text;
    text << (inverse ? "cosyzygy" : "syzygy") << "^" << opt.n << ": dim " << result.dim() << ", min_generators "
         << min_generators(result) << "\n";
    emit(opt, inverse ? "module cosyzygy" : "module syzygy", ctx.seed, descriptor::module_json(result), text.str());
    return exit_ok;
}

int run_module_decompose(const Options& opt) {
    Context ctx = load_context(opt);
    const Module& m = find_module(ctx, opt.name);
    std::vector<SummandPiece> pieces = decompose(m, opt.budget, ctx.registry.rng());
    ordered_json factors = ordered_json::array();
    std::ostringstream text;
    text << pieces.size() << " indecomposable summand(s)\n";
    for (auto& piece : pieces) {
        int id = ctx.registry.canonical_id(piece.module);
        ordered_json f;
        f["class_id"] = id;
        f["dim"] = piece.module.dim();
        f["min_generators"] = min_generators(piece.module);
        f["is_free"] = ctx.registry.entry(id).is_free;
        f["certificate"] = piece.certificate;
        factors.push_back(std::move(f));
        text << "  class " << id << ": dim " << piece.module.dim() << (ctx.registry.entry(id).is_free ? " (free)" : "")
             << " [" << piece.certificate << "]\n";
    }
    emit(opt, "module decompose", ctx.seed, ordered_json{{"factors", std::move(factors)}}, text.str());
    return exit_ok;
}

int run_module_iso(const Options& opt) {
    Context ctx = load_context(opt);
    const Module& lhs = find_module(ctx, opt.left);
    const Module& rhs = find_module(ctx, opt.right);
    IsoVerdict v = is_isomorphic(lhs, rhs, opt.budget, ctx.registry.rng());
    std::ostringstream text;
    int code = exit_budget;
    if (certified_iso(v)) {
        text << "isomorphic (witness verified)\n";
        code = exit_ok;
    } else if (certified_non_iso(v)) {
        text << "not isomorphic: " << std::get<NonIsoCertificate>(v).invariant << "\n";
        code = exit_certified_no;
    } else {
        text << "undecided within budget\n";
    }
    emit(opt, "module iso", ctx.seed, descriptor::iso_json(v), text.str());
    return code;
}

int run_module_period(const Options& opt) {
    Context ctx = load_context(opt);
    const Module& m = find_module(ctx, opt.name);
    PeriodicityVerdict v = detect_periodicity(m, opt.budget, ctx.registry);
    std::ostringstream text;
    int code;
    if (certified_periodic(v)) {
        auto& w = std::get<PeriodicWitness>(v);
        text << "Periodic(lead=" << w.lead << ", period=" << w.period << ")\n";
        code = exit_ok;
    } else {
        auto& b = std::get<PeriodicityBudgetExceeded>(v);
        text << "budget exceeded; betti so far: " << poly_text(b.betti) << "\n";
        code = exit_budget;
    }
    emit(opt, "module period", ctx.seed, descriptor::periodicity_json(v), text.str());
    return code;
}

int run_jclass_normal_form(const Options& opt) {
    Context ctx = load_context(opt);
    const Module& m = find_module(ctx, opt.name);
    JElement x = j_class(m, ctx.registry);
    std::ostringstream text;
    if (x.is_zero()) {
        text << "0\n";
    } else {
        bool first = true;
        for (auto& [id, c] : x.coeffs()) {
            text << (first ? "" : " + ") << c << "*[class " << id << "]";
            first = false;
        }
        text << "\n";
    }
    emit(opt, "jclass normal-form", ctx.seed, descriptor::jelement_json(x, ctx.registry), text.str());
    return exit_ok;
}

int run_jclass_equal(const Options& opt) {
    Context ctx = load_context(opt);
    JElement x = j_class(find_module(ctx, opt.left), ctx.registry);
    JElement y = j_class(find_module(ctx, opt.right), ctx.registry);
    bool eq = j_equal(x, y);
    ordered_json j;
    j["equal"] = eq;
    j["left"] = descriptor::jelement_json(x, ctx.registry);
    j["right"] = descriptor::jelement_json(y, ctx.registry);
    emit(opt, "jclass equal", ctx.seed, j, std::string("equal: ") + (eq ? "true" : "false") + "\n");
    return eq ? exit_ok : exit_certified_no;
}

int run_jclass_torsion(const Options& opt) {
    Context ctx = load_context(opt);
    const Module& m = find_module(ctx, opt.name);
    JElement x = j_class(m, ctx.registry);
    TorsionVerdict v = torsion_test(x, opt.budget, ctx.registry);
    std::ostringstream text;
    int code;
    if (certified_torsion(v)) {
        auto& cert = std::get<TorsionCertificate>(v);
        text << "Torsion(" << cert.annihilator.to_string() << ") via " << cert.method << "\n";
        code = exit_ok;
    } else {
        auto& b = std::get<TorsionBudgetExceeded>(v);
        text << "budget exceeded\n";
        for (auto& [id, betti] : b.betti_evidence)
            text << "  class " << id << " betti: " << poly_text(betti) << "\n";
        code = exit_budget;
    }
    emit(opt, "jclass torsion", ctx.seed, descriptor::torsion_json(v), text.str());
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact syzygy, resolution, and Grothendieck-module computations over local F_p-algebras"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd, bool needs_file = true) {
        if (needs_file) cmd->add_option("file", opt.file, "JSON descriptor file")->required();
        cmd->add_flag("--json", opt.json, "emit machine-readable JSON");
        cmd->add_flag("--quiet", opt.quiet, "suppress text output");
        cmd->add_option_function<std::uint64_t>(
            "--seed", [&](std::uint64_t s) { opt.seed_override = s; }, "override the descriptor seed");
    };

    int (*runner)(const Options&) = nullptr;
    auto set = [&](int (*fn)(const Options&)) { return [&runner, fn]() { runner = fn; }; };

    CLI::App* ring = app.add_subcommand("ring", "ring-level analysis");
    ring->require_subcommand(1);
    CLI::App* check = ring->add_subcommand("check", "validate the algebra and print its local profile");
    add_common(check);
    check->callback(set(run_ring_check));
    CLI::App* hyper = ring->add_subcommand("hypersurface-check", "test the (1-t^2)-annihilation criterion on samples");
    add_common(hyper);
    hyper->add_option("--budget", opt.budget, "search budget")->check(CLI::PositiveNumber);
    hyper->callback(set(run_ring_hypersurface));
    CLI::App* findp = ring->add_subcommand("find-periodic", "sweep cyclic modules for a certified periodic one");
    add_common(findp);
    findp->add_option("--budget", opt.budget, "number of ideal generators to sweep")->check(CLI::PositiveNumber);
    findp->add_option("--steps", opt.steps, "syzygy steps per periodicity check");
    findp->callback(set(run_ring_find_periodic));

    CLI::App* mod = app.add_subcommand("module", "module-level computations");
    mod->require_subcommand(1);
    CLI::App* resolve = mod->add_subcommand("resolve", "minimal free resolution with periodicity detection");
    add_common(resolve);
    resolve->add_option("name", opt.name, "module name")->required();
    resolve->add_option("--steps", opt.steps, "resolution length");
    resolve->callback(set(run_module_resolve));
    CLI::App* betti = mod->add_subcommand("betti", "Betti numbers and Poincare truncation");
    add_common(betti);
    betti->add_option("name", opt.name, "module name")->required();
    betti->add_option("--steps", opt.steps, "truncation degree");
    betti->callback(set(run_module_betti));
    CLI::App* syz = mod->add_subcommand("syzygy", "n-th canonical syzygy");
    add_common(syz);
    syz->add_option("name", opt.name, "module name")->required();
    syz->add_option("-n", opt.n, "iterations");
    syz->callback(set(+[](const Options& o) { return run_module_omega(o, false); }));
    CLI::App* cosyz = mod->add_subcommand("cosyzygy", "n-th canonical cosyzygy");
    add_common(cosyz);
    cosyz->add_option("name", opt.name, "module name")->required();
    cosyz->add_option("-n", opt.n, "iterations");
    cosyz->callback(set(+[](const Options& o) { return run_module_omega(o, true); }));
    CLI::App* dec = mod->add_subcommand("decompose", "Krull-Remak-Schmidt decomposition");
    add_common(dec);
    dec->add_option("name", opt.name, "module name")->required();
    dec->add_option("--budget", opt.budget, "search budget")->check(CLI::PositiveNumber);
    dec->callback(set(run_module_decompose));
    CLI::App* iso = mod->add_subcommand("iso", "isomorphism test with certificates");
    add_common(iso);
    iso->add_option("left", opt.left, "first module")->required();
    iso->add_option("right", opt.right, "second module")->required();
    iso->add_option("--budget", opt.budget, "search budget")->check(CLI::PositiveNumber);
    iso->callback(set(run_module_iso));
    CLI::App* period = mod->add_subcommand("period", "eventual periodicity of the minimal resolution");
    add_common(period);
    period->add_option("name", opt.name, "module name")->required();
    period->add_option("--budget", opt.budget, "syzygy steps")->check(CLI::PositiveNumber);
    period->callback(set(run_module_period));

    CLI::App* jcl = app.add_subcommand("jclass", "classes in the Grothendieck module");
    jcl->require_subcommand(1);
    CLI::App* nform = jcl->add_subcommand("normal-form", "normal form of a module class");
    add_common(nform);
    nform->add_option("name", opt.name, "module name")->required();
    nform->add_option("--budget", opt.budget, "search budget")->check(CLI::PositiveNumber);
    nform->callback(set(run_jclass_normal_form));
    CLI::App* jeq = jcl->add_subcommand("equal", "equality of two classes");
    add_common(jeq);
    jeq->add_option("left", opt.left, "first module")->required();
    jeq->add_option("right", opt.right, "second module")->required();
    jeq->add_option("--budget", opt.budget, "search budget")->check(CLI::PositiveNumber);
    jeq->callback(set(run_jclass_equal));
    CLI::App* jt = jcl->add_subcommand("torsion", "torsion certificate for a class");
    add_common(jt);
    jt->add_option("name", opt.name, "module name")->required();
    jt->add_option("--budget", opt.budget, "orbit / closure budget")->check(CLI::PositiveNumber);
    jt->callback(set(run_jclass_torsion));

    CLI11_PARSE(app, argc, argv);

    try {
        return runner(opt);
    } catch (const budget_exceeded& e) {
        if (opt.json) {
            ordered_json j{{"status", "budget_exceeded"}, {"message", e.what()}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cerr << e.what() << "\n";
        }
        return exit_budget;
    } catch (const not_single_class& e) {
        if (opt.json) {
            ordered_json j{{"status", "not_single_class"}, {"message", e.what()}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cerr << e.what() << "\n";
        }
        return exit_budget;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "JSON error: " << e.what() << "\n";
        return exit_input_error;
    } catch (const error& e) {
        std::cerr << e.what() << "\n";
        return exit_input_error;
    }
}
