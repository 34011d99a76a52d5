#include <catch2/catch_amalgamated.hpp>

#include <fstream>

#include "syzygy/descriptor.hpp"

using namespace artin;
using artin::ordered_json;

#ifndef SAMPLES_DIR
#define SAMPLES_DIR "samples"
#endif

namespace {

ordered_json load(const std::string& name) {
    std::ifstream in(std::string(SAMPLES_DIR) + "/" + name);
    REQUIRE(in.good());
    return ordered_json::parse(in);
}

} // namespace

TEST_CASE("sample descriptors parse", "[descriptor]") {
    auto job = descriptor::parse_jobspec(load("hypersurface_f5.json"));
    CHECK(job.algebra->dim() == 4);
    CHECK(job.modules.size() == 6);
    CHECK(job.seed == 0);
    // direct_sum with a name reference and an inline descriptor
    const Module* sum = nullptr;
    for (auto& [name, m] : job.modules)
        if (name == "Rx_plus_R") sum = &m;
    REQUIRE(sum);
    CHECK(sum->dim() == 5);

    auto ci = descriptor::parse_jobspec(load("complete_intersection_f3.json"));
    CHECK(ci.algebra->dim() == 4);
    for (auto& [name, m] : ci.modules) {
        if (name == "omega_k") CHECK(m.dim() == 3); // Omega k is the maximal ideal
        if (name == "m") CHECK(m.dim() == 3);
    }

    auto sc = descriptor::parse_jobspec(load("structure_constants_f2.json"));
    CHECK(sc.algebra->dim() == 2);
    CHECK(sc.algebra->profile().is_gorenstein);
}

TEST_CASE("descriptor errors carry locations", "[descriptor]") {
    ordered_json bad = ordered_json::parse(R"({
        "algebra": {"p": 5, "mode": "polynomial_quotient", "variables": ["x"], "relations": ["x^3"]},
        "modules": {"M": {"type": "nonsense"}}
    })");
    try {
        descriptor::parse_jobspec(bad);
        FAIL("expected a validation error");
    } catch (const validation_error& e) {
        CHECK(std::string(e.what()).find("modules.M") != std::string::npos);
    }

    ordered_json missing_ref = ordered_json::parse(R"({
        "algebra": {"p": 5, "variables": ["x"], "relations": ["x^3"]},
        "modules": {"S": {"type": "direct_sum", "summands": ["nope"]}}
    })");
    CHECK_THROWS_AS(descriptor::parse_jobspec(missing_ref), validation_error);

    ordered_json no_algebra = ordered_json::parse(R"({"modules": {}})");
    CHECK_THROWS_AS(descriptor::parse_jobspec(no_algebra), validation_error);
}

TEST_CASE("raw module descriptors validate the action", "[descriptor]") {
    ordered_json root = ordered_json::parse(R"({
        "algebra": {"p": 2, "variables": ["x"], "relations": ["x^2"]},
        "modules": {
            "good": {"type": "raw", "action": [[[1]], [[0]]]},
            "freeish": {"type": "free", "rank": 2}
        }
    })");
    auto job = descriptor::parse_jobspec(root);
    CHECK(job.modules[0].second.dim() == 1);
    CHECK(job.modules[1].second.dim() == 4);

    ordered_json bad = ordered_json::parse(R"({
        "algebra": {"p": 2, "variables": ["x"], "relations": ["x^2"]},
        "modules": {"bad": {"type": "raw", "action": [[[1]], [[1]]]}}
    })");
    CHECK_THROWS_AS(descriptor::parse_jobspec(bad), validation_error);
}

TEST_CASE("serializers produce the documented shapes", "[descriptor]") {
    auto a = quotient_from_polynomials(5, {"x"}, {"x^4"});
    ClassRegistry reg(a, 0);
    Module rx = cyclic_module(a, {a->element("x")});

    ordered_json prof = descriptor::profile_json(*a);
    CHECK(prof["p"] == 5);
    CHECK(prof["is_gorenstein"] == true);
    CHECK(prof["is_hypersurface"] == true);
    CHECK(prof["socle_dim"] == 1);

    ordered_json mj = descriptor::module_json(rx);
    CHECK(mj["dim"] == 1);
    CHECK(mj["action"].size() == 4);

    JElement x = j_class(rx, reg);
    ordered_json xj = descriptor::jelement_json(x, reg);
    REQUIRE(xj["classes"].size() == 1);
    CHECK(xj["classes"][0]["coefficient"] == 1);
    CHECK(xj["classes"][0].contains("id"));
    CHECK(xj["classes"][0].contains("representative_dims"));

    LaurentPoly ann = LaurentPoly::t_power_minus_one(2);
    ordered_json lj = descriptor::laurent_json(ann);
    CHECK(lj["0"] == -1);
    CHECK(lj["2"] == 1);

    TorsionVerdict v = torsion_test(x, 8, reg);
    ordered_json tj = descriptor::torsion_json(v);
    CHECK(tj["status"] == "torsion");
    CHECK(tj["annihilator"]["2"] == 1);

    Resolution res = minimal_resolution(rx, 4);
    ordered_json rj = descriptor::resolution_json(res);
    CHECK(rj["betti"].size() == 5);
    CHECK(rj["dims"].size() == 5);
}
