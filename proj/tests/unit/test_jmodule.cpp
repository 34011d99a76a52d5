#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "syzygy/jmodule.hpp"
#include "testutil.hpp"

using namespace artin;

namespace {

AlgebraPtr f2x2() { return quotient_from_polynomials(2, {"x"}, {"x^2"}); }
AlgebraPtr f5x4() { return quotient_from_polynomials(5, {"x"}, {"x^4"}); }
AlgebraPtr ci3() { return quotient_from_polynomials(3, {"x", "y"}, {"x^2", "y^2"}); }
AlgebraPtr socle2() { return quotient_from_polynomials(2, {"x", "y"}, {"x^2", "x*y", "y^2"}); }

LaurentPoly t_power(int n) { return LaurentPoly::monomial(n, 1); }

} // namespace

TEST_CASE("classes of free and decomposable modules", "[jmodule]") {
    auto a = f5x4();
    ClassRegistry reg(a, 0);
    CHECK(j_class(Module::free(a, 5), reg).is_zero());
    CHECK(j_class(Module::free(a, 0), reg).is_zero());

    Module rx = cyclic_module(a, {a->element("x")});
    JElement x = j_class(direct_sum(rx, Module::free(a, 1)), reg);
    REQUIRE(x.coeffs().size() == 1);
    CHECK(x.coeffs().begin()->second == 1);
    CHECK(j_equal(x, j_class(rx, reg)));

    auto b = socle2();
    ClassRegistry regb(b, 0);
    Module k = Module::residue_field(b);
    JElement ok = j_class(syzygy(k), regb);
    REQUIRE(ok.coeffs().size() == 1);
    CHECK(ok.coeffs().begin()->second == 2); // Omega k = k^2
    CHECK(ok.coeffs().begin()->first == j_class(k, regb).coeffs().begin()->first);
}

TEST_CASE("applying Laurent polynomials", "[jmodule]") {
    auto a = f2x2();
    ClassRegistry reg(a, 0);
    JElement k = j_class(Module::residue_field(a), reg);
    CHECK(j_apply(LaurentPoly::one(), k, reg) == k);
    CHECK(j_apply(t_power(1), k, reg) == k);  // cosyzygy of k is k
    CHECK(j_apply(t_power(-1), k, reg) == k); // syzygy of k is k
    CHECK(j_apply(LaurentPoly::t_power_minus_one(1), k, reg).is_zero());

    auto b = socle2();
    ClassRegistry regb(b, 0);
    JElement kb = j_class(Module::residue_field(b), regb);
    CHECK(j_apply(t_power(-1), kb, regb) == kb.scaled(2)); // t^{-1}[k] = e[k], e = 2
}

TEST_CASE("normal-form equality", "[jmodule]") {
    auto a = f5x4();
    ClassRegistry reg(a, 0);
    Module rx = cyclic_module(a, {a->element("x")});
    CHECK(j_equal(j_class(direct_sum(rx, Module::free(a, 2)), reg), j_class(rx, reg)));
    CHECK_FALSE(j_equal(j_class(Module::residue_field(a), reg), JElement::zero(a)));
    CHECK(j_equal(j_class(syzygy(rx, 2), reg), j_class(rx, reg))); // period two
}

TEST_CASE("orbits", "[jmodule]") {
    auto a = f2x2();
    ClassRegistry reg(a, 0);
    int kid = reg.canonical_id(Module::residue_field(a));
    Orbit o = orbit(kid, 8, reg);
    REQUIRE(std::holds_alternative<FiniteOrbit>(o));
    CHECK(std::get<FiniteOrbit>(o).cycle == std::vector<int>{kid});

    auto b = f5x4();
    ClassRegistry regb(b, 0);
    int rxid = regb.canonical_id(cyclic_module(b, {b->element("x")}));
    Orbit ob = orbit(rxid, 8, regb);
    REQUIRE(std::holds_alternative<FiniteOrbit>(ob));
    const auto& cycle = std::get<FiniteOrbit>(ob).cycle;
    REQUIRE(cycle.size() == 2);
    CHECK(cycle[0] == rxid);
    CHECK(regb.entry(cycle[1]).representative.dim() == 3); // R/(x^3)

    auto ci = ci3();
    ClassRegistry regc(ci, 0);
    int mid = regc.canonical_id(maximal_ideal_module(ci));
    Orbit oc = orbit(mid, 6, regc);
    CHECK(std::holds_alternative<OrbitBudgetExceeded>(oc));
}

TEST_CASE("orbit cycles wrap under the t-action", "[jmodule]") {
    auto a = f5x4();
    ClassRegistry reg(a, 0);
    for (int i = 1; i <= 3; ++i) {
        int id = reg.canonical_id(cyclic_module(a, {a->element("x^" + std::to_string(i))}));
        Orbit o = orbit(id, 8, reg);
        REQUIRE(std::holds_alternative<FiniteOrbit>(o));
        const auto& cycle = std::get<FiniteOrbit>(o).cycle;
        for (std::size_t s = 0; s < cycle.size(); ++s) {
            const auto& img = reg.cosyzygy_classes(cycle[s]);
            REQUIRE(img.size() == 1);
            CHECK(img[0].first == cycle[(s + 1) % cycle.size()]);
        }
    }
}

TEST_CASE("elements over different algebras cannot be compared", "[jmodule]") {
    auto a = f5x4();
    auto b = ci3();
    ClassRegistry ra(a, 0), rb(b, 0);
    JElement x = j_class(Module::residue_field(a), ra);
    JElement y = j_class(Module::residue_field(b), rb);
    CHECK_THROWS_AS(j_equal(x, y), error);
    CHECK_THROWS_AS(x + y, error);
}

TEST_CASE("torsion certificates", "[jmodule]") {
    auto a = f5x4();
    ClassRegistry reg(a, 0);
    CHECK(certified_torsion(torsion_test(JElement::zero(a), 8, reg)));
    CHECK(std::get<TorsionCertificate>(torsion_test(JElement::zero(a), 8, reg)).annihilator ==
          LaurentPoly::one());

    JElement rx = j_class(cyclic_module(a, {a->element("x")}), reg);
    TorsionVerdict v = torsion_test(rx, 8, reg);
    REQUIRE(certified_torsion(v));
    const auto& cert = std::get<TorsionCertificate>(v);
    CHECK(cert.annihilator == LaurentPoly::t_power_minus_one(2));
    CHECK(cert.method == "orbit");
    CHECK(verify_annihilator(cert.annihilator, rx, reg));

    auto b = socle2();
    ClassRegistry regb(b, 0);
    JElement k = j_class(Module::residue_field(b), regb);
    TorsionVerdict vb = torsion_test(k, 8, regb);
    REQUIRE(certified_torsion(vb));
    const auto& certb = std::get<TorsionCertificate>(vb);
    CHECK(certb.method == "recurrence");
    CHECK(certb.annihilator == LaurentPoly::one() - LaurentPoly::monomial(1, 2)); // 1 - 2t
    CHECK(verify_annihilator(certb.annihilator, k, regb));

    auto ci = ci3();
    ClassRegistry regc(ci, 0);
    TorsionVerdict vc = torsion_test(j_class(Module::residue_field(ci), regc), 8, regc);
    REQUIRE_FALSE(certified_torsion(vc));
    const auto& evidence = std::get<TorsionBudgetExceeded>(vc).betti_evidence;
    REQUIRE(evidence.size() == 1);
    const auto& betti = evidence.begin()->second;
    for (std::size_t i = 0; i + 1 < betti.size(); ++i) CHECK(betti[i] < betti[i + 1]);
}

TEST_CASE("hypersurface reports", "[jmodule]") {
    auto a = f5x4();
    ClassRegistry reg(a, 0);
    std::vector<std::pair<std::string, Module>> samples;
    for (int i = 1; i <= 3; ++i)
        samples.emplace_back("Rx" + std::to_string(i),
                             cyclic_module(a, {a->element("x^" + std::to_string(i))}));
    HypersurfaceReport r = hypersurface_check(a, samples, 8, reg);
    CHECK(r.is_hypersurface);
    CHECK(r.pass);
    for (auto& s : r.samples) CHECK(s.status == "holds");

    auto ci = ci3();
    ClassRegistry regc(ci, 0);
    std::vector<std::pair<std::string, Module>> sc{{"k", Module::residue_field(ci)}};
    HypersurfaceReport rc = hypersurface_check(ci, sc, 6, regc);
    CHECK_FALSE(rc.is_hypersurface);
    CHECK(rc.is_gorenstein);
    CHECK(rc.samples[0].status == "fails"); // (1 - t^2)[k] != 0
    CHECK(rc.residue_field_torsion == "not_certified");
    CHECK(rc.pass);

    auto field = quotient_from_polynomials(5, {}, {});
    ClassRegistry regf(field, 0);
    std::vector<std::pair<std::string, Module>> sf{{"k", Module::residue_field(field)},
                                                   {"R2", Module::free(field, 2)}};
    HypersurfaceReport rf = hypersurface_check(field, sf, 4, regf);
    CHECK(rf.is_hypersurface); // e = 0
    CHECK(rf.pass);            // all classes are zero
}

TEST_CASE("searching for periodic modules", "[jmodule]") {
    auto a = f5x4();
    ClassRegistry reg(a, 0);
    auto hit = find_periodic_module(a, 130, 8, reg);
    REQUIRE(hit);
    CHECK(hit->second <= 2);

    auto ci = ci3();
    ClassRegistry regc(ci, 0);
    auto hitc = find_periodic_module(ci, 10, 8, regc);
    REQUIRE(hitc);
    CHECK(hitc->second == 1); // R/(x) has period one

    auto b = socle2();
    ClassRegistry regb(b, 0);
    CHECK_FALSE(find_periodic_module(b, 8, 6, regb).has_value());

    auto field = quotient_from_polynomials(3, {}, {});
    ClassRegistry regf(field, 0);
    CHECK_THROWS_AS(find_periodic_module(field, 4, 4, regf), validation_error);
}

TEST_CASE("J-module laws on random modules", "[jmodule]") {
    for (auto& a : {f2x2(), f5x4(), ci3()}) {
        ClassRegistry reg(a, 0);
        std::mt19937_64 rng(41);
        for (int trial = 0; trial < 6; ++trial) {
            Module m = testutil::random_module(a, rng, 2);
            Module n = testutil::random_module(a, rng, 2);
            // additivity
            CHECK(j_equal(j_class(direct_sum(m, n), reg), j_class(m, reg) + j_class(n, reg)));
            // [M] = t [Omega M]
            CHECK(j_equal(j_class(m, reg), j_apply(t_power(1), j_class(syzygy(m), reg), reg)));
            // cosyzygy relation on stripped modules
            Module s = strip_free_summands(m).module;
            CHECK(j_equal(j_class(s, reg), j_apply(t_power(-1), j_class(cosyzygy(s), reg), reg)));
            // zero law
            CHECK(j_class(m, reg).is_zero() == is_pd_finite(m));
        }
    }
}

TEST_CASE("torsion matches periodicity over Gorenstein rings", "[jmodule]") {
    for (auto& a : {f2x2(), f5x4(), ci3()}) {
        ClassRegistry reg(a, 0);
        std::mt19937_64 rng(43);
        for (int trial = 0; trial < 5; ++trial) {
            Module m = testutil::random_module(a, rng, 2);
            TorsionVerdict t = torsion_test(j_class(m, reg), 8, reg);
            PeriodicityVerdict p = detect_periodicity(m, 8, reg);
            CHECK(certified_torsion(t) == certified_periodic(p));
            if (certified_torsion(t))
                CHECK(verify_annihilator(std::get<TorsionCertificate>(t).annihilator, j_class(m, reg), reg));
        }
    }
}

TEST_CASE("direct-sum torsion", "[jmodule]") {
    auto a = f5x4();
    ClassRegistry reg(a, 0);
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 10; ++trial) {
        Module m = testutil::random_module(a, rng, 2);
        Module n = testutil::random_module(a, rng, 2);
        bool whole = certified_torsion(torsion_test(j_class(direct_sum(m, n), reg), 10, reg));
        bool parts = certified_torsion(torsion_test(j_class(m, reg), 10, reg)) &&
                     certified_torsion(torsion_test(j_class(n, reg), 10, reg));
        CHECK(whole == parts);
    }
}
