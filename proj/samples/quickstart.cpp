// Builds the hypersurface F_5[x]/(x^4), walks the resolution of R/(x), and
// certifies that its class is torsion.

#include <iostream>

#include "syzygy/syzygy.hpp"

int main() {
    using namespace artin;

    AlgebraPtr a = quotient_from_polynomials(5, {"x"}, {"x^4"});
    const LocalProfile& profile = a->profile();
    std::cout << "F_5[x]/(x^4): dim " << a->dim() << ", Gorenstein " << profile.is_gorenstein
              << ", hypersurface " << profile.is_hypersurface << "\n";

    Module rx = cyclic_module(a, {a->element("x")});
    Resolution res = minimal_resolution(rx, 6);
    std::cout << "betti of R/(x):";
    for (auto b : res.betti) std::cout << " " << b;
    std::cout << "\n";

    ClassRegistry registry(a, /*seed=*/0);
    PeriodicityVerdict period = detect_periodicity(rx, 8, registry);
    if (certified_periodic(period))
        std::cout << "R/(x) is periodic with period " << std::get<PeriodicWitness>(period).period << "\n";

    TorsionVerdict torsion = torsion_test(j_class(rx, registry), 8, registry);
    if (certified_torsion(torsion)) {
        const auto& cert = std::get<TorsionCertificate>(torsion);
        std::cout << "annihilator of [R/(x)]: " << cert.annihilator.to_string() << "\n";
        std::cout << "re-checked: " << verify_annihilator(cert.annihilator, j_class(rx, registry), registry) << "\n";
    }
    return 0;
}
