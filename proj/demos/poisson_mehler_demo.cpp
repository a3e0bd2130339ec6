// Minimal library walkthrough: evaluate a q-Hermite polynomial, sum the
// Poisson-Mehler kernel both ways, and integrate an orthogonality pairing.

#include <cstdio>

#include "qortho/densities.hpp"
#include "qortho/kernels.hpp"

int main() {
    using namespace qortho;

    QParam q(0.5);
    FamilyParams<double> p{};
    p.q = q.q;
    std::printf("H_3(1.0 | q=0.5) = %.12g\n", family_eval(Family::qHermite_H, 3, 1.0, p));

    auto pm = poisson_mehler(0.4, -0.3, 0.6, q);
    std::printf("Poisson-Mehler: series %.12g vs product %.12g (%d terms, residual %.2e)\n",
                pm.series_value, pm.closed_value, pm.terms_used, pm.residual);

    FamilySpec spec;
    spec.family = Family::qHermite_H;
    spec.q = q;
    auto ortho = orthogonality_integral(spec, 3, 3);
    std::printf("<H_3,H_3>_{f_N} = %.12g (expected [3]_q! = %.12g)\n", ortho.value, ortho.expected);
    return 0;
}
