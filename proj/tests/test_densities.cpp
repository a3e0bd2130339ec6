#include <catch2/catch_amalgamated.hpp>

#include "qortho/densities.hpp"
#include "qortho/rng.hpp"

using namespace qortho;
using Catch::Approx;

TEST_CASE("density point values and domain behavior") {
    DensitySpec fn;
    fn.kind = DensityKind::fN;
    fn.q = QParam(0.0);
    // f_N(x|0) = sqrt(4-x^2)/(2 pi): the normalized Wigner form
    for (double x : {0.0, 0.7, -1.3}) {
        CHECK(density(fn, x) == Approx(std::sqrt(4.0 - x * x) / (2.0 * M_PI)).epsilon(1e-10));
    }
    // outside S(q): 0 by definition
    CHECK(density(fn, 2.5) == 0.0);
    // endpoint: domain error
    CHECK_THROWS_AS(density(fn, 2.0), std::domain_error);
    // q=1 Gaussian branch
    fn.q = QParam(1.0);
    CHECK(density(fn, 0.3) == Approx(std::exp(-0.045) / std::sqrt(2.0 * M_PI)));
    // f_CN at q=1
    DensitySpec cn;
    cn.kind = DensityKind::fCN;
    cn.q = QParam(1.0);
    cn.y = 0.5;
    cn.rho = 0.6;
    const double v = 1.0 - 0.36, d = 0.3 - 0.6 * 0.5;
    CHECK(density(cn, 0.3) == Approx(std::exp(-d * d / (2 * v)) / std::sqrt(2 * M_PI * v)));
}

TEST_CASE("all densities integrate to 1") {
    for (double q : {-0.5, 0.0, 0.5, 0.9}) {
        DensitySpec ds;
        ds.q = QParam(q);
        ds.a = 0.6;
        ds.y = 0.4 * ds.q.support_halfwidth();
        ds.rho = 0.5;
        ds.beta = 0.55;
        for (auto kind : {DensityKind::fN, DensityKind::fbN, DensityKind::fCN, DensityKind::fR}) {
            ds.kind = kind;
            auto r = integrate_against_density(ds, [](double) { return 1.0; });
            INFO("q=" << q << " kind=" << int(kind));
            CHECK(r.value == Approx(1.0).margin(1e-6));
        }
    }
}

TEST_CASE("fCN special cases") {
    const QParam q(0.5);
    // rho = 0 collapses to f_N
    DensitySpec cn;
    cn.kind = DensityKind::fCN;
    cn.q = q;
    cn.y = 0.4;
    cn.rho = 0.0;
    DensitySpec fn;
    fn.kind = DensityKind::fN;
    fn.q = q;
    CHECK(density(cn, 0.8) == Approx(density(fn, 0.8)).epsilon(1e-12));
    // f_R = (1 - rho) f_CN(x|x,rho,q)
    cn.rho = 0.45;
    cn.y = 0.8;
    DensitySpec fr;
    fr.kind = DensityKind::fR;
    fr.q = q;
    fr.beta = 0.45;
    CHECK((1.0 - 0.45) * density(cn, 0.8) == Approx(density(fr, 0.8)).epsilon(1e-10));
}

TEST_CASE("orthogonality integrals reproduce stated norms") {
    // q-Hermite: <H_3,H_3> = [3]_q!, <H_3,H_1> = 0
    FamilySpec spec;
    spec.family = Family::qHermite_H;
    spec.q = QParam(0.5);
    auto r = orthogonality_integral(spec, 3, 3);
    CHECK(r.value == Approx(2.625).margin(1e-6));
    r = orthogonality_integral(spec, 3, 1);
    CHECK(r.value == Approx(0.0).margin(1e-6));
    // Chebyshev T: n=m=0 -> 1; n=m=2 -> 1/2; n!=m -> 0
    spec.family = Family::Cheb_T;
    CHECK(orthogonality_integral(spec, 0, 0).value == Approx(1.0).margin(1e-9));
    CHECK(orthogonality_integral(spec, 2, 2).value == Approx(0.5).margin(1e-9));
    CHECK(orthogonality_integral(spec, 2, 4).value == Approx(0.0).margin(1e-9));
    // ASC P with f_CN: [n]_q! (rho^2)_n
    spec.family = Family::ASC_P;
    spec.q = QParam(0.5);
    spec.y = 0.4;
    spec.rho = 0.45;
    r = orthogonality_integral(spec, 3, 3);
    CHECK(r.value == Approx(q_factorial(3, 0.5) * q_pochhammer(0.45 * 0.45, 0.5, 3)).margin(1e-6));
    CHECK(orthogonality_integral(spec, 3, 2).value == Approx(0.0).margin(1e-6));
    // Ultra R with f_R
    spec.family = Family::Ultra_R;
    spec.beta = 0.55;
    r = orthogonality_integral(spec, 3, 3);
    const double expect = (1.0 - 0.55) * q_pochhammer(0.55 * 0.55, 0.5, 3) * q_factorial(3, 0.5) /
                          (1.0 - 0.55 * std::pow(0.5, 3));
    CHECK(r.value == Approx(expect).epsilon(1e-6));
    // lower-case little-h against rescaled f_N: (q)_n
    spec.family = Family::qHermite_h;
    r = orthogonality_integral(spec, 4, 4);
    CHECK(r.value == Approx(q_pochhammer(0.5, 0.5, 4)).epsilon(1e-6));
    // classical Hermite at q=1: n!
    spec.family = Family::Hermite_H;
    spec.q = QParam(1.0);
    CHECK(orthogonality_integral(spec, 5, 5).value == Approx(120.0).epsilon(1e-8));
}

TEST_CASE("Chapman-Kolmogorov") {
    // rho1 = 0: first factor independent of y
    CHECK(chapman_kolmogorov_check(0.5, -0.3, 0.0, 0.4, QParam(0.4)) < 1e-6);
    // q=1 Gaussian semigroup
    CHECK(chapman_kolmogorov_check(0.4, -0.8, 0.5, -0.4, QParam(1.0)) < 1e-8);
    // random points at q=0.4
    Rng rng(9);
    for (int i = 0; i < 4; ++i) {
        const double c = QParam(0.4).support_halfwidth();
        const double x = rng.uniform(-0.6, 0.6) * c, z = rng.uniform(-0.6, 0.6) * c;
        const double r1 = rng.uniform(-0.7, 0.7), r2 = rng.uniform(-0.7, 0.7);
        CHECK(chapman_kolmogorov_check(x, z, r1, r2, QParam(0.4)) < 1e-5);
    }
}

TEST_CASE("eigen integrals") {
    // n=1, q=1: int x Gaussian(rho y, 1-rho^2) dx = rho y
    auto r = eigen_integral_checks(1, 0.7, 0.4, QParam(1.0));
    CHECK(r.hermite_residual < 1e-8);
    // rho = 0: both integrals vanish for n >= 1
    r = eigen_integral_checks(3, 0.7, 0.0, QParam(0.5));
    CHECK(r.hermite_residual < 1e-8);
    CHECK(r.asc_residual < 1e-8);
    // n=3, q=0.5, rho=0.4, y=0.7
    r = eigen_integral_checks(3, 0.7, 0.4, QParam(0.5));
    CHECK(r.hermite_residual < 1e-5);
    CHECK(r.asc_residual < 1e-5);
}

TEST_CASE("density parameter validation") {
    DensitySpec ds;
    ds.kind = DensityKind::fbN;
    ds.q = QParam(0.5);
    ds.a = 1.2;
    CHECK_THROWS_AS(density(ds, 0.1), std::domain_error);
    ds.kind = DensityKind::fCN;
    ds.a = 0.0;
    ds.rho = 1.0;
    CHECK_THROWS_AS(density(ds, 0.1), std::domain_error);
    ds.kind = DensityKind::fR;
    ds.rho = 0.0;
    ds.beta = -1.0;
    CHECK_THROWS_AS(density(ds, 0.1), std::domain_error);
}
