#include <catch2/catch_amalgamated.hpp>

#include "qortho/qcore.hpp"
#include "qortho/qhyper.hpp"
#include "qortho/rng.hpp"

using namespace qortho;
using Catch::Approx;

TEST_CASE("series truncates when a numerator parameter is 1") {
    PhiSpec spec;
    spec.num = {cplx(1.0, 0.0), cplx(0.4, 0.0)};
    spec.den = {cplx(0.3, 0.0)};
    spec.q = QParam(0.5);
    spec.argument = cplx(0.7, 0.0);
    auto r = phi(spec);
    CHECK(r.value.real() == Approx(1.0));
    CHECK(r.converged);
}

TEST_CASE("q-binomial theorem oracle: 1phi0(a;;q,x) = (ax)inf/(x)inf") {
    Rng rng(3);
    for (int i = 0; i < 40; ++i) {
        const double q = rng.uniform(-0.85, 0.85);
        const cplx a(rng.uniform(-0.9, 0.9), rng.uniform(-0.4, 0.4));
        const cplx x(rng.uniform(-0.8, 0.8), rng.uniform(-0.3, 0.3));
        PhiSpec spec;
        spec.num = {a};
        spec.q = QParam(q);
        spec.argument = x;
        auto r = phi(spec);
        const cplx expect = q_pochhammer_inf(a * x, spec.q).value / q_pochhammer_inf(x, spec.q).value;
        CHECK(std::abs(r.value - expect) < 1e-10 * (1.0 + std::abs(expect)));
    }
}

TEST_CASE("term-ratio computation matches direct term products") {
    Rng rng(5);
    for (int i = 0; i < 50; ++i) {
        const double q = rng.uniform(-0.8, 0.8);
        PhiSpec spec;
        const int jn = 1 + int(rng.next_u64() % 3), kn = 1 + int(rng.next_u64() % 3);
        for (int j = 0; j < jn; ++j)
            spec.num.push_back(cplx(rng.uniform(-0.8, 0.8), rng.uniform(-0.2, 0.2)));
        for (int k = 0; k < kn; ++k)
            spec.den.push_back(cplx(rng.uniform(-0.7, 0.7), rng.uniform(-0.2, 0.2)));
        spec.q = QParam(q);
        spec.argument = cplx(rng.uniform(-0.5, 0.5), rng.uniform(-0.2, 0.2));
        auto r = phi(spec);
        // direct from-scratch summation
        cplx direct(0.0, 0.0);
        const int balance = 1 + kn - jn;
        for (int n = 0; n < 60; ++n) {
            cplx term(1.0, 0.0);
            for (const cplx& a : spec.num) term *= q_pochhammer(a, cplx(q), n);
            for (const cplx& b : spec.den) term /= q_pochhammer(b, cplx(q), n);
            term /= q_pochhammer(cplx(q), cplx(q), n);
            cplx extra(1.0, 0.0);
            const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
            const cplx unit = sgn * std::pow(cplx(q), n * (n - 1) / 2);
            for (int u = 0; u < std::abs(balance); ++u) extra *= (balance > 0) ? unit : 1.0 / unit;
            term *= extra * std::pow(spec.argument, n);
            direct += term;
        }
        CHECK(std::abs(r.value - direct) < 1e-11 * (1.0 + std::abs(direct)));
    }
}

TEST_CASE("truncation stability at N vs N+20") {
    PhiSpec spec;
    spec.num = {cplx(0.6, 0.0), cplx(-0.4, 0.0)};
    spec.den = {cplx(0.5, 0.0)};
    spec.q = QParam(0.7);
    spec.argument = cplx(0.55, 0.0);
    TruncationPolicy p1;
    p1.max_terms = 60;
    p1.abs_tol = 1e-30;  // force full run to the cap
    p1.rel_tol = 1e-30;
    TruncationPolicy p2 = p1;
    p2.max_terms = 80;
    const cplx v1 = phi(spec, p1).value;
    const cplx v2 = phi(spec, p2).value;
    CHECK(std::abs(v1 - v2) < 1e-14);
}

TEST_CASE("very_well_poised_W wiring") {
    // construction matches a hand-built phi for m = 4 on random inputs
    Rng rng(7);
    const QParam q(0.45);
    for (int i = 0; i < 10; ++i) {
        const cplx a(rng.uniform(0.05, 0.9), 0.0);
        std::vector<cplx> extras;
        for (int j = 0; j < 5; ++j) extras.push_back(cplx(rng.uniform(-0.7, 0.7), 0.0));
        const cplx z(rng.uniform(-0.6, 0.6), 0.0);
        auto w = very_well_poised_W(4, a, extras, q, z);
        PhiSpec spec;
        const cplx ra = std::sqrt(a);
        spec.num = {a, q.q * ra, -q.q * ra, extras[0], extras[1], extras[2], extras[3], extras[4]};
        spec.den = {ra, -ra};
        for (const cplx& e : extras) spec.den.push_back(q.q * a / e);
        spec.q = q;
        spec.argument = z;
        auto f = phi(spec);
        CHECK(std::abs(w.value - f.value) < 1e-13 * (1.0 + std::abs(f.value)));
    }
    CHECK_THROWS_AS(very_well_poised_W(4, cplx(0.0, 0.0), std::vector<cplx>(5, cplx(0.1, 0.0)),
                                       q, cplx(0.1, 0.0)),
                    std::domain_error);
    CHECK_THROWS_AS(very_well_poised_W(4, cplx(0.5, 0.0), std::vector<cplx>(3, cplx(0.1, 0.0)),
                                       q, cplx(0.1, 0.0)),
                    std::invalid_argument);
}

TEST_CASE("6W5 summation formula") {
    // 6W5(a; b, c, d; q, aq/(bcd)) = (aq, aq/bc, aq/bd, aq/cd)inf /
    //                                (aq/b, aq/c, aq/d, aq/bcd)inf
    const QParam q(0.3);
    const double a = 0.5, b = 0.4, c = -0.3, d = 0.25;
    const double z = a * q.q / (b * c * d);
    REQUIRE(std::abs(z) < 1.0);
    auto w = very_well_poised_W(3, cplx(a), {cplx(b), cplx(c), cplx(d)}, q, cplx(z));
    auto pinf = [&](double v) { return q_pochhammer_inf_real(v, q); };
    const double rhs = pinf(a * q.q) * pinf(a * q.q / (b * c)) * pinf(a * q.q / (b * d)) *
                       pinf(a * q.q / (c * d)) /
                       (pinf(a * q.q / b) * pinf(a * q.q / c) * pinf(a * q.q / d) *
                        pinf(a * q.q / (b * c * d)));
    CHECK(w.value.real() == Approx(rhs).epsilon(1e-9));
    CHECK(std::abs(w.value.imag()) < 1e-12);
}

TEST_CASE("pole guard") {
    PhiSpec spec;
    spec.num = {cplx(0.5, 0.0)};
    spec.den = {cplx(1.0 / 0.5, 0.0)};  // b = q^{-1}
    spec.q = QParam(0.5);
    spec.argument = cplx(0.3, 0.0);
    CHECK_THROWS_AS(phi(spec), std::domain_error);
}
