#include <catch2/catch_amalgamated.hpp>

#include "qortho/expansions.hpp"
#include "qortho/rational.hpp"
#include "qortho/rng.hpp"

using namespace qortho;
using Catch::Approx;

namespace {

// Rational parameter set used by the exact checks.
IdentityParams<Rational> rational_params(const Rational& q, int n, int m, int k) {
    IdentityParams<Rational> P;
    P.q = q;
    P.p = Rational(1, 3);
    P.a = Rational(2, 5);
    P.b = Rational(3, 4);
    P.y = Rational(1, 3);
    P.z = Rational(-2, 5);
    P.rho = Rational(1, 2);
    P.r = Rational(2, 3);
    P.t = Rational(2, 5);
    P.beta = Rational(2, 5);
    P.gamma = Rational(1, 4);
    P.n = n;
    P.m = m;
    P.k = k;
    return P;
}

}  // namespace

TEST_CASE("spec examples: connection coefficients") {
    // T_2 = (U_2 - U_0)/2: coefficients (1/2, -1/2)
    IdentityParams<double> P;
    P.q = 0.5;
    P.n = 2;
    auto c = connection_coeffs("TnaU", P);
    REQUIRE(c.size() == 2);
    CHECK(c[0] == Approx(0.5));
    CHECK(c[1] == Approx(-0.5));
    // H(p)->H(q) with p=q: coefficient vector (1, 0, 0, ...)
    P.n = 6;
    P.p = 0.5;
    auto ch = connection_coeffs("HnaH", P);
    CHECK(ch[0] == Approx(1.0));
    for (size_t i = 1; i < ch.size(); ++i) CHECK(ch[i] == Approx(0.0).margin(1e-14));
}

TEST_CASE("spec examples: PnaH / odwrocenie special cases") {
    // PnaH at rho=0: P_n = H_n
    IdentityParams<double> P;
    P.q = 0.4;
    P.n = 5;
    P.rho = 0.0;
    P.y = 0.7;
    auto chk = check_identity("PnaH", P);
    CHECK(chk.residual() < 1e-13);
    auto c = connection_coeffs("PnaH", P);
    for (size_t j = 0; j + 1 < c.size(); ++j) CHECK(c[j] == Approx(0.0).margin(1e-14));
    CHECK(c.back() == Approx(1.0));
    // odwrocenie at n=1 by hand: (y - t z)/(1-t^2) = H_1(y) - t P_1(z|y,t)/(1-t^2)
    P.n = 1;
    P.t = 0.3;
    P.z = 0.6;
    P.y = 0.2;
    auto chk2 = check_identity("odwrocenie", P);
    CHECK(chk2.residual() < 1e-14);
}

TEST_CASE("linearization spec examples") {
    // HH with m=0: single coefficient 1
    IdentityParams<double> P;
    P.q = 0.5;
    P.n = 4;
    P.m = 0;
    auto c = linearize("identity", P);
    REQUIRE(c.size() == 1);
    CHECK(c[0] == Approx(1.0));
    // H_1^2 = H_2 + [1]_q! H_0
    P.n = P.m = 1;
    c = linearize("identity", P);
    REQUIRE(c.size() == 2);
    CHECK(c[0] == Approx(1.0));
    CHECK(c[1] == Approx(1.0));
    // triple with k=0 reduces to (identity)
    IdentityParams<double> P3 = P;
    P3.n = 3;
    P3.m = 2;
    P3.k = 0;
    auto chk3 = check_identity("identyty3", P3);
    CHECK(chk3.residual() < 1e-12);
}

TEST_CASE("annihilation sum") {
    // n=1, m=0 -> 0: B_1 H_0 + H_1 = -x + x
    CHECK(annihilation_sum(1, 0, 0.5, 0.8) == Approx(0.0).margin(1e-14));
    // n=0 -> H_m
    FamilyParams<double> p{};
    p.q = 0.5;
    CHECK(annihilation_sum(0, 4, 0.5, 0.8) ==
          Approx(family_eval(Family::qHermite_H, 4, 0.8, p)).margin(1e-13));
    // closed form for n <= m, zero for n > m (scaled)
    Rng rng(7);
    for (int i = 0; i < 30; ++i) {
        const int n = int(rng.next_u64() % 7), m = int(rng.next_u64() % 7);
        const double q = rng.uniform(-0.8, 0.9), x = rng.uniform(-1.5, 1.5);
        const double lhs = annihilation_sum(n, m, q, x);
        const double rhs = annihilation_expected(n, m, q, x);
        const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
        CHECK(std::abs(lhs - rhs) < 1e-9 * scale);
    }
    // exact rational: q = 1/2
    CHECK(annihilation_sum(2, 5, Rational(1, 2), Rational(1, 3)) ==
          annihilation_expected(2, 5, Rational(1, 2), Rational(1, 3)));
}

TEST_CASE("every registry identity float-checks at random points") {
    Rng rng(13);
    for (const std::string& id : identity_registry()) {
        for (int rep = 0; rep < 4; ++rep) {
            IdentityParams<double> P;
            P.q = rng.uniform(-0.6, 0.9);
            P.p = rng.uniform(-0.7, 0.7);
            P.a = rng.uniform(-0.7, 0.7);
            P.b = 0.3 + rng.uniform(0.0, 0.6);
            P.y = rng.uniform(-1.2, 1.2);
            P.z = rng.uniform(-1.2, 1.2);
            P.rho = 0.2 + rng.uniform(0.0, 0.6);
            P.r = 0.25 + rng.uniform(0.0, 0.6);
            P.t = rng.uniform(-0.7, 0.7);
            P.beta = 0.15 + rng.uniform(0.0, 0.65);
            P.gamma = rng.uniform(-0.8, 0.8);
            P.n = 1 + int(rng.next_u64() % 6);
            P.m = 1 + int(rng.next_u64() % 6);
            P.k = 1 + int(rng.next_u64() % 3);
            auto chk = check_identity(id, P);
            INFO(id << " n=" << P.n << " m=" << P.m << " k=" << P.k << " q=" << P.q);
            CHECK(chk.residual() <= 1e-9 * chk.scale());
        }
    }
}

TEST_CASE("exact rational identity checks at q = 1/2, small indices") {
    const Rational q(1, 2);
    for (const std::string& id : identity_registry()) {
        auto P = rational_params(q, 3, 2, 2);
        auto chk = check_identity(id, P);
        INFO(id);
        CHECK(chk.exact_equal());
    }
}

TEST_CASE("composition: HnaR then RnaH is the identity map") {
    const double q = 0.45, beta = 0.6;
    FamilyParams<double> fp{};
    fp.q = q;
    for (int n = 1; n <= 10; ++n) {
        // expand H_n in R_{n-2k}(.|beta), then each R back to H: must give e_n
        IdentityParams<double> P;
        P.q = q;
        P.beta = beta;
        P.gamma = beta;  // RnaH uses gamma as the R parameter
        P.n = n;
        auto h2r = connection_coeffs("HnaR", P);
        std::vector<double> acc(static_cast<size_t>(n) + 1, 0.0);
        for (int k = 0; k <= n / 2; ++k) {
            IdentityParams<double> P2 = P;
            P2.n = n - 2 * k;
            auto r2h = connection_coeffs("RnaH", P2);
            for (int j = 0; j <= (n - 2 * k) / 2; ++j)
                acc[static_cast<size_t>(n - 2 * k - 2 * j)] +=
                    h2r[static_cast<size_t>(k)] * r2h[static_cast<size_t>(j)];
        }
        for (int d = 0; d <= n; ++d) {
            const double expect = (d == n) ? 1.0 : 0.0;
            CHECK(acc[static_cast<size_t>(d)] == Approx(expect).margin(1e-10));
        }
    }
}

TEST_CASE("identyty2 inverts identity") {
    // expanding H_{n+m} via identyty2 then re-linearizing each product via
    // identity returns the basis vector e_{n+m}
    const double q = 0.35;
    for (int n = 1; n <= 4; ++n) {
        for (int m = 1; m <= 4; ++m) {
            IdentityParams<double> P;
            P.q = q;
            P.n = n;
            P.m = m;
            auto inv = linearize("identyty2", P);
            std::vector<double> acc(static_cast<size_t>(n + m) + 1, 0.0);
            for (int k = 0; k <= std::min(n, m); ++k) {
                IdentityParams<double> P2;
                P2.q = q;
                P2.n = n - k;
                P2.m = m - k;
                auto lin = linearize("identity", P2);
                for (int j = 0; j <= std::min(n - k, m - k); ++j)
                    acc[static_cast<size_t>(n + m - 2 * k - 2 * j)] +=
                        inv[static_cast<size_t>(k)] * lin[static_cast<size_t>(j)];
            }
            for (int d = 0; d <= n + m; ++d) {
                const double expect = (d == n + m) ? 1.0 : 0.0;
                CHECK(acc[static_cast<size_t>(d)] == Approx(expect).margin(1e-10));
            }
        }
    }
}

TEST_CASE("domain errors") {
    IdentityParams<double> P;
    P.q = 0.5;
    P.n = 3;
    P.rho = 0.0;
    CHECK_THROWS_AS(check_identity("PnabH", P), std::domain_error);
    P.r = 0.0;
    CHECK_THROWS_AS(check_identity("PnaP", P), std::domain_error);
    P.beta = 0.0;
    CHECK_THROWS_AS(connection_coeffs("RnaR", P), std::domain_error);
    CHECK_THROWS_AS(check_identity("nonsense", P), std::invalid_argument);
}

TEST_CASE("BnaH contraction against coeffs (spec example)") {
    // B->H, n=2, q=0.5: contracting the BnaH coefficients against H-coeffs
    // reproduces coeffs(qInvHermite_B, 2)
    IdentityParams<double> P;
    P.q = 0.5;
    P.n = 2;
    auto c = connection_coeffs("BnaH", P);
    FamilyParams<double> fp{};
    fp.q = 0.5;
    CoeffPoly<double> acc;
    for (size_t k = 0; k < c.size(); ++k)
        acc += c[k] * family_coeffs(Family::qHermite_H, 2 - 2 * int(k), fp);
    auto direct = family_coeffs(Family::qInvHermite_B, 2, fp);
    CHECK(acc.max_abs_coeff_diff(direct) < 1e-14);
    // B_2 = q x^2 + 1
    CHECK(direct.coeff(0) == Approx(1.0));
    CHECK(direct.coeff(2) == Approx(0.5));
}
