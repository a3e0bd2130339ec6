#include <catch2/catch_amalgamated.hpp>

#include "qortho/kibble.hpp"
#include "qortho/rng.hpp"

using namespace qortho;
using Catch::Approx;

TEST_CASE("KS params") {
    KSParams ok{0.3, 0.25, -0.35};
    CHECK(ok.gaussian_pd());
    ok.validate();
    KSParams bad{1.1, 0.0, 0.0};
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
    // spec example: rho12=rho13=0.5, rho23=-0.3 satisfies (dod)
    CHECK(KSParams{0.5, 0.5, -0.3}.gaussian_pd() == false);  // 1+2*.5*.5*(-.3)-.25-.25-.09
    CHECK(KSParams{0.5, -0.3, 0.5}.gaussian_pd() == false);
    CHECK(KSParams{0.3, 0.3, 0.3}.gaussian_pd());
}

TEST_CASE("representations agree") {
    Rng rng(3);
    for (double q : {0.0, 0.5}) {
        QParam qp(q);
        for (int i = 0; i < 4; ++i) {
            KSParams ks;
            ks.rho12 = rng.uniform(-0.6, 0.6);
            ks.rho13 = rng.uniform(-0.6, 0.6);
            ks.rho23 = rng.uniform(-0.6, 0.6);
            const double c = qp.support_halfwidth() * 0.7;
            const double x1 = rng.uniform(-c, c), x2 = rng.uniform(-c, c), x3 = rng.uniform(-c, c);
            auto d = kibble_slepian(x1, x2, x3, ks, qp, KSRepresentation::direct_sum);
            auto t1 = kibble_slepian(x1, x2, x3, ks, qp, KSRepresentation::theorem_i);
            auto t2 = kibble_slepian(x1, x2, x3, ks, qp, KSRepresentation::theorem_ii);
            const double scale = std::max({1.0, std::abs(d.value)});
            CHECK(d.converged);
            CHECK(std::abs(d.value - t1.value) < 1e-5 * scale);
            CHECK(std::abs(d.value - t2.value) < 1e-5 * scale);
            CHECK(std::abs(t1.value - t2.value) < 1e-5 * scale);
        }
    }
}

TEST_CASE("rho13 = rho23 = 0 collapses to Poisson-Mehler") {
    const QParam q(0.5);
    KSParams ks{0.45, 0.0, 0.0};
    const double x1 = 0.4, x2 = -0.6, x3 = 0.9;
    auto g = kibble_slepian(x1, x2, x3, ks, q, KSRepresentation::direct_sum);
    auto pm = poisson_mehler(x1, x2, 0.45, q);
    CHECK(g.value == Approx(pm.series_value).epsilon(1e-9));
}

TEST_CASE("rho12 = 0 limit form stays finite") {
    const QParam q(0.5);
    KSParams ks{0.0, 0.4, -0.35};
    auto t2 = kibble_slepian(0.3, -0.2, 0.5, ks, q, KSRepresentation::theorem_ii);
    auto d = kibble_slepian(0.3, -0.2, 0.5, ks, q, KSRepresentation::direct_sum);
    CHECK(t2.value == Approx(d.value).epsilon(1e-7));
}

TEST_CASE("finiteness remark: m+1 summands") {
    const QParam q(0.5);
    for (int m = 0; m <= 3; ++m) {
        CHECK(ks_finite_term_count(m, 0.5, -0.4, q) == m + 1);
    }
}

TEST_CASE("negativity witness under positive-definite covariance") {
    auto hit = ks_negativity_search(QParam(0.5));
    REQUIRE(hit.found);
    CHECK(hit.g < 0.0);
    CHECK(hit.params.gaussian_pd());
    // cross-check the value with the direct sum
    auto d = kibble_slepian(hit.x1, hit.x2, hit.x3, hit.params, QParam(0.5),
                            KSRepresentation::direct_sum);
    CHECK(d.value == Approx(hit.g).epsilon(1e-4));
    CHECK(d.value < 0.0);
}
