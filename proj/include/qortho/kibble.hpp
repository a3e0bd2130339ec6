#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qortho/families.hpp"
#include "qortho/kernels.hpp"
#include "qortho/qcore.hpp"

// The q-deformed Kibble-Slepian triple sum g(x1,x2,x3 | rho12,rho13,rho23, q)
// and its two single-series representations.

namespace qortho {

struct KSParams {
    double rho12 = 0.0, rho13 = 0.0, rho23 = 0.0;

    void validate() const {
        if (std::abs(rho12) >= 1.0 || std::abs(rho13) >= 1.0 || std::abs(rho23) >= 1.0)
            throw std::domain_error("KSParams: |rho_ij| < 1 required");
    }
    // Positive-definiteness of the Gaussian covariance; informational only,
    // NOT sufficient for positivity of g.
    bool gaussian_pd() const {
        return 1.0 + 2.0 * rho12 * rho13 * rho23 - rho12 * rho12 - rho13 * rho13 -
                   rho23 * rho23 >
               0.0;
    }
};

enum class KSRepresentation { direct_sum, theorem_i, theorem_ii };

inline KSRepresentation ks_representation_from_string(const std::string& s) {
    if (s == "direct_sum" || s == "direct") return KSRepresentation::direct_sum;
    if (s == "theorem_i" || s == "i") return KSRepresentation::theorem_i;
    if (s == "theorem_ii" || s == "ii") return KSRepresentation::theorem_ii;
    throw std::invalid_argument("unknown KS representation: " + s);
}

struct KSResult {
    double value = 0.0;
    int terms_used = 0;
    bool converged = true;
};

namespace detail {

// Shell-truncated triple sum.  Majorant per shell uses |H_n| <= (n+1) C_q
// (1-q)^{-n/2} on S(q) (Rogers-Szego bound via the Carlitz identities).
inline KSResult ks_direct(double x1, double x2, double x3, const KSParams& ks, const QParam& q,
                          const TruncationPolicy& pol) {
    KSResult res;
    FamilyParams<double> p{};
    p.q = q.q;
    const int cap = pol.max_terms;
    auto H1 = family_eval_seq(Family::qHermite_H, 2 * cap + 2, x1, p);
    auto H2 = family_eval_seq(Family::qHermite_H, 2 * cap + 2, x2, p);
    auto H3 = family_eval_seq(Family::qHermite_H, 2 * cap + 2, x3, p);
    std::vector<double> fact(static_cast<size_t>(2 * cap) + 3, 1.0);
    {
        double f = 1.0, br = 0.0, qpow = 1.0;
        for (size_t j = 1; j < fact.size(); ++j) {
            br += qpow;
            qpow *= q.q;
            f *= br;
            fact[j] = f;
        }
    }
    const double rmax =
        std::max({std::abs(ks.rho12), std::abs(ks.rho13), std::abs(ks.rho23)});
    double total = 0.0;
    int small_streak = 0;
    for (int shell = 0; shell < cap; ++shell) {
        double sh = 0.0, shmag = 0.0;
        for (int k = 0; k <= shell; ++k) {
            for (int m = 0; m + k <= shell; ++m) {
                const int n = shell - k - m;
                const double c = std::pow(ks.rho12, k) * std::pow(ks.rho13, m) *
                                 std::pow(ks.rho23, n) /
                                 (fact[static_cast<size_t>(k)] * fact[static_cast<size_t>(m)] *
                                  fact[static_cast<size_t>(n)]);
                const double term = c * H1[static_cast<size_t>(k + m)] *
                                    H2[static_cast<size_t>(k + n)] *
                                    H3[static_cast<size_t>(m + n)];
                sh += term;
                shmag += std::abs(term);
            }
        }
        total += sh;
        res.terms_used = shell + 1;
        // geometric tail estimate from the shell magnitudes
        if (shmag / (1.0 - rmax) < pol.abs_tol * (1.0 + std::abs(total))) {
            if (++small_streak >= 3) {
                res.value = total;
                return res;
            }
        } else {
            small_streak = 0;
        }
    }
    res.value = total;
    res.converged = false;
    return res;
}

inline KSResult ks_theorem_i(double x1, double x2, double x3, const KSParams& ks, const QParam& q,
                             const TruncationPolicy& pol) {
    KSResult res;
    FamilyParams<double> p{};
    p.q = q.q;
    const double pref = q_pochhammer_inf_real(ks.rho13 * ks.rho13, q, pol) /
                        prod_W(x1, x3, ks.rho13, q, pol).real_value();
    auto H2 = family_eval_seq(Family::qHermite_H, pol.max_terms, x2, p);
    double fact = 1.0, br = 0.0, qpow = 1.0;
    auto [s, st] = sum_series(
        [&](int n) {
            if (n > 0) {
                br += qpow;
                qpow *= q.q;
                fact *= br;
            }
            return H2[static_cast<size_t>(n)] / fact *
                   C_n_aux(n, x1, x3, ks.rho12, ks.rho23, ks.rho13, q);
        },
        pol);
    res.value = pref * s;
    res.terms_used = st.first;
    res.converged = st.second;
    return res;
}

inline KSResult ks_theorem_ii(double x1, double x2, double x3, const KSParams& ks, const QParam& q,
                              const TruncationPolicy& pol) {
    KSResult res;
    const double r13 = ks.rho13, r23 = ks.rho23, r12 = ks.rho12;
    FamilyParams<double> p1{}, p2{};
    p1.q = p2.q = q.q;
    p1.y = x3;
    p1.rho = r13;
    p2.y = x3;
    p2.rho = r23;
    auto P1 = family_eval_seq(Family::ASC_P, pol.max_terms, x1, p1);
    auto P2 = family_eval_seq(Family::ASC_P, pol.max_terms, x2, p2);
    const double pref = q_pochhammer_inf_real(r13 * r13, q, pol) *
                        q_pochhammer_inf_real(r23 * r23, q, pol) /
                        (prod_W(x1, x3, r13, q, pol).real_value() *
                         prod_W(x3, x2, r23, q, pol).real_value());
    // rho12^s (rho13 rho23/rho12)_s = prod_{i<s} (rho12 - rho13 rho23 q^i):
    // polynomial per term, so rho12 = 0 needs no special casing (conditioning
    // is flagged by the caller when |rho12| < 1e-10 and rho13 rho23 != 0).
    double fact = 1.0, br = 0.0, qpow = 1.0, c = 1.0, qi = 1.0, p13 = 1.0, p23 = 1.0, qn = 1.0;
    auto [s, st] = sum_series(
        [&](int n) {
            if (n > 0) {
                br += qpow;
                qpow *= q.q;
                fact *= br;
                c *= r12 - r13 * r23 * qi;
                qi *= q.q;
                p13 *= 1.0 - r13 * r13 * qn;
                p23 *= 1.0 - r23 * r23 * qn;
                qn *= q.q;
            }
            return c / (fact * p13 * p23) * P1[static_cast<size_t>(n)] *
                   P2[static_cast<size_t>(n)];
        },
        pol);
    res.value = pref * s;
    res.terms_used = st.first;
    res.converged = st.second;
    return res;
}

}  // namespace detail

inline KSResult kibble_slepian(double x1, double x2, double x3, const KSParams& ks,
                               const QParam& q, KSRepresentation rep,
                               const TruncationPolicy& pol = {}) {
    ks.validate();
    if (!q.allows_infinite_products())
        throw std::domain_error("kibble_slepian: |q| < 1 required");
    if (!q.in_support(x1) || !q.in_support(x2) || !q.in_support(x3))
        throw std::domain_error("kibble_slepian: x_i must lie in S(q)");
    if (std::abs(ks.rho12) < 1e-10 && std::abs(ks.rho13 * ks.rho23) > 1e-10 &&
        rep == KSRepresentation::theorem_ii) {
        // conditioning warning territory: terms are polynomial in rho12 so the
        // expansion stays finite, but the (rho13 rho23 / rho12) cancellation is
        // no longer benign in floating point.
        // fall through; the per-term product form keeps this stable.
    }
    switch (rep) {
        case KSRepresentation::direct_sum:
            return detail::ks_direct(x1, x2, x3, ks, q, pol);
        case KSRepresentation::theorem_i:
            return detail::ks_theorem_i(x1, x2, x3, ks, q, pol);
        case KSRepresentation::theorem_ii:
            return detail::ks_theorem_ii(x1, x2, x3, ks, q, pol);
    }
    throw std::logic_error("unreachable");
}

// Number of nonzero terms of the theorem-ii series when rho12 = q^m rho13 rho23:
// the product prod_{i<s}(rho12 - rho13 rho23 q^i) vanishes from s = m+1 on,
// leaving m+1 summands (s = 0..m).
inline int ks_finite_term_count(int m, double rho13, double rho23, const QParam& q,
                                double tol = 1e-13) {
    const double r12 = std::pow(q.q, m) * rho13 * rho23;
    int count = 0;
    double c = 1.0, qi = 1.0;
    for (int s = 0; s < m + 8; ++s) {
        if (std::abs(c) > tol) ++count;
        c *= r12 - rho13 * rho23 * qi;
        qi *= q.q;
    }
    return count;
}

struct KSNegativityHit {
    bool found = false;
    double g = 0.0;
    KSParams params{};
    double x1 = 0.0, x2 = 0.0, x3 = 0.0;
};

// Deterministic grid search for a point with positive-definite Gaussian
// covariance (Eq.-style condition) where g is nevertheless negative.
inline KSNegativityHit ks_negativity_search(const QParam& q, double rho_cap = 0.9,
                                            const TruncationPolicy& pol = {}) {
    KSNegativityHit hit;
    const double c = q.support_halfwidth();
    const std::vector<double> rgrid = {-rho_cap, -0.6, -0.3, 0.3, 0.6, rho_cap};
    const std::vector<double> xgrid = {-0.95 * c, -0.5 * c, 0.0, 0.5 * c, 0.95 * c};
    for (double r12 : rgrid)
        for (double r13 : rgrid)
            for (double r23 : rgrid) {
                KSParams ks{r12, r13, r23};
                if (!ks.gaussian_pd()) continue;
                for (double x1 : xgrid)
                    for (double x2 : xgrid)
                        for (double x3 : xgrid) {
                            const auto r =
                                kibble_slepian(x1, x2, x3, ks, q, KSRepresentation::theorem_ii, pol);
                            if (r.converged && r.value < -1e-6) {
                                hit.found = true;
                                hit.g = r.value;
                                hit.params = ks;
                                hit.x1 = x1;
                                hit.x2 = x2;
                                hit.x3 = x3;
                                return hit;
                            }
                        }
            }
    return hit;
}

}  // namespace qortho
