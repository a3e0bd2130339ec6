#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qortho/densities.hpp"
#include "qortho/expansions.hpp"
#include "qortho/families.hpp"
#include "qortho/kernels.hpp"
#include "qortho/kibble.hpp"
#include "qortho/qcore.hpp"
#include "qortho/qhyper.hpp"
#include "qortho/report.hpp"
#include "qortho/rng.hpp"

// Verification sweep registry: every checkable statement of the catalog gets
// an identity id, a generator producing report rows, and a pass tolerance.
// Random points are drawn from the interior 95% of S(q) (or of [-1,1] for
// lower-case objects).

namespace qortho {

struct SweepConfig {
    TruncationPolicy policy{};
    std::uint64_t seed = 1;
    int n_max = 6;
    int m_max = 6;
    int points = 5;
    std::vector<double> q_grid = {-0.5, 0.3, 0.6, 0.9};
    double q_single = 0.5;  // used by sweeps taking one q from the CLI
    bool has_q_override = false;
};

using SweepFn = std::function<std::vector<VerifyRow>(const SweepConfig&)>;

namespace sweeps {

inline double interior(Rng& rng, const QParam& q) {
    const double c = q.is_classical() ? 3.0 : q.support_halfwidth();
    return rng.uniform(-0.95 * c, 0.95 * c);
}

inline VerifyRow row(const std::string& id, std::map<std::string, double> params, double lhs,
                     double rhs, double tol, int terms = 0, bool converged = true) {
    VerifyRow r;
    r.identity_id = id;
    r.params = std::move(params);
    r.lhs = lhs;
    r.rhs = rhs;
    r.residual = std::abs(lhs - rhs);
    r.terms_used = terms;
    r.converged = converged;
    r.pass = converged && r.residual <= tol * std::max(1.0, std::max(std::abs(lhs), std::abs(rhs)));
    return r;
}

// --- qcore: the three product identities ---
inline std::vector<VerifyRow> product_identities(const SweepConfig& cfg, ProductIdentity which,
                                                 const std::string& id) {
    std::vector<VerifyRow> rows;
    Rng rng(cfg.seed ^ 0x9d5u);
    for (double qv : cfg.q_grid) {
        QParam q(qv);
        for (int i = 0; i < cfg.points; ++i) {
            const double x = rng.uniform(-0.95, 0.95), y = rng.uniform(-0.95, 0.95);
            const double a = rng.uniform(-0.9, 0.9), t = rng.uniform(-0.9, 0.9);
            const double res = product_identity_check(which, x, y, a, t, q, cfg.policy);
            VerifyRow r = row(id, {{"q", qv}, {"x", x}, {"y", y}, {"a", a}, {"t", t}}, res, 0.0, 1.0);
            r.residual = res;
            r.pass = res < 1e-10;
            rows.push_back(r);
        }
    }
    return rows;
}

// --- polyfam: rescale identities ---
inline std::vector<VerifyRow> rescale_sweep(const SweepConfig& cfg) {
    std::vector<VerifyRow> rows;
    Rng rng(cfg.seed ^ 0x11u);
    const std::vector<std::pair<RescalePair, std::string>> pairs = {
        {RescalePair::h_H, "h_H"}, {RescalePair::b_B, "b_B"}, {RescalePair::Q_P, "Q_P"},
        {RescalePair::p_P, "p_P"}, {RescalePair::C_R, "C_R"},
    };
    for (double qv : cfg.q_grid) {
        if (!(std::abs(qv) < 1.0)) continue;
        QParam q(qv);
        for (const auto& [pair, name] : pairs) {
            for (int n = 0; n <= std::min(cfg.n_max + 9, 15); n += 3) {
                FamilySpec spec;
                spec.q = q;
                spec.y = rng.uniform(-0.8, 0.8) * (pair == RescalePair::Q_P ? q.support_halfwidth() / 2 : 1.0);
                spec.rho = rng.uniform(-0.8, 0.8);
                spec.beta = rng.uniform(-0.8, 0.8);
                const double x = (pair == RescalePair::h_H || pair == RescalePair::Q_P ||
                                  pair == RescalePair::C_R)
                                     ? interior(rng, q)
                                     : rng.uniform(-0.95, 0.95);
                const double res = rescale_check(pair, n, x, spec);
                VerifyRow r = row("rescale_" + name, {{"q", qv}, {"n", double(n)}, {"x", x}}, res,
                                  0.0, 1.0);
                r.residual = res;
                r.pass = res < 1e-9 * std::max(1.0, std::abs(res) + 1.0);
                r.pass = res < 1e-8;
                rows.push_back(r);
            }
        }
    }
    return rows;
}

// --- polyfam: trig representations vs recurrence ---
inline std::vector<VerifyRow> trig_sweep(const SweepConfig& cfg) {
    std::vector<VerifyRow> rows;
    Rng rng(cfg.seed ^ 0x22u);
    const std::vector<Family> fams = {Family::Cheb_T, Family::Cheb_U, Family::qHermite_h,
                                      Family::bigqHermite_h, Family::Ultra_C};
    for (double qv : cfg.q_grid) {
        if (!(std::abs(qv) < 1.0)) continue;
        for (Family f : fams) {
            for (int i = 0; i < cfg.points; ++i) {
                const int n = 1 + static_cast<int>(rng.next_u64() % 20);
                const double x = rng.uniform(-0.99, 0.99);
                FamilySpec spec;
                spec.family = f;
                spec.q = QParam(qv);
                spec.a = rng.uniform(-0.8, 0.8);
                spec.beta = rng.uniform(-0.8, 0.8);
                double direct;
                if (f == Family::bigqHermite_h || f == Family::Ultra_C) {
                    direct = family_eval(f, n, x, spec.real_params());
                } else {
                    FamilyParams<double> p{};
                    p.q = qv;
                    direct = family_eval(f, n, x, p);
                }
                const double trig = family_eval_trig(f, n, TrigPoint::from_x(x), spec);
                rows.push_back(row("trig_" + family_to_string(f),
                                   {{"q", qv}, {"n", double(n)}, {"x", x}}, direct, trig, 1e-9));
            }
        }
    }
    return rows;
}

// --- polyfam: generating functions ---
inline std::vector<VerifyRow> genfun_sweep(const SweepConfig& cfg) {
    std::vector<VerifyRow> rows;
    Rng rng(cfg.seed ^ 0x33u);
    const std::vector<Family> fams = {
        Family::Hermite_H, Family::Hermite_h, Family::Cheb_T, Family::Cheb_U,
        Family::qHermite_h, Family::qHermite_H, Family::bigqHermite_h, Family::bigqHermite_H,
        Family::ASC_Q, Family::ASC_P, Family::Ultra_C, Family::Ultra_R, Family::qInvHermite_B};
    for (double qv : cfg.q_grid) {
        if (!(std::abs(qv) < 1.0)) continue;
        for (Family f : fams) {
            FamilySpec spec;
            spec.family = f;
            spec.q = QParam(qv);
            const bool upper = (f == Family::qHermite_H || f == Family::bigqHermite_H ||
                                f == Family::ASC_P || f == Family::Ultra_R ||
                                f == Family::qInvHermite_B || f == Family::Hermite_H);
            const double x = upper ? interior(rng, spec.q) * 0.5 : rng.uniform(-0.9, 0.9);
            const double t = rng.uniform(-0.35, 0.35);
            spec.a = rng.uniform(-0.6, 0.6);
            spec.b = rng.uniform(-0.6, 0.6);
            spec.y = upper ? interior(rng, spec.q) * 0.5 : rng.uniform(-0.9, 0.9);
            spec.rho = rng.uniform(-0.6, 0.6);
            spec.beta = rng.uniform(-0.6, 0.6);
            auto g = generating_partial_sum(spec, x, t, 220, cfg.policy);
            rows.push_back(row("genfun_" + family_to_string(f), {{"q", qv}, {"x", x}, {"t", t}},
                               g.partial_sum, g.closed_form, 1e-9, g.terms, !g.diverging));
        }
    }
    return rows;
}

// --- polyfam: q=0 / q=1 reductions and named properties ---
inline std::vector<VerifyRow> reduction_sweep(const SweepConfig& cfg) {
    std::vector<VerifyRow> rows;
    Rng rng(cfg.seed ^ 0x44u);
    FamilyParams<double> p0{};  // q = 0
    FamilyParams<double> p1{};
    p1.q = 1.0;
    for (int i = 0; i < cfg.points; ++i) {
        const int n = static_cast<int>(rng.next_u64() % 16);
        const double x = rng.uniform(-1.8, 1.8);
        // H_n(x|0) = U_n(x/2)
        rows.push_back(row("q0_H_is_U", {{"n", double(n)}, {"x", x}},
                           family_eval(Family::qHermite_H, n, x, p0),
                           family_eval(Family::Cheb_U, n, x / 2.0, p0), 1e-12));
        // H_n(x|1) = classical Hermite
        rows.push_back(row("q1_H_is_Hermite", {{"n", double(n)}, {"x", x}},
                           family_eval(Family::qHermite_H, n, x, p1),
                           family_eval(Family::Hermite_H, n, x, p1), 1e-12));
        // B_n(x|1) = i^n H_n(ix) is real
        {
            FamilyParams<cplx> pc{};
            pc.q = cplx(1.0);
            const cplx ixn = family_eval(Family::Hermite_H, n, cplx(0.0, x), pc);
            const cplx in = std::pow(cplx(0.0, 1.0), n);
            const cplx rhs = in * ixn;
            rows.push_back(row("q1_B_is_inHn_ix", {{"n", double(n)}, {"x", x}},
                               family_eval(Family::qInvHermite_B, n, x, p1), rhs.real(), 1e-10));
        }
        // B_n(y|0) closed form
        {
            const double expect = (n == 1) ? -x : (n == 0 || n == 2 ? 1.0 : 0.0);
            rows.push_back(row("q0_B_closed", {{"n", double(n)}, {"x", x}},
                               family_eval(Family::qInvHermite_B, n, x, p0), expect, 1e-12));
        }
        // P_n(x|y,rho,1) = (1-rho^2)^{n/2} H_n((x-rho y)/sqrt(1-rho^2))
        {
            const double yv = rng.uniform(-1.5, 1.5), rho = rng.uniform(-0.8, 0.8);
            FamilyParams<double> pp = p1;
            pp.y = yv;
            pp.rho = rho;
            const double lhs = family_eval(Family::ASC_P, n, x, pp);
            const double v = 1.0 - rho * rho;
            const double rhs = std::pow(v, n / 2.0) *
                               family_eval(Family::Hermite_H, n, (x - rho * yv) / std::sqrt(v), p1);
            rows.push_back(row("q1_P_gaussian", {{"n", double(n)}, {"x", x}}, lhs, rhs, 1e-10));
        }
        // P_n(x|y,rho,0) = U_n(x/2) - rho y U_{n-1}(x/2) + rho^2 U_{n-2}(x/2)
        {
            const double yv = rng.uniform(-1.5, 1.5), rho = rng.uniform(-0.8, 0.8);
            FamilyParams<double> pp = p0;
            pp.y = yv;
            pp.rho = rho;
            const double lhs = family_eval(Family::ASC_P, n, x, pp);
            auto U = [&](int j) {
                return j < 0 ? 0.0 : family_eval(Family::Cheb_U, j, x / 2.0, p0);
            };
            rows.push_back(row("q0_P_cheb", {{"n", double(n)}, {"x", x}}, lhs,
                               U(n) - rho * yv * U(n - 1) + rho * rho * U(n - 2), 1e-12));
        }
    }
    // P_n(x|x,rho,q) = R_n(x|rho,q)
    for (double qv : cfg.q_grid) {
        if (!(std::abs(qv) < 1.0)) continue;
        QParam q(qv);
        for (int i = 0; i < cfg.points; ++i) {
            const int n = static_cast<int>(rng.next_u64() % 16);
            const double x = interior(rng, q), rho = rng.uniform(-0.8, 0.8);
            FamilyParams<double> pp{};
            pp.q = qv;
            pp.y = x;
            pp.rho = rho;
            FamilyParams<double> pr{};
            pr.q = qv;
            pr.beta = rho;
            rows.push_back(row("P_xx_is_R", {{"q", qv}, {"n", double(n)}, {"x", x}},
                               family_eval(Family::ASC_P, n, x, pp),
                               family_eval(Family::Ultra_R, n, x, pr), 1e-10));
        }
    }
    return rows;
}

// --- polyfam: Proposition szczeg and the R(x|q^2,q) remark ---
inline std::vector<VerifyRow> szczeg_sweep(const SweepConfig& cfg) {
    std::vector<VerifyRow> rows;
    Rng rng(cfg.seed ^ 0x55u);
    for (double qv : cfg.q_grid) {
        if (!(std::abs(qv) < 1.0)) continue;
        QParam q(qv);
        FamilyParams<double> p{};
        p.q = qv;
        for (int n = 1; n <= std::max(cfg.n_max, 8); ++n) {
            const double x = interior(rng, q);
            // i) R_n(x|0,q) = H_n(x|q)
            FamilyParams<double> p0 = p;
            p0.beta = 0.0;
            rows.push_back(row("szczeg_i", {{"q", qv}, {"n", double(n)}, {"x", x}},
                               family_eval(Family::Ultra_R, n, x, p0),
                               family_eval(Family::qHermite_H, n, x, p), 1e-12));
            // ii) (1-q)^{n/2} R_n(x|q,q)/(q)_n = U_n(x sqrt(1-q)/2)
            FamilyParams<double> pq = p;
            pq.beta = qv;
            const double lhs2 = std::pow(1.0 - qv, n / 2.0) *
                                family_eval(Family::Ultra_R, n, x, pq) / q_pochhammer(qv, qv, n);
            const double rhs2 =
                family_eval(Family::Cheb_U, n, x * std::sqrt(1.0 - qv) / 2.0, p);
            rows.push_back(row("szczeg_ii", {{"q", qv}, {"n", double(n)}, {"x", x}}, lhs2, rhs2,
                               1e-10));
            // iii) lim_{b->1} R_n(x|b,q)/(b)_n = 2 T_n(x sqrt(1-q)/2)/(1-q)^{n/2}
            const double b1 = 1.0 - 1e-6;
            FamilyParams<double> pb = p;
            pb.beta = b1;
            const double lhs3 =
                family_eval(Family::Ultra_R, n, x, pb) / q_pochhammer(b1, qv, n);
            const double rhs3 = 2.0 *
                                family_eval(Family::Cheb_T, n, x * std::sqrt(1.0 - qv) / 2.0, p) /
                                std::pow(1.0 - qv, n / 2.0);
            rows.push_back(
                row("szczeg_iii", {{"q", qv}, {"n", double(n)}, {"x", x}}, lhs3, rhs3, 1e-4));
            // remark: (1-q)^{n/2} R_n(x|q^2,q)/(q)_n = sum_k q^k U_k U_{n-k}
            FamilyParams<double> pq2 = p;
            pq2.beta = qv * qv;
            const double lhsr = std::pow(1.0 - qv, n / 2.0) *
                                family_eval(Family::Ultra_R, n, x, pq2) / q_pochhammer(qv, qv, n);
            const double u = x * std::sqrt(1.0 - qv) / 2.0;
            auto U = family_eval_seq(Family::Cheb_U, n, u, p);
            double rhsr = 0.0;
            for (int k = 0; k <= n; ++k)
                rhsr += std::pow(qv, k) * U[static_cast<size_t>(k)] *
                        U[static_cast<size_t>(n - k)];
            rows.push_back(
                row("R_q2_remark", {{"q", qv}, {"n", double(n)}, {"x", x}}, lhsr, rhsr, 1e-10));
            // simplified form: sum_j q^j [n+1-2j]_q U_{n-2j}
            double rhss = 0.0;
            for (int j = 0; j <= n / 2; ++j)
                rhss += std::pow(qv, j) * q_bracket(n + 1 - 2 * j, qv) *
                        U[static_cast<size_t>(n - 2 * j)];
            rows.push_back(
                row("R_q2_simplified", {{"q", qv}, {"n", double(n)}, {"x", x}}, lhsr, rhss, 1e-10));
        }
    }
    return rows;
}

// --- polyfam: sup bound and Carlitz identities ---
inline std::vector<VerifyRow> carlitz_and_bounds(const SweepConfig& cfg) {
    std::vector<VerifyRow> rows;
    for (double qv : cfg.q_grid) {
        if (!(std::abs(qv) < 1.0)) continue;
        QParam q(qv);
        FamilyParams<double> p{};
        p.q = qv;
        // sup_{|x|<=1} |h_n| <= s_n(1|q) on a 1000-point grid
        for (int n = 1; n <= 10; n += 3) {
            double sup = 0.0;
            for (int i = 0; i <= 1000; ++i) {
                const double x = -1.0 + 2.0 * i / 1000.0;
                sup = std::max(sup, std::abs(family_eval(Family::qHermite_h, n, x, p)));
            }
            const double bound = family_eval(Family::RogersSzego_s, n, 1.0, p);
            VerifyRow r = row("sup_h_bound", {{"q", qv}, {"n", double(n)}}, sup, bound, 1.0);
            r.pass = sup <= bound + 1e-12;
            r.residual = std::max(0.0, sup - bound);
            rows.push_back(r);
        }
        // Carlitz identities, |t| <= 0.7, |q| <= 0.8
        if (std::abs(qv) <= 0.8) {
            for (double t : {0.3, 0.55, 0.7}) {
                double s1 = 0.0, s2 = 0.0, tk = 1.0, pq = 1.0, qn = 1.0;
                int terms = 0;
                for (int k = 0; k < cfg.policy.max_terms; ++k) {
                    if (k > 0) {
                        tk *= t;
                        pq *= 1.0 - qn * qv;
                        qn *= qv;
                    }
                    const double sn = family_eval(Family::RogersSzego_s, k, 1.0, p);
                    const double t1 = sn * tk / pq, t2 = sn * sn * tk / pq;
                    s1 += t1;
                    s2 += t2;
                    ++terms;
                    if (std::abs(t2) < 1e-16 * (1.0 + std::abs(s2)) && k > 8) break;
                }
                const double poch_t = q_pochhammer_inf_real(t, q, cfg.policy);
                const double rhs1 = 1.0 / (poch_t * poch_t);
                const double rhs2 = q_pochhammer_inf_real(t * t, q, cfg.policy) /
                                    (poch_t * poch_t * poch_t * poch_t);
                rows.push_back(row("carlitz_id1", {{"q", qv}, {"t", t}}, s1, rhs1, 1e-8, terms));
                rows.push_back(row("carlitz_id2", {{"q", qv}, {"t", t}}, s2, rhs2, 1e-8, terms));
            }
        }
        // (q)_n = (1-q)^n [n]_q!
        for (int n = 0; n <= 30; n += 6) {
            rows.push_back(row("poch_vs_factorial", {{"q", qv}, {"n", double(n)}},
                               q_pochhammer(qv, qv, n),
                               std::pow(1.0 - qv, n) * q_factorial(n, qv), 1e-10));
        }
    }
    return rows;
}

// --- expansions: float sweep of every registry identity ---
inline std::vector<VerifyRow> expansion_sweep(const SweepConfig& cfg) {
    std::vector<VerifyRow> rows;
    Rng rng(cfg.seed ^ 0x66u);
    const std::vector<double> qs = {-0.5, 0.3, 0.9};
    for (const std::string& id : identity_registry()) {
        for (double qv : qs) {
            for (int rep = 0; rep < 3; ++rep) {
                IdentityParams<double> P;
                P.q = qv;
                P.p = rng.uniform(-0.7, 0.7);
                P.a = rng.uniform(-0.7, 0.7);
                P.b = rng.uniform(0.2, 0.9) * (rng.next_double() < 0.5 ? -1.0 : 1.0);
                P.y = rng.uniform(-1.2, 1.2);
                P.z = rng.uniform(-1.2, 1.2);
                P.rho = rng.uniform(0.15, 0.8) * (rng.next_double() < 0.5 ? -1.0 : 1.0);
                P.r = rng.uniform(0.2, 0.8);
                P.t = rng.uniform(-0.7, 0.7);
                P.beta = rng.uniform(0.1, 0.8);
                P.gamma = rng.uniform(-0.8, 0.8);
                P.n = 1 + static_cast<int>(rng.next_u64() % static_cast<unsigned>(cfg.n_max));
                P.m = 1 + static_cast<int>(rng.next_u64() % static_cast<unsigned>(cfg.m_max));
                P.k = 1 + static_cast<int>(rng.next_u64() % 4);
                auto chk = check_identity(id, P);
                const double res = chk.residual();
                const double scale = chk.scale();
                VerifyRow r = row(id,
                                  {{"q", qv},
                                   {"n", double(P.n)},
                                   {"m", double(P.m)},
                                   {"k", double(P.k)},
                                   {"rep", double(rep)}},
                                  0.0, 0.0, 1.0);
                r.lhs = chk.lhs.max_abs_coeff();
                r.rhs = chk.rhs.max_abs_coeff();
                r.residual = res;
                r.pass = res <= 1e-9 * scale;
                rows.push_back(r);
            }
        }
    }
    return rows;
}

// --- qhyper ---
inline std::vector<VerifyRow> qhyper_sweep(const SweepConfig& cfg) {
    std::vector<VerifyRow> rows;
    Rng rng(cfg.seed ^ 0x77u);
    for (double qv : cfg.q_grid) {
        if (!(std::abs(qv) < 1.0)) continue;
        QParam q(qv);
        // q-binomial theorem: 1phi0(a;;q,x) = (ax)_inf/(x)_inf
        for (int i = 0; i < cfg.points; ++i) {
            const cplx a(rng.uniform(-0.9, 0.9), rng.uniform(-0.3, 0.3));
            const cplx x(rng.uniform(-0.8, 0.8), rng.uniform(-0.2, 0.2));
            PhiSpec spec;
            spec.num = {a};
            spec.q = q;
            spec.argument = x;
            auto f = phi(spec, cfg.policy);
            const cplx rhs = q_pochhammer_inf(a * x, q, cfg.policy).value /
                             q_pochhammer_inf(x, q, cfg.policy).value;
            rows.push_back(row("phi_qbinom_theorem",
                               {{"q", qv}, {"are", a.real()}, {"xre", x.real()}},
                               f.value.real(), rhs.real(), 1e-10, f.terms, f.converged));
        }
        // W construction equals phi on the substituted parameter list (m=4)
        for (int i = 0; i < cfg.points; ++i) {
            const cplx a(rng.uniform(0.05, 0.8), 0.0);
            std::vector<cplx> extras;
            for (int j = 0; j < 5; ++j) extras.push_back(cplx(rng.uniform(-0.6, 0.6), 0.0));
            const cplx z(rng.uniform(-0.5, 0.5), 0.0);
            auto w = very_well_poised_W(4, a, extras, q, z, cfg.policy);
            PhiSpec spec;
            const cplx ra = std::sqrt(a);
            spec.num = {a, qv * ra, -qv * ra};
            spec.num.insert(spec.num.end(), extras.begin(), extras.end());
            spec.den = {ra, -ra};
            for (const cplx& e : extras) spec.den.push_back(qv * a / e);
            spec.q = q;
            spec.argument = z;
            auto f = phi(spec, cfg.policy);
            rows.push_back(row("W_matches_phi", {{"q", qv}, {"i", double(i)}}, w.value.real(),
                               f.value.real(), 1e-12, w.terms, w.converged && f.converged));
        }
        // 6W5 summation (closed form oracle)
        for (int i = 0; i < cfg.points; ++i) {
            const double a = rng.uniform(0.1, 0.7), b = rng.uniform(-0.6, 0.6),
                         c = rng.uniform(-0.6, 0.6), d = rng.uniform(-0.6, 0.6);
            const double z = a * qv / (b * c * d);
            if (std::abs(z) >= 0.9 || std::abs(b * c * d) < 1e-3) continue;
            auto w = very_well_poised_W(3, cplx(a), {cplx(b), cplx(c), cplx(d)}, q, cplx(z),
                                        cfg.policy);
            auto pinf = [&](double v) { return q_pochhammer_inf_real(v, q, cfg.policy); };
            const double rhs = pinf(a * qv) * pinf(a * qv / (b * c)) * pinf(a * qv / (b * d)) *
                               pinf(a * qv / (c * d)) /
                               (pinf(a * qv / b) * pinf(a * qv / c) * pinf(a * qv / d) *
                                pinf(a * qv / (b * c * d)));
            rows.push_back(row("W65_summation", {{"q", qv}, {"i", double(i)}}, w.value.real(), rhs,
                               1e-9, w.terms, w.converged));
        }
    }
    return rows;
}

// --- kernels ---
inline std::vector<VerifyRow> pm_sweep(const SweepConfig& cfg) {
    std::vector<VerifyRow> rows;
    Rng rng(cfg.seed ^ 0x88u);
    for (double qv : {-0.5, 0.0, 0.3, 0.6, 0.9}) {
        QParam q(qv);
        for (int i = 0; i < cfg.points; ++i) {
            const double rho = rng.uniform(-0.7, 0.7);
            const double x = interior(rng, q), y = interior(rng, q);
            auto r = poisson_mehler(x, y, rho, q, cfg.policy);
            rows.push_back(row("PM", {{"q", qv}, {"rho", rho}, {"x", x}, {"y", y}}, r.series_value,
                               r.closed_value, 1e-8, r.terms_used, r.converged));
        }
    }
    for (int i = 0; i < cfg.points; ++i) {
        const double rho = rng.uniform(-0.7, 0.7);
        const double x = rng.uniform(-3.0, 3.0), y = rng.uniform(-3.0, 3.0);
        auto r = poisson_mehler(x, y, rho, QParam(1.0), cfg.policy);
        rows.push_back(row("PM_q1", {{"rho", rho}, {"x", x}, {"y", y}}, r.series_value,
                           r.closed_value, 1e-10, r.terms_used, r.converged));
    }
    for (double qv : {-0.5, 0.3, 0.6}) {
        QParam q(qv);
        for (int i = 0; i < cfg.points; ++i) {
            const double rho = rng.uniform(-0.7, 0.7);
            const double x = interior(rng, q);
            auto r = poisson_mehler_diagonal_corollary(x, rho, q, cfg.policy);
            rows.push_back(row("PM_corollary", {{"q", qv}, {"rho", rho}, {"x", x}}, r.series_value,
                               r.closed_value, 1e-8, r.terms_used, r.converged));
        }
    }
    return rows;
}

inline std::vector<VerifyRow> kernel_sweep(const SweepConfig& cfg) {
    std::vector<VerifyRow> rows;
    Rng rng(cfg.seed ^ 0x99u);
    for (double qv : {0.3, 0.6}) {
        QParam q(qv);
        for (int i = 0; i < cfg.points; ++i) {
            KernelArgs a;
            // i)
            a.x = rng.uniform(-1.9, 1.9);
            a.y = rng.uniform(-1.9, 1.9);
            a.t = rng.uniform(-0.7, 0.7);
            auto r = kernel_sum(KernelKind::cheb_i, a, q, cfg.policy);
            rows.push_back(row("cheb_i", {{"q", qv}, {"t", a.t}, {"x", a.x}}, r.series_value,
                               r.closed_value, 1e-7, r.terms_used, r.converged));
            // ii)
            a.x = rng.uniform(-0.9, 0.9);
            a.y = rng.uniform(-0.9, 0.9);
            a.t = rng.uniform(-0.5, 0.5);
            a.beta = rng.uniform(-0.6, 0.6);
            r = kernel_sum(KernelKind::ultra_ii, a, q, cfg.policy);
            rows.push_back(row("ultra_ii", {{"q", qv}, {"t", a.t}, {"beta", a.beta}},
                               r.series_value, r.closed_value, 1e-5, r.terms_used, r.converged));
            // iii)
            a.a = rng.uniform(0.3, 0.9);
            a.b = rng.uniform(0.1, 0.8) * a.a;
            a.t = rng.uniform(-0.8, 0.8);
            r = kernel_sum(KernelKind::bigH_iii, a, q, cfg.policy);
            rows.push_back(row("bigH_iii", {{"q", qv}, {"t", a.t}, {"a", a.a}, {"b", a.b}},
                               r.series_value, r.closed_value, 1e-5, r.terms_used, r.converged));
            // iv a/b with ab = alpha beta
            a.a = rng.uniform(0.3, 0.8);
            a.b = rng.uniform(-0.5, 0.5);
            a.alpha = rng.uniform(0.2, 0.7);
            a.beta2 = a.a * a.b / a.alpha;
            if (std::abs(a.beta2) < 0.95) {
                a.t = rng.uniform(-0.5, 0.5);
                r = kernel_sum(KernelKind::ascQ_iv_a, a, q, cfg.policy);
                rows.push_back(row("ascQ_iv_a", {{"q", qv}, {"t", a.t}, {"a", a.a}, {"b", a.b}},
                                   r.series_value, r.closed_value, 1e-5, r.terms_used,
                                   r.converged));
                r = kernel_sum(KernelKind::ascQ_iv_b, a, q, cfg.policy);
                rows.push_back(row("ascQ_iv_b", {{"q", qv}, {"t", a.t}, {"a", a.a}, {"b", a.b}},
                                   r.series_value, r.closed_value, 1e-5, r.terms_used,
                                   r.converged));
            }
            // v)
            a.x = interior(rng, q);
            a.y = interior(rng, q);
            a.z = interior(rng, q);
            a.rho1 = rng.uniform(0.15, 0.7) * (rng.next_double() < 0.5 ? -1 : 1);
            a.rho2 = rng.uniform(0.15, 0.7) * (rng.next_double() < 0.5 ? -1 : 1);
            r = kernel_sum(KernelKind::ascP_v, a, q, cfg.policy);
            rows.push_back(row("ascP_v", {{"q", qv}, {"rho1", a.rho1}, {"rho2", a.rho2}},
                               r.series_value, r.closed_value, 1e-7, r.terms_used, r.converged));
            // corollary
            a.a = rng.uniform(0.4, 0.9);
            a.b = a.a * rng.uniform(0.1, 0.8);
            a.x = interior(rng, q);
            a.y = interior(rng, q);
            r = kernel_sum(KernelKind::bigH_corollary, a, q, cfg.policy);
            rows.push_back(row("bigH_corollary", {{"q", qv}, {"a", a.a}, {"b", a.b}},
                               r.series_value, r.closed_value, 1e-7, r.terms_used, r.converged));
        }
    }
    return rows;
}

inline std::vector<VerifyRow> reciprocal_sweep(const SweepConfig& cfg) {
    std::vector<VerifyRow> rows;
    Rng rng(cfg.seed ^ 0xaau);
    for (double qv : {0.3, 0.5, 0.7}) {
        QParam q(qv);
        for (int i = 0; i < cfg.points; ++i) {
            KernelArgs a;
            a.x = interior(rng, q) * 0.7;
            a.y = interior(rng, q) * 0.7;
            a.rho1 = rng.uniform(0.1, 0.6) * (rng.next_double() < 0.5 ? -1 : 1);
            auto r = reciprocal_expansion(ReciprocalKind::recip_i, a, q, cfg.policy);
            rows.push_back(row("recip_i", {{"q", qv}, {"rho", a.rho1}},
                               r.series_value * (1.0 / r.closed_value), 1.0, 1e-6, r.terms_used,
                               r.converged));
            a.a = rng.uniform(0.1, 0.4);
            a.b = rng.uniform(0.5, 0.9);
            r = reciprocal_expansion(ReciprocalKind::recip_iii, a, q, cfg.policy);
            rows.push_back(row("recip_iii", {{"q", qv}, {"a", a.a}, {"b", a.b}},
                               r.series_value * (1.0 / r.closed_value), 1.0, 1e-6, r.terms_used,
                               r.converged));
            a.z = interior(rng, q) * 0.7;
            a.rho1 = rng.uniform(0.15, 0.6);
            a.rho2 = rng.uniform(0.15, 0.6);
            r = reciprocal_expansion(ReciprocalKind::recip_iv, a, q, cfg.policy);
            rows.push_back(row("recip_iv", {{"q", qv}, {"rho1", a.rho1}, {"rho2", a.rho2}},
                               r.series_value * (1.0 / r.closed_value), 1.0, 1e-6, r.terms_used,
                               r.converged));
        }
    }
    for (int i = 0; i < cfg.points; ++i) {
        KernelArgs a;
        a.x = rng.uniform(-2.0, 2.0);
        a.y = rng.uniform(-2.0, 2.0);
        a.rho1 = rng.uniform(0.1, 0.65) * (rng.next_double() < 0.5 ? -1 : 1);
        auto r = reciprocal_expansion(ReciprocalKind::recip_ii_q1, a, QParam(1.0), cfg.policy);
        rows.push_back(row("recip_ii_q1", {{"rho", a.rho1}, {"x", a.x}, {"y", a.y}},
                           r.series_value * (1.0 / r.closed_value), 1.0, 1e-6, r.terms_used,
                           r.converged));
    }
    return rows;
}

inline std::vector<VerifyRow> gamma_sweep(const SweepConfig& cfg) {
    std::vector<VerifyRow> rows;
    Rng rng(cfg.seed ^ 0xbbu);
    for (double qv : {0.3, 0.5, 0.7}) {
        QParam q(qv);
        const double x = interior(rng, q) * 0.7, y = interior(rng, q) * 0.7;
        const double rho = rng.uniform(0.2, 0.6);
        const auto g00 = gamma_mk(0, 0, x, y, rho, q, cfg.policy);
        for (int m = 0; m <= 4; ++m) {
            for (int k = 0; k <= 4; ++k) {
                auto g = gamma_mk(m, k, x, y, rho, q, cfg.policy);
                const double rhs = g00.series_value * Q_mk(m, k, x, y, rho, q);
                rows.push_back(row("gamma_mk", {{"q", qv}, {"m", double(m)}, {"k", double(k)}},
                                   g.series_value, rhs, 1e-7, g.terms_used,
                                   g.converged && g00.converged));
                // symmetry Q_{m,k}(x,y) = Q_{k,m}(y,x)
                rows.push_back(row("Q_mk_symmetry", {{"q", qv}, {"m", double(m)}, {"k", double(k)}},
                                   Q_mk(m, k, x, y, rho, q), Q_mk(k, m, y, x, rho, q), 1e-9));
            }
        }
        // Carlitz bilinear, m,n <= 3
        for (int m = 0; m <= 3; ++m) {
            for (int n = 0; n <= 3; ++n) {
                const double t = rng.uniform(0.15, 0.5);
                const double xl = rng.uniform(-0.9, 0.9), yl = rng.uniform(-0.9, 0.9);
                auto c = carlitz_bilinear_check(m, n, xl, yl, t, q, cfg.policy);
                VerifyRow r1 = row("carlitz_suma_h", {{"q", qv}, {"m", double(m)}, {"n", double(n)}},
                                   c.suma_h_residual, 0.0, 1.0, c.terms_used, c.converged);
                r1.residual = c.suma_h_residual;
                r1.pass = c.converged && c.suma_h_residual < 1e-7;
                rows.push_back(r1);
                VerifyRow r2 = row("carlitz_upr", {{"q", qv}, {"m", double(m)}, {"n", double(n)}},
                                   c.upr_car_residual, 0.0, 1.0, c.terms_used, c.converged);
                r2.residual = c.upr_car_residual;
                r2.pass = c.converged && c.upr_car_residual < 1e-7;
                rows.push_back(r2);
            }
        }
    }
    return rows;
}

inline std::vector<VerifyRow> density_sweep(const SweepConfig& cfg) {
    std::vector<VerifyRow> rows;
    Rng rng(cfg.seed ^ 0xccu);
    for (double qv : {-0.5, 0.0, 0.5, 0.9}) {
        QParam q(qv);
        // normalization of all four densities
        for (int kind = 0; kind < 4; ++kind) {
            DensitySpec ds;
            ds.kind = static_cast<DensityKind>(kind);
            ds.q = q;
            ds.a = 0.6;
            ds.y = 0.4 * q.support_halfwidth();
            ds.rho = 0.5;
            ds.beta = 0.55;
            auto r = integrate_against_density(ds, [](double) { return 1.0; }, 1e-9, cfg.policy);
            const char* names[] = {"fN", "fbN", "fCN", "fR"};
            rows.push_back(row(std::string("density_norm_") + names[kind], {{"q", qv}},
                               r.value, 1.0, 1e-6, r.evaluations, r.converged));
        }
        // positivity on interior grid
        {
            double minval = 1e300;
            DensitySpec ds;
            ds.kind = DensityKind::fCN;
            ds.q = q;
            ds.y = 0.3 * q.support_halfwidth();
            ds.rho = -0.6;
            for (int i = 1; i < 40; ++i) {
                const double x = q.support_halfwidth() * (-0.975 + 1.95 * i / 40.0);
                minval = std::min(minval, density(ds, x, cfg.policy));
            }
            VerifyRow r = row("density_positivity", {{"q", qv}}, minval, 0.0, 1.0);
            r.pass = minval >= 0.0;
            r.residual = std::max(0.0, -minval);
            rows.push_back(r);
        }
        // f_R = (1-rho) f_CN(x|x,rho,q)
        {
            const double x = interior(rng, q) * 0.8, rho = rng.uniform(0.1, 0.7);
            DensitySpec cn;
            cn.kind = DensityKind::fCN;
            cn.q = q;
            cn.y = x;
            cn.rho = rho;
            DensitySpec fr;
            fr.kind = DensityKind::fR;
            fr.q = q;
            fr.beta = rho;
            rows.push_back(row("fR_is_fCN_diag", {{"q", qv}, {"x", x}, {"rho", rho}},
                               (1.0 - rho) * density(cn, x, cfg.policy),
                               density(fr, x, cfg.policy), 1e-9));
        }
        // f_CN(x|y,0,q) = f_N(x|q)
        {
            const double x = interior(rng, q) * 0.8;
            DensitySpec cn;
            cn.kind = DensityKind::fCN;
            cn.q = q;
            cn.y = 0.2;
            cn.rho = 0.0;
            DensitySpec fn;
            fn.kind = DensityKind::fN;
            fn.q = q;
            rows.push_back(row("fCN_rho0_is_fN", {{"q", qv}, {"x", x}},
                               density(cn, x, cfg.policy), density(fn, x, cfg.policy), 1e-12));
        }
        // Chapman-Kolmogorov
        {
            const double x = interior(rng, q) * 0.7, z = interior(rng, q) * 0.7;
            const double r1 = rng.uniform(-0.6, 0.6), r2 = rng.uniform(-0.6, 0.6);
            const double res = chapman_kolmogorov_check(x, z, r1, r2, q, 1e-9, cfg.policy);
            VerifyRow r = row("chapman_kolmogorov", {{"q", qv}, {"x", x}, {"z", z}}, res, 0.0, 1.0);
            r.residual = res;
            r.pass = res < 1e-5;
            rows.push_back(r);
        }
    }
    // q = 1 limit of f_N at q = 0.999
    {
        QParam q(0.999);
        DensitySpec ds;
        ds.kind = DensityKind::fN;
        ds.q = q;
        TruncationPolicy pol = cfg.policy;
        pol.max_terms = std::max(pol.max_terms, 20000);
        double sup = 0.0;
        for (int i = 0; i <= 60; ++i) {
            const double x = -3.0 + 6.0 * i / 60.0;
            const double g = std::exp(-x * x / 2.0) / std::sqrt(2.0 * M_PI);
            sup = std::max(sup, std::abs(density(ds, x, pol) - g));
        }
        VerifyRow r = row("fN_limit_gaussian", {{"q", 0.999}}, sup, 0.0, 1.0);
        r.residual = sup;
        r.pass = sup < 0.02;
        rows.push_back(r);
    }
    // q=0 weight: f_N(x|0) * 2pi / sqrt(4-x^2) == 1 (the normalized Wigner form)
    {
        QParam q(0.0);
        DensitySpec ds;
        ds.kind = DensityKind::fN;
        ds.q = q;
        const double x = 0.7;
        rows.push_back(row("fN_q0_constant", {{"x", x}},
                           density(ds, x, cfg.policy) * 2.0 * M_PI / std::sqrt(4.0 - x * x), 1.0,
                           1e-6));
    }
    // Chapman-Kolmogorov at q = 1 (Gaussian semigroup)
    {
        const double res = chapman_kolmogorov_check(0.4, -0.8, 0.5, -0.4, QParam(1.0), 1e-10,
                                                    cfg.policy);
        VerifyRow r = row("chapman_kolmogorov_q1", {{"q", 1.0}}, res, 0.0, 1.0);
        r.residual = res;
        r.pass = res < 1e-8;
        rows.push_back(r);
    }
    return rows;
}

inline std::vector<VerifyRow> ortho_sweep(const SweepConfig& cfg) {
    std::vector<VerifyRow> rows;
    const int nmax = std::min(cfg.n_max, 8);
    const std::vector<Family> fams = {Family::Cheb_T, Family::Cheb_U, Family::qHermite_h,
                                      Family::qHermite_H, Family::bigqHermite_h,
                                      Family::bigqHermite_H, Family::ASC_P, Family::Ultra_C,
                                      Family::Ultra_R};
    for (double qv : {-0.5, 0.0, 0.5}) {
        for (Family f : fams) {
            FamilySpec spec;
            spec.family = f;
            spec.q = QParam(qv);
            spec.a = 0.6;
            spec.y = 0.4 * spec.q.support_halfwidth();
            spec.rho = 0.45;
            spec.beta = 0.55;
            for (int n = 0; n <= nmax; n += 2) {
                for (int m = n; m <= std::min(n + 2, nmax); ++m) {
                    auto r = orthogonality_integral(spec, n, m, 1e-9, cfg.policy);
                    rows.push_back(row("ortho_" + family_to_string(f),
                                       {{"q", qv}, {"n", double(n)}, {"m", double(m)}}, r.value,
                                       r.expected, 1e-6, 0, r.converged));
                }
            }
        }
    }
    // classical Hermite pairings (q = 1)
    for (Family f : {Family::Hermite_H, Family::Hermite_h}) {
        FamilySpec spec;
        spec.family = f;
        spec.q = QParam(1.0);
        for (int n = 0; n <= nmax; n += 2) {
            auto r = orthogonality_integral(spec, n, n, 1e-10, cfg.policy);
            rows.push_back(row("ortho_" + family_to_string(f), {{"n", double(n)}}, r.value,
                               r.expected, 1e-8, 0, r.converged));
        }
    }
    return rows;
}

inline std::vector<VerifyRow> eigen_sweep(const SweepConfig& cfg) {
    std::vector<VerifyRow> rows;
    Rng rng(cfg.seed ^ 0xddu);
    for (double qv : {0.0, 0.5, 1.0}) {
        QParam q(qv);
        for (int n = 1; n <= std::min(cfg.n_max, 6); ++n) {
            const double y = interior(rng, q) * 0.6;
            const double rho = rng.uniform(0.2, 0.7);
            auto r = eigen_integral_checks(n, y, rho, q, 1e-9, cfg.policy);
            VerifyRow r1 = row("eigen_H_fCN", {{"q", qv}, {"n", double(n)}, {"y", y}},
                               r.hermite_residual, 0.0, 1.0);
            r1.residual = r.hermite_residual;
            r1.pass = r.hermite_residual < 1e-5;
            rows.push_back(r1);
            VerifyRow r2 = row("eigen_P_fCN", {{"q", qv}, {"n", double(n)}, {"y", y}},
                               r.asc_residual, 0.0, 1.0);
            r2.residual = r.asc_residual;
            r2.pass = r.asc_residual < 1e-5;
            rows.push_back(r2);
        }
    }
    return rows;
}

inline std::vector<VerifyRow> ks_sweep(const SweepConfig& cfg) {
    std::vector<VerifyRow> rows;
    Rng rng(cfg.seed ^ 0xeeu);
    for (double qv : {0.0, 0.5}) {
        QParam q(qv);
        for (int i = 0; i < cfg.points; ++i) {
            KSParams ks;
            ks.rho12 = rng.uniform(-0.6, 0.6);
            ks.rho13 = rng.uniform(-0.6, 0.6);
            ks.rho23 = rng.uniform(-0.6, 0.6);
            const double x1 = interior(rng, q) * 0.7, x2 = interior(rng, q) * 0.7,
                         x3 = interior(rng, q) * 0.7;
            auto d = kibble_slepian(x1, x2, x3, ks, q, KSRepresentation::direct_sum, cfg.policy);
            auto t1 = kibble_slepian(x1, x2, x3, ks, q, KSRepresentation::theorem_i, cfg.policy);
            auto t2 = kibble_slepian(x1, x2, x3, ks, q, KSRepresentation::theorem_ii, cfg.policy);
            rows.push_back(row("ks_direct_vs_i", {{"q", qv}, {"i", double(i)}}, d.value, t1.value,
                               1e-5, d.terms_used, d.converged && t1.converged));
            rows.push_back(row("ks_direct_vs_ii", {{"q", qv}, {"i", double(i)}}, d.value, t2.value,
                               1e-5, d.terms_used, d.converged && t2.converged));
        }
        // finiteness: rho12 = q^m rho13 rho23 -> m+1 nonzero summands
        if (qv != 0.0) {
            for (int m = 0; m <= 3; ++m) {
                const int cnt = ks_finite_term_count(m, 0.5, -0.4, q);
                rows.push_back(row("ks_finite_terms", {{"q", qv}, {"m", double(m)}}, double(cnt),
                                   double(m + 1), 0.0));
            }
        }
    }
    // negativity witness at q = 0.5
    {
        QParam q(0.5);
        auto hit = ks_negativity_search(q, 0.9, cfg.policy);
        VerifyRow r = row("ks_negativity", {{"q", 0.5}}, hit.g, 0.0, 1.0);
        r.pass = hit.found && hit.g < 0.0;
        r.residual = hit.found ? 0.0 : 1.0;
        rows.push_back(r);
    }
    return rows;
}

}  // namespace sweeps

// Sweep groups exposed to the CLI.  "--identity <name>" runs one group;
// "--all" runs all of them.
inline const std::vector<std::pair<std::string, SweepFn>>& sweep_registry() {
    using namespace sweeps;
    static const std::vector<std::pair<std::string, SweepFn>> reg = {
        {"rozklv", [](const SweepConfig& c) { return product_identities(c, ProductIdentity::rozklv, "rozklv"); }},
        {"rozklw", [](const SweepConfig& c) { return product_identities(c, ProductIdentity::rozklw, "rozklw"); }},
        {"rozkll", [](const SweepConfig& c) { return product_identities(c, ProductIdentity::rozkll, "rozkll"); }},
        {"rescale", rescale_sweep},
        {"trig", trig_sweep},
        {"genfun", genfun_sweep},
        {"reductions", reduction_sweep},
        {"szczeg", szczeg_sweep},
        {"carlitz", carlitz_and_bounds},
        {"expansions", expansion_sweep},
        {"qhyper", qhyper_sweep},
        {"PM", pm_sweep},
        {"kernels", kernel_sweep},
        {"reciprocal", reciprocal_sweep},
        {"gamma", gamma_sweep},
        {"density", density_sweep},
        {"ortho", ortho_sweep},
        {"eigen", eigen_sweep},
        {"ks", ks_sweep},
    };
    return reg;
}

// Single-identity dispatch: registry groups, individual expansion ids, or
// kernel kind names all resolve.
inline std::vector<VerifyRow> run_verify(const std::string& what, const SweepConfig& cfg) {
    for (const auto& [name, fn] : sweep_registry()) {
        if (name == what) return fn(cfg);
    }
    // individual expansion identity id
    for (const std::string& id : identity_registry()) {
        if (id == what) {
            SweepConfig c2 = cfg;
            auto all = sweeps::expansion_sweep(c2);
            std::vector<VerifyRow> mine;
            for (auto& r : all)
                if (r.identity_id == id) mine.push_back(r);
            return mine;
        }
    }
    throw std::invalid_argument("verify: unknown identity or group '" + what + "'");
}

inline std::vector<VerifyRow> run_verify_all(const SweepConfig& cfg) {
    std::vector<VerifyRow> rows;
    for (const auto& [name, fn] : sweep_registry()) {
        auto r = fn(cfg);
        rows.insert(rows.end(), r.begin(), r.end());
    }
    return rows;
}

}  // namespace qortho
