#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qortho/families.hpp"
#include "qortho/qcore.hpp"
#include "qortho/qhyper.hpp"

// Kernel summations: Poisson-Mehler and its diagonal corollary, the closed
// forms of Theorem "Kernels" i)-v) with the big-q-Hermite corollary, the
// reciprocal-kernel expansions, the gamma_{m,k}/Q_{m,k}/C_n machinery and the
// Carlitz bilinear formula.  Series and closed forms are computed on
// independent code paths (polynomial recurrences vs q-products and basic
// hypergeometric sums).

namespace qortho {

struct KernelResult {
    double series_value = 0.0;
    double closed_value = 0.0;
    double residual = 0.0;
    int terms_used = 0;
    bool converged = true;

    void finish() { residual = std::abs(series_value - closed_value); }
};

namespace detail {

// sum_{n} coef(n) * term built from running family sequences; stops when
// three consecutive terms fall below tolerance.
template <class TermFn>
std::pair<double, std::pair<int, bool>> sum_series(TermFn&& term, const TruncationPolicy& pol) {
    double s = 0.0;
    int streak = 0, n = 0;
    bool converged = false;
    for (; n < pol.max_terms; ++n) {
        const double t = term(n);
        s += t;
        if (std::abs(t) < pol.abs_tol * (1.0 + std::abs(s)) &&
            std::abs(t) < pol.rel_tol * (1.0 + std::abs(s))) {
            if (++streak >= 3) {
                ++n;
                converged = true;
                break;
            }
        } else {
            streak = 0;
        }
    }
    return {s, {n, converged}};
}

}  // namespace detail

// ---- Poisson-Mehler ----

// series sum_n rho^n/[n]_q! H_n(x|q) H_n(y|q); closed (rho^2)_inf / prod W_k,
// Gaussian form at q = 1.
inline KernelResult poisson_mehler(double x, double y, double rho, const QParam& q,
                                   const TruncationPolicy& pol = {}) {
    if (std::abs(rho) >= 1.0) throw std::domain_error("poisson_mehler: |rho| < 1 required");
    if (!q.in_support(x) || !q.in_support(y))
        throw std::domain_error("poisson_mehler: x,y must lie in S(q)");
    KernelResult res;
    FamilyParams<double> p{};
    p.q = q.q;

    const int cap = pol.max_terms;
    auto hx = family_eval_seq(Family::qHermite_H, cap, x, p);
    auto hy = family_eval_seq(Family::qHermite_H, cap, y, p);
    double rn = 1.0, fact = 1.0, br = 0.0, qpow = 1.0;
    auto [s, st] = detail::sum_series(
        [&](int n) {
            if (n > 0) {
                br += qpow;  // [n]_q after update
                qpow *= q.q;
                fact *= br;
                rn *= rho;
            }
            return rn / fact * hx[static_cast<size_t>(n)] * hy[static_cast<size_t>(n)];
        },
        pol);
    res.series_value = s;
    res.terms_used = st.first;
    res.converged = st.second;

    if (q.is_classical()) {
        const double v = 1.0 - rho * rho;
        res.closed_value = std::exp((2.0 * rho * x * y - rho * rho * (x * x + y * y)) / (2.0 * v)) /
                           std::sqrt(v);
    } else {
        res.closed_value = q_pochhammer_inf_real(rho * rho, q, pol) /
                           prod_W(x, y, rho, q, pol).real_value();
    }
    res.finish();
    return res;
}

// Diagonal corollary: sum_k rho^k (rho q^{k+1})_inf / [k]_q! H_{2k}(x|q)
//                   = (rho^2)_inf/(rho)_inf * prod L_k^{-1}(x,rho|q).
inline KernelResult poisson_mehler_diagonal_corollary(double x, double rho, const QParam& q,
                                                      const TruncationPolicy& pol = {}) {
    if (std::abs(rho) >= 1.0)
        throw std::domain_error("poisson_mehler_diagonal_corollary: |rho| < 1 required");
    if (!q.allows_infinite_products())
        throw std::domain_error("poisson_mehler_diagonal_corollary: |q| < 1 required");
    KernelResult res;
    FamilyParams<double> p{};
    p.q = q.q;
    const int cap = pol.max_terms;
    auto hx = family_eval_seq(Family::qHermite_H, 2 * cap + 1, x, p);

    const double poch_rho_inf = q_pochhammer_inf_real(rho, q, pol);
    double rk = 1.0, fact = 1.0, br = 0.0, qpow = 1.0, rho_qk1 = rho * q.q;
    // (rho q^{k+1})_inf = (rho)_inf / (rho)_{k+1}
    double poch_partial = 1.0 - rho;  // (rho)_{1}
    auto [s, st] = detail::sum_series(
        [&](int k) {
            if (k > 0) {
                br += qpow;
                qpow *= q.q;
                fact *= br;
                rk *= rho;
                poch_partial *= 1.0 - rho_qk1;
                rho_qk1 *= q.q;
            }
            return rk * (poch_rho_inf / poch_partial) / fact * hx[static_cast<size_t>(2 * k)];
        },
        pol);
    res.series_value = s;
    res.terms_used = st.first;
    res.converged = st.second;
    res.closed_value = q_pochhammer_inf_real(rho * rho, q, pol) / poch_rho_inf /
                       prod_L(x, rho, q, pol).real_value();
    res.finish();
    return res;
}

// ---- Theorem "Kernels" ----

enum class KernelKind { cheb_i, ultra_ii, bigH_iii, ascQ_iv_a, ascQ_iv_b, ascP_v, bigH_corollary };

inline KernelKind kernel_kind_from_string(const std::string& s) {
    if (s == "cheb_i") return KernelKind::cheb_i;
    if (s == "ultra_ii") return KernelKind::ultra_ii;
    if (s == "bigH_iii") return KernelKind::bigH_iii;
    if (s == "ascQ_iv_a") return KernelKind::ascQ_iv_a;
    if (s == "ascQ_iv_b") return KernelKind::ascQ_iv_b;
    if (s == "ascP_v") return KernelKind::ascP_v;
    if (s == "bigH_corollary") return KernelKind::bigH_corollary;
    throw std::invalid_argument("unknown kernel kind: " + s);
}

// Parameter bundle shared by the kernel kinds; unused members are ignored.
struct KernelArgs {
    double x = 0.0, y = 0.0, z = 0.0;
    double t = 0.0;
    double beta = 0.0;             // ultra_ii
    double a = 0.0, b = 0.0;       // bigH_iii / iv / corollary
    double alpha = 0.0, beta2 = 0.0;  // iv: second ASC pair (alpha, beta)
    double rho1 = 0.0, rho2 = 0.0;    // ascP_v
};

namespace detail {

// Confluent very-well-poised sum used by bigH_iii: the b,beta -> 0 limit of
// assertion iv-b.  With A = a b s / q the summand is
//   (A)_n (1-A q^{2n})/(1-A) * (a e^{it}, a e^{-it}, b e^{ip}, b e^{-ip})_n
//   / ((q, b s e^{it}, b s e^{-it}, a s e^{ip}, a s e^{-ip})_n)
//   * (-1)^n q^C(n,2) s^{2n}.
inline PhiResult bigh_kernel_phi(double a, double b, double s, const TrigPoint& tx,
                                 const TrigPoint& ty, const QParam& q,
                                 const TruncationPolicy& pol) {
    const cplx eit = tx.eitheta(), eip = ty.eitheta();
    const double A = a * b * s / q.q;
    const cplx nump[4] = {a * eit, a / eit, b * eip, b / eip};
    const cplx denp[4] = {b * s * eit, b * s / eit, a * s * eip, a * s / eip};
    PhiResult res;
    cplx base(1.0, 0.0);  // (A)_n prod(num)_n / ((q)_n prod(den)_n) (-1)^n q^C(n,2) s^{2n}
    double qn = 1.0;
    int streak = 0;
    for (int n = 0; n < pol.max_terms; ++n) {
        const cplx summand = base * (1.0 - A * qn * qn) / (1.0 - A);
        res.value += summand;
        ++res.terms;
        cplx ratio = 1.0 - A * qn;
        for (const cplx& v : nump) ratio *= 1.0 - v * qn;
        for (const cplx& v : denp) ratio /= 1.0 - v * qn;
        ratio /= 1.0 - q.q * qn;
        base *= ratio * (-qn) * (s * s);
        qn *= q.q;
        if (std::abs(base) < pol.abs_tol * (1.0 + std::abs(res.value))) {
            if (++streak >= 3) return res;
        } else {
            streak = 0;
        }
    }
    res.converged = false;
    return res;
}

}  // namespace detail

inline KernelResult kernel_sum(KernelKind kind, const KernelArgs& a, const QParam& q,
                               const TruncationPolicy& pol = {}) {
    KernelResult res;
    switch (kind) {
        case KernelKind::cheb_i: {
            // sum t^n U_n(x/2) U_n(y/2) = (1-t^2)/w_0(x/2,y/2,t)
            if (std::abs(a.t) >= 1.0 || std::abs(a.x) >= 2.0 || std::abs(a.y) >= 2.0)
                throw std::domain_error("cheb_i: |t|<1 and |x|,|y|<2 required");
            FamilyParams<double> p{};
            auto ux = family_eval_seq(Family::Cheb_U, pol.max_terms, a.x / 2.0, p);
            auto uy = family_eval_seq(Family::Cheb_U, pol.max_terms, a.y / 2.0, p);
            double tn = 1.0;
            auto [s, st] = detail::sum_series(
                [&](int n) {
                    if (n > 0) tn *= a.t;
                    return tn * ux[static_cast<size_t>(n)] * uy[static_cast<size_t>(n)];
                },
                pol);
            res.series_value = s;
            res.terms_used = st.first;
            res.converged = st.second;
            const double t = a.t;
            const double denom = (1.0 - t * t) * (1.0 - t * t) - t * (1.0 + t * t) * a.x * a.y +
                                 t * t * (a.x * a.x + a.y * a.y);
            res.closed_value = (1.0 - t * t) / denom;
            break;
        }
        case KernelKind::ultra_ii: {
            // sum (1-beta q^n)(q)_n / ((1-beta)(beta^2)_n) t^n C_n(x)C_n(y)
            // = (beta q)_inf (t^2)_inf / ((beta^2)_inf (beta t^2)_inf)
            //   * prod w(x,y,t beta)/w(x,y,t) * 8W7(beta t^2/q; beta/q, t e^{+-i(th+-ph)}; q, beta q)
            if (std::abs(a.t) >= 1.0 || std::abs(a.x) >= 1.0 || std::abs(a.y) >= 1.0 ||
                std::abs(a.beta) >= 1.0)
                throw std::domain_error("ultra_ii: |t|,|x|,|y|,|beta| < 1 required");
            FamilyParams<double> p{};
            p.q = q.q;
            p.beta = a.beta;
            auto cx = family_eval_seq(Family::Ultra_C, pol.max_terms, a.x, p);
            auto cy = family_eval_seq(Family::Ultra_C, pol.max_terms, a.y, p);
            double tn = 1.0, qn = 1.0, pq = 1.0, pb = 1.0;
            auto [s, st] = detail::sum_series(
                [&](int n) {
                    if (n > 0) {
                        tn *= a.t;
                        pq *= 1.0 - qn * q.q;           // (q)_n
                        pb *= 1.0 - a.beta * a.beta * qn;  // (beta^2)_n
                        qn *= q.q;
                    }
                    return (1.0 - a.beta * qn) * pq / ((1.0 - a.beta) * pb) * tn *
                           cx[static_cast<size_t>(n)] * cy[static_cast<size_t>(n)];
                },
                pol);
            res.series_value = s;
            res.terms_used = st.first;
            res.converged = st.second;

            const TrigPoint tx = TrigPoint::from_x(a.x), ty = TrigPoint::from_x(a.y);
            const cplx eit = tx.eitheta(), eip = ty.eitheta();
            const double pref = q_pochhammer_inf_real(a.beta * q.q, q, pol) *
                                q_pochhammer_inf_real(a.t * a.t, q, pol) /
                                (q_pochhammer_inf_real(a.beta * a.beta, q, pol) *
                                 q_pochhammer_inf_real(a.beta * a.t * a.t, q, pol));
            const double ratio =
                (prod_w(a.x, a.y, a.t * a.beta, q, pol).value / prod_w(a.x, a.y, a.t, q, pol).value)
                    .real();
            auto w87 = very_well_poised_W(
                4, cplx(a.beta * a.t * a.t / q.q),
                {cplx(a.beta / q.q), a.t * eit * eip, a.t / (eit * eip), a.t * eit / eip,
                 a.t * eip / eit},
                q, cplx(a.beta * q.q), pol);
            if (!w87.converged) res.converged = false;
            res.closed_value = pref * ratio * w87.value.real();
            break;
        }
        case KernelKind::bigH_iii: {
            // sum_n (t b/a)^n/(q)_n h_n(x|a,q) h_n(y|b,q); closed form via the
            // confluent limit of iv-b with s = t b / a.
            const double s_arg = a.t * a.b / a.a;
            if (std::abs(a.x) > 1.0 || std::abs(a.y) > 1.0 || std::abs(a.t) > 1.0 ||
                std::abs(s_arg) > 1.0)
                throw std::domain_error("bigH_iii: |x|,|y|,|t|,|tb/a| <= 1 required");
            FamilyParams<double> px{}, py{};
            px.q = py.q = q.q;
            px.a = a.a;
            py.a = a.b;
            auto hx = family_eval_seq(Family::bigqHermite_h, pol.max_terms, a.x, px);
            auto hy = family_eval_seq(Family::bigqHermite_h, pol.max_terms, a.y, py);
            double sn = 1.0, pq = 1.0, qn = 1.0;
            auto [s, st] = detail::sum_series(
                [&](int n) {
                    if (n > 0) {
                        sn *= s_arg;
                        pq *= 1.0 - qn * q.q;
                        qn *= q.q;
                    }
                    return sn / pq * hx[static_cast<size_t>(n)] * hy[static_cast<size_t>(n)];
                },
                pol);
            res.series_value = s;
            res.terms_used = st.first;
            res.converged = st.second;

            const TrigPoint tx = TrigPoint::from_x(a.x), ty = TrigPoint::from_x(a.y);
            const double pref = 1.0 / q_pochhammer_inf_real(a.a * a.b * s_arg, q, pol);
            const double vprod =
                (prod_v(a.x, a.b * s_arg, q, pol).value * prod_v(a.y, a.a * s_arg, q, pol).value /
                 prod_w(a.x, a.y, s_arg, q, pol).value)
                    .real();
            auto conf = detail::bigh_kernel_phi(a.a, a.b, s_arg, tx, ty, q, pol);
            if (!conf.converged) res.converged = false;
            res.closed_value = pref * vprod * conf.value.real();
            break;
        }
        case KernelKind::ascQ_iv_a: {
            // sum (t alpha/a)^n/((q)_n (ab)_n) Q_n(x|a,b) Q_n(y|alpha,beta), ab = alpha beta
            if (std::abs(a.a * a.b - a.alpha * a.beta2) > 1e-12)
                throw std::domain_error("ascQ_iv_a: ab = alpha beta required");
            if (std::abs(a.t) >= 1.0 || std::abs(a.x) > 1.0 || std::abs(a.y) > 1.0)
                throw std::domain_error("ascQ_iv_a: |t| < 1, |x|,|y| <= 1 required");
            FamilyParams<cplx> px{}, py{};
            px.q = py.q = cplx(q.q);
            px.a = cplx(a.a);
            px.b = cplx(a.b);
            py.a = cplx(a.alpha);
            py.b = cplx(a.beta2);
            auto qx = family_eval_seq(Family::ASC_Q, pol.max_terms, cplx(a.x), px);
            auto qy = family_eval_seq(Family::ASC_Q, pol.max_terms, cplx(a.y), py);
            const double r = a.t * a.alpha / a.a;
            double rn = 1.0, pq = 1.0, pab = 1.0, qn = 1.0;
            auto [s, st] = detail::sum_series(
                [&](int n) {
                    if (n > 0) {
                        rn *= r;
                        pq *= 1.0 - qn * q.q;
                        pab *= 1.0 - a.a * a.b * qn;
                        qn *= q.q;
                    }
                    return rn / (pq * pab) *
                           (qx[static_cast<size_t>(n)] * qy[static_cast<size_t>(n)]).real();
                },
                pol);
            res.series_value = s;
            res.terms_used = st.first;
            res.converged = st.second;

            const TrigPoint tx = TrigPoint::from_x(a.x), ty = TrigPoint::from_x(a.y);
            const cplx eit = tx.eitheta(), eip = ty.eitheta();
            const double A2 = a.alpha * a.alpha, t = a.t;
            const cplx num = q_pochhammer_inf(cplx(A2 * t * t / (a.a * a.a)), q, pol).value *
                             q_pochhammer_inf(A2 * t / a.a * eit, q, pol).value *
                             q_pochhammer_inf(a.b / eit, q, pol).value *
                             q_pochhammer_inf(a.b * t * eit, q, pol).value *
                             q_pochhammer_inf(a.alpha * t / eip, q, pol).value *
                             q_pochhammer_inf(a.alpha * t * eip, q, pol).value;
            const cplx den = q_pochhammer_inf(cplx(a.a * a.b), q, pol).value *
                             q_pochhammer_inf(A2 * t * t / a.a * eit, q, pol).value *
                             prod_w(a.x, a.y, a.alpha * t / a.a, q, pol).value;
            auto w87 = very_well_poised_W(
                4, A2 * t * t * eit / (a.a * q.q),
                {cplx(t), cplx(a.alpha * t / a.beta2), a.a * eit,
                 a.alpha * t / a.a * eit * eip, a.alpha * t / a.a * eit / eip},
                q, a.b / eit, pol);
            if (!w87.converged) res.converged = false;
            res.closed_value = (num / den * w87.value).real();
            break;
        }
        case KernelKind::ascQ_iv_b: {
            // sum t^n/((q)_n (ab)_n) Q_n(x|a,b) Q_n(y|alpha,beta), ab = alpha beta
            if (std::abs(a.a * a.b - a.alpha * a.beta2) > 1e-12)
                throw std::domain_error("ascQ_iv_b: ab = alpha beta required");
            if (std::abs(a.t) >= 1.0 || std::abs(a.x) > 1.0 || std::abs(a.y) > 1.0)
                throw std::domain_error("ascQ_iv_b: |t| < 1, |x|,|y| <= 1 required");
            FamilyParams<cplx> px{}, py{};
            px.q = py.q = cplx(q.q);
            px.a = cplx(a.a);
            px.b = cplx(a.b);
            py.a = cplx(a.alpha);
            py.b = cplx(a.beta2);
            auto qx = family_eval_seq(Family::ASC_Q, pol.max_terms, cplx(a.x), px);
            auto qy = family_eval_seq(Family::ASC_Q, pol.max_terms, cplx(a.y), py);
            double tn = 1.0, pq = 1.0, pab = 1.0, qn = 1.0;
            auto [s, st] = detail::sum_series(
                [&](int n) {
                    if (n > 0) {
                        tn *= a.t;
                        pq *= 1.0 - qn * q.q;
                        pab *= 1.0 - a.a * a.b * qn;
                        qn *= q.q;
                    }
                    return tn / (pq * pab) *
                           (qx[static_cast<size_t>(n)] * qy[static_cast<size_t>(n)]).real();
                },
                pol);
            res.series_value = s;
            res.terms_used = st.first;
            res.converged = st.second;

            const TrigPoint tx = TrigPoint::from_x(a.x), ty = TrigPoint::from_x(a.y);
            const cplx eit = tx.eitheta(), eip = ty.eitheta();
            const double t = a.t;
            // product numerator v_k(x, alpha t) v_k(y, a t)
            const double vprod =
                (prod_v(a.x, a.alpha * t, q, pol).value * prod_v(a.y, a.a * t, q, pol).value /
                 prod_w(a.x, a.y, t, q, pol).value)
                    .real();
            const double pref = q_pochhammer_inf_real(a.beta2 * t / a.a, q, pol) /
                                q_pochhammer_inf_real(a.alpha * a.a * t, q, pol);
            auto w87 = very_well_poised_W(4, cplx(a.alpha * a.a * t / q.q),
                                          {cplx(a.alpha * t / a.b), a.a * eit, a.a / eit,
                                           a.alpha * eip, a.alpha / eip},
                                          q, cplx(a.beta2 * t / a.a), pol);
            if (!w87.converged) res.converged = false;
            res.closed_value = pref * vprod * w87.value.real();
            break;
        }
        case KernelKind::ascP_v: {
            // 0 <= sum rho1^n/([n]_q!(rho2^2)_n) P_n(x|y,rho2) P_n(z|y,rho2/rho1)
            //    = (rho1^2)_inf/(rho2^2)_inf prod W(x,y,rho2)/W(x,z,rho1)
            if (std::abs(a.rho1) >= 1.0 || std::abs(a.rho2) >= 1.0)
                throw std::domain_error("ascP_v: |rho1|,|rho2| < 1 required");
            if (!q.in_support(a.x) || !q.in_support(a.y) || !q.in_support(a.z))
                throw std::domain_error("ascP_v: x,y,z must lie in S(q)");
            FamilyParams<double> p1{}, p2{};
            p1.q = p2.q = q.q;
            p1.y = a.y;
            p1.rho = a.rho2;
            p2.y = a.y;
            p2.rho = a.rho2 / a.rho1;
            auto px = family_eval_seq(Family::ASC_P, pol.max_terms, a.x, p1);
            auto pz = family_eval_seq(Family::ASC_P, pol.max_terms, a.z, p2);
            double rn = 1.0, fact = 1.0, br = 0.0, qpow = 1.0, p22 = 1.0, qn = 1.0;
            auto [s, st] = detail::sum_series(
                [&](int n) {
                    if (n > 0) {
                        br += qpow;
                        qpow *= q.q;
                        fact *= br;
                        rn *= a.rho1;
                        p22 *= 1.0 - a.rho2 * a.rho2 * qn;
                        qn *= q.q;
                    }
                    return rn / (fact * p22) * px[static_cast<size_t>(n)] *
                           pz[static_cast<size_t>(n)];
                },
                pol);
            res.series_value = s;
            res.terms_used = st.first;
            res.converged = st.second;
            res.closed_value = q_pochhammer_inf_real(a.rho1 * a.rho1, q, pol) /
                               q_pochhammer_inf_real(a.rho2 * a.rho2, q, pol) *
                               (prod_W(a.x, a.y, a.rho2, q, pol).value /
                                prod_W(a.x, a.z, a.rho1, q, pol).value)
                                   .real();
            break;
        }
        case KernelKind::bigH_corollary: {
            // 0 <= sum (b/a)^n/[n]_q! H_n(x|a,q) H_n(y|b,q)
            //    = (b^2/a^2)_inf prod V(y,b)/W(x,y,b/a)
            if (!(std::abs(a.a) > std::abs(a.b)))
                throw std::domain_error("bigH_corollary: |a| > |b| required");
            if (!q.in_support(a.x) || !q.in_support(a.y))
                throw std::domain_error("bigH_corollary: x,y must lie in S(q)");
            FamilyParams<double> px{}, py{};
            px.q = py.q = q.q;
            px.a = a.a;
            py.a = a.b;
            auto hx = family_eval_seq(Family::bigqHermite_H, pol.max_terms, a.x, px);
            auto hy = family_eval_seq(Family::bigqHermite_H, pol.max_terms, a.y, py);
            const double r = a.b / a.a;
            double rn = 1.0, fact = 1.0, br = 0.0, qpow = 1.0;
            auto [s, st] = detail::sum_series(
                [&](int n) {
                    if (n > 0) {
                        br += qpow;
                        qpow *= q.q;
                        fact *= br;
                        rn *= r;
                    }
                    return rn / fact * hx[static_cast<size_t>(n)] * hy[static_cast<size_t>(n)];
                },
                pol);
            res.series_value = s;
            res.terms_used = st.first;
            res.converged = st.second;
            res.closed_value = q_pochhammer_inf_real(r * r, q, pol) *
                               (prod_V(a.y, a.b, q, pol).value / prod_W(a.x, a.y, r, q, pol).value)
                                   .real();
            break;
        }
    }
    res.finish();
    return res;
}

// ---- reciprocal expansions ----

enum class ReciprocalKind { recip_i, recip_ii_q1, recip_iii, recip_iv };

inline ReciprocalKind reciprocal_kind_from_string(const std::string& s) {
    if (s == "recip_i") return ReciprocalKind::recip_i;
    if (s == "recip_ii_q1") return ReciprocalKind::recip_ii_q1;
    if (s == "recip_iii") return ReciprocalKind::recip_iii;
    if (s == "recip_iv") return ReciprocalKind::recip_iv;
    throw std::invalid_argument("unknown reciprocal kind: " + s);
}

// helper B_m(x|b,q) = sum_j [m j]_q b^{m-j} B_j(x|q)
inline double big_B_helper(int m, double x, double b, const QParam& q) {
    FamilyParams<double> p{};
    p.q = q.q;
    auto bj = family_eval_seq(Family::qInvHermite_B, m, x, p);
    double s = 0.0;
    for (int j = 0; j <= m; ++j)
        s += q_binomial(m, j, q.q) * std::pow(b, m - j) * bj[static_cast<size_t>(j)];
    return s;
}

// KernelResult convention here: series_value = reciprocal-expansion series,
// closed_value = 1 / kernel-series, residual = |product - 1| via finish().
inline KernelResult reciprocal_expansion(ReciprocalKind kind, const KernelArgs& a, const QParam& q,
                                         const TruncationPolicy& pol = {}) {
    KernelResult res;
    switch (kind) {
        case ReciprocalKind::recip_i: {
            if (std::abs(a.rho1) >= 1.0) throw std::domain_error("recip_i: |rho| < 1 required");
            auto pm = poisson_mehler(a.x, a.y, a.rho1, q, pol);
            if (std::abs(pm.series_value) < 1e-8)
                throw std::domain_error("recip_i: kernel series too close to zero");
            FamilyParams<double> p{};
            p.q = q.q;
            auto bn = family_eval_seq(Family::qInvHermite_B, pol.max_terms, a.y, p);
            FamilyParams<double> pp = p;
            pp.y = a.y;
            pp.rho = a.rho1;
            auto pn = family_eval_seq(Family::ASC_P, pol.max_terms, a.x, pp);
            double rn = 1.0, fact = 1.0, br = 0.0, qpow = 1.0, p2 = 1.0, qn = 1.0;
            auto [s, st] = detail::sum_series(
                [&](int n) {
                    if (n > 0) {
                        br += qpow;
                        qpow *= q.q;
                        fact *= br;
                        rn *= a.rho1;
                        p2 *= 1.0 - a.rho1 * a.rho1 * qn;
                        qn *= q.q;
                    }
                    return rn / (p2 * fact) * bn[static_cast<size_t>(n)] *
                           pn[static_cast<size_t>(n)];
                },
                pol);
            res.series_value = s;
            res.terms_used = st.first;
            res.converged = st.second && pm.converged;
            res.closed_value = 1.0 / pm.series_value;
            break;
        }
        case ReciprocalKind::recip_ii_q1: {
            // q = 1, rho^2 < 1/2:
            // 1/PM = sum rho^n i^n/(n!(1-rho^2)^{n/2}) H_n(iy) H_n((x-rho y)/sqrt(1-rho^2))
            const double rho = a.rho1;
            if (!(rho * rho < 0.5)) throw std::domain_error("recip_ii_q1: rho^2 < 1/2 required");
            auto pm = poisson_mehler(a.x, a.y, rho, QParam(1.0), pol);
            FamilyParams<double> p{};
            p.q = 1.0;
            auto by = family_eval_seq(Family::qInvHermite_B, pol.max_terms, a.y, p);  // i^n H_n(iy)
            const double xr = (a.x - rho * a.y) / std::sqrt(1.0 - rho * rho);
            auto hx = family_eval_seq(Family::Hermite_H, pol.max_terms, xr, p);
            double rn = 1.0, fact = 1.0, sq = 1.0;
            const double sfac = 1.0 / std::sqrt(1.0 - rho * rho);
            auto [s, st] = detail::sum_series(
                [&](int n) {
                    if (n > 0) {
                        fact *= n;
                        rn *= rho;
                        sq *= sfac;
                    }
                    return rn / fact * sq * by[static_cast<size_t>(n)] * hx[static_cast<size_t>(n)];
                },
                pol);
            res.series_value = s;
            res.terms_used = st.first;
            res.converged = st.second && pm.converged;
            res.closed_value = 1.0 / pm.series_value;
            break;
        }
        case ReciprocalKind::recip_iii: {
            // |a| < |b|: 1/sum (a/b)^n/[n]_q! H_n(x|a)H_n(y|b)
            //  = sum (a/b)^n/([n]_q!(a^2/b^2)_n) B_n(y|b,q) P_n(x|y,a/b,q)
            if (!(std::abs(a.a) < std::abs(a.b)))
                throw std::domain_error("recip_iii: |a| < |b| required");
            // kernel series sum (a/b)^n/[n]! H_n(x|a)H_n(y|b):
            FamilyParams<double> px{}, py{};
            px.q = py.q = q.q;
            px.a = a.a;
            py.a = a.b;
            auto hx = family_eval_seq(Family::bigqHermite_H, pol.max_terms, a.x, px);
            auto hy = family_eval_seq(Family::bigqHermite_H, pol.max_terms, a.y, py);
            const double r = a.a / a.b;
            double rn = 1.0, fact = 1.0, br = 0.0, qpow = 1.0;
            auto [ks, kst] = detail::sum_series(
                [&](int n) {
                    if (n > 0) {
                        br += qpow;
                        qpow *= q.q;
                        fact *= br;
                        rn *= r;
                    }
                    return rn / fact * hx[static_cast<size_t>(n)] * hy[static_cast<size_t>(n)];
                },
                pol);
            if (std::abs(ks) < 1e-8)
                throw std::domain_error("recip_iii: kernel series too close to zero");
            FamilyParams<double> pp{};
            pp.q = q.q;
            pp.y = a.y;
            pp.rho = r;
            auto pn = family_eval_seq(Family::ASC_P, pol.max_terms, a.x, pp);
            double rn2 = 1.0, fact2 = 1.0, br2 = 0.0, qpow2 = 1.0, pr2 = 1.0, qn = 1.0;
            auto [s, st] = detail::sum_series(
                [&](int n) {
                    if (n > 0) {
                        br2 += qpow2;
                        qpow2 *= q.q;
                        fact2 *= br2;
                        rn2 *= r;
                        pr2 *= 1.0 - r * r * qn;
                        qn *= q.q;
                    }
                    return rn2 / (fact2 * pr2) * big_B_helper(n, a.y, a.b, q) *
                           pn[static_cast<size_t>(n)];
                },
                pol);
            res.series_value = s;
            res.terms_used = st.first;
            res.converged = st.second && kst.second;
            res.closed_value = 1.0 / ks;
            break;
        }
        case ReciprocalKind::recip_iv: {
            // reciprocal of the ascP_v series swaps (rho1, rho2) and (y, z)
            auto k1 = kernel_sum(KernelKind::ascP_v, a, q, pol);
            KernelArgs sw = a;
            std::swap(sw.rho1, sw.rho2);
            std::swap(sw.y, sw.z);
            auto k2 = kernel_sum(KernelKind::ascP_v, sw, q, pol);
            if (std::abs(k1.series_value) < 1e-8)
                throw std::domain_error("recip_iv: kernel series too close to zero");
            res.series_value = k2.series_value;
            res.closed_value = 1.0 / k1.series_value;
            res.terms_used = k1.terms_used + k2.terms_used;
            res.converged = k1.converged && k2.converged;
            break;
        }
    }
    res.finish();
    return res;
}

// ---- gamma_{m,k}, Q_{m,k}, C_n ----

// gamma_{m,k}(x,y|rho,q) = sum_j rho^j/[j]_q! H_{j+m}(x|q) H_{j+k}(y|q)
inline KernelResult gamma_mk(int m, int k, double x, double y, double rho, const QParam& q,
                             const TruncationPolicy& pol = {}) {
    if (m < 0 || k < 0) throw std::domain_error("gamma_mk: m,k >= 0 required");
    if (std::abs(rho) >= 1.0) throw std::domain_error("gamma_mk: |rho| < 1 required");
    KernelResult res;
    FamilyParams<double> p{};
    p.q = q.q;
    auto hx = family_eval_seq(Family::qHermite_H, pol.max_terms + m, x, p);
    auto hy = family_eval_seq(Family::qHermite_H, pol.max_terms + k, y, p);
    double rj = 1.0, fact = 1.0, br = 0.0, qpow = 1.0;
    auto [s, st] = detail::sum_series(
        [&](int j) {
            if (j > 0) {
                br += qpow;
                qpow *= q.q;
                fact *= br;
                rj *= rho;
            }
            return rj / fact * hx[static_cast<size_t>(j + m)] * hy[static_cast<size_t>(j + k)];
        },
        pol);
    res.series_value = s;
    res.terms_used = st.first;
    res.converged = st.second;
    res.closed_value = s;
    return res;
}

// Q_{m,k}(x,y|rho,q) = sum_{s=0}^k (-1)^s q^C(s,2) [k s]_q rho^s H_{k-s}(y)
//                      P_{m+s}(x|y,rho,q) / (rho^2)_{m+s}
inline double Q_mk(int m, int k, double x, double y, double rho, const QParam& q) {
    if (m < 0 || k < 0) throw std::domain_error("Q_mk: m,k >= 0 required");
    FamilyParams<double> p{};
    p.q = q.q;
    auto hy = family_eval_seq(Family::qHermite_H, k, y, p);
    FamilyParams<double> pp = p;
    pp.y = y;
    pp.rho = rho;
    auto pn = family_eval_seq(Family::ASC_P, m + k, x, pp);
    double s = 0.0;
    for (int j = 0; j <= k; ++j) {
        const double poch = q_pochhammer(rho * rho, q.q, m + j);
        if (std::abs(poch) < 1e-14)
            throw std::domain_error("Q_mk: (rho^2)_{m+s} vanishes (conditioning)");
        const double sgn = (j % 2 == 0) ? 1.0 : -1.0;
        s += sgn * std::pow(q.q, j * (j - 1) / 2) * q_binomial(k, j, q.q) * std::pow(rho, j) *
             hy[static_cast<size_t>(k - j)] * pn[static_cast<size_t>(m + j)] / poch;
    }
    return s;
}

// C_n(x,y|rho1,rho2,rho3,q) = sum_s [n s]_q H_{n-s}(y) P_s(x|y,rho3)
//       rho2^{n-s} prod_{i<s}(rho1 - rho2 rho3 q^i) / (rho3^2)_s
// (the paper's assertion ii with its rho1/rho2 roles restored; equals the
// definition sum over Q_{n-k,k}).
inline double C_n_aux(int n, double x, double y, double rho1, double rho2, double rho3,
                      const QParam& q) {
    if (n < 0) throw std::domain_error("C_n_aux: n >= 0 required");
    FamilyParams<double> p{};
    p.q = q.q;
    auto hy = family_eval_seq(Family::qHermite_H, n, y, p);
    FamilyParams<double> pp = p;
    pp.y = y;
    pp.rho = rho3;
    auto pn = family_eval_seq(Family::ASC_P, n, x, pp);
    double total = 0.0;
    for (int s = 0; s <= n; ++s) {
        double c = std::pow(rho2, n - s);
        double qi = 1.0;
        for (int i = 0; i < s; ++i) {
            c *= rho1 - rho2 * rho3 * qi;
            qi *= q.q;
        }
        const double poch = q_pochhammer(rho3 * rho3, q.q, s);
        if (std::abs(poch) < 1e-14) throw std::domain_error("C_n_aux: (rho3^2)_s vanishes");
        total += q_binomial(n, s, q.q) * hy[static_cast<size_t>(n - s)] *
                 pn[static_cast<size_t>(s)] * c / poch;
    }
    return total;
}

// ---- Carlitz bilinear formula ----

struct CarlitzResult {
    double suma_h_residual = 0.0;   // |bilinear h-series - closed form|
    double upr_car_residual = 0.0;  // |double sum - p-polynomial form|
    int terms_used = 0;
    bool converged = true;
};

inline CarlitzResult carlitz_bilinear_check(int m, int n, double x, double y, double t,
                                            const QParam& q, const TruncationPolicy& pol = {}) {
    if (std::abs(t) >= 1.0) throw std::domain_error("carlitz_bilinear_check: |t| < 1 required");
    if (std::abs(x) > 1.0 || std::abs(y) > 1.0)
        throw std::domain_error("carlitz_bilinear_check: |x|,|y| <= 1 required");
    CarlitzResult out;
    FamilyParams<double> p{};
    p.q = q.q;
    auto hx = family_eval_seq(Family::qHermite_h, pol.max_terms + m, x, p);
    auto hy = family_eval_seq(Family::qHermite_h, pol.max_terms + n, y, p);
    double tk = 1.0, pq = 1.0, qn = 1.0;
    auto [lhs, st] = detail::sum_series(
        [&](int k) {
            if (k > 0) {
                tk *= t;
                pq *= 1.0 - qn * q.q;
                qn *= q.q;
            }
            return tk / pq * hx[static_cast<size_t>(m + k)] * hy[static_cast<size_t>(n + k)];
        },
        pol);
    out.terms_used = st.first;
    out.converged = st.second;

    const TrigPoint tx = TrigPoint::from_x(x), te = TrigPoint::from_x(y);
    const cplx eith = tx.eitheta(), eie = te.eitheta();
    const double pref =
        (infinite_product([&](int k) { return (1.0 - t * t * std::pow(q.q, k)) /
                                              aux_w(x, y, t, q.q, k); },
                          q, pol, 4.0 * (std::abs(x * y * t) + t * t * (1.0 + x * x + y * y)) + 2.0)
             .value)
            .real();
    cplx dbl(0.0, 0.0);
    for (int k = 0; k <= m; ++k) {
        for (int l = 0; l <= n; ++l) {
            const cplx c = q_binomial(m, k, cplx(q.q)) * q_binomial(n, l, cplx(q.q)) *
                           q_pochhammer(t * eie / eith, cplx(q.q), k) *
                           q_pochhammer(t * eith / eie, cplx(q.q), l) *
                           q_pochhammer(t / (eith * eie), cplx(q.q), k + l) /
                           q_pochhammer(cplx(t * t), cplx(q.q), k + l);
            dbl += c * std::pow(eith, -(m - 2 * k)) * std::pow(eie, -(n - 2 * l));
        }
    }
    out.suma_h_residual = std::abs(lhs - pref * dbl.real());

    // (upr_Car): double sum = sum_j (-1)^j q^C(j,2) [n j] t^j h_{n-j}(y) p_{m+j}(x|y,t,q)/(t^2)_{j+m}
    FamilyParams<double> pp = p;
    pp.y = y;
    pp.rho = t;
    auto ps = family_eval_seq(Family::ASC_p, m + n, x, pp);
    double rhs2 = 0.0;
    for (int j = 0; j <= n; ++j) {
        const double sgn = (j % 2 == 0) ? 1.0 : -1.0;
        rhs2 += sgn * std::pow(q.q, j * (j - 1) / 2) * q_binomial(n, j, q.q) * std::pow(t, j) *
                hy[static_cast<size_t>(n - j)] * ps[static_cast<size_t>(m + j)] /
                q_pochhammer(t * t, q.q, j + m);
    }
    out.upr_car_residual = std::abs(dbl.real() - rhs2);
    return out;
}

}  // namespace qortho
