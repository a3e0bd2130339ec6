#pragma once

#include <complex>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qortho/poly.hpp"
#include "qortho/qcore.hpp"

// The sixteen polynomial families, evaluated by forward three-term
// recurrence from P_{-1}=0, P_0=1.  Upper-case families live on S(q),
// lower-case ones on [-1,1].

namespace qortho {

enum class Family {
    Hermite_H,      // probabilists': H_{n+1} = x H_n - n H_{n-1}
    Hermite_h,      // physicists':   h_{n+1} = 2x h_n - 2n h_{n-1}
    Cheb_T,
    Cheb_U,
    qHermite_h,     // h_{n+1} = 2x h_n - (1-q^n) h_{n-1}
    qHermite_H,     // H_{n+1} = x H_n - [n]_q H_{n-1}
    bigqHermite_h,  // h_{n+1} = (2x - a q^n) h_n - (1-q^n) h_{n-1}
    bigqHermite_H,  // H_{n+1} = (x - a q^n) H_n - [n]_q H_{n-1}
    ASC_Q,          // Q_{n+1} = (2x - (a+b) q^n) Q_n - (1-ab q^{n-1})(1-q^n) Q_{n-1}
    ASC_P,          // P_{n+1} = (x - rho y q^n) P_n - (1-rho^2 q^{n-1})[n]_q P_{n-1}
    ASC_p,          // p_{n+1} = 2(x - rho y q^n) p_n - (1-rho^2 q^{n-1})(1-q^n) p_{n-1}
    Ultra_C,        // (1-q^{n+1}) C_{n+1} = 2(1-beta q^n) x C_n - (1-beta^2 q^{n-1}) C_{n-1}
    Ultra_R,        // R_{n+1} = (1-beta q^n) x R_n - (1-beta^2 q^{n-1})[n]_q R_{n-1}
    RogersSzego_s,  // s_{n+1} = (1+x) s_n - (1-q^n) x s_{n-1}
    qInvHermite_B,  // B_{n+1} = -q^n x B_n + q^{n-1}[n]_q B_{n-1}
    qInvHermite_b,  // b_{n+1} = -2 q^n x b_n + q^{n-1}(1-q^n) b_{n-1}
};

inline const std::map<std::string, Family>& family_names() {
    static const std::map<std::string, Family> m = {
        {"Hermite_H", Family::Hermite_H},       {"Hermite_h", Family::Hermite_h},
        {"Cheb_T", Family::Cheb_T},             {"Cheb_U", Family::Cheb_U},
        {"qHermite_h", Family::qHermite_h},     {"qHermite_H", Family::qHermite_H},
        {"bigqHermite_h", Family::bigqHermite_h}, {"bigqHermite_H", Family::bigqHermite_H},
        {"ASC_Q", Family::ASC_Q},               {"ASC_P", Family::ASC_P},
        {"ASC_p", Family::ASC_p},               {"Ultra_C", Family::Ultra_C},
        {"Ultra_R", Family::Ultra_R},           {"RogersSzego_s", Family::RogersSzego_s},
        {"qInvHermite_B", Family::qInvHermite_B}, {"qInvHermite_b", Family::qInvHermite_b},
    };
    return m;
}

inline Family family_from_string(const std::string& s) {
    auto it = family_names().find(s);
    if (it == family_names().end()) throw std::invalid_argument("unknown family: " + s);
    return it->second;
}

inline std::string family_to_string(Family f) {
    for (const auto& [k, v] : family_names())
        if (v == f) return k;
    return "?";
}

// Parameters in the scalar type used for evaluation.  a,b serve ASC_Q and the
// big q-Hermite families; (y,rho) the ASC P/p pair; beta the ultraspherical pair.
template <class S>
struct FamilyParams {
    S q{0};
    S a{0};
    S b{0};
    S y{0};
    S rho{0};
    S beta{0};
};

// Double-facing spec: the CLI/tests fill this and convert per scalar type.
struct FamilySpec {
    Family family = Family::qHermite_H;
    QParam q{};
    cplx a{0.0, 0.0};
    cplx b{0.0, 0.0};
    double y = 0.0;
    double rho = 0.0;
    double beta = 0.0;

    FamilyParams<double> real_params() const {
        if (a.imag() != 0.0 || b.imag() != 0.0)
            throw std::invalid_argument("FamilySpec: complex a,b need the complex evaluation path");
        return FamilyParams<double>{q.q, a.real(), b.real(), y, rho, beta};
    }
    FamilyParams<cplx> complex_params() const {
        return FamilyParams<cplx>{cplx(q.q), a, b, cplx(y), cplx(rho), cplx(beta)};
    }
    // ASC P <-> Q parameter map: a,b = rho sqrt(1-q)/2 (y -/+ i sqrt(4/(1-q) - y^2)).
    static FamilySpec asc_q_from_p(double y, double rho, const QParam& q) {
        const double s = std::sqrt(1.0 - q.q);
        const double rad = 4.0 / (1.0 - q.q) - y * y;
        if (rad < 0.0) throw std::domain_error("asc_q_from_p: y must lie in S(q)");
        const double im = std::sqrt(rad);
        FamilySpec fs;
        fs.family = Family::ASC_Q;
        fs.q = q;
        fs.a = rho * s / 2.0 * cplx(y, -im);
        fs.b = rho * s / 2.0 * cplx(y, im);
        return fs;
    }
};

namespace detail {

// One step of the recurrence P_{n+1} = (ax*x + b) P_n - (cx*x + c) P_{n-1}.
template <class S>
struct RecTerm {
    S ax{0}, b{0}, cx{0}, c{0};
};

// qn must equal q^n.  The n=0 step never uses the c-coefficients (P_{-1}=0),
// which also dodges the q^{n-1} factors at n=0.
template <class S>
RecTerm<S> rec_term(Family f, int n, const S& qn, const FamilyParams<S>& p) {
    RecTerm<S> r;
    const S& q = p.q;
    switch (f) {
        case Family::Hermite_H:
            r.ax = S(1);
            if (n > 0) r.c = S(n);
            return r;
        case Family::Hermite_h:
            r.ax = S(2);
            if (n > 0) r.c = S(2 * n);
            return r;
        case Family::Cheb_T:
            r.ax = (n == 0) ? S(1) : S(2);
            if (n > 0) r.c = S(1);
            return r;
        case Family::Cheb_U:
            r.ax = S(2);
            if (n > 0) r.c = S(1);
            return r;
        case Family::qHermite_h:
            r.ax = S(2);
            if (n > 0) r.c = S(1) - qn;
            return r;
        case Family::qHermite_H:
            r.ax = S(1);
            if (n > 0) r.c = q_bracket(n, q);
            return r;
        case Family::bigqHermite_h:
            r.ax = S(2);
            r.b = -p.a * qn;
            if (n > 0) r.c = S(1) - qn;
            return r;
        case Family::bigqHermite_H:
            r.ax = S(1);
            r.b = -p.a * qn;
            if (n > 0) r.c = q_bracket(n, q);
            return r;
        case Family::ASC_Q:
            r.ax = S(2);
            r.b = -(p.a + p.b) * qn;
            if (n > 0) r.c = (S(1) - p.a * p.b * qn / q) * (S(1) - qn);
            return r;
        case Family::ASC_P:
            r.ax = S(1);
            r.b = -p.rho * p.y * qn;
            if (n > 0) r.c = (S(1) - p.rho * p.rho * qn / q) * q_bracket(n, q);
            return r;
        case Family::ASC_p:
            r.ax = S(2);
            r.b = S(-2) * p.rho * p.y * qn;
            if (n > 0) r.c = (S(1) - p.rho * p.rho * qn / q) * (S(1) - qn);
            return r;
        case Family::Ultra_C: {
            const S d = S(1) - qn * q;
            if (d == S(0)) throw std::domain_error("Ultra_C: 1-q^{n+1} vanishes (q = 1?)");
            r.ax = S(2) * (S(1) - p.beta * qn) / d;
            if (n > 0) r.c = (S(1) - p.beta * p.beta * qn / q) / d;
            return r;
        }
        case Family::Ultra_R:
            r.ax = S(1) - p.beta * qn;
            if (n > 0) r.c = (S(1) - p.beta * p.beta * qn / q) * q_bracket(n, q);
            return r;
        case Family::RogersSzego_s:
            r.ax = S(1);
            r.b = S(1);
            if (n > 0) r.cx = S(1) - qn;
            return r;
        case Family::qInvHermite_B:
            r.ax = -qn;
            if (n > 0) r.c = -(qn / q) * q_bracket(n, q);
            return r;
        case Family::qInvHermite_b:
            r.ax = S(-2) * qn;
            if (n > 0) r.c = -(qn / q) * (S(1) - qn);
            return r;
    }
    throw std::logic_error("unreachable");
}

// q = 0 needs qn/q at n>=1, where qn = 0 for n>=1; the quotient is q^{n-1},
// i.e. 1 at n=1 and 0 for n>=2.  rec_term computes qn/q literally, so feed it
// explicit powers instead of dividing.
template <class S>
RecTerm<S> rec_term_safe(Family f, int n, const FamilyParams<S>& p) {
    // compute q^n and q^{n-1} without division
    S qn(1), qnm1(1);
    for (int i = 0; i < n; ++i) qn *= p.q;
    for (int i = 0; i + 1 < n; ++i) qnm1 *= p.q;
    // Re-derive the few terms that contain q^{n-1} explicitly.
    RecTerm<S> r = [&] {
        if (p.q != S(0) || n == 0) return rec_term(f, n, qn, p);
        RecTerm<S> t;
        switch (f) {
            case Family::ASC_Q:
                t.ax = S(2);
                t.b = -(p.a + p.b) * qn;
                t.c = (S(1) - p.a * p.b * qnm1) * (S(1) - qn);
                return t;
            case Family::ASC_P:
                t.ax = S(1);
                t.b = -p.rho * p.y * qn;
                t.c = (S(1) - p.rho * p.rho * qnm1) * q_bracket(n, p.q);
                return t;
            case Family::ASC_p:
                t.ax = S(2);
                t.b = S(-2) * p.rho * p.y * qn;
                t.c = (S(1) - p.rho * p.rho * qnm1) * (S(1) - qn);
                return t;
            case Family::Ultra_C: {
                const S d = S(1) - qn * p.q;
                t.ax = S(2) * (S(1) - p.beta * qn) / d;
                t.c = (S(1) - p.beta * p.beta * qnm1) / d;
                return t;
            }
            case Family::Ultra_R:
                t.ax = S(1) - p.beta * qn;
                t.c = (S(1) - p.beta * p.beta * qnm1) * q_bracket(n, p.q);
                return t;
            case Family::qInvHermite_B:
                t.ax = -qn;
                t.c = -qnm1 * q_bracket(n, p.q);
                return t;
            case Family::qInvHermite_b:
                t.ax = S(-2) * qn;
                t.c = -qnm1 * (S(1) - qn);
                return t;
            default:
                return rec_term(f, n, qn, p);
        }
    }();
    return r;
}

}  // namespace detail

// Values P_0(x) .. P_nmax(x).
template <class S>
std::vector<S> family_eval_seq(Family f, int nmax, const S& x, const FamilyParams<S>& p) {
    std::vector<S> vals;
    vals.reserve(static_cast<size_t>(std::max(nmax, 0)) + 1);
    vals.push_back(S(1));
    S prev(0), cur(1), qn(1);
    for (int n = 0; n < nmax; ++n) {
        detail::RecTerm<S> r;
        if (p.q == S(0) && n >= 1) {
            r = detail::rec_term_safe(f, n, p);
        } else {
            r = detail::rec_term(f, n, qn, p);
        }
        S next = (r.ax * x + r.b) * cur - (r.cx * x + r.c) * prev;
        prev = cur;
        cur = next;
        vals.push_back(cur);
        qn *= p.q;
    }
    return vals;
}

template <class S>
S family_eval(Family f, int n, const S& x, const FamilyParams<S>& p) {
    if (n < -1) throw std::domain_error("family_eval: n >= -1 required");
    if (n == -1) return S(0);
    return family_eval_seq(f, n, x, p)[static_cast<size_t>(n)];
}

// Exact coefficient vectors by running the recurrence on polynomials.
template <class S>
std::vector<CoeffPoly<S>> family_coeffs_seq(Family f, int nmax, const FamilyParams<S>& p) {
    std::vector<CoeffPoly<S>> polys;
    polys.reserve(static_cast<size_t>(std::max(nmax, 0)) + 1);
    polys.push_back(CoeffPoly<S>::constant(S(1)));
    CoeffPoly<S> prev, cur = polys[0];
    S qn(1);
    for (int n = 0; n < nmax; ++n) {
        detail::RecTerm<S> r;
        if (p.q == S(0) && n >= 1) {
            r = detail::rec_term_safe(f, n, p);
        } else {
            r = detail::rec_term(f, n, qn, p);
        }
        CoeffPoly<S> next = r.ax * cur.shifted() + r.b * cur - (r.cx * prev.shifted() + r.c * prev);
        prev = cur;
        cur = next;
        polys.push_back(cur);
        qn *= p.q;
    }
    return polys;
}

template <class S>
CoeffPoly<S> family_coeffs(Family f, int n, const FamilyParams<S>& p) {
    if (n < -1) throw std::domain_error("family_coeffs: n >= -1 required");
    if (n == -1) return CoeffPoly<S>::zero();
    return family_coeffs_seq(f, n, p)[static_cast<size_t>(n)];
}

// Coefficients of G_n(u) = (1-q)^{n/2} P_n(2u/sqrt(1-q)): rational whenever q
// is, thanks to the parity of the b==0 families (H, h, T, U, R, B, ...).
template <class S>
CoeffPoly<S> family_scaled_coeffs(Family f, int n, const FamilyParams<S>& p) {
    CoeffPoly<S> base = family_coeffs(f, n, p);
    std::vector<S> out(static_cast<size_t>(std::max(base.degree(), -1)) + 1, S(0));
    const S one_minus_q = S(1) - p.q;
    for (int m = 0; m <= base.degree(); ++m) {
        S c = base.coeff(m);
        if (c == S(0)) continue;
        if ((n - m) % 2 != 0)
            throw std::domain_error("family_scaled_coeffs: family lacks parity; scale not rational");
        S scale(1);
        for (int i = 0; i < m; ++i) scale *= S(2);
        for (int i = 0; i < (n - m) / 2; ++i) scale *= one_minus_q;
        out[static_cast<size_t>(m)] = c * scale;
    }
    return CoeffPoly<S>(std::move(out));
}

// ---- trigonometric / explicit-sum representations ----

// Families supported by eval_trig; result must be real to ~1e-12.
inline double family_eval_trig(Family f, int n, const TrigPoint& pt, const FamilySpec& spec,
                               double imag_tol = 1e-9) {
    if (n < -1) throw std::domain_error("family_eval_trig: n >= -1 required");
    if (n == -1) return 0.0;
    const double th = pt.theta;
    const cplx eith = pt.eitheta();
    const double q = spec.q.q;
    cplx val;
    switch (f) {
        case Family::Cheb_T:
            return std::cos(n * th);
        case Family::Cheb_U: {
            const double s = std::sin(th);
            if (std::abs(s) < 1e-8) {
                // endpoint limit sin((n+1)t)/sin(t) -> (n+1) cos(n t)-parity form
                const double sign = (pt.x >= 0.0) ? 1.0 : ((n % 2 == 0) ? 1.0 : -1.0);
                return sign * (n + 1);
            }
            return std::sin((n + 1) * th) / s;
        }
        case Family::qHermite_h: {
            // h_n(cos t|q) = e^{int} s_n(e^{-2it}|q)  (Rogers-Szego link)
            const cplx z = cplx(1.0, 0.0) / (eith * eith);
            FamilyParams<cplx> pp;
            pp.q = cplx(q);
            const cplx s_n = family_eval(Family::RogersSzego_s, n, z, pp);
            val = std::pow(eith, n) * s_n;
            break;
        }
        case Family::bigqHermite_h: {
            // sum_k [n k]_q (a e^{it};q)_k e^{i(n-2k)t}
            const cplx a = spec.a;
            cplx sum = 0.0, poch = 1.0, pw = std::pow(eith, n);
            const cplx e2 = cplx(1.0, 0.0) / (eith * eith);
            for (int k = 0; k <= n; ++k) {
                sum += q_binomial(n, k, cplx(q)) * poch * pw;
                poch *= 1.0 - a * eith * std::pow(cplx(q), k);
                pw *= e2;
            }
            val = sum;
            break;
        }
        case Family::Ultra_C: {
            // sum_k (beta)_k (beta)_{n-k} / ((q)_k (q)_{n-k}) e^{i(n-2k)t}
            const double b = spec.beta;
            cplx sum = 0.0;
            cplx pw = std::pow(eith, n);
            const cplx e2 = cplx(1.0, 0.0) / (eith * eith);
            for (int k = 0; k <= n; ++k) {
                const double c = q_pochhammer(b, q, k) * q_pochhammer(b, q, n - k) /
                                 (q_pochhammer(q, q, k) * q_pochhammer(q, q, n - k));
                sum += c * pw;
                pw *= e2;
            }
            val = sum;
            break;
        }
        default:
            throw std::invalid_argument("family_eval_trig: no trigonometric form for " +
                                        family_to_string(f));
    }
    if (std::abs(val.imag()) > imag_tol * (1.0 + std::abs(val.real())))
        throw std::domain_error("family_eval_trig: imaginary residue exceeds tolerance");
    return val.real();
}

// ---- generating functions: partial sum vs closed form ----

struct GenFunResult {
    double partial_sum = 0.0;
    double closed_form = 0.0;
    int terms = 0;
    bool diverging = false;  // terms grew for 10 consecutive k
};

// Closed forms follow the per-family displays; only families with a stated
// closed form are supported.
inline GenFunResult generating_partial_sum(const FamilySpec& spec, double x, double t, int N,
                                           const TruncationPolicy& pol = {}) {
    GenFunResult res;
    const Family f = spec.family;
    const QParam& q = spec.q;
    const auto params = (f == Family::ASC_Q) ? FamilyParams<double>{} : spec.real_params();

    // coefficient on t^k per family
    auto coef = [&](int k) -> double {
        switch (f) {
            case Family::Hermite_H:
            case Family::Hermite_h: {
                double fact = 1.0;
                for (int j = 2; j <= k; ++j) fact *= j;
                return 1.0 / fact;
            }
            case Family::Cheb_T:
            case Family::Cheb_U:
            case Family::Ultra_C:
                return 1.0;
            case Family::qHermite_h:
            case Family::bigqHermite_h:
            case Family::ASC_Q:
                return 1.0 / q_pochhammer(q.q, q.q, k);
            case Family::qHermite_H:
            case Family::bigqHermite_H:
            case Family::ASC_P:
            case Family::Ultra_R:
            case Family::qInvHermite_B:
                return 1.0 / q_factorial(k, q.q);
            default:
                throw std::invalid_argument("generating_partial_sum: no closed form for " +
                                            family_to_string(f));
        }
    };

    // partial sum with divergence flag
    {
        std::vector<double> vals;
        if (f == Family::ASC_Q) {
            FamilyParams<cplx> pc = spec.complex_params();
            auto cv = family_eval_seq(Family::ASC_Q, N, cplx(x), pc);
            vals.resize(cv.size());
            for (size_t i = 0; i < cv.size(); ++i) vals[i] = cv[i].real();
        } else {
            vals = family_eval_seq(f, N, x, params);
        }
        double tk = 1.0, prev_mag = 0.0;
        int grow = 0;
        for (int k = 0; k <= N; ++k) {
            const double term = coef(k) * tk * vals[static_cast<size_t>(k)];
            res.partial_sum += term;
            if (std::abs(term) > prev_mag && k > 0) {
                if (++grow >= 10) res.diverging = true;
            } else {
                grow = 0;
            }
            prev_mag = std::abs(term);
            tk *= t;
            ++res.terms;
        }
    }

    // closed form
    switch (f) {
        case Family::Hermite_H:
            res.closed_form = std::exp(x * t - t * t / 2.0);
            break;
        case Family::Hermite_h:
            res.closed_form = std::exp(2.0 * x * t - t * t);
            break;
        case Family::Cheb_T:
            res.closed_form = (1.0 - t * x) / (1.0 - 2.0 * t * x + t * t);
            break;
        case Family::Cheb_U:
            res.closed_form = 1.0 / (1.0 - 2.0 * t * x + t * t);
            break;
        case Family::qHermite_h:
            res.closed_form = 1.0 / prod_v(x, t, q, pol).real_value();
            break;
        case Family::qHermite_H:
            if (q.is_classical())
                res.closed_form = std::exp(x * t - t * t / 2.0);
            else
                res.closed_form = 1.0 / prod_V(x, t, q, pol).real_value();
            break;
        case Family::bigqHermite_h:
            res.closed_form =
                q_pochhammer_inf(spec.a * t, q, pol).value.real() / prod_v(x, t, q, pol).real_value();
            break;
        case Family::bigqHermite_H:
            res.closed_form = q_pochhammer_inf((1.0 - q.q) * spec.a * t, q, pol).value.real() /
                              prod_V(x, t, q, pol).real_value();
            break;
        case Family::ASC_Q: {
            const cplx num = q_pochhammer_inf(spec.a * t, q, pol).value *
                             q_pochhammer_inf(spec.b * t, q, pol).value;
            res.closed_form = (num / prod_v(x, t, q, pol).value).real();
            break;
        }
        case Family::ASC_P:
            res.closed_form = prod_V(spec.y, spec.rho * t, q, pol).real_value() /
                              prod_V(x, t, q, pol).real_value();
            break;
        case Family::Ultra_C:
            res.closed_form = prod_v(x, spec.beta * t, q, pol).real_value() /
                              prod_v(x, t, q, pol).real_value();
            break;
        case Family::Ultra_R:
            res.closed_form = prod_V(x, spec.beta * t, q, pol).real_value() /
                              prod_V(x, t, q, pol).real_value();
            break;
        case Family::qInvHermite_B:
            res.closed_form = prod_V(x, t, q, pol).real_value();
            break;
        default:
            throw std::invalid_argument("generating_partial_sum: no closed form");
    }
    return res;
}

// ---- rescale identities between lower- and upper-case forms ----

enum class RescalePair { h_H, b_B, Q_P, p_P, C_R };

inline RescalePair rescale_pair_from_string(const std::string& s) {
    if (s == "h_H") return RescalePair::h_H;
    if (s == "b_B") return RescalePair::b_B;
    if (s == "Q_P") return RescalePair::Q_P;
    if (s == "p_P") return RescalePair::p_P;
    if (s == "C_R") return RescalePair::C_R;
    throw std::invalid_argument("unknown rescale pair: " + s);
}

// |lower-case form - rescaled upper-case form| at x.  Parameters y,rho,beta
// are the *upper-case* ones where the pair needs them.
inline double rescale_check(RescalePair pair, int n, double x, const FamilySpec& spec) {
    const double q = spec.q.q;
    if (!(std::abs(q) < 1.0)) throw std::domain_error("rescale_check: |q| < 1 required");
    const double s = std::sqrt(1.0 - q);
    const double half_pow = std::pow(1.0 - q, n / 2.0);
    FamilyParams<double> pu = spec.real_params();
    switch (pair) {
        case RescalePair::h_H: {
            // H_n(x|q) = (1-q)^{-n/2} h_n(x sqrt(1-q)/2 | q)
            const double lhs = family_eval(Family::qHermite_H, n, x, pu);
            const double rhs = family_eval(Family::qHermite_h, n, x * s / 2.0, pu) / half_pow;
            return std::abs(lhs - rhs);
        }
        case RescalePair::b_B: {
            // b_n(y|q) = (1-q)^{n/2} B_n(2y/sqrt(1-q) | q)
            const double lhs = family_eval(Family::qInvHermite_b, n, x, pu);
            const double rhs = half_pow * family_eval(Family::qInvHermite_B, n, 2.0 * x / s, pu);
            return std::abs(lhs - rhs);
        }
        case RescalePair::Q_P: {
            // P_n(x|y,rho,q) = Q_n(x sqrt(1-q)/2 | a,b,q) / (1-q)^{n/2}
            const double lhs = family_eval(Family::ASC_P, n, x, pu);
            FamilySpec qs = FamilySpec::asc_q_from_p(spec.y, spec.rho, spec.q);
            const cplx rhs =
                family_eval(Family::ASC_Q, n, cplx(x * s / 2.0), qs.complex_params()) / half_pow;
            return std::abs(lhs - rhs.real()) + std::abs(rhs.imag());
        }
        case RescalePair::p_P: {
            // p_n(x|y,rho,q) = (1-q)^{n/2} P_n(2x/sqrt(1-q) | 2y/sqrt(1-q), rho, q)
            FamilyParams<double> pl = pu;
            const double lhs = family_eval(Family::ASC_p, n, x, pl);
            FamilyParams<double> pP = pu;
            pP.y = 2.0 * spec.y / s;
            const double rhs = half_pow * family_eval(Family::ASC_P, n, 2.0 * x / s, pP);
            return std::abs(lhs - rhs);
        }
        case RescalePair::C_R: {
            // C_n(x|beta,q) = (1-q)^{n/2} R_n(2x/sqrt(1-q)|beta,q) / (q)_n
            const double lhs = family_eval(Family::Ultra_C, n, x, pu);
            const double rhs = half_pow * family_eval(Family::Ultra_R, n, 2.0 * x / s, pu) /
                               q_pochhammer(q, q, n);
            return std::abs(lhs - rhs);
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace qortho
