#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "qortho/families.hpp"
#include "qortho/qcore.hpp"
#include "qortho/quadrature.hpp"

// Orthogonality densities f_N, f_bN, f_CN, f_R (with Gaussian q=1 branches),
// quadrature over S(q) after the x = c cos(u) substitution, orthogonality
// integrals with their stated norms, the Chapman-Kolmogorov identity and the
// kernel eigenfunction integrals.

namespace qortho {

enum class DensityKind { fN, fbN, fCN, fR };

inline DensityKind density_kind_from_string(const std::string& s) {
    if (s == "fN") return DensityKind::fN;
    if (s == "fbN") return DensityKind::fbN;
    if (s == "fCN") return DensityKind::fCN;
    if (s == "fR") return DensityKind::fR;
    throw std::invalid_argument("unknown density kind: " + s);
}

struct DensitySpec {
    DensityKind kind = DensityKind::fN;
    QParam q{};
    double a = 0.0;    // fbN
    double y = 0.0;    // fCN
    double rho = 0.0;  // fCN
    double beta = 0.0; // fR

    void validate() const {
        if (q.is_classical()) {
            if (kind == DensityKind::fbN || kind == DensityKind::fR)
                throw std::domain_error("density: no q=1 closed form for this kind");
            return;
        }
        switch (kind) {
            case DensityKind::fN: break;
            case DensityKind::fbN:
                if (std::abs(a) >= 1.0) throw std::domain_error("f_bN: |a| < 1 required");
                break;
            case DensityKind::fCN:
                if (std::abs(rho) >= 1.0) throw std::domain_error("f_CN: |rho| < 1 required");
                if (!q.in_support(y)) throw std::domain_error("f_CN: y must lie in S(q)");
                break;
            case DensityKind::fR:
                if (std::abs(beta) >= 1.0) throw std::domain_error("f_R: |beta| < 1 required");
                break;
        }
    }
};

namespace detail {

// prod_{j>=1} L_j(x,1|q): the f_N product with the singular j=0 factor removed.
inline double prod_L_tail(double x, const QParam& q, const TruncationPolicy& pol) {
    const double c = std::abs(1.0 - q.q) * x * x + 3.0;
    return infinite_product([&](int k) { return aux_L(x, 1.0, q.q, k + 1); }, q, pol, c)
        .real_value();
}

}  // namespace detail

// Point value.  Outside S(q) the densities vanish by definition; at the
// endpoints the 1/sqrt(L_0) factor is singular and point evaluation refuses.
inline double density(const DensitySpec& spec, double x, const TruncationPolicy& pol = {}) {
    spec.validate();
    const QParam& q = spec.q;

    if (q.is_classical()) {
        switch (spec.kind) {
            case DensityKind::fN:
                return std::exp(-x * x / 2.0) / std::sqrt(2.0 * M_PI);
            case DensityKind::fCN: {
                const double v = 1.0 - spec.rho * spec.rho;
                const double d = x - spec.rho * spec.y;
                return std::exp(-d * d / (2.0 * v)) / std::sqrt(2.0 * M_PI * v);
            }
            default:
                throw std::domain_error("density: unsupported q=1 branch");
        }
    }

    const double hw = q.support_halfwidth();
    if (std::abs(x) > hw) return 0.0;
    if (std::abs(std::abs(x) - hw) < 1e-12)
        throw std::domain_error("density: endpoint of S(q) is singular (integrable)");

    const double L0 = aux_L(x, 1.0, q.q, 0);
    const double fn = q_pochhammer_inf_real(q.q, q, pol) * std::sqrt(1.0 - q.q) * L0 *
                      detail::prod_L_tail(x, q, pol) / (2.0 * M_PI * std::sqrt(L0));
    switch (spec.kind) {
        case DensityKind::fN:
            return fn;
        case DensityKind::fbN:
            return fn / prod_V(x, spec.a, q, pol).real_value();
        case DensityKind::fCN:
            return fn * q_pochhammer_inf_real(spec.rho * spec.rho, q, pol) /
                   prod_W(x, spec.y, spec.rho, q, pol).real_value();
        case DensityKind::fR:
            return fn * q_pochhammer_inf_real(spec.beta * spec.beta, q, pol) /
                   (q_pochhammer_inf_real(spec.beta, q, pol) *
                    q_pochhammer_inf_real(spec.beta * q.q, q, pol) *
                    prod_L(x, spec.beta, q, pol).real_value());
    }
    throw std::logic_error("unreachable");
}

namespace detail {

// f_N(x|q) dx under x = c cos(u): the sqrt(L_0) = 2 sin(u) factor cancels,
// leaving (q)_inf (2/pi) sin^2(u) prod_{j>=1} L_j smooth on [0,pi].
inline double fN_weight_u(double u, const QParam& q, const TruncationPolicy& pol) {
    const double c = q.support_halfwidth();
    const double x = c * std::cos(u);
    const double s = std::sin(u);
    return q_pochhammer_inf_real(q.q, q, pol) * (2.0 / M_PI) * s * s * prod_L_tail(x, q, pol);
}

// density(spec, x) dx expressed over u; spec.kind selects the extra ratio.
inline double density_weight_u(const DensitySpec& spec, double u, const TruncationPolicy& pol) {
    const QParam& q = spec.q;
    const double x = q.support_halfwidth() * std::cos(u);
    double w = fN_weight_u(u, q, pol);
    switch (spec.kind) {
        case DensityKind::fN:
            return w;
        case DensityKind::fbN:
            return w / prod_V(x, spec.a, q, pol).real_value();
        case DensityKind::fCN:
            return w * q_pochhammer_inf_real(spec.rho * spec.rho, q, pol) /
                   prod_W(x, spec.y, spec.rho, q, pol).real_value();
        case DensityKind::fR:
            return w * q_pochhammer_inf_real(spec.beta * spec.beta, q, pol) /
                   (q_pochhammer_inf_real(spec.beta, q, pol) *
                    q_pochhammer_inf_real(spec.beta * q.q, q, pol) *
                    prod_L(x, spec.beta, q, pol).real_value());
    }
    throw std::logic_error("unreachable");
}

}  // namespace detail

// integral of F(x) * density over S(q) (|q|<1) via the trigonometric
// substitution; F receives x.
template <class F>
QuadResult integrate_against_density(const DensitySpec& spec, F&& fx, double quad_tol = 1e-9,
                                     const TruncationPolicy& pol = {}) {
    spec.validate();
    const QParam& q = spec.q;
    if (q.is_classical()) {
        return integrate([&](double x) { return fx(x) * density(spec, x, pol); }, -12.0, 12.0,
                         quad_tol);
    }
    const double c = q.support_halfwidth();
    return integrate(
        [&](double u) { return fx(c * std::cos(u)) * detail::density_weight_u(spec, u, pol); }, 0.0,
        M_PI, quad_tol);
}

// ---- orthogonality pairings of section-2 families with their densities ----

struct OrthoPairing {
    Family family;
    // density parameters are taken from the FamilySpec (a, y/rho, beta).
};

struct OrthoResult {
    double value = 0.0;      // quadrature value of <P_n, P_m>
    double expected = 0.0;   // stated norm (0 for n != m)
    bool converged = true;
};

// The stated norm of <P_n, P_n> for each family/density pairing.
inline double orthogonality_norm(const FamilySpec& spec, int n) {
    const double q = spec.q.q;
    switch (spec.family) {
        case Family::qHermite_H:
        case Family::bigqHermite_H:
            return q_factorial(n, q);
        case Family::qHermite_h:
        case Family::bigqHermite_h:
            return q_pochhammer(q, q, n);
        case Family::ASC_P:
            return q_factorial(n, q) * q_pochhammer(spec.rho * spec.rho, q, n);
        case Family::Ultra_R:
            return (1.0 - spec.beta) * q_pochhammer(spec.beta * spec.beta, q, n) *
                   q_factorial(n, q) / (1.0 - spec.beta * std::pow(q, n));
        case Family::Ultra_C:
            return (1.0 - spec.beta) * q_pochhammer(spec.beta * spec.beta, q, n) /
                   ((1.0 - spec.beta * std::pow(q, n)) * q_pochhammer(q, q, n));
        case Family::Cheb_T:
            return n == 0 ? 1.0 : 0.5;
        case Family::Cheb_U:
            return 1.0;
        case Family::Hermite_H: {
            double f = 1.0;
            for (int j = 2; j <= n; ++j) f *= j;
            return f;
        }
        case Family::Hermite_h: {
            double f = 1.0;
            for (int j = 2; j <= n; ++j) f *= j;
            return std::ldexp(f, n);  // 2^n n!
        }
        default:
            throw std::invalid_argument("orthogonality_norm: no density pairing for " +
                                        family_to_string(spec.family));
    }
}

// <P_n, P_m> against the family's own density.  Upper-case families integrate
// over S(q); lower-case ones over [-1,1] with the rescaled weight.
inline OrthoResult orthogonality_integral(const FamilySpec& spec, int n, int m,
                                          double quad_tol = 1e-9, const TruncationPolicy& pol = {}) {
    OrthoResult out;
    out.expected = (n == m) ? orthogonality_norm(spec, n) : 0.0;
    const QParam& q = spec.q;
    const int top = std::max(n, m);

    auto pair_values = [&](Family f, const FamilyParams<double>& p, double x) {
        auto vals = family_eval_seq(f, top, x, p);
        return vals[static_cast<size_t>(n)] * vals[static_cast<size_t>(m)];
    };

    switch (spec.family) {
        case Family::Hermite_H: {
            auto r = integrate(
                [&](double x) {
                    FamilyParams<double> p{};
                    return pair_values(Family::Hermite_H, p, x) * std::exp(-x * x / 2.0) /
                           std::sqrt(2.0 * M_PI);
                },
                -12.0, 12.0, quad_tol);
            out.value = r.value;
            out.converged = r.converged;
            return out;
        }
        case Family::Hermite_h: {
            auto r = integrate(
                [&](double x) {
                    FamilyParams<double> p{};
                    return pair_values(Family::Hermite_h, p, x) * std::exp(-x * x) /
                           std::sqrt(M_PI);
                },
                -9.0, 9.0, quad_tol);
            out.value = r.value;
            out.converged = r.converged;
            return out;
        }
        case Family::Cheb_T: {
            auto r = integrate(
                [&](double u) {
                    FamilyParams<double> p{};
                    return pair_values(Family::Cheb_T, p, std::cos(u)) / M_PI;
                },
                0.0, M_PI, quad_tol);
            out.value = r.value;
            out.converged = r.converged;
            return out;
        }
        case Family::Cheb_U: {
            auto r = integrate(
                [&](double u) {
                    FamilyParams<double> p{};
                    const double s = std::sin(u);
                    return pair_values(Family::Cheb_U, p, std::cos(u)) * (2.0 / M_PI) * s * s;
                },
                0.0, M_PI, quad_tol);
            out.value = r.value;
            out.converged = r.converged;
            return out;
        }
        case Family::qHermite_H:
        case Family::bigqHermite_H:
        case Family::ASC_P:
        case Family::Ultra_R: {
            if (q.is_classical()) throw std::domain_error("orthogonality_integral: |q| < 1 required");
            DensitySpec ds;
            ds.q = q;
            ds.a = spec.a.real();
            ds.y = spec.y;
            ds.rho = spec.rho;
            ds.beta = spec.beta;
            switch (spec.family) {
                case Family::qHermite_H: ds.kind = DensityKind::fN; break;
                case Family::bigqHermite_H: ds.kind = DensityKind::fbN; break;
                case Family::ASC_P: ds.kind = DensityKind::fCN; break;
                default: ds.kind = DensityKind::fR; break;
            }
            FamilyParams<double> p = spec.real_params();
            auto r = integrate_against_density(
                ds, [&](double x) { return pair_values(spec.family, p, x); }, quad_tol, pol);
            out.value = r.value;
            out.converged = r.converged;
            return out;
        }
        // lower-case q-families: weight f(2x/sqrt(1-q)|.) 2/sqrt(1-q) dx on [-1,1];
        // substituting x = cos(u) this is the same u-integrand with c cos(u) = upper x.
        case Family::qHermite_h:
        case Family::bigqHermite_h:
        case Family::Ultra_C: {
            if (q.is_classical()) throw std::domain_error("orthogonality_integral: |q| < 1 required");
            DensitySpec ds;
            ds.q = q;
            switch (spec.family) {
                case Family::qHermite_h: ds.kind = DensityKind::fN; break;
                case Family::bigqHermite_h:
                    ds.kind = DensityKind::fbN;
                    // lower-case parameter a maps to upper a/sqrt(1-q)
                    ds.a = spec.a.real() / std::sqrt(1.0 - q.q);
                    break;
                default:
                    ds.kind = DensityKind::fR;
                    ds.beta = spec.beta;
                    break;
            }
            ds.validate();
            FamilyParams<double> p = spec.real_params();
            auto r = integrate(
                [&](double u) {
                    return pair_values(spec.family, p, std::cos(u)) *
                           detail::density_weight_u(ds, u, pol);
                },
                0.0, M_PI, quad_tol);
            out.value = r.value;
            out.converged = r.converged;
            return out;
        }
        default:
            throw std::invalid_argument("orthogonality_integral: no density pairing for " +
                                        family_to_string(spec.family));
    }
}

// |int f_CN(x|y,rho1) f_CN(y|z,rho2) dy - f_CN(x|z,rho1 rho2)|
inline double chapman_kolmogorov_check(double x, double z, double rho1, double rho2,
                                       const QParam& q, double quad_tol = 1e-9,
                                       const TruncationPolicy& pol = {}) {
    if (std::abs(rho1 * rho2) >= 1.0)
        throw std::domain_error("chapman_kolmogorov_check: |rho1 rho2| < 1 required");
    auto fcn = [&](double a, double b, double rho) {
        DensitySpec d;
        d.kind = DensityKind::fCN;
        d.q = q;
        d.y = b;
        d.rho = rho;
        return density(d, a, pol);
    };

    double integral;
    if (q.is_classical()) {
        integral = integrate([&](double yv) { return fcn(x, yv, rho1) * fcn(yv, z, rho2); }, -12.0,
                             12.0, quad_tol)
                       .value;
    } else {
        const double c = q.support_halfwidth();
        DensitySpec base;
        base.kind = DensityKind::fN;
        base.q = q;
        integral = integrate(
                       [&](double u) {
                           const double yv = c * std::cos(u);
                           // f_CN(y|z,rho2) dy = fN-weight(u) * (rho2^2)_inf / prod W(y,z,rho2)
                           const double w = detail::fN_weight_u(u, q, pol) *
                                            q_pochhammer_inf_real(rho2 * rho2, q, pol) /
                                            prod_W(yv, z, rho2, q, pol).real_value();
                           return fcn(x, yv, rho1) * w;
                       },
                       0.0, M_PI, quad_tol)
                       .value;
    }
    return std::abs(integral - fcn(x, z, rho1 * rho2));
}

struct EigenIntegralResult {
    double hermite_residual = 0.0;  // |int H_n f_CN dx - rho^n H_n(y)|
    double asc_residual = 0.0;      // |int P_n(x|y) f_CN(y|x) dy - (rho^2)_n H_n(x)|
    bool converged = true;
};

inline EigenIntegralResult eigen_integral_checks(int n, double y, double rho, const QParam& q,
                                                 double quad_tol = 1e-9,
                                                 const TruncationPolicy& pol = {}) {
    if (n < 1) throw std::domain_error("eigen_integral_checks: n >= 1 required");
    if (std::abs(rho) >= 1.0) throw std::domain_error("eigen_integral_checks: |rho| < 1 required");
    EigenIntegralResult out;
    FamilyParams<double> p{};
    p.q = q.q;

    DensitySpec cn;
    cn.kind = DensityKind::fCN;
    cn.q = q;
    cn.y = y;
    cn.rho = rho;

    // first integral: x integrated against f_CN(x|y,rho)
    auto r1 = integrate_against_density(
        cn, [&](double x) { return family_eval(Family::qHermite_H, n, x, p); }, quad_tol, pol);
    const double expect1 = std::pow(rho, n) * family_eval(Family::qHermite_H, n, y, p);
    out.hermite_residual = std::abs(r1.value - expect1);

    // second integral: y' integrated against f_CN(y'|x,rho) with x := y
    const double xfix = y;
    FamilyParams<double> pp = p;
    pp.rho = rho;
    double val2;
    if (q.is_classical()) {
        val2 = integrate(
                   [&](double yv) {
                       FamilyParams<double> pv = pp;
                       pv.y = yv;
                       DensitySpec d;
                       d.kind = DensityKind::fCN;
                       d.q = q;
                       d.y = xfix;
                       d.rho = rho;
                       return family_eval(Family::ASC_P, n, xfix, pv) * density(d, yv, pol);
                   },
                   -12.0, 12.0, quad_tol)
                   .value;
    } else {
        const double c = q.support_halfwidth();
        val2 = integrate(
                   [&](double u) {
                       const double yv = c * std::cos(u);
                       FamilyParams<double> pv = pp;
                       pv.y = yv;
                       const double w = detail::fN_weight_u(u, q, pol) *
                                        q_pochhammer_inf_real(rho * rho, q, pol) /
                                        prod_W(yv, xfix, rho, q, pol).real_value();
                       return family_eval(Family::ASC_P, n, xfix, pv) * w;
                   },
                   0.0, M_PI, quad_tol)
                   .value;
    }
    const double expect2 = q_pochhammer(rho * rho, q.q, n) * family_eval(Family::qHermite_H, n, xfix, p);
    out.asc_residual = std::abs(val2 - expect2);
    return out;
}

}  // namespace qortho
