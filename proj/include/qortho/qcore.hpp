#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

// q-arithmetic primitives: brackets, factorials, Gaussian binomials,
// Pochhammer symbols, the support interval S(q), the six auxiliary
// quadratics v,V,w,W,l,L and truncated infinite q-products.

namespace qortho {

using cplx = std::complex<double>;

// Deformation parameter with validity class -1 < q <= 1.
struct QParam {
    double q = 0.0;

    QParam() = default;
    explicit QParam(double qv) : q(qv) {
        if (!(qv > -1.0 && qv <= 1.0))
            throw std::domain_error("QParam: q must satisfy -1 < q <= 1");
    }

    bool allows_infinite_products() const { return std::abs(q) < 1.0; }
    bool is_classical() const { return q == 1.0; }

    // Half-width of the support S(q): [-2/sqrt(1-q), 2/sqrt(1-q)], all of R at q=1.
    double support_halfwidth() const {
        if (is_classical()) return std::numeric_limits<double>::infinity();
        return 2.0 / std::sqrt(1.0 - q);
    }
    bool in_support(double x) const {
        return is_classical() || std::abs(x) <= support_halfwidth();
    }
};

// Tolerance and term caps governing truncated infinite products/series.
struct TruncationPolicy {
    double abs_tol = 1e-14;
    double rel_tol = 1e-12;
    int max_terms = 1000;

    void validate() const {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_terms < 1)
            throw std::invalid_argument("TruncationPolicy: abs_tol, rel_tol > 0 and max_terms >= 1 required");
    }
};

// x = cos(theta), theta on the principal branch [0, pi].
struct TrigPoint {
    double x;
    double theta;

    static TrigPoint from_x(double x) {
        if (std::abs(x) > 1.0)
            throw std::domain_error("TrigPoint: |x| <= 1 required");
        return TrigPoint{x, std::acos(x)};
    }
    static TrigPoint from_theta(double theta) { return TrigPoint{std::cos(theta), theta}; }
    cplx eitheta() const { return cplx(std::cos(theta), std::sin(theta)); }
};

// ---- q-brackets and friends, generic over the coefficient field ----
// S may be double, std::complex<double> or an exact rational type.

template <class S>
S q_bracket(int n, const S& q) {
    if (n < 0) throw std::domain_error("q_bracket: n >= 0 required");
    S sum(0), pw(1);
    for (int j = 0; j < n; ++j) {
        sum += pw;
        pw *= q;
    }
    return sum;
}

template <class S>
S q_factorial(int n, const S& q) {
    if (n < 0) throw std::domain_error("q_factorial: n >= 0 required");
    S prod(1), br(0), pw(1);
    for (int j = 1; j <= n; ++j) {
        br += pw;      // br = [j]_q after update
        pw *= q;
        prod *= br;
    }
    return prod;
}

// Gaussian binomial via the bracket recurrence [n,k+1] = [n,k]*[n-k]/[k+1];
// stable at q -> 1 and exact over rationals. Total function: 0 outside 0<=k<=n.
template <class S>
S q_binomial(int n, int k, const S& q) {
    if (k < 0 || n < 0 || k > n) return S(0);
    if (2 * k > n) k = n - k;
    S r(1);
    for (int j = 0; j < k; ++j)
        r = r * q_bracket(n - j, q) / q_bracket(j + 1, q);
    return r;
}

// (a;q)_n
template <class S>
S q_pochhammer(const S& a, const S& q, int n) {
    if (n < 0) throw std::domain_error("q_pochhammer: n >= 0 required");
    S r(1), pw(1);
    for (int j = 0; j < n; ++j) {
        r *= S(1) - a * pw;
        pw *= q;
    }
    return r;
}

// Value of a truncated infinite product/series together with its convergence state.
struct ProdResult {
    cplx value{1.0, 0.0};
    int terms = 0;
    bool converged = true;

    double real_value(double imag_tol = 1e-9) const {
        if (std::abs(value.imag()) > imag_tol * (1.0 + std::abs(value.real())))
            throw std::domain_error("ProdResult: non-negligible imaginary part");
        return value.real();
    }
};

// (a;q)_infty, |q| < 1.  Truncated when the geometric tail bound
// |a| q^N / (1-|q|) falls below abs_tol.
inline ProdResult q_pochhammer_inf(cplx a, const QParam& q, const TruncationPolicy& pol = {}) {
    if (!q.allows_infinite_products())
        throw std::domain_error("q_pochhammer_inf: |q| < 1 required");
    pol.validate();
    ProdResult res;
    const double aq = std::abs(q.q);
    cplx pw(1.0, 0.0);
    for (int j = 0; j < pol.max_terms; ++j) {
        res.value *= 1.0 - a * pw;
        pw *= q.q;
        ++res.terms;
        if (std::abs(a) * std::abs(pw) / (1.0 - aq) < pol.abs_tol) return res;
    }
    res.converged = false;
    return res;
}

inline double q_pochhammer_inf_real(double a, const QParam& q, const TruncationPolicy& pol = {}) {
    return q_pochhammer_inf(cplx(a, 0.0), q, pol).value.real();
}

// ---- auxiliary quadratics of degree at most 2 ----
// Lower-case forms live on [-1,1], upper-case on S(q).  The l/L pair carries
// a linearly (their printed square is inconsistent with Eq. (rozkll) and with
// W(x,x,t) = (1-t q^k)^2 L(x,t)).

template <class S>
S aux_v(const S& x, const S& a, const S& q, int k) {
    S qk = S(1);
    for (int i = 0; i < k; ++i) qk *= q;
    return S(1) - S(2) * a * x * qk + a * a * qk * qk;
}

template <class S>
S aux_V(const S& x, const S& a, const S& q, int k) {
    S qk = S(1);
    for (int i = 0; i < k; ++i) qk *= q;
    return S(1) - (S(1) - q) * a * x * qk + (S(1) - q) * a * a * qk * qk;
}

template <class S>
S aux_w(const S& x, const S& y, const S& t, const S& q, int k) {
    S qk = S(1);
    for (int i = 0; i < k; ++i) qk *= q;
    const S t2 = t * t * qk * qk;
    return (S(1) - t2) * (S(1) - t2) - S(4) * x * y * t * qk * (S(1) + t2) + S(4) * t2 * (x * x + y * y);
}

template <class S>
S aux_W(const S& x, const S& y, const S& t, const S& q, int k) {
    S qk = S(1);
    for (int i = 0; i < k; ++i) qk *= q;
    const S t2 = t * t * qk * qk;
    return (S(1) - t2) * (S(1) - t2) - (S(1) - q) * x * y * t * qk * (S(1) + t2) + (S(1) - q) * t2 * (x * x + y * y);
}

template <class S>
S aux_l(const S& x, const S& a, const S& q, int k) {
    S qk = S(1);
    for (int i = 0; i < k; ++i) qk *= q;
    const S f = S(1) + a * qk;
    return f * f - S(4) * x * x * a * qk;
}

template <class S>
S aux_L(const S& x, const S& a, const S& q, int k) {
    S qk = S(1);
    for (int i = 0; i < k; ++i) qk *= q;
    const S f = S(1) + a * qk;
    return f * f - (S(1) - q) * x * x * a * qk;
}

enum class AuxKind { v, V, w, W, l, L };

inline AuxKind aux_kind_from_string(const std::string& s) {
    if (s == "v") return AuxKind::v;
    if (s == "V") return AuxKind::V;
    if (s == "w") return AuxKind::w;
    if (s == "W") return AuxKind::W;
    if (s == "l") return AuxKind::l;
    if (s == "L") return AuxKind::L;
    throw std::invalid_argument("unknown auxiliary quadratic kind: " + s);
}

// args arity: v,V,l,L take (x,a); w,W take (x,y,t).
inline double aux_quadratic(AuxKind kind, int k, const std::vector<double>& args, const QParam& q) {
    if (k < 0) throw std::domain_error("aux_quadratic: k >= 0 required");
    switch (kind) {
        case AuxKind::v:
        case AuxKind::V:
        case AuxKind::l:
        case AuxKind::L:
            if (args.size() != 2) throw std::invalid_argument("aux_quadratic: kind needs args (x,a)");
            break;
        case AuxKind::w:
        case AuxKind::W:
            if (args.size() != 3) throw std::invalid_argument("aux_quadratic: kind needs args (x,y,t)");
            break;
    }
    switch (kind) {
        case AuxKind::v: return aux_v(args[0], args[1], q.q, k);
        case AuxKind::V: return aux_V(args[0], args[1], q.q, k);
        case AuxKind::w: return aux_w(args[0], args[1], args[2], q.q, k);
        case AuxKind::W: return aux_W(args[0], args[1], args[2], q.q, k);
        case AuxKind::l: return aux_l(args[0], args[1], q.q, k);
        case AuxKind::L: return aux_L(args[0], args[1], q.q, k);
    }
    throw std::logic_error("unreachable");
}

// Truncated infinite product over k of a factor function tending to 1
// geometrically.  `coef` bounds the k-th factor's deviation from 1 by
// coef * |q|^k; used for the stopping rule.
template <class Factor>
ProdResult infinite_product(Factor&& f, const QParam& q, const TruncationPolicy& pol, double coef) {
    if (!q.allows_infinite_products())
        throw std::domain_error("infinite_product: |q| < 1 required");
    pol.validate();
    ProdResult res;
    const double aq = std::abs(q.q);
    double qk = 1.0;
    for (int k = 0; k < pol.max_terms; ++k) {
        res.value *= f(k);
        ++res.terms;
        qk *= aq;
        if (coef * qk / (1.0 - aq) < pol.abs_tol) return res;
    }
    res.converged = false;
    return res;
}

// prod_k v_k(x,a|q) etc. as ProdResults (real arguments).
inline ProdResult prod_v(double x, double a, const QParam& q, const TruncationPolicy& pol = {}) {
    return infinite_product([&](int k) { return aux_v(x, a, q.q, k); }, q, pol,
                            2.0 * std::abs(a * x) + a * a + 1.0);
}
inline ProdResult prod_V(double x, double a, const QParam& q, const TruncationPolicy& pol = {}) {
    return infinite_product([&](int k) { return aux_V(x, a, q.q, k); }, q, pol,
                            std::abs(1.0 - q.q) * (std::abs(a * x) + a * a) + 1.0);
}
inline ProdResult prod_w(double x, double y, double t, const QParam& q, const TruncationPolicy& pol = {}) {
    const double c = 4.0 * (std::abs(x * y * t) + t * t * (1.0 + x * x + y * y)) + 1.0;
    return infinite_product([&](int k) { return aux_w(x, y, t, q.q, k); }, q, pol, c);
}
inline ProdResult prod_W(double x, double y, double t, const QParam& q, const TruncationPolicy& pol = {}) {
    const double c = std::abs(1.0 - q.q) * (std::abs(x * y * t) + t * t * (1.0 + x * x + y * y)) + 4.0;
    return infinite_product([&](int k) { return aux_W(x, y, t, q.q, k); }, q, pol, c);
}
inline ProdResult prod_l(double x, double a, const QParam& q, const TruncationPolicy& pol = {}) {
    const double c = std::abs(a) * (2.0 + 4.0 * x * x) + a * a + 1.0;
    return infinite_product([&](int k) { return aux_l(x, a, q.q, k); }, q, pol, c);
}
inline ProdResult prod_L(double x, double a, const QParam& q, const TruncationPolicy& pol = {}) {
    const double c = std::abs(a) * (2.0 + std::abs(1.0 - q.q) * x * x) + a * a + 1.0;
    return infinite_product([&](int k) { return aux_L(x, a, q.q, k); }, q, pol, c);
}

enum class ProductIdentity { rozklv, rozklw, rozkll };

inline ProductIdentity product_identity_from_string(const std::string& s) {
    if (s == "rozklv") return ProductIdentity::rozklv;
    if (s == "rozklw") return ProductIdentity::rozklw;
    if (s == "rozkll") return ProductIdentity::rozkll;
    throw std::invalid_argument("unknown product identity: " + s);
}

// Residual |LHS - RHS| of Eqs. (rozklv)/(rozklw)/(rozkll): complex-Pochhammer
// side vs truncated quadratic product, x = cos(theta), y = cos(phi).
inline double product_identity_check(ProductIdentity which, double x, double y, double a, double t,
                                     const QParam& q, const TruncationPolicy& pol = {}) {
    if (std::abs(x) > 1.0 || std::abs(y) > 1.0)
        throw std::domain_error("product_identity_check: |x|,|y| <= 1 required");
    const cplx eith = TrigPoint::from_x(x).eitheta();
    const cplx eiph = TrigPoint::from_x(y).eitheta();
    switch (which) {
        case ProductIdentity::rozklv: {
            const cplx lhs = q_pochhammer_inf(a * eith, q, pol).value *
                             q_pochhammer_inf(a / eith, q, pol).value;
            return std::abs(lhs - prod_v(x, a, q, pol).value);
        }
        case ProductIdentity::rozklw: {
            const cplx lhs = q_pochhammer_inf(t * eith * eiph, q, pol).value *
                             q_pochhammer_inf(t * eith / eiph, q, pol).value *
                             q_pochhammer_inf(t * eiph / eith, q, pol).value *
                             q_pochhammer_inf(t / (eith * eiph), q, pol).value;
            return std::abs(lhs - prod_w(x, y, t, q, pol).value);
        }
        case ProductIdentity::rozkll: {
            const cplx e2 = eith * eith;
            const cplx lhs = q_pochhammer_inf(a * e2, q, pol).value *
                             q_pochhammer_inf(a / e2, q, pol).value;
            return std::abs(lhs - prod_l(x, a, q, pol).value);
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace qortho
