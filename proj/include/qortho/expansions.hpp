#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qortho/families.hpp"
#include "qortho/poly.hpp"
#include "qortho/qcore.hpp"

// Section-3 finite identities: connection coefficients between families,
// linearization formulae and the B/H annihilation sum.  Every identity is
// verified at the coefficient level: an IdentityCheck carries LHS and RHS as
// polynomials in a single common variable (second variables of bivariate
// identities are substituted scalars, looped over enough points by callers to
// pin the full bivariate statement).

namespace qortho {

template <class S>
struct IdentityCheck {
    CoeffPoly<S> lhs, rhs;

    bool exact_equal() const { return lhs == rhs; }
    double residual() const { return lhs.max_abs_coeff_diff(rhs); }
    double scale() const { return std::max(1.0, std::max(lhs.max_abs_coeff(), rhs.max_abs_coeff())); }
};

// Scalar parameter bundle for identity builders; unused fields ignored.
template <class S>
struct IdentityParams {
    S q{0};
    S p{0};      // second base for the change-of-base identity
    S a{0};      // big q-Hermite parameter
    S b{0};      // second big q-Hermite parameter
    S y{0};      // ASC y / second variable
    S z{0};      // third variable
    S rho{0};    // ASC rho
    S r{0};      // PnaP intermediate
    S t{0};      // odwrocenie parameter
    S beta{0};   // ultraspherical
    S gamma{0};  // second ultraspherical parameter
    int n = 0, m = 0, k = 0;
};

namespace detail {

template <class S>
S spow(const S& base, int e) {
    S r(1);
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

template <class S>
S neg1pow(int e) { return (e % 2 == 0) ? S(1) : S(-1); }

// q^C(j,2)
template <class S>
S q_binom2_pow(const S& q, int j) {
    return spow(q, j * (j - 1) / 2);
}

// P_n(z | y, t, q) viewed as a polynomial in y (z, t scalar): the recurrence
// P_{j+1} = (z - t q^j y) P_j - (1 - t^2 q^{j-1})[j]_q P_{j-1} is linear in y.
template <class S>
std::vector<CoeffPoly<S>> asc_p_polys_in_y(int nmax, const S& z, const S& t, const S& q) {
    std::vector<CoeffPoly<S>> out;
    out.push_back(CoeffPoly<S>::constant(S(1)));
    CoeffPoly<S> prev, cur = out[0];
    S qj(1), qjm1(1);
    for (int j = 0; j < nmax; ++j) {
        CoeffPoly<S> next = z * cur - (t * qj) * cur.shifted();
        if (j >= 1) {
            const S c = (S(1) - t * t * qjm1) * q_bracket(j, q);
            next -= c * prev;
        }
        prev = cur;
        cur = next;
        out.push_back(cur);
        qjm1 = qj;
        qj *= q;
    }
    return out;
}

}  // namespace detail

// Registry ids, stable strings exposed through the CLI.
inline const std::vector<std::string>& identity_registry() {
    static const std::vector<std::string> ids = {
        "TnaU",   "UnaT",   "HnaT",      "HnaH",       "UnaH",     "HnaU",
        "bighnah", "bigHnaH", "PnaH",    "HnaP",       "bHnaP",    "PnabH",
        "PnaP",   "odwrocenie", "RnaR",  "RnaH",       "HnaR",     "BnaH",
        "ascdouble", "identity", "identyty3", "identyty2", "BHnaH", "HRnaH",
        "sumaBH",
    };
    return ids;
}

// ---- connection-coefficient vectors ----
// connection_coeffs returns the coefficients multiplying the target-family
// polynomials, in order of the target index as it appears in the display.

template <class S>
std::vector<S> connection_coeffs(const std::string& id, const IdentityParams<S>& P) {
    const int n = P.n;
    const S& q = P.q;
    std::vector<S> c;
    if (id == "TnaU") {
        // T_n = (U_n - U_{n-2})/2 for n >= 1; T_0 = U_0; vector over U_n, U_{n-2}
        if (n == 0) return {S(1)};
        c = {S(1) / S(2), S(-1) / S(2)};
    } else if (id == "UnaT") {
        // U_n = 2 sum_{k<=n/2} T_{n-2k} - (1+(-1)^n)/2 (constant folded into T_0 slot by caller)
        for (int k = 0; k <= n / 2; ++k) c.push_back(S(2));
    } else if (id == "HnaT") {
        for (int k = 0; k <= n; ++k) c.push_back(q_binomial(n, k, q));
    } else if (id == "HnaH") {
        // lower-case change of base: h_n(x|p) = sum_k c_{n,n-2k}(p,q) h_{n-2k}(x|q)
        for (int k = 0; k <= n / 2; ++k) {
            S sum(0);
            for (int j = 0; j <= k; ++j) {
                sum += detail::neg1pow<S>(j) * detail::spow(P.p, k - j) *
                       detail::spow(q, j * (j + 1) / 2) * q_binomial(n - 2 * k + j, j, q) *
                       (q_binomial(n, k - j, P.p) -
                        detail::spow(P.p, n - 2 * k + 2 * j + 1) * q_binomial(n, k - j - 1, P.p));
            }
            c.push_back(sum);
        }
    } else if (id == "UnaH") {
        for (int j = 0; j <= n / 2; ++j)
            c.push_back(detail::neg1pow<S>(j) * detail::spow(q, j * (j + 1) / 2) *
                        q_binomial(n - j, j, q));
    } else if (id == "HnaU") {
        // (q^k - q^{n-k+1})/(1-q^{n-k+1}) [n k]_q on U_{n-2k}; the (1-q)^{-n/2}
        // scale lives in the u-variable convention (see check_identity).
        for (int k = 0; k <= n / 2; ++k) {
            const S num = detail::spow(q, k) - detail::spow(q, n - k + 1);
            const S den = S(1) - detail::spow(q, n - k + 1);
            c.push_back(num / den * q_binomial(n, k, q));
        }
    } else if (id == "bighnah" || id == "bigHnaH") {
        for (int k = 0; k <= n; ++k)
            c.push_back(q_binomial(n, k, q) * detail::neg1pow<S>(k) * detail::q_binom2_pow(q, k) *
                        detail::spow(P.a, k));
    } else if (id == "PnaH") {
        // coefficient on H_j(x): [n j]_q rho^{n-j} B_{n-j}(y|q)
        FamilyParams<S> fp{};
        fp.q = q;
        auto B = family_eval_seq(Family::qInvHermite_B, n, P.y, fp);
        for (int j = 0; j <= n; ++j)
            c.push_back(q_binomial(n, j, q) * detail::spow(P.rho, n - j) *
                        B[static_cast<size_t>(n - j)]);
    } else if (id == "HnaP") {
        FamilyParams<S> fp{};
        fp.q = q;
        auto H = family_eval_seq(Family::qHermite_H, n, P.y, fp);
        for (int j = 0; j <= n; ++j)
            c.push_back(q_binomial(n, j, q) * detail::spow(P.rho, n - j) *
                        H[static_cast<size_t>(n - j)]);
    } else if (id == "RnaR") {
        // coefficient on R_{n-2k}(x|beta,q) expanding R_n(x|gamma,q)
        if (P.beta == S(0)) throw std::domain_error("RnaR: beta = 0 is the RnaH special case");
        for (int k = 0; k <= n / 2; ++k) {
            const S num = q_factorial(n, q) * detail::spow(P.beta, k) *
                          q_pochhammer(P.gamma / P.beta, q, k) * q_pochhammer(P.gamma, q, n - k) *
                          (S(1) - P.beta * detail::spow(q, n - 2 * k));
            const S den = q_factorial(k, q) * q_factorial(n - 2 * k, q) *
                          q_pochhammer(P.beta * q, q, n - k) * (S(1) - P.beta);
            c.push_back(num / den);
        }
    } else if (id == "RnaH") {
        for (int k = 0; k <= n / 2; ++k)
            c.push_back(detail::neg1pow<S>(k) * detail::q_binom2_pow(q, k) * q_factorial(n, q) *
                        detail::spow(P.gamma, k) * q_pochhammer(P.gamma, q, n - k) /
                        (q_factorial(k, q) * q_factorial(n - 2 * k, q)));
    } else if (id == "HnaR") {
        for (int k = 0; k <= n / 2; ++k)
            c.push_back(q_factorial(n, q) /
                        (q_factorial(k, q) * q_factorial(n - 2 * k, q)) * detail::spow(P.beta, k) *
                        (S(1) - P.beta * detail::spow(q, n - 2 * k)) /
                        ((S(1) - P.beta) * q_pochhammer(P.beta * q, q, n - k)));
    } else if (id == "BnaH") {
        // B_n = (-1)^n q^C(n,2) sum_k [n k][n-k k][k]! q^{k(k-n)} H_{n-2k}
        for (int k = 0; k <= n / 2; ++k) {
            S term = q_binomial(n, k, q) * q_binomial(n - k, k, q) * q_factorial(k, q);
            const int e = k * (k - n);
            if (e >= 0)
                term *= detail::spow(q, e);
            else
                term /= detail::spow(q, -e);
            c.push_back(detail::neg1pow<S>(n) * detail::q_binom2_pow(q, n) * term);
        }
    } else {
        throw std::invalid_argument("connection_coeffs: no coefficient vector for " + id);
    }
    return c;
}

// ---- full coefficient-level identity checks ----
// For scale-carrying identities the common variable is u with x = 2u/sqrt(1-q)
// and every polynomial entering is rendered via family_scaled_coeffs, keeping
// all coefficients in the base field.

template <class S>
IdentityCheck<S> check_identity(const std::string& id, const IdentityParams<S>& P) {
    const int n = P.n, m = P.m, k3 = P.k;
    const S& q = P.q;
    FamilyParams<S> fq{};
    fq.q = q;
    IdentityCheck<S> out;

    const int top = n + m + k3 + 1;
    const auto Hseq = family_coeffs_seq(Family::qHermite_H, top, fq);
    const auto Bseq = family_coeffs_seq(Family::qInvHermite_B, top, fq);
    const auto Tseq = family_coeffs_seq(Family::Cheb_T, top, fq);
    const auto Useq = family_coeffs_seq(Family::Cheb_U, top, fq);
    auto H = [&](int j) { return Hseq[static_cast<size_t>(j)]; };
    auto Bc = [&](int j) { return Bseq[static_cast<size_t>(j)]; };
    auto Tc = [&](int j) { return Tseq[static_cast<size_t>(j)]; };
    auto Uc = [&](int j) { return Useq[static_cast<size_t>(j)]; };

    if (id == "TnaU") {
        out.lhs = Tc(n);
        if (n == 0) {
            out.rhs = Uc(0);
        } else {
            out.rhs = (Uc(n) - (n >= 2 ? Uc(n - 2) : CoeffPoly<S>::zero())) * (S(1) / S(2));
        }
    } else if (id == "UnaT") {
        out.lhs = Uc(n);
        CoeffPoly<S> rhs;
        for (int k = 0; k <= n / 2; ++k) rhs += S(2) * Tc(n - 2 * k);
        rhs -= CoeffPoly<S>::constant((n % 2 == 0) ? S(1) : S(0));
        out.rhs = rhs;
    } else if (id == "HnaT") {
        // (in u): G_H,n(u) = sum_k [n k]_q T_{n-2k}(u), T_{-m} = T_m
        out.lhs = family_scaled_coeffs(Family::qHermite_H, n, fq);
        CoeffPoly<S> rhs;
        for (int k = 0; k <= n; ++k) rhs += q_binomial(n, k, q) * Tc(std::abs(n - 2 * k));
        out.rhs = rhs;
    } else if (id == "HnaH") {
        // h_n(x|p) = sum_k c_{n,n-2k}(p,q) h_{n-2k}(x|q)
        FamilyParams<S> fp{};
        fp.q = P.p;
        out.lhs = family_coeffs(Family::qHermite_h, n, fp);
        auto c = connection_coeffs("HnaH", P);
        CoeffPoly<S> rhs;
        for (int k = 0; k <= n / 2; ++k)
            rhs += c[static_cast<size_t>(k)] * family_coeffs(Family::qHermite_h, n - 2 * k, fq);
        out.rhs = rhs;
    } else if (id == "UnaH") {
        // (in u): U_n(u) = sum_j (-1)^j q^{j(j+1)/2} [n-j j]_q G_H,n-2j(u)
        // ((1-q)^{n/2-j} of the display cancels against the scaled form).
        out.lhs = Uc(n);
        CoeffPoly<S> rhs;
        for (int j = 0; j <= n / 2; ++j)
            rhs += detail::neg1pow<S>(j) * detail::spow(q, j * (j + 1) / 2) *
                   q_binomial(n - j, j, q) * family_scaled_coeffs(Family::qHermite_H, n - 2 * j, fq);
        out.rhs = rhs;
    } else if (id == "HnaU") {
        // (in u): G_H,n(u) = sum_k (q^k - q^{n-k+1})/(1-q^{n-k+1}) [n k]_q U_{n-2k}(u)
        out.lhs = family_scaled_coeffs(Family::qHermite_H, n, fq);
        auto c = connection_coeffs("HnaU", P);
        CoeffPoly<S> rhs;
        for (int k = 0; k <= n / 2; ++k) rhs += c[static_cast<size_t>(k)] * Uc(n - 2 * k);
        out.rhs = rhs;
    } else if (id == "bighnah" || id == "bigHnaH") {
        const bool lower = (id == "bighnah");
        FamilyParams<S> fa = fq;
        fa.a = P.a;
        out.lhs = family_coeffs(lower ? Family::bigqHermite_h : Family::bigqHermite_H, n, fa);
        auto c = connection_coeffs(id, P);
        CoeffPoly<S> rhs;
        for (int k = 0; k <= n; ++k)
            rhs += c[static_cast<size_t>(k)] *
                   family_coeffs(lower ? Family::qHermite_h : Family::qHermite_H, n - k, fq);
        out.rhs = rhs;
    } else if (id == "PnaH") {
        FamilyParams<S> fp = fq;
        fp.y = P.y;
        fp.rho = P.rho;
        out.lhs = family_coeffs(Family::ASC_P, n, fp);
        auto c = connection_coeffs("PnaH", P);
        CoeffPoly<S> rhs;
        for (int j = 0; j <= n; ++j) rhs += c[static_cast<size_t>(j)] * H(j);
        out.rhs = rhs;
    } else if (id == "HnaP") {
        FamilyParams<S> fp = fq;
        fp.y = P.y;
        fp.rho = P.rho;
        out.lhs = H(n);
        auto c = connection_coeffs("HnaP", P);
        CoeffPoly<S> rhs;
        for (int j = 0; j <= n; ++j)
            rhs += c[static_cast<size_t>(j)] * family_coeffs(Family::ASC_P, j, fp);
        out.rhs = rhs;
    } else if (id == "bHnaP") {
        // H_n(x|a,q) = sum_j [n j] P_j(x|y,a/b,q) (a/b)^{n-j} H_{n-j}(y|b,q)
        if (P.b == S(0)) throw std::domain_error("bHnaP: b != 0 required");
        FamilyParams<S> fa = fq;
        fa.a = P.a;
        out.lhs = family_coeffs(Family::bigqHermite_H, n, fa);
        FamilyParams<S> fpj = fq;
        fpj.y = P.y;
        fpj.rho = P.a / P.b;
        FamilyParams<S> fb = fq;
        fb.a = P.b;
        CoeffPoly<S> rhs;
        for (int j = 0; j <= n; ++j) {
            const S hy = family_eval(Family::bigqHermite_H, n - j, P.y, fb);
            rhs += q_binomial(n, j, q) * detail::spow(P.a / P.b, n - j) * hy *
                   family_coeffs(Family::ASC_P, j, fpj);
        }
        out.rhs = rhs;
    } else if (id == "PnabH") {
        // P_n(x|y,rho,q) = sum_k [n k] rho^{n-k} B_{n-k}(y|a/rho, q) H_k(x|a,q)
        if (P.rho == S(0)) throw std::domain_error("PnabH: rho != 0 required");
        FamilyParams<S> fp = fq;
        fp.y = P.y;
        fp.rho = P.rho;
        out.lhs = family_coeffs(Family::ASC_P, n, fp);
        FamilyParams<S> fa = fq;
        fa.a = P.a;
        auto Bj = family_eval_seq(Family::qInvHermite_B, n, P.y, fq);
        auto bigB = [&](int mm, const S& bb) {
            S s(0);
            for (int j = 0; j <= mm; ++j)
                s += q_binomial(mm, j, q) * detail::spow(bb, mm - j) * Bj[static_cast<size_t>(j)];
            return s;
        };
        CoeffPoly<S> rhs;
        for (int k = 0; k <= n; ++k)
            rhs += q_binomial(n, k, q) * detail::spow(P.rho, n - k) * bigB(n - k, P.a / P.rho) *
                   family_coeffs(Family::bigqHermite_H, k, fa);
        out.rhs = rhs;
    } else if (id == "PnaP") {
        // P_n(x|y,rho,q) = sum_j [n j] r^{n-j} P_j(x|z,r,q) P_{n-j}(z|y,rho/r,q)
        if (P.r == S(0)) throw std::domain_error("PnaP: r != 0 required");
        FamilyParams<S> fp = fq;
        fp.y = P.y;
        fp.rho = P.rho;
        out.lhs = family_coeffs(Family::ASC_P, n, fp);
        FamilyParams<S> fxz = fq;
        fxz.y = P.z;
        fxz.rho = P.r;
        FamilyParams<S> fzy = fq;
        fzy.y = P.y;
        fzy.rho = P.rho / P.r;
        CoeffPoly<S> rhs;
        for (int j = 0; j <= n; ++j) {
            const S pz = family_eval(Family::ASC_P, n - j, P.z, fzy);
            rhs += q_binomial(n, j, q) * detail::spow(P.r, n - j) * pz *
                   family_coeffs(Family::ASC_P, j, fxz);
        }
        out.rhs = rhs;
    } else if (id == "odwrocenie") {
        // P_n(y|z,t,q)/(t^2)_n = sum_j (-1)^j q^C(j,2) [n j] t^j H_{n-j}(y)
        //                        P_j(z|y,t,q)/(t^2)_j   -- polynomials in y
        auto pzy = detail::asc_p_polys_in_y(n, P.z, P.t, q);
        FamilyParams<S> fyz = fq;
        fyz.y = P.z;
        fyz.rho = P.t;
        out.lhs = family_coeffs(Family::ASC_P, n, fyz) * (S(1) / q_pochhammer(P.t * P.t, q, n));
        CoeffPoly<S> rhs;
        for (int j = 0; j <= n; ++j) {
            rhs += detail::neg1pow<S>(j) * detail::q_binom2_pow(q, j) * q_binomial(n, j, q) *
                   detail::spow(P.t, j) * (S(1) / q_pochhammer(P.t * P.t, q, j)) *
                   (H(n - j) * pzy[static_cast<size_t>(j)]);
        }
        out.rhs = rhs;
    } else if (id == "RnaR" || id == "RnaH" || id == "HnaR") {
        FamilyParams<S> fb = fq;
        fb.beta = P.beta;
        FamilyParams<S> fg = fq;
        fg.beta = P.gamma;
        auto c = connection_coeffs(id, P);
        CoeffPoly<S> rhs;
        if (id == "RnaR") {
            out.lhs = family_coeffs(Family::Ultra_R, n, fg);
            for (int k = 0; k <= n / 2; ++k)
                rhs += c[static_cast<size_t>(k)] * family_coeffs(Family::Ultra_R, n - 2 * k, fb);
        } else if (id == "RnaH") {
            out.lhs = family_coeffs(Family::Ultra_R, n, fg);
            for (int k = 0; k <= n / 2; ++k) rhs += c[static_cast<size_t>(k)] * H(n - 2 * k);
        } else {
            out.lhs = H(n);
            for (int k = 0; k <= n / 2; ++k)
                rhs += c[static_cast<size_t>(k)] * family_coeffs(Family::Ultra_R, n - 2 * k, fb);
        }
        out.rhs = rhs;
    } else if (id == "BnaH") {
        out.lhs = Bc(n);
        auto c = connection_coeffs("BnaH", P);
        CoeffPoly<S> rhs;
        for (int k = 0; k <= n / 2; ++k) rhs += c[static_cast<size_t>(k)] * H(n - 2 * k);
        out.rhs = rhs;
    } else if (id == "ascdouble") {
        // P_n(x|y,rho,q) expanded in H_{n-2k-s}(x) H_s(y)
        FamilyParams<S> fp = fq;
        fp.y = P.y;
        fp.rho = P.rho;
        out.lhs = family_coeffs(Family::ASC_P, n, fp);
        auto Hy = family_eval_seq(Family::qHermite_H, n, P.y, fq);
        CoeffPoly<S> rhs;
        for (int k = 0; k <= n / 2; ++k) {
            S outer = q_binomial(n, k, q) * q_binomial(n - k, k, q) * q_factorial(k, q) *
                      detail::spow(q, k * (k - 1)) * detail::spow(P.rho, 2 * k);
            for (int s = 0; s <= n - 2 * k; ++s) {
                const S inner = detail::neg1pow<S>(s) * q_binomial(n - 2 * k, s, q) *
                                detail::q_binom2_pow(q, s) *
                                detail::spow(detail::spow(q, k) * P.rho, s) *
                                Hy[static_cast<size_t>(s)];
                rhs += outer * inner * H(n - 2 * k - s);
            }
        }
        out.rhs = rhs;
    } else if (id == "identity") {
        // H_n H_m = sum_j [m j][n j][j]! H_{n+m-2j}
        out.lhs = H(n) * H(m);
        CoeffPoly<S> rhs;
        for (int j = 0; j <= std::min(n, m); ++j)
            rhs += q_binomial(m, j, q) * q_binomial(n, j, q) * q_factorial(j, q) * H(n + m - 2 * j);
        out.rhs = rhs;
    } else if (id == "identyty3") {
        // triple product, regrouped display with [r]![j-r]! weights
        out.lhs = H(n) * H(m) * H(k3);
        CoeffPoly<S> rhs;
        for (int j = 0; j <= (n + m + k3) / 2; ++j) {
            S inner(0);
            for (int r = std::max(j - k3, 0); r <= std::min({m, n, m + n - j}); ++r) {
                inner += q_binomial(m, r, q) * q_binomial(n, r, q) * q_binomial(k3, j - r, q) *
                         q_binomial(m + n - 2 * r, j - r, q) * q_factorial(r, q) *
                         q_factorial(j - r, q);
            }
            if (n + m + k3 - 2 * j >= 0) rhs += inner * H(n + m + k3 - 2 * j);
        }
        out.rhs = rhs;
    } else if (id == "identyty2") {
        // H_{n+m} = sum_k (-1)^k q^C(k,2) [m k][n k][k]! H_{n-k} H_{m-k}
        out.lhs = H(n + m);
        CoeffPoly<S> rhs;
        for (int k = 0; k <= std::min(n, m); ++k)
            rhs += detail::neg1pow<S>(k) * detail::q_binom2_pow(q, k) * q_binomial(m, k, q) *
                   q_binomial(n, k, q) * q_factorial(k, q) * (H(n - k) * H(m - k));
        out.rhs = rhs;
    } else if (id == "BHnaH") {
        // H_m B_n = (-1)^n q^C(n,2) sum_k [n k][n+m-k k][k]! q^{-k(n-k)} H_{n+m-2k}
        out.lhs = H(m) * Bc(n);
        CoeffPoly<S> rhs;
        for (int k = 0; k <= (n + m) / 2; ++k) {
            S term = q_binomial(n, k, q) * q_binomial(n + m - k, k, q) * q_factorial(k, q);
            const int e = -k * (n - k);
            if (e >= 0)
                term *= detail::spow(q, e);
            else
                term /= detail::spow(q, -e);
            rhs += detail::neg1pow<S>(n) * detail::q_binom2_pow(q, n) * term * H(n + m - 2 * k);
        }
        out.rhs = rhs;
    } else if (id == "HRnaH") {
        // H_m R_n(x|beta,q) = sum_{j<=m, k<=n-j} [m j][n k+j][n-k-j k][k+j]!
        //                     (-beta)^k q^C(k,2) (beta)_{n-k} H_{n+m-2k-2j}
        FamilyParams<S> fb = fq;
        fb.beta = P.beta;
        out.lhs = H(m) * family_coeffs(Family::Ultra_R, n, fb);
        CoeffPoly<S> rhs;
        for (int j = 0; j <= m; ++j) {
            for (int k = 0; k <= n - j; ++k) {
                if (n + m - 2 * k - 2 * j < 0) continue;
                const S c = q_binomial(m, j, q) * q_binomial(n, k + j, q) *
                            q_binomial(n - k - j, k, q) * q_factorial(k + j, q) *
                            detail::neg1pow<S>(k) * detail::spow(P.beta, k) *
                            detail::q_binom2_pow(q, k) * q_pochhammer(P.beta, q, n - k);
                rhs += c * H(n + m - 2 * k - 2 * j);
            }
        }
        out.rhs = rhs;
    } else if (id == "sumaBH") {
        // sum_k [n k] B_{n-k} H_{k+m} = 0 (n>m) or (-1)^n q^C(n,2)[m]!/[m-n]! H_{m-n}
        CoeffPoly<S> lhs;
        for (int k = 0; k <= n; ++k)
            lhs += q_binomial(n, k, q) * (Bc(n - k) * H(k + m));
        out.lhs = lhs;
        if (n > m) {
            out.rhs = CoeffPoly<S>::zero();
        } else {
            out.rhs = detail::neg1pow<S>(n) * detail::q_binom2_pow(q, n) *
                      (q_factorial(m, q) / q_factorial(m - n, q)) * H(m - n);
        }
    } else {
        throw std::invalid_argument("check_identity: unknown identity " + id);
    }
    return out;
}

// Numeric evaluation of the RHS expansion at a point (float path).
inline double apply_connection(const std::string& id, const IdentityParams<double>& P, double x) {
    auto chk = check_identity(id, P);
    return chk.rhs.eval(x);
}

// Linearization coefficient vectors in the target H-basis.
// id in {identity, identyty2, BHnaH, HRnaH}; returns the vector of
// coefficients on H_{top-2j} (or on H_{n-k}H_{m-k} products for identyty2).
template <class S>
std::vector<S> linearize(const std::string& id, const IdentityParams<S>& P) {
    const int n = P.n, m = P.m;
    const S& q = P.q;
    std::vector<S> c;
    if (id == "identity") {
        for (int j = 0; j <= std::min(n, m); ++j)
            c.push_back(q_binomial(m, j, q) * q_binomial(n, j, q) * q_factorial(j, q));
    } else if (id == "identyty2") {
        for (int k = 0; k <= std::min(n, m); ++k)
            c.push_back(detail::neg1pow<S>(k) * detail::q_binom2_pow(q, k) * q_binomial(m, k, q) *
                        q_binomial(n, k, q) * q_factorial(k, q));
    } else if (id == "BHnaH") {
        for (int k = 0; k <= (n + m) / 2; ++k) {
            S term = q_binomial(n, k, q) * q_binomial(n + m - k, k, q) * q_factorial(k, q);
            const int e = -k * (n - k);
            if (e >= 0)
                term *= detail::spow(q, e);
            else
                term /= detail::spow(q, -e);
            c.push_back(detail::neg1pow<S>(n) * detail::q_binom2_pow(q, n) * term);
        }
    } else {
        throw std::invalid_argument("linearize: unsupported id " + id);
    }
    return c;
}

// Annihilation sum (suma BH) evaluated at x.
template <class S>
S annihilation_sum(int n, int m, const S& q, const S& x) {
    if (n < 0 || m < 0) throw std::domain_error("annihilation_sum: n,m >= 0 required");
    FamilyParams<S> fq{};
    fq.q = q;
    auto B = family_eval_seq(Family::qInvHermite_B, n, x, fq);
    auto H = family_eval_seq(Family::qHermite_H, n + m, x, fq);
    S s(0);
    for (int k = 0; k <= n; ++k)
        s += q_binomial(n, k, q) * B[static_cast<size_t>(n - k)] * H[static_cast<size_t>(k + m)];
    return s;
}

// Expected closed form of the annihilation sum.
template <class S>
S annihilation_expected(int n, int m, const S& q, const S& x) {
    if (n > m) return S(0);
    FamilyParams<S> fq{};
    fq.q = q;
    return detail::neg1pow<S>(n) * detail::q_binom2_pow(q, n) *
           (q_factorial(m, q) / q_factorial(m - n, q)) *
           family_eval(Family::qHermite_H, m - n, x, fq);
}

}  // namespace qortho
