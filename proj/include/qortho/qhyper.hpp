#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "qortho/qcore.hpp"

// Truncated basic hypergeometric series jPhi_k and the very-well-poised
// 2mW2m-1.  The summand carries the standard (q;q)_n denominator (the paper's
// display omits it) and the ((-1)^n q^C(n,2))^{1+k-j} balancing factor.

namespace qortho {

struct PhiSpec {
    std::vector<cplx> num;  // a_1 .. a_j
    std::vector<cplx> den;  // b_1 .. b_k
    QParam q;
    cplx argument{0.0, 0.0};
};

struct PhiResult {
    cplx value{0.0, 0.0};
    int terms = 0;
    bool converged = true;
};

// Pole guard: a denominator parameter of the form q^{-N} makes (b;q)_n vanish
// inside the truncation range.
inline void phi_pole_guard(const PhiSpec& spec, const TruncationPolicy& pol) {
    for (const cplx& b : spec.den) {
        double qn = 1.0;
        for (int n = 0; n < pol.max_terms; ++n) {
            if (std::abs(1.0 - b * qn) < 1e-12) {
                throw std::domain_error("phi: denominator parameter hits a pole (b = q^{-N})");
            }
            qn *= spec.q.q;
            if (std::abs(b) * qn < 0.5) break;  // |b q^n| < 1/2 can no longer reach 1
        }
    }
}

// Terms built multiplicatively from the consecutive-term ratio.
inline PhiResult phi(const PhiSpec& spec, const TruncationPolicy& pol = {}) {
    if (!spec.q.allows_infinite_products())
        throw std::domain_error("phi: |q| < 1 required");
    pol.validate();
    phi_pole_guard(spec, pol);

    const int balance = 1 + static_cast<int>(spec.den.size()) - static_cast<int>(spec.num.size());
    PhiResult res;
    cplx term(1.0, 0.0);
    double qn = 1.0;
    int small_streak = 0;
    for (int n = 0; n < pol.max_terms; ++n) {
        res.value += term;
        ++res.terms;
        cplx ratio(1.0, 0.0);
        for (const cplx& a : spec.num) ratio *= 1.0 - a * qn;
        for (const cplx& b : spec.den) ratio /= 1.0 - b * qn;
        ratio /= 1.0 - spec.q.q * qn;  // the (q;q)_n factor
        cplx extra(1.0, 0.0);
        if (balance != 0) {
            const cplx base = -qn;  // ((-1) q^n) per unit of balance
            extra = std::pow(base, balance);
        }
        term = term * ratio * extra * spec.argument;
        qn *= spec.q.q;
        if (std::abs(term) < pol.abs_tol * (1.0 + std::abs(res.value))) {
            if (++small_streak >= 3) return res;
        } else {
            small_streak = 0;
        }
    }
    res.converged = false;
    return res;
}

// 2mW2m-1(a; a_1..a_{2m-3}; q, x): numerator (a, q sqrt a, -q sqrt a, a_i...),
// denominator (sqrt a, -sqrt a, qa/a_i...).  Principal branch for sqrt(a).
inline PhiResult very_well_poised_W(int m, cplx a, const std::vector<cplx>& extras, const QParam& q,
                                    cplx argument, const TruncationPolicy& pol = {}) {
    if (m < 1) throw std::domain_error("very_well_poised_W: m >= 1 required");
    if (a == cplx(0.0, 0.0)) throw std::domain_error("very_well_poised_W: a = 0 degenerates sqrt(a)");
    if (static_cast<int>(extras.size()) != 2 * m - 3)
        throw std::invalid_argument("very_well_poised_W: need exactly 2m-3 extra parameters");
    const cplx ra = std::sqrt(a);
    PhiSpec spec;
    spec.q = q;
    spec.argument = argument;
    spec.num = {a, q.q * ra, -q.q * ra};
    spec.num.insert(spec.num.end(), extras.begin(), extras.end());
    spec.den = {ra, -ra};
    for (const cplx& e : extras) spec.den.push_back(q.q * a / e);
    return phi(spec, pol);
}

}  // namespace qortho
