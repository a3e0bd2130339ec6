#pragma once

#include <boost/multiprecision/cpp_int.hpp>

// Exact rational scalar used by the coefficient-level identity checks.
// Only needs the field operations the generic q-arithmetic templates use.

namespace qortho {

// expression templates off: arithmetic must yield Rational itself so the
// generic q-arithmetic templates deduce cleanly
using Rational = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline Rational rat(long long num, long long den = 1) { return Rational(num, den); }

inline Rational rat_pow(Rational b, long long e) {
    if (e < 0) return Rational(1) / rat_pow(b, -e);
    Rational r(1);
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace qortho
