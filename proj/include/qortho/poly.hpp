#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

// Dense univariate coefficient polynomials over an arbitrary field scalar.
// coeffs[m] multiplies x^m; the zero polynomial is an empty vector.

namespace qortho {

namespace detail {
inline bool scalar_is_zero(double v) { return v == 0.0; }
inline bool scalar_is_zero(const std::complex<double>& v) { return v == std::complex<double>(); }
template <class S>
bool scalar_is_zero(const S& v) { return v == S(0); }

inline double scalar_abs(double v) { return std::abs(v); }
inline double scalar_abs(const std::complex<double>& v) { return std::abs(v); }
template <class S>
double scalar_abs(const S& v) { return std::abs(v.template convert_to<double>()); }
}  // namespace detail

template <class S>
class CoeffPoly {
public:
    CoeffPoly() = default;
    explicit CoeffPoly(std::vector<S> c) : c_(std::move(c)) { trim(); }
    static CoeffPoly zero() { return CoeffPoly(); }
    static CoeffPoly constant(const S& v) { return CoeffPoly(std::vector<S>{v}); }
    static CoeffPoly monomial(int deg, const S& v = S(1)) {
        std::vector<S> c(static_cast<size_t>(deg) + 1, S(0));
        c.back() = v;
        return CoeffPoly(std::move(c));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero poly
    bool is_zero() const { return c_.empty(); }
    const std::vector<S>& coeffs() const { return c_; }
    S coeff(int m) const { return (m >= 0 && m < static_cast<int>(c_.size())) ? c_[m] : S(0); }

    CoeffPoly& operator+=(const CoeffPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), S(0));
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    CoeffPoly& operator-=(const CoeffPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), S(0));
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend CoeffPoly operator+(CoeffPoly a, const CoeffPoly& b) { return a += b; }
    friend CoeffPoly operator-(CoeffPoly a, const CoeffPoly& b) { return a -= b; }

    CoeffPoly& operator*=(const S& s) {
        for (auto& v : c_) v *= s;
        trim();
        return *this;
    }
    friend CoeffPoly operator*(CoeffPoly a, const S& s) { return a *= s; }
    friend CoeffPoly operator*(const S& s, CoeffPoly a) { return a *= s; }

    friend CoeffPoly operator*(const CoeffPoly& a, const CoeffPoly& b) {
        if (a.is_zero() || b.is_zero()) return CoeffPoly();
        std::vector<S> r(a.c_.size() + b.c_.size() - 1, S(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return CoeffPoly(std::move(r));
    }

    // x * p
    CoeffPoly shifted() const {
        if (is_zero()) return CoeffPoly();
        std::vector<S> r(c_.size() + 1, S(0));
        std::copy(c_.begin(), c_.end(), r.begin() + 1);
        return CoeffPoly(std::move(r));
    }

    template <class X>
    X eval(const X& x) const {
        X r(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + X(*it);
        return r;
    }

    bool operator==(const CoeffPoly& o) const { return c_ == o.c_; }
    bool operator!=(const CoeffPoly& o) const { return !(*this == o); }

    double max_abs_coeff_diff(const CoeffPoly& o) const {
        double m = 0.0;
        const int top = std::max(degree(), o.degree());
        for (int i = 0; i <= top; ++i)
            m = std::max(m, detail::scalar_abs(coeff(i) - o.coeff(i)));
        return m;
    }
    double max_abs_coeff() const {
        double m = 0.0;
        for (const auto& v : c_) m = std::max(m, detail::scalar_abs(v));
        return m;
    }

private:
    void trim() {
        while (!c_.empty() && detail::scalar_is_zero(c_.back())) c_.pop_back();
    }
    std::vector<S> c_;
};

}  // namespace qortho
