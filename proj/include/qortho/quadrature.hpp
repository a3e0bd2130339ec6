#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

// Adaptive composite Gauss-Legendre quadrature.  Integrands here are smooth
// after the x = c cos(u) substitution, so panel bisection converges quickly.

namespace qortho {

namespace detail {

// Nodes/weights on [-1,1], computed once by Newton iteration on P_n.
template <int N>
const std::array<std::pair<double, double>, N>& gauss_legendre_table() {
    static const auto table = [] {
        std::array<std::pair<double, double>, N> t{};
        for (int i = 0; i < N; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (N + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = 0.0;
                for (int j = 0; j < N; ++j) {
                    const double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
                }
                pp = N * (x * p0 - p1) / (x * x - 1.0);
                const double dx = p0 / pp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            t[static_cast<size_t>(i)] = {x, 2.0 / ((1.0 - x * x) * pp * pp)};
        }
        return t;
    }();
    return table;
}

template <int N, class F>
double gl_panel(F&& f, double a, double b) {
    const auto& tab = gauss_legendre_table<N>();
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (const auto& [x, w] : tab) s += w * f(mid + half * x);
    return s * half;
}

}  // namespace detail

struct QuadResult {
    double value = 0.0;
    int evaluations = 0;
    bool converged = true;
};

// Bisect panels until GL(whole) and GL(halves) agree within the local share
// of the tolerance.
template <class F>
QuadResult integrate(F&& f, double a, double b, double abs_tol = 1e-10, int max_depth = 14) {
    struct Panel {
        double a, b, whole;
        int depth;
    };
    QuadResult res;
    constexpr int ORD = 24;
    std::vector<Panel> stack;
    stack.push_back({a, b, detail::gl_panel<ORD>(f, a, b), 0});
    res.evaluations += ORD;
    while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();
        const double m = 0.5 * (p.a + p.b);
        const double left = detail::gl_panel<ORD>(f, p.a, m);
        const double right = detail::gl_panel<ORD>(f, m, p.b);
        res.evaluations += 2 * ORD;
        const double err = std::abs(left + right - p.whole);
        const double share = abs_tol * (p.b - p.a) / (b - a);
        if (err < std::max(share, 1e-16) || p.depth >= max_depth) {
            res.value += left + right;
            if (p.depth >= max_depth && err >= std::max(share, 1e-16)) res.converged = false;
        } else {
            stack.push_back({p.a, m, left, p.depth + 1});
            stack.push_back({m, p.b, right, p.depth + 1});
        }
    }
    return res;
}

}  // namespace qortho
