#pragma once
// Gauss-Legendre quadrature: cached rules, fixed-order panel integration,
// and an adaptive bisection driver that reports an error estimate so callers
// can turn quadrature results into accuracy certificates.

#include <functional>
#include <vector>

namespace frihls {

struct GlRule {
    std::vector<double> x; // nodes on (-1, 1)
    std::vector<double> w;
};

// Cached rule of order n (thread-safe).
const GlRule& gl_rule(int n);

struct QuadResult {
    double value = 0.0;
    double error = 0.0;   // estimated absolute error
    int panels = 0;
};

using Fn1 = std::function<double(double)>;

// Fixed-order GL on [a, b].
double integrate_gl(const Fn1& f, double a, double b, int n = 32);

// Adaptive bisection; per-panel error from |GL(n) - GL(2n)|.
QuadResult integrate_adaptive(const Fn1& f, double a, double b,
                              double rel_tol = 1e-12, double abs_tol = 1e-300,
                              int n = 16, int max_panels = 4096);

// Integral over [a, +inf): u-substitution t = a + u/(1-u).
QuadResult integrate_to_inf(const Fn1& f, double a,
                            double rel_tol = 1e-12, double abs_tol = 1e-300);

// Geometrically graded breakpoints from a singular endpoint at `sing` toward
// b: |t_k - sing| = |b - sing| * ratio^k, finest panel ~ |b-sing|*ratio^(m-1).
std::vector<double> graded_breakpoints(double sing, double b, int m, double ratio = 0.5);

// Panel-by-panel fixed-order GL over given breakpoints.
double integrate_panels(const Fn1& f, const std::vector<double>& brk, int n = 32);

} // namespace frihls
