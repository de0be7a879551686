#pragma once
// Closed-form kernels: heat kernel with explicit diffusion scale sigma, its
// gradient and the gradient-domination margin, the Riesz kernel, and the
// half-space Poisson kernel. All pure functions.

#include <array>

namespace frihls {

using Point = std::array<double, 3>; // first `dim` coordinates are used

struct HeatKernelSpec {
    double sigma = 1.0; // 1: probabilist's kernel (generator Lap/2); sqrt(2): analyst's
    int dim = 1;
};

struct RieszKernelSpec {
    double alpha;
    int dim;
};

// (2 pi sigma^2 t)^{-d/2} exp(-r^2 / (2 sigma^2 t)); underflow returns 0.
double heat_kernel(const HeatKernelSpec& spec, double r, double t);

// grad_x k_t(x) = -(x/t) k_t(x), sigma = 1.
Point grad_heat_kernel(const HeatKernelSpec& spec, const Point& x, double t);

// |grad k_t(x)| / (2^{(d+4)/2} t^{-1/2} k_{2t}(x)); contract: <= 1 everywhere.
// Collapses to u e^{-u^2/4} / 4 with u = |x|/sqrt(t), so the bound is uniform
// in d and t; the full expression is still evaluated from its parts.
double grad_bound_margin(const HeatKernelSpec& spec, const Point& x, double t);

// Gamma((d-a)/2) / (Gamma(a/2) 2^{a/2} pi^{d/2}) * r^{-(d-a)}.
double riesz_kernel(const RieszKernelSpec& spec, double r);

// Leading constant of the Riesz kernel (value at r = 1).
double riesz_constant(int d, double alpha);

// Gamma((d+1)/2) pi^{-(d+1)/2} y / (y^2 + r^2)^{(d+1)/2}; the e^{-y|xi|}
// harmonic-extension kernel, equal to the beta=1/2 subordination of the
// sigma=sqrt(2) heat kernel.
double poisson_kernel(int d, double y, double r);

double norm2(const Point& x, int dim);

} // namespace frihls
