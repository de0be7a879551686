#include "frihls/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "frihls/gammafn.hpp"

namespace frihls {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

double norm2(const Point& x, int dim) {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += x[i] * x[i];
    return std::sqrt(s);
}

double heat_kernel(const HeatKernelSpec& spec, double r, double t) {
    if (!(t > 0.0)) throw std::domain_error("heat_kernel: t must be > 0");
    if (r < 0.0) throw std::domain_error("heat_kernel: r must be >= 0");
    double v = spec.sigma * spec.sigma * t;
    return std::pow(2.0 * kPi * v, -0.5 * spec.dim) * std::exp(-r * r / (2.0 * v));
}

Point grad_heat_kernel(const HeatKernelSpec& spec, const Point& x, double t) {
    if (!(t > 0.0)) throw std::domain_error("grad_heat_kernel: t must be > 0");
    double k = heat_kernel(spec, norm2(x, spec.dim), t);
    Point g{0.0, 0.0, 0.0};
    for (int i = 0; i < spec.dim; ++i) g[i] = -(x[i] / t) * k;
    return g;
}

double grad_bound_margin(const HeatKernelSpec& spec, const Point& x, double t) {
    if (!(t > 0.0)) throw std::domain_error("grad_bound_margin: t must be > 0");
    double r = norm2(x, spec.dim);
    double num = (r / t) * heat_kernel(spec, r, t);
    double den = std::pow(2.0, 0.5 * (spec.dim + 4)) / std::sqrt(t) * heat_kernel(spec, r, 2.0 * t);
    return num / den;
}

double riesz_constant(int d, double alpha) {
    if (!(alpha > 0.0) || !(alpha < double(d)))
        throw std::domain_error("riesz_kernel: alpha must lie in (0, d)");
    return gamma_fn((d - alpha) / 2.0) /
           (gamma_fn(alpha / 2.0) * std::pow(2.0, alpha / 2.0) * std::pow(kPi, 0.5 * d));
}

double riesz_kernel(const RieszKernelSpec& spec, double r) {
    double c = riesz_constant(spec.dim, spec.alpha);
    if (!(r > 0.0)) throw std::domain_error("riesz_kernel: singular at r = 0");
    return c * std::pow(r, -(spec.dim - spec.alpha));
}

double poisson_kernel(int d, double y, double r) {
    if (!(y > 0.0)) throw std::domain_error("poisson_kernel: y must be > 0");
    double c = gamma_fn((d + 1) / 2.0) * std::pow(kPi, -0.5 * (d + 1));
    return c * y * std::pow(y * y + r * r, -0.5 * (d + 1));
}

} // namespace frihls
