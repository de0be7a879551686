#pragma once
// beta-stable subordinator densities gamma_t^beta (Laplace transform
// e^{-t y^beta}), subordinated heat kernels q_t^beta = int kappa_s gamma_t^beta(s) ds
// built on the sigma = sqrt(2) kernel kappa_s(r) = (4 pi s)^{-d/2} e^{-r^2/(4s)},
// the two-sided kernel estimate fit, and the fractional Laplacian -(-Delta)^beta
// as a compensated singular integral with two competing normalizations.

#include <cstddef>
#include <utility>
#include <vector>

#include "frihls/mixture.hpp"

namespace frihls {

enum class StableMethod { closed_form_half, talbot_inversion };

struct StableSpec {
    double beta = 0.5;
    double t = 1.0;
    StableMethod method = StableMethod::closed_form_half;

    void validate() const;
};

double stable_density(const StableSpec& spec, double s);

// P(S_t > S) via the absolutely convergent large-S series; requires
// t S^{-beta} < 1 (true for any S past the median scale).
double stable_tail(double beta, double t, double S);

// Chernoff bound on the lower tail P(S_t <= s) = exp(-t(1-beta)(t beta/s)^{beta/(1-beta)}).
double stable_cdf_bound(double beta, double t, double s);

struct ScalingRecord {
    double lhs = 0.0; // gamma_t(b^{-1/beta} u)
    double rhs = 0.0; // b^{1/beta} gamma_{bt}(u)
    double rel_err = 0.0;
};

ScalingRecord scaling_check(const StableSpec& spec, double b, double u);

// Density values cached on a certified log-s quadrature grid; shared across
// many kernel radii at the same (beta, t).
struct SubordinationNodes {
    double beta = 0.5, t = 1.0;
    int dim = 1;
    std::vector<double> s;     // nodes
    std::vector<double> w;     // GL weights (absorb nothing else)
    std::vector<double> gamma; // density at the nodes
    double neglected = 0.0;    // certified bound on both dropped tails of the kernel integral
};

SubordinationNodes make_subordination_nodes(double beta, double t, int d, double abs_tol);

double subordinate_kernel_on(const SubordinationNodes& nodes, double r);
double subordinate_kernel(double beta, double t, double r, int d, double abs_tol = 1e-12);

// e^{-t(-Delta)^beta} f(x): quadrature of f.heat(s, sqrt(2)) against gamma_t^beta.
double subordinated_apply(const GaussianMixture& f, double beta, double t, const Point& x);

struct FitRow {
    double beta = 0.0;
    int d = 0;
    double t = 0.0, r = 0.0;
    double q_value = 0.0, comparison_value = 0.0, ratio = 0.0;
};

struct EstimateFitRecord {
    double C1 = 0.0, C2 = 0.0, c_best = 0.0;
    std::vector<FitRow> rows;
};

// Default (t, r) grid: t log-spaced over [1e-2, 1e2], r = rho t^{1/(2 beta)}
// with the similarity variable rho in [0, 50].
std::vector<std::pair<double, double>> make_fit_grid(double beta);

EstimateFitRecord estimate_fit(double beta, int d,
                               const std::vector<std::pair<double, double>>& grid);

enum class ConstantMode { paper_K, symbol_matched };

// symbol_matched: 4^beta Gamma((d+2 beta)/2) beta / (pi^{d/2} Gamma(1-beta)),
// the constant making the operator's Fourier symbol exactly -|xi|^{2 beta}.
// paper_K: 2^beta pi^{-d/2} Gamma((d+2 beta)/2) / Gamma(1-beta). The modes
// differ by the factor 2^{-beta}/beta.
double fractional_laplacian_constant(int d, double beta, ConstantMode mode);

double fractional_laplacian_apply(const GaussianMixture& f, double beta, const Point& x,
                                  ConstantMode mode = ConstantMode::symbol_matched);

} // namespace frihls
