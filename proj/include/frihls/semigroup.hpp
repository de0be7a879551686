#pragma once
// Heat semigroup T_t with generator (sigma^2/2) Laplacian. On Gaussian
// mixtures T_t acts term-by-term by variance addition; on grids it is the
// Fourier multiplier e^{-t sigma^2 |xi|^2 / 2}.

#include <vector>

#include "frihls/grid_field.hpp"
#include "frihls/mixture.hpp"

namespace frihls {

GaussianMixture apply_heat(const GaussianMixture& f, double t, double sigma = 1.0);
GridField apply_heat_grid(const GridField& F, double t, double sigma = 1.0);

// Log-spaced grid of m points covering [lo, hi].
std::vector<double> log_t_grid(double lo, double hi, int m);

// sup over t_grid plus the t = 0 endpoint of |T_t f(x)|.
double maximal_function(const GaussianMixture& f, const Point& x,
                        const std::vector<double>& t_grid, double sigma = 1.0);

// sup over t_grid of t^{d/(2p)} ||T_t f||_inf / ||f||_p.
double ultracontractivity_constant(const GaussianMixture& f, double p,
                                   const std::vector<double>& t_grid, double sigma = 1.0);

} // namespace frihls
