#pragma once
// Gamma-family special functions. Everything here is deterministic scalar math
// shared by the kernel formulas, the zeta-regularized Fourier multiplier, and
// the subordinator densities. Own implementations so results are bit-stable
// across platforms (std::tgamma is allowed to differ between libms).

#include <cstddef>

namespace frihls {

// Gamma(x) for x > 0. Relative error < 1e-12 on (0, 10]; < 1e-11 up to 170.
double gamma_fn(double x);

// log Gamma(x), x > 0.
double lgamma_fn(double x);

// Riemann zeta(s), s > 0, s != 1 (alternating-series acceleration).
double riemann_zeta(double s);

// Dirichlet beta(s) = sum_{k>=0} (-1)^k (2k+1)^{-s}, s > 0.
double dirichlet_beta(double s);

// Upper incomplete Gamma(a, x), a > 0, x >= 0.
double upper_gamma(double a, double x);

// Epstein zeta Z_d(s) = sum_{k in Z^d, k != 0} |k|^{-s}, analytically
// continued; valid on 0 < s < d and elsewhere away from the pole at s = d.
// Ewald representation, both theta halves truncated at |k|_inf <= K where
// the tail is below 1e-15 already for K = 6.
double epstein_zeta(int d, double s);

} // namespace frihls
