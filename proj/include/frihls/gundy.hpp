#pragma once
// Half-space pairing: the fractional integral as the exit-position projection
// of a stochastic integral along (B_t, Y_t), with B_0 Lebesgue-distributed and
// Y a 1-D Brownian motion dropped from height a. The Lebesgue start is
// integrated out analytically, which replaces g(B_tau) * dyU_f(B_k) by
// dyU_G(B_tau - B_k) with G = f * g(-.) and leaves a single path started at
// the origin. Scope is d = 1.

#include <cstdint>
#include <vector>

#include "frihls/mixture.hpp"
#include "frihls/rng.hpp"

namespace frihls {

// Correlation G = f * g(-.) (exact Gaussian convolution, common dim).
GaussianMixture correlation_mixture(const GaussianMixture& f, const GaussianMixture& g);

// Vertical derivative of the classical Poisson extension u(w, y) of a 1-D
// mixture, through the 1/2-stable subordination of the heat semigroup:
//   u(w, y)    = int W(s) [T'_{y^2 s} g](w) ds,   T'_t = e^{t Lap},
//   d_y u(w,y) = 2 y int W(s) s [Lap T'_{y^2 s} g](w) ds,
// with W(s) = s^{-3/2} exp(-1/(4s)) / (2 sqrt(pi)). The log-s trapezoid table
// is precomputed once; relative accuracy ~1e-6 for y in [1e-5, 1e3].
class PoissonDerivative {
public:
    explicit PoissonDerivative(const GaussianMixture& g, int nodes = 1200);

    double operator()(double w, double y) const; // d_y u
    double value(double w, double y) const;      // u itself (for cross-checks)

private:
    std::vector<double> amp_, var_, cen_;
    std::vector<double> sig_, wt_;
};

struct GvConfig {
    double step_scale = 0.01;  // dt = step_scale * y^2, floored at dt_floor
    double dt_floor = 1e-7;
    double kill_floor = 1e-5;  // treat y below this as absorbed
    int paths = 1500;
    long max_steps = 1000000;  // per path; beyond this the path is truncated
    int sigma_nodes = 1200;
    double max_trunc_fraction = 1e-3;
    std::uint64_t master_seed = kDefaultSeed;
    int threads = 1;
};

struct GvPairingRecord {
    double pairing_estimate = 0.0;
    double std_error = 0.0;
    double limit_estimate = 0.0; // occupation-reweighted by max(y/a, 1):
    double limit_std_error = 0.0; // unbiased for the a -> infinity pairing
    double mean_steps = 0.0;
    int truncated_paths = 0;
    int paths = 0;
};

// Monte Carlo estimate of E^a[g(B_tau) int_0^tau Y_t^alpha d_y u_f dY_t].
// Throws BudgetError if more than max_trunc_fraction of paths exceed the
// step budget before absorption.
GvPairingRecord gv_pairing(const GaussianMixture& f, const GaussianMixture& g,
                           double alpha, double a, const GvConfig& cfg);

// Green-function form of the same pairing, exact up to quadrature:
//   pairing(a) = int int 2 (a ^ y) y^alpha d_y u_f d_y u_g dx dy,
// reduced to a single xi-integral with the y-integral in incomplete gammas.
double gv_pairing_exact(const GaussianMixture& f, const GaussianMixture& g,
                        double alpha, double a);

// a -> infinity value of the pairing (weight 2 (a ^ y) -> 2 y).
double gv_limit_exact(const GaussianMixture& f, const GaussianMixture& g,
                      double alpha);

// <I_alpha f, g> on the Fourier side (d = 1), for ratio reporting.
double gv_riesz_pairing(const GaussianMixture& f, const GaussianMixture& g,
                        double alpha);

// The limit constant: pairing(inf) = C_alpha <I_alpha f, g> with
// C_alpha = 2^{-(3 alpha + 2)/2} Gamma(alpha + 2), independent of f, g.
double gv_constant(double alpha);

} // namespace frihls
