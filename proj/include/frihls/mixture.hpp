#pragma once
// Gaussian mixtures: the closed-form test-function family. The heat semigroup,
// gradients, Laplacians, and pair integrals are all exact on this class, which
// is what makes every Monte Carlo statistic in the lab testable against a
// sharp deterministic number.

#include <cstdint>
#include <vector>

#include "frihls/kernels.hpp"

namespace frihls {

struct GaussTerm {
    double amp = 1.0;
    Point center{0.0, 0.0, 0.0};
    double var = 1.0; // width^2; the term is amp * exp(-|x-c|^2 / (2 var))
};

struct GaussianMixture {
    int dim = 1;
    std::vector<GaussTerm> terms;

    void validate() const; // throws std::domain_error on bad dim/width

    double eval(const Point& x) const;
    Point grad(const Point& x) const;
    double laplacian(const Point& x) const;

    // Heat evolution: (A, c, v) -> (A (v/(v+sigma^2 t))^{d/2}, c, v+sigma^2 t).
    GaussianMixture heat(double t, double sigma = 1.0) const;

    GaussianMixture abs_amplitudes() const;
    GaussianMixture dilated(double lambda) const;  // x -> f(lambda x)
    GaussianMixture scaled(double k) const;

    double mass() const; // integral over R^d (signed)
    bool common_center(Point& c) const;
    double max_spread() const; // max over terms of |center| + 10 sqrt(var)
};

GaussianMixture mix_sum(const GaussianMixture& a, const GaussianMixture& b);

// Exact pair integrals.
double l2_inner(const GaussianMixture& f, const GaussianMixture& g);
double grad_l2_inner(const GaussianMixture& f, const GaussianMixture& g);

// L^p norm, p in [1, inf), by certified quadrature: adaptive 1-D for dim 1,
// radial reduction for common-center mixtures, lattice sum otherwise
// (spacing locked to the narrowest bump, box to the extreme tails).
double lp_norm(const GaussianMixture& f, double p);

// Multi-start ascent from term centers plus a lattice scan.
double linf_norm(const GaussianMixture& f);

// Surface integral of f over the sphere |y - x| = r (unnormalized measure;
// d = 1 is the two-point sum). Exact per term: I_0 in d = 2, sinh in d = 3,
// both in exp-scaled cancellation-free form.
double sphere_integral(const GaussianMixture& f, const Point& x, double r);

// Standard single bump exp(-|x|^2/2).
GaussianMixture standard_gaussian(int dim);

// Deterministic seeded family member: 1-3 signed bumps, centers within
// |c| <= 2.5, widths^2 in [0.5, 2]. Same (seed, index, dim) -> same mixture.
GaussianMixture seeded_mixture(std::uint64_t seed, int index, int dim);

} // namespace frihls
