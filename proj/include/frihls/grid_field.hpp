#pragma once
// Uniform box grids on [-L, L)^d, the substrate for spectral operators.
// Serialization is a 32-byte ASCII header ("GRIDFLD1" + 2-char dim + 6-char
// points-per-axis + 16-char half-width "% .9e") followed by the samples as
// little-endian float64 in row-major order (first axis slowest).

#include <cstddef>
#include <string>
#include <vector>

#include "frihls/mixture.hpp"

namespace frihls {

struct GridField {
    int dim = 1;
    int n = 0;      // points per axis, power of two
    double L = 0.0; // half-width
    std::vector<double> data;

    void validate() const;
    std::size_t size() const { return data.size(); }
    double spacing() const { return 2.0 * L / n; }
    double coord(int idx) const { return -L + spacing() * idx; }
    std::size_t flat(int i, int j = 0, int k = 0) const;
};

GridField sample_mixture(const GaussianMixture& f, double L, int n);

// Value at the lattice point x = 0 (index n/2 on every axis).
double grid_center_value(const GridField& g);
double grid_value_at(const GridField& g, const Point& x); // nearest lattice point

double grid_lp(const GridField& g, double p); // (sum |v|^p h^d)^{1/p}
double grid_linf(const GridField& g);
double grid_mean(const GridField& g);
double grid_max_abs_diff(const GridField& a, const GridField& b);

// Max |value| over the boundary shell (any axis index 0 or n-1).
double boundary_max_abs(const GridField& g);

// Throws PreconditionError naming the boundary max when the decay invariant
// boundary_max <= 1e-12 * max|samples| fails.
void require_boundary_decay(const GridField& g, const char* op_name);

void write_grid_field(const GridField& g, const std::string& path);
GridField read_grid_field(const std::string& path);

} // namespace frihls
