#pragma once
// Complex-to-complex FFT wrapper over FFTW3 for GridField spectra. Plans are
// created with FFTW_ESTIMATE and executed single-threaded so that results are
// bit-reproducible across runs and thread settings.

#include <complex>
#include <functional>
#include <vector>

#include "frihls/grid_field.hpp"

namespace frihls {

struct Spectrum {
    int dim = 1;
    int n = 0;
    double L = 0.0;
    std::vector<std::complex<double>> coef; // unnormalized DFT, row-major
};

Spectrum forward_fft(const GridField& g);
GridField inverse_fft(const Spectrum& s); // applies the 1/n^d normalization

// Signed frequency for DFT index k on an axis: xi = (pi/L) * fold(k),
// fold(k) = k for k < n/2, k - n otherwise.
double grid_frequency(int n, double L, int k);

// Multiply coefficient at frequency vector xi by m(xi). Real multipliers
// preserve conjugate symmetry, so the inverse transform stays real.
void apply_multiplier(Spectrum& s, const std::function<double(const Point& xi)>& m);

// Convenience: forward, multiply, inverse.
GridField fourier_multiplier_apply(const GridField& g,
                                   const std::function<double(const Point& xi)>& m);

} // namespace frihls
