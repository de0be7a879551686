#pragma once
// Hardy-Littlewood-Sobolev desk checks: the ratio ||I_alpha f||_q / ||f||_p at
// the critical exponent 1/q = 1/p - alpha/d, dilation invariance of that
// ratio, and sweeps over seeded mixture families tracking the empirical best
// constant. Norms of I_alpha f come from adaptive radial quadrature with an
// O(|x|^{alpha-d}) tail completion whose decay exponent is measured on the
// outermost shells before the completion is trusted.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "frihls/fractional.hpp"
#include "frihls/mixture.hpp"

namespace frihls {

enum class HlsMethod { mellin, riesz, fourier };

const char* hls_method_name(HlsMethod m);

struct QNormRecord {
    double value = 0.0;
    double tail_fraction = 0.0; // share of ||.||_q^q supplied by the tail model
    double tail_exponent = 0.0; // measured far-field decay exponent of I_alpha f
};

// ||I_alpha f||_q for any q with (d - alpha) q > d; the critical-q case is
// hls_ratio, off-critical q feeds the wrong-exponent dilation check.
// mellin and riesz evaluate pointwise on an adaptive radial grid (dim >= 2
// needs a common center so I_alpha f is radial); fourier sums its own box
// grid inside the half-width sphere and completes with the exact far-field
// amplitude |mass(f)| riesz_constant(d, alpha).
QNormRecord fractional_q_norm(const GaussianMixture& f, const FractionalParams& params,
                              double q, HlsMethod method, double rel_tol = 1e-4);

struct HlsRatioRecord {
    double norm_f_p = 0.0;
    double norm_If_q = 0.0;
    double ratio = 0.0;
    double tail_fraction = 0.0;
    double tail_exponent = 0.0;
};

HlsRatioRecord hls_ratio(const GaussianMixture& f, const FractionalParams& params,
                         HlsMethod method = HlsMethod::mellin);

struct DilationRecord {
    std::vector<double> lambdas;
    std::vector<double> ratios;       // critical-exponent ratio per lambda
    double max_rel_spread = 0.0;      // (max - min) / min over ratios
    double qprime = 0.0;              // 0 when the wrong-exponent leg is skipped
    std::vector<double> wrong_ratios; // ||I_alpha f_lambda||_{q'} / ||f_lambda||_p
    double wrong_max_rel_err = 0.0;   // vs the lambda^{d (1/q - 1/q')} drift law
};

// f_lambda(x) = f(lambda x). At the critical q the ratio is scale-free, so
// the measured spread is pure quadrature error; at a wrong exponent q' > 0 it
// drifts by exactly lambda^{d (1/q - 1/q')} relative to lambda = 1.
DilationRecord dilation_invariance_check(const GaussianMixture& f,
                                         const FractionalParams& params,
                                         const std::vector<double>& lambdas,
                                         double qprime = 0.0);

struct HlsEntry {
    int d = 1;
    double alpha = 0.0;
    double p = 0.0;
    double q = 0.0;
    std::string f_id;
    std::string method;
    double norm_f_p = 0.0;
    double norm_If_q = 0.0;
    double ratio = 0.0;
    bool ok = false;
    std::string error; // failure reason when !ok
};

struct HlsCellConstants {
    int d = 1;
    double alpha = 0.0;
    double p = 0.0;
    double c_empirical = 0.0; // max ratio over the cell's successful entries
    double doob_bound = 0.0;  // (p/(p-1))^p
    double p_star = 0.0;      // max(p, p/(p-1))
};

// Constants measured by other modules, carried alongside the sweep so one
// report holds the whole inequality chain.
struct HlsSuppliedConstants {
    double maximal_d_p = 0.0;                        // 0 = not supplied
    std::vector<std::pair<double, double>> bg_ratio; // (q, martingale-transform ratio)
};

struct HlsReport {
    std::vector<HlsEntry> entries;
    std::vector<HlsCellConstants> cells;
    HlsSuppliedConstants supplied;
};

struct HlsSweepConfig {
    std::vector<int> dims{1};
    std::vector<double> alphas{0.5};
    std::vector<double> ps{1.5};
    bool include_canonical = true; // prepend the standard bump to the family
    int family_size = 4;           // seeded members after the canonical bump
    std::uint64_t family_seed = 1;
    std::vector<HlsMethod> methods{HlsMethod::mellin};
    int threads = 1;
    double rel_tol = 1e-4;

    void validate() const;
};

// Cartesian sweep over (d, alpha, p) cells and the seeded family. Entries
// land in lexicographic (d, alpha, p, f_id) order with methods in config
// order, independent of the thread count. A failing entry is recorded with
// ok = false and the sweep continues. Growing family_size keeps existing
// members (the seeded family is a prefix sequence), so empirical constants
// are comparable across family sizes.
HlsReport hls_sweep(const HlsSweepConfig& cfg, const HlsSuppliedConstants& supplied = {});

} // namespace frihls
