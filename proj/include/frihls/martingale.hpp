#pragma once
// Martingale transforms of space-time Brownian motion: left-point Ito sums
// against closed-form heat gradients, quadratic variations, the
// Nadaraya-Watson conditional projection, and the inequality batteries
// (differential subordination, Burkholder-Gundy, Doob, the delta-split
// lemma), all weighted by the Lebesgue start-box emulation.

#include <array>
#include <vector>

#include "frihls/mixture.hpp"
#include "frihls/paths.hpp"

namespace frihls {

constexpr int kCheckpoints = 9;

struct TransformRecord {
    double M_a = 0.0;          // sum_k grad(T_{a-s_k} f)(B_k) . dB_k
    double M_alpha_a = 0.0;    // same with factor (a-s_k)^{alpha/2}
    double qv = 0.0;           // sum_k |grad(T_{a-s_k} f)(B_k)|^2 ds_k
    double qv_alpha = 0.0;     // same with factor (a-s_k)^alpha
    double sup_Y = 0.0;        // max_k |T_{2(a-s_k)} f(B_k)|, k = 0..M
    double sup_Y_abs = 0.0;    // same against the absolute-amplitude majorant
    Point terminal{};          // B_a
    bool diffsub_ok = true;    // qv_alpha(s_k) <= a^alpha qv(s_k), every k
    double diffsub_slack = 0.0; // min_k of that margin
};

struct TransformEnsemble {
    int d = 1;
    double a = 0.0;
    double alpha = 0.0;
    double weight = 0.0; // per-path Lebesgue weight
    double grid_ratio = 1.0; // max adjacent step ratio of the time grid
    std::array<double, kCheckpoints> checkpoint_times{};
    std::vector<TransformRecord> records;
    // Checkpoint storage, path-major: Z = T_{2a - t_j} f(B_{t_j}) is the
    // drift-free martingale sharing Y's initial value (the paper-corrected
    // identity), pos its argument.
    std::vector<double> Z;
    std::vector<Point> pos;

    double z_at(std::size_t path, int j) const { return Z[path * kCheckpoints + j]; }
    const Point& pos_at(std::size_t path, int j) const { return pos[path * kCheckpoints + j]; }
};

// One pass over the ensemble; per-path work is pure in (seed, path), so any
// thread count produces identical records.
TransformEnsemble martingale_transform(const PathEnsemble& ens, const GaussianMixture& f,
                                       double alpha, int threads = 1);

// Closed-form Ito isometry target: int_0^a u^alpha |grad T_u f|_{L2}^2 du.
double ito_isometry_quadrature(const GaussianMixture& f, double a, double alpha);

struct ProjectionEstimate {
    std::vector<double> value;
    std::vector<double> std_error;
    std::vector<double> ess; // effective sample size per point
};

// Nadaraya-Watson estimate of E[M^{a,alpha}_a | B_a = x] on x_grid with
// Gaussian weights of the given bandwidth. Needs >= 10^4 records; effective
// sample size < 100 at any point -> CoverageError naming the starved points.
ProjectionEstimate conditional_projection(const TransformEnsemble& recs,
                                          const std::vector<Point>& x_grid, double bandwidth);

// Reference bandwidth 1.06 * spread * N^{-1/5} from the terminal cloud.
double nw_bandwidth(const TransformEnsemble& recs);

struct DiffSubReport {
    double fraction_satisfied = 0.0;
    double worst_margin = 0.0;
};
DiffSubReport differential_subordination_check(const TransformEnsemble& recs);

struct BgRatio {
    double lhs = 0.0;   // (sum w |M^{a,alpha}_a|^q)^{1/q}
    double rhs = 0.0;   // (sum w qv_alpha^{q/2})^{1/q}
    double ratio = 0.0; // NaN sentinel when rhs = 0
};
BgRatio burkholder_gundy_ratio(const TransformEnsemble& recs, double q);

struct DoobReport {
    double lhs = 0.0;  // sum w sup_Y^p
    double lhs_se = 0.0;
    double rhs = 0.0;  // ||f||_p^p by quadrature
    double bound = 0.0; // (p/(p-1))^p
    bool satisfied = false;
    double terminal_moment = 0.0; // sum w |f(B_a)|^p, should match rhs
    double terminal_se = 0.0;
};
DoobReport doob_check(const TransformEnsemble& recs, const GaussianMixture& f, double p);

struct NewdeltaReport {
    double fraction_satisfied = 0.0;
    double c1 = 0.0, c2 = 0.0;
    double worst_ratio = 0.0; // max over paths of qv_alpha / rhs
};
// Pathwise qv_alpha(a) <= C1 sup_Y_abs^2 delta^alpha
//                       + C2 ||f||_p^2 delta^{alpha - d/p},
// with C1, C2 assembled from the gradient bound |grad T_u f|^2 <=
// 2^d u^{-1} (T_{2u}|f|)^2, right-endpoint geometric-grid sums, and the
// measured ultracontractivity constant; 2^4 of headroom absorbs the endpoint
// and grid-granularity effects.
NewdeltaReport lemma_newdelta_check(const TransformEnsemble& recs, const GaussianMixture& f,
                                    double p, double alpha, double delta,
                                    double ultra_constant);

struct MartingaleCheck {
    double worst_z = 0.0; // max |mean increment| / se over bins and intervals
    int bins_tested = 0;
    double threshold = 3.0; // family-wise bound for bins_tested comparisons
    bool ok = false;        // worst_z <= threshold
};
// Conditional-increment test of the checkpoint martingale Z: bin paths by the
// first coordinate of pos at t_j, demand zero mean of Z_{t_{j+1}} - Z_{t_j}
// in every bin within 3 standard errors.
MartingaleCheck martingale_property_check(const TransformEnsemble& recs, int bins);

} // namespace frihls
