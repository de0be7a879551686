#include "frihls/paths.hpp"

#include <cmath>
#include <stdexcept>

#include "frihls/errors.hpp"

namespace frihls {

namespace {
// Smallest root r > 1 of (r^M - 1)/(r - 1) = target, i.e. the step ratio that
// makes M geometric steps with smallest step h sum to h*target.
double solve_step_ratio(int M, double target) {
    auto geom_sum = [&](double r) {
        return (std::pow(r, M) - 1.0) / (r - 1.0);
    };
    double lo = 1.0 + 1e-12, hi = 2.0;
    while (geom_sum(hi) < target) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (geom_sum(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}
} // namespace

std::vector<double> make_time_grid(double a, int M) {
    if (!(a > 0.0) || M < 1) throw std::domain_error("make_time_grid: need a > 0, M >= 1");
    std::vector<double> grid(static_cast<std::size_t>(M) + 1);
    constexpr double kLastStepFraction = 1.0 / 4096.0; // a * 2^-12 cap
    if (M >= 4096) {
        for (int k = 0; k <= M; ++k) grid[k] = a * double(k) / M;
    } else {
        double r = solve_step_ratio(M, 1.0 / kLastStepFraction);
        double h_min = a * kLastStepFraction;
        grid[0] = 0.0;
        for (int k = 0; k < M; ++k)
            grid[k + 1] = grid[k] + h_min * std::pow(r, double(M - 1 - k));
        double scale = a / grid[M]; // bisection residue; rescale to sum exactly
        for (int k = 1; k <= M; ++k) grid[k] *= scale;
    }
    grid[0] = 0.0;
    grid[M] = a;
    return grid;
}

PathEnsemble sample_paths(const PathConfig& cfg) {
    if (cfg.d < 1 || cfg.d > 3) throw std::domain_error("sample_paths: d must be 1, 2, or 3");
    if (cfg.N < 1 || cfg.M < 16 || !(cfg.a > 0.0) || !(cfg.L0 > 0.0))
        throw std::domain_error("sample_paths: need N >= 1, M >= 16, a > 0, L0 > 0");
    double work = double(cfg.N) * double(cfg.M) * double(cfg.d);
    if (work > 2147483648.0)
        throw BudgetError("sample_paths: N*M*d exceeds the 2^31 step budget");

    PathEnsemble ens;
    ens.d = cfg.d;
    ens.a = cfg.a;
    ens.M = cfg.M;
    ens.N = cfg.N;
    ens.L0 = cfg.L0;
    ens.master_seed = cfg.master_seed;
    ens.grid = make_time_grid(cfg.a, cfg.M);
    ens.weight = std::pow(2.0 * cfg.L0, cfg.d) / cfg.N;

    // Kronecker lattice: alpha_j = phi^-(j+1) with phi the root of
    // x^(d+1) = x + 1 (R_d sequence); equidistributes on the box.
    double phi = 1.5;
    for (int it = 0; it < 64; ++it) {
        double f = std::pow(phi, cfg.d + 1) - phi - 1.0;
        double fp = (cfg.d + 1) * std::pow(phi, cfg.d) - 1.0;
        phi -= f / fp;
    }
    double alpha[3] = {0.0, 0.0, 0.0};
    for (int j = 0; j < cfg.d; ++j) alpha[j] = std::pow(phi, -(j + 1.0));

    ens.starts.resize(static_cast<std::size_t>(cfg.N));
    for (int i = 0; i < cfg.N; ++i) {
        Point p{0.0, 0.0, 0.0};
        for (int j = 0; j < cfg.d; ++j) {
            double u = 0.5 + (i + 1.0) * alpha[j];
            u -= std::floor(u);
            p[j] = -cfg.L0 + 2.0 * cfg.L0 * u;
        }
        ens.starts[i] = p;
    }
    return ens;
}

} // namespace frihls
