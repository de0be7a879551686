#include "frihls/semigroup.hpp"

#include <cmath>
#include <stdexcept>

#include "frihls/fft.hpp"

namespace frihls {

GaussianMixture apply_heat(const GaussianMixture& f, double t, double sigma) {
    f.validate();
    if (!(sigma > 0.0)) throw std::domain_error("apply_heat: sigma must be > 0");
    return f.heat(t, sigma);
}

GridField apply_heat_grid(const GridField& F, double t, double sigma) {
    F.validate();
    if (t < 0.0) throw std::domain_error("apply_heat_grid: t must be >= 0");
    if (!(sigma > 0.0)) throw std::domain_error("apply_heat_grid: sigma must be > 0");
    require_boundary_decay(F, "apply_heat_grid");
    if (t == 0.0) return F;
    double c = 0.5 * t * sigma * sigma;
    int d = F.dim;
    return fourier_multiplier_apply(F, [c, d](const Point& xi) {
        double q = 0.0;
        for (int i = 0; i < d; ++i) q += xi[i] * xi[i];
        return std::exp(-c * q);
    });
}

std::vector<double> log_t_grid(double lo, double hi, int m) {
    if (!(lo > 0.0) || !(hi > lo) || m < 2) throw std::domain_error("log_t_grid: bad range");
    std::vector<double> t(m);
    double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < m; ++i) t[i] = std::exp(llo + (lhi - llo) * double(i) / double(m - 1));
    return t;
}

double maximal_function(const GaussianMixture& f, const Point& x,
                        const std::vector<double>& t_grid, double sigma) {
    f.validate();
    if (t_grid.empty()) throw std::domain_error("maximal_function: empty t grid");
    double best = std::fabs(f.eval(x)); // t -> 0 endpoint
    for (double t : t_grid) best = std::max(best, std::fabs(f.heat(t, sigma).eval(x)));
    return best;
}

double ultracontractivity_constant(const GaussianMixture& f, double p,
                                   const std::vector<double>& t_grid, double sigma) {
    f.validate();
    double fp = lp_norm(f, p);
    if (!(fp > 0.0)) throw std::domain_error("ultracontractivity_constant: zero function");
    double best = 0.0;
    for (double t : t_grid) {
        double v = std::pow(t, 0.5 * f.dim / p) * linf_norm(f.heat(t, sigma)) / fp;
        best = std::max(best, v);
    }
    return best;
}

} // namespace frihls
