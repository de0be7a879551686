#include "frihls/gundy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "frihls/errors.hpp"
#include "frihls/gammafn.hpp"
#include "frihls/gauss_legendre.hpp"
#include "frihls/parallel.hpp"

namespace frihls {

namespace {
constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kSqrtPi = 1.77245385090551602729816748334;
} // namespace

GaussianMixture correlation_mixture(const GaussianMixture& f, const GaussianMixture& g) {
    f.validate();
    g.validate();
    if (f.dim != g.dim) throw std::domain_error("correlation_mixture: dim mismatch");
    GaussianMixture G;
    G.dim = f.dim;
    for (const auto& tf : f.terms)
        for (const auto& tg : g.terms) {
            GaussTerm t;
            double V = tf.var + tg.var;
            t.var = V;
            t.amp = tf.amp * tg.amp *
                    std::pow(2.0 * kPi * tf.var * tg.var / V, 0.5 * f.dim);
            for (int j = 0; j < 3; ++j) t.center[j] = tf.center[j] - tg.center[j];
            G.terms.push_back(t);
        }
    return G;
}

PoissonDerivative::PoissonDerivative(const GaussianMixture& g, int nodes) {
    g.validate();
    if (g.dim != 1) throw std::domain_error("PoissonDerivative: d = 1 only");
    if (nodes < 64) throw std::domain_error("PoissonDerivative: nodes < 64");
    for (const auto& t : g.terms) {
        amp_.push_back(t.amp);
        var_.push_back(t.var);
        cen_.push_back(t.center[0]);
    }
    // Log grid wide enough that 2 y^2 s spans the heat scale for y down to the
    // simulator kill floor; both endpoint weights are ~0, so plain trapezoid
    // converges spectrally.
    double lo = std::log(1e-6), hi = std::log(1e14);
    double dls = (hi - lo) / (nodes - 1);
    sig_.resize(nodes);
    wt_.resize(nodes);
    for (int i = 0; i < nodes; ++i) {
        double s = std::exp(lo + i * dls);
        sig_[i] = s;
        wt_[i] = std::pow(s, -1.5) * std::exp(-1.0 / (4.0 * s)) / (2.0 * kSqrtPi) * s * s * dls;
    }
}

double PoissonDerivative::operator()(double w, double y) const {
    if (!(y > 0.0)) throw std::domain_error("PoissonDerivative: y must be positive");
    double acc = 0.0;
    double y2 = 2.0 * y * y;
    for (std::size_t j = 0; j < amp_.size(); ++j) {
        double dw = w - cen_[j], v = var_[j], A = amp_[j];
        double dw2 = dw * dw;
        double s = 0.0;
        for (std::size_t i = 0; i < sig_.size(); ++i) {
            double vt = v + y2 * sig_[i];
            double lap = (dw2 / (vt * vt) - 1.0 / vt) * std::exp(-dw2 / (2.0 * vt)) /
                         std::sqrt(vt);
            s += wt_[i] * lap;
        }
        acc += A * std::sqrt(v) * s;
    }
    return 2.0 * y * acc;
}

double PoissonDerivative::value(double w, double y) const {
    if (!(y > 0.0)) throw std::domain_error("PoissonDerivative: y must be positive");
    double acc = 0.0;
    double y2 = 2.0 * y * y;
    for (std::size_t j = 0; j < amp_.size(); ++j) {
        double dw = w - cen_[j], v = var_[j], A = amp_[j];
        double dw2 = dw * dw;
        double s = 0.0;
        for (std::size_t i = 0; i < sig_.size(); ++i) {
            double vt = v + y2 * sig_[i];
            s += wt_[i] / sig_[i] * std::exp(-dw2 / (2.0 * vt)) / std::sqrt(vt);
        }
        acc += A * std::sqrt(v) * s;
    }
    return acc;
}

double gv_constant(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("gv_constant: alpha in (0, 1)");
    return std::pow(2.0, -0.5 * (3.0 * alpha + 2.0)) * gamma_fn(alpha + 2.0);
}

namespace {

// Panels for int_0^xi_max with an integrable power singularity at 0 and a
// cos(xi dc) oscillation: geometric grading toward 0, then caps on panel
// length so GL32 resolves the oscillation.
std::vector<double> xi_breakpoints(double xi_max, double dc) {
    std::vector<double> brk = graded_breakpoints(0.0, std::min(1.0, xi_max), 64, 0.5);
    double hmax = kPi / (2.0 * (1.0 + std::fabs(dc)));
    if (xi_max > brk.back()) {
        double x = brk.back();
        int m = static_cast<int>(std::ceil((xi_max - x) / hmax));
        for (int i = 1; i <= m; ++i) brk.push_back(x + (xi_max - x) * i / m);
    }
    std::vector<double> out;
    out.push_back(brk[0]);
    for (std::size_t i = 1; i < brk.size(); ++i) {
        double h = brk[i] - brk[i - 1];
        int cuts = std::max(1, static_cast<int>(std::ceil(h / hmax)));
        for (int c = 1; c <= cuts; ++c) out.push_back(brk[i - 1] + h * c / cuts);
    }
    return out;
}

// Sum over component pairs of A_j A_k sqrt(v_j v_k) *
//   2 int_0^inf e^{-V xi^2 / 2} cos(xi dc) kern(xi) dxi.
template <typename Kern>
double pair_fourier_sum(const GaussianMixture& f, const GaussianMixture& g,
                        const Kern& kern) {
    f.validate();
    g.validate();
    if (f.dim != 1 || g.dim != 1) throw std::domain_error("gv pairing: d = 1 only");
    double total = 0.0;
    for (const auto& tf : f.terms)
        for (const auto& tg : g.terms) {
            double V = tf.var + tg.var;
            double dc = tf.center[0] - tg.center[0];
            double xi_max = std::sqrt(240.0 / V);
            auto brk = xi_breakpoints(xi_max, dc);
            auto integrand = [&](double xi) {
                return std::exp(-0.5 * V * xi * xi) * std::cos(xi * dc) * kern(xi);
            };
            double I = integrate_panels(integrand, brk, 32);
            total += tf.amp * tg.amp * std::sqrt(tf.var * tg.var) * 2.0 * I;
        }
    return total;
}

} // namespace

double gv_riesz_pairing(const GaussianMixture& f, const GaussianMixture& g,
                        double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("gv_riesz_pairing: alpha in (0, 1)");
    double c = std::pow(2.0, 0.5 * alpha);
    return pair_fourier_sum(f, g, [&](double xi) { return c * std::pow(xi, -alpha); });
}

double gv_limit_exact(const GaussianMixture& f, const GaussianMixture& g,
                      double alpha) {
    // Exact per-component algebra: the infinite-a weight 2y^{1+alpha} turns the
    // y-integral into Gamma(alpha+2) (2 xi)^{-alpha-2}, a pure multiple of the
    // Riesz symbol; the ratio is gv_constant for every component pair.
    return gv_constant(alpha) * gv_riesz_pairing(f, g, alpha);
}

double gv_pairing_exact(const GaussianMixture& f, const GaussianMixture& g,
                        double alpha, double a) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("gv_pairing_exact: alpha in (0, 1)");
    if (!(a > 0.0)) throw std::domain_error("gv_pairing_exact: a must be positive");
    double g2 = gamma_fn(2.0 + alpha);
    auto kern = [&](double xi) {
        double lam = 2.0 * xi;
        double x = lam * a;
        // int_0^inf 2 (a ^ y) y^alpha e^{-lam y} dy, incomplete-gamma split at a
        double lower = g2 - upper_gamma(2.0 + alpha, x);
        double q = 2.0 * lower * std::pow(lam, -(2.0 + alpha)) +
                   2.0 * a * upper_gamma(1.0 + alpha, x) * std::pow(lam, -(1.0 + alpha));
        return xi * xi * q;
    };
    return pair_fourier_sum(f, g, kern);
}

GvPairingRecord gv_pairing(const GaussianMixture& f, const GaussianMixture& g,
                           double alpha, double a, const GvConfig& cfg) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("gv_pairing: alpha in (0, 1)");
    if (!(a > 0.0)) throw std::domain_error("gv_pairing: a must be positive");
    if (cfg.paths < 2) throw std::domain_error("gv_pairing: paths < 2");
    if (!(cfg.step_scale > 0.0 && cfg.step_scale <= 0.5))
        throw std::domain_error("gv_pairing: step_scale out of range");

    GaussianMixture G = correlation_mixture(f, g);
    PoissonDerivative dyU(G, cfg.sigma_nodes);

    const int N = cfg.paths;
    std::vector<double> raw(N, 0.0), lim(N, 0.0);
    std::vector<long> nsteps(N, 0);
    std::vector<char> trunc(N, 0);
    const std::uint64_t kGvTag = 1ULL << 63;

    parallel_for(cfg.threads, N, [&](std::int64_t i) {
        std::vector<double> ys, bs, dys;
        ys.reserve(4096);
        bs.reserve(4096);
        dys.reserve(4096);
        double y = a, b = 0.0, btau = 0.0;
        bool done = false;
        long k = 0;
        while (k < cfg.max_steps) {
            double dt = std::max(cfg.step_scale * y * y, cfg.dt_floor);
            double sdt = std::sqrt(dt);
            std::uint64_t base = kGvTag | (static_cast<std::uint64_t>(k) << 2);
            double z1, z2;
            normal_pair(static_cast<std::uint64_t>(i), base, cfg.master_seed, z1, z2);
            double u = u01(philox2x64(static_cast<std::uint64_t>(i), base | 1,
                                      cfg.master_seed).first);
            double ynew = y + sdt * z1;
            double bnew = b + sdt * z2;
            // Brownian-bridge absorption: the step straddles 0 with
            // probability exp(-2 y ynew / dt) even when ynew stays positive.
            bool hit = ynew <= 0.0 || std::exp(-2.0 * y * std::max(ynew, 0.0) / dt) > u;
            ys.push_back(y);
            bs.push_back(b);
            dys.push_back(hit ? -y : ynew - y);
            ++k;
            if (hit) {
                double th = ynew < 0.0 ? y / (y - ynew) : 0.5;
                btau = b + (bnew - b) * th;
                done = true;
                break;
            }
            y = ynew;
            b = bnew;
            if (y < cfg.kill_floor) {
                btau = b;
                done = true;
                break;
            }
        }
        nsteps[i] = k;
        if (!done) {
            trunc[i] = 1;
            return;
        }
        double S = 0.0, SL = 0.0;
        for (std::size_t j = 0; j < ys.size(); ++j) {
            double term = std::pow(ys[j], alpha) * dyU(btau - bs[j], ys[j]) * dys[j];
            S += term;
            SL += term * std::max(ys[j] / a, 1.0);
        }
        raw[i] = S;
        lim[i] = SL;
    });

    GvPairingRecord rec;
    rec.paths = N;
    rec.truncated_paths = 0;
    for (int i = 0; i < N; ++i) rec.truncated_paths += trunc[i];
    long kept = N - rec.truncated_paths;
    if (rec.truncated_paths > cfg.max_trunc_fraction * N)
        throw BudgetError("gv_pairing: " + std::to_string(rec.truncated_paths) + " of " +
                          std::to_string(N) + " paths exceeded the step budget");
    if (kept < 2) throw BudgetError("gv_pairing: fewer than 2 paths absorbed");

    auto kept_mean_se = [&](const std::vector<double>& v, double& mean, double& se) {
        double s = parallel_sum(1, N, [&](std::int64_t i) { return trunc[i] ? 0.0 : v[i]; });
        mean = s / kept;
        double q = parallel_sum(1, N, [&](std::int64_t i) {
            if (trunc[i]) return 0.0;
            double d = v[i] - mean;
            return d * d;
        });
        se = std::sqrt(q / (kept - 1.0) / kept);
    };
    kept_mean_se(raw, rec.pairing_estimate, rec.std_error);
    kept_mean_se(lim, rec.limit_estimate, rec.limit_std_error);
    rec.mean_steps =
        parallel_sum(1, N, [&](std::int64_t i) { return double(nsteps[i]); }) / N;
    return rec;
}

} // namespace frihls
