#include "frihls/fractional.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "frihls/errors.hpp"
#include "frihls/fft.hpp"
#include "frihls/gammafn.hpp"
#include "frihls/gauss_legendre.hpp"
#include "frihls/kernels.hpp"
#include "frihls/semigroup.hpp"

namespace frihls {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
} // namespace

FractionalParams FractionalParams::make(double alpha, double p, int dim) {
    FractionalParams fp;
    fp.alpha = alpha;
    fp.p = p;
    fp.dim = dim;
    fp.q = 1.0 / (1.0 / p - alpha / dim);
    fp.validate();
    return fp;
}

void FractionalParams::validate() const {
    if (dim < 1 || dim > 3) throw std::domain_error("FractionalParams: dim must be 1..3");
    if (!(alpha > 0.0 && alpha < dim))
        throw std::domain_error("FractionalParams: alpha must lie in (0, d)");
    if (!(p > 1.0 && p < dim / alpha))
        throw std::domain_error("FractionalParams: p must lie in (1, d/alpha)");
    double lhs = 1.0 / q, rhs = 1.0 / p - alpha / dim;
    if (!(q > p) || std::fabs(lhs - rhs) > 1e-14 * std::max(1.0, std::fabs(rhs)))
        throw std::domain_error("FractionalParams: 1/q = 1/p - alpha/d violated");
}

void MellinQuadrature::validate() const {
    if (!(t_min > 0.0) || !(t_max > t_min))
        throw std::domain_error("MellinQuadrature: need 0 < t_min < t_max");
    if (panels < 8 || nodes_per_panel < 8)
        throw std::domain_error("MellinQuadrature: panels >= 8 and nodes_per_panel >= 8");
}

double mellin_tail_bound(double alpha, int dim, double f_l1, double t_max) {
    return std::pow(t_max, 0.5 * (alpha - dim)) * 2.0 / ((dim - alpha) * gamma_fn(0.5 * alpha)) *
           f_l1;
}

MellinQuadrature make_mellin_quadrature(double alpha, int dim, double f_l1, double f_sup,
                                        double tol) {
    MellinQuadrature q;
    double c_tail = 2.0 * f_l1 / ((dim - alpha) * gamma_fn(0.5 * alpha));
    q.t_max = std::pow(0.25 * tol / c_tail, 2.0 / (alpha - dim));
    q.t_max = std::max(q.t_max, 10.0);
    // head: int_0^{t_min} t^{a/2-1} |T_t f| dt <= f_sup t_min^{a/2} (2/a) / Gamma(a/2)
    double c_head = f_sup * 2.0 / (alpha * gamma_fn(0.5 * alpha));
    q.t_min = std::pow(0.25 * tol / c_head, 2.0 / alpha);
    q.t_min = std::min(q.t_min, 1e-6);
    double decades = std::log10(q.t_max / q.t_min);
    q.panels = std::max(16, int(std::ceil(4.0 * decades)));
    q.nodes_per_panel = 16;
    return q;
}

namespace {
std::vector<double> log_breakpoints(double lo, double hi, int panels) {
    std::vector<double> brk(panels + 1);
    double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i <= panels; ++i)
        brk[i] = std::exp(llo + (lhi - llo) * double(i) / double(panels));
    brk.front() = lo;
    brk.back() = hi;
    return brk;
}
} // namespace

double mellin_fractional_integral(const GaussianMixture& f, const FractionalParams& params,
                                  const MellinQuadrature& quad, const Point& x,
                                  double tolerance) {
    f.validate();
    params.validate();
    quad.validate();
    double alpha = params.alpha;
    int d = params.dim;
    if (f.dim != d) throw std::domain_error("mellin_fractional_integral: dim mismatch");
    double l1 = lp_norm(f.abs_amplitudes(), 1.0);
    double tail = mellin_tail_bound(alpha, d, l1, quad.t_max);
    if (tail > tolerance) {
        double c_tail = 2.0 * l1 / ((d - alpha) * gamma_fn(0.5 * alpha));
        double need = std::pow(tolerance / c_tail, 2.0 / (alpha - d));
        char buf[192];
        std::snprintf(buf, sizeof(buf),
                      "mellin_fractional_integral: tail certificate %.3e exceeds tolerance %.3e; "
                      "t_max must be at least %.6e",
                      tail, tolerance, need);
        throw BudgetError(buf);
    }
    auto integrand = [&](double t) {
        return std::pow(t, 0.5 * alpha - 1.0) * f.heat(t).eval(x);
    };
    // split at 1 like the tail-bound derivation; both sides log-spaced
    double split = std::clamp(1.0, quad.t_min, quad.t_max);
    int p_lo = std::max(8, quad.panels / 2), p_hi = std::max(8, quad.panels - p_lo);
    double s = 0.0;
    if (split > quad.t_min)
        s += integrate_panels(integrand, log_breakpoints(quad.t_min, split, p_lo),
                              quad.nodes_per_panel);
    if (quad.t_max > split)
        s += integrate_panels(integrand, log_breakpoints(split, quad.t_max, p_hi),
                              quad.nodes_per_panel);
    return s / gamma_fn(0.5 * alpha);
}

double riesz_convolution_oracle(const GaussianMixture& f, const FractionalParams& params,
                                const Point& x) {
    f.validate();
    params.validate();
    double alpha = params.alpha;
    int d = params.dim;
    if (f.dim != d) throw std::domain_error("riesz_convolution_oracle: dim mismatch");
    double C = riesz_constant(d, alpha);
    // angular profile a(r) = sphere integral of f at radius r; the full
    // convolution is C int_0^inf r^{alpha-1} a(r) dr after absorbing r^{d-1}
    // from the volume element into the kernel power.
    auto profile = [&](double r) { return sphere_integral(f, x, r); };
    double r_max = 1.0;
    for (const auto& t : f.terms) {
        double R = 0.0;
        for (int i = 0; i < d; ++i) {
            double u = x[i] - t.center[i];
            R += u * u;
        }
        r_max = std::max(r_max, std::sqrt(R) + 14.0 * std::sqrt(t.var));
    }
    // near the origin substitute u = r^alpha: the r^{alpha-1} factor becomes
    // the constant Jacobian 1/alpha and the integrand is smooth in u
    auto inner = [&](double u) { return profile(std::pow(u, 1.0 / alpha)) / alpha; };
    QuadResult near = integrate_adaptive(inner, 0.0, 1.0, 1e-10, 1e-300, 16, 8192);
    auto outer_fn = [&](double r) { return std::pow(r, alpha - 1.0) * profile(r); };
    QuadResult far = integrate_adaptive(outer_fn, 1.0, r_max, 1e-10, 1e-300, 16, 8192);
    double coarse = C * (near.value + far.value);
    // refinement certificate: recompute with doubled node order
    QuadResult near2 = integrate_adaptive(inner, 0.0, 1.0, 1e-10, 1e-300, 32, 8192);
    QuadResult far2 = integrate_adaptive(outer_fn, 1.0, r_max, 1e-10, 1e-300, 32, 8192);
    double fine = C * (near2.value + far2.value);
    double scale = std::max({std::fabs(fine), 1e-30});
    if (std::fabs(fine - coarse) > 1e-5 * scale)
        throw AccuracyError("riesz_convolution_oracle: refinement did not stabilize", fine,
                            coarse);
    return fine;
}

GridField fourier_fractional(const GridField& F, double alpha, ZeroModePolicy policy) {
    F.validate();
    if (!(alpha > 0.0)) throw std::domain_error("fourier_fractional: alpha must be > 0");
    require_boundary_decay(F, "fourier_fractional");
    double mean = grid_mean(F);
    double vol = std::pow(2.0 * F.L, F.dim);
    if (policy == ZeroModePolicy::drop_zero_mode) {
        double mx = grid_linf(F);
        if (std::fabs(mean) > 1e-10 * mx) {
            char buf[192];
            std::snprintf(buf, sizeof(buf),
                          "fourier_fractional: zero-mode content |mean| = %.3e exceeds 1e-10 "
                          "max|F| = %.3e; neglected mass %.6e",
                          std::fabs(mean), 1e-10 * mx, mean * vol);
            throw ConditioningError(buf, mean * vol);
        }
    }
    double m0 = 0.0;
    if (policy == ZeroModePolicy::zeta_regularized) {
        m0 = -std::pow(2.0, 0.5 * alpha) * epstein_zeta(F.dim, alpha) *
             std::pow(F.L / kPi, alpha);
    }
    int d = F.dim;
    return fourier_multiplier_apply(F, [alpha, d, m0](const Point& xi) {
        double q = 0.0;
        for (int i = 0; i < d; ++i) q += xi[i] * xi[i];
        if (q == 0.0) return m0;
        return std::pow(0.5 * q, -0.5 * alpha);
    });
}

double poisson_image_offset(const GaussianMixture& f, double L, const Point& x) {
    f.validate();
    if (f.dim != 3) throw std::domain_error("poisson_image_offset: needs dim = 3");
    if (!(L > 0.0)) throw std::domain_error("poisson_image_offset: L must be > 0");
    double second = 0.0;
    for (const auto& t : f.terms) {
        double r2 = 0.0;
        for (int i = 0; i < 3; ++i) {
            double dx = t.center[i] - x[i];
            r2 += dx * dx;
        }
        second += t.amp * std::pow(2.0 * kPi * t.var, 1.5) * (3.0 * t.var + r2);
    }
    double vol = std::pow(2.0 * L, 3);
    return second / (3.0 * vol);
}

double deterministic_projection(const GaussianMixture& f, double alpha, double a,
                                const MellinQuadrature& quad, const Point& x) {
    f.validate();
    quad.validate();
    if (!(a > 0.0)) throw std::domain_error("deterministic_projection: a must be > 0");
    // T_s(Delta T_s f) = Delta T_{2s} f exactly on mixtures
    auto integrand = [&](double s) {
        return -std::pow(s, 0.5 * alpha) * f.heat(2.0 * s).laplacian(x);
    };
    double lo = std::min(quad.t_min, a * 1e-10);
    int panels = std::max(quad.panels, int(std::ceil(4.0 * std::log10(a / lo))));
    return integrate_panels(integrand, log_breakpoints(lo, a, panels), quad.nodes_per_panel);
}

ProjectionLimitRecord projection_limit_constant(const GaussianMixture& f, double alpha,
                                                double a, const MellinQuadrature& quad,
                                                const Point& x) {
    ProjectionLimitRecord rec;
    rec.a = a;
    int d = f.dim;
    FractionalParams params = FractionalParams::make(alpha, 0.5 * (1.0 + d / alpha), d);
    rec.projection_value = deterministic_projection(f, alpha, a, quad, x);
    rec.mellin_value = mellin_fractional_integral(f, params, quad, x);
    rec.raw_ratio = rec.projection_value / rec.mellin_value;
    rec.boundary_term = std::pow(a, 0.5 * alpha) * f.heat(2.0 * a).eval(x);
    rec.tail_term = 0.5 * alpha * f.mass() * std::pow(4.0 * kPi, -0.5 * d) *
                    (2.0 / (d - alpha)) * std::pow(a, 0.5 * (alpha - d));
    rec.corrected_constant =
        (rec.projection_value + rec.boundary_term + rec.tail_term) / rec.mellin_value;
    rec.candidate_half_gamma = std::pow(2.0, -0.5 * alpha) * gamma_fn(0.5 * alpha + 1.0);
    rec.candidate_quarter =
        std::pow(2.0, -0.5 * (alpha + 4.0)) * alpha * gamma_fn(0.5 * alpha);
    return rec;
}

HlsMajorizationRecord hls_majorization(const GaussianMixture& f, const FractionalParams& params,
                                       const Point& x, const std::vector<double>& t_grid) {
    f.validate();
    params.validate();
    double alpha = params.alpha, p = params.p;
    int d = params.dim;
    double fstar = maximal_function(f, x, t_grid);
    if (!(fstar > 0.0)) throw std::domain_error("hls_majorization: f*(x) must be > 0");
    double fp = lp_norm(f, p);
    if (!(fp > 0.0)) throw std::domain_error("hls_majorization: zero function");
    HlsMajorizationRecord rec;
    rec.delta_star = std::pow(fp / fstar, 2.0 * p / d);
    double g = gamma_fn(0.5 * alpha);
    double c1 = 2.0 / (alpha * g);
    rec.J_bound = c1 * fstar * std::pow(rec.delta_star, 0.5 * alpha);
    double c_emp = ultracontractivity_constant(f, p, t_grid);
    double c2 = c_emp * 2.0 * p / ((d - alpha * p) * g);
    rec.K_bound = c2 * std::pow(rec.delta_star, 0.5 * (alpha - d / p)) * fp;
    rec.combined_bound = rec.J_bound + rec.K_bound;
    double l1 = lp_norm(f.abs_amplitudes(), 1.0);
    double sup = linf_norm(f);
    MellinQuadrature quad = make_mellin_quadrature(alpha, d, l1, sup, 1e-7);
    rec.I_value = mellin_fractional_integral(f, params, quad, x, 1e-6);
    return rec;
}

SobolevRecord sobolev_check(const GridField& F, double p) {
    F.validate();
    int d = F.dim;
    if (d < 2) throw std::domain_error("sobolev_check: needs d >= 2");
    if (!(p > 1.0 && p < double(d))) throw std::domain_error("sobolev_check: p must lie in (1, d)");
    require_boundary_decay(F, "sobolev_check");
    SobolevRecord rec;
    double q = d * p / (d - p);
    rec.lhs_norm = grid_lp(F, q);
    GridField half = fourier_multiplier_apply(F, [d](const Point& xi) {
        double s = 0.0;
        for (int i = 0; i < d; ++i) s += xi[i] * xi[i];
        return std::sqrt(0.5 * s);
    });
    rec.rhs_norm = grid_lp(half, p);
    rec.ratio = rec.rhs_norm == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                                    : rec.lhs_norm / rec.rhs_norm;
    return rec;
}

} // namespace frihls
