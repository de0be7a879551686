#include "frihls/subordinator.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>

#include "frihls/errors.hpp"
#include "frihls/gammafn.hpp"
#include "frihls/gauss_legendre.hpp"

namespace frihls {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

double closed_form_half_density(double t, double s) {
    return t / (2.0 * std::sqrt(kPi)) * std::pow(s, -1.5) * std::exp(-t * t / (4.0 * s));
}

// Large-s series, absolutely convergent for t s^{-beta} < 1:
// gamma(s) = (1/pi) sum_{k>=1} (-1)^{k+1} (t^k/k!) Gamma(beta k + 1) sin(pi beta k) s^{-beta k - 1}
double series_density(double beta, double t, double s) {
    double sum = 0.0;
    double log_t = std::log(t), log_s = std::log(s);
    for (int k = 1; k <= 400; ++k) {
        double mag = std::exp(k * log_t - lgamma_fn(k + 1.0) + lgamma_fn(beta * k + 1.0) -
                              (beta * k + 1.0) * log_s);
        double term = (k % 2 == 1 ? 1.0 : -1.0) * mag * std::sin(kPi * beta * k);
        sum += term;
        if (mag < 1e-17 * std::max(1e-300, std::fabs(sum))) return sum / kPi;
    }
    throw AccuracyError("stable_density: large-s series did not converge", sum / kPi, 0.0);
}

// Fixed-Talbot inversion of e^{-t z^beta} at s, M nodes. The exponents of the
// e^{zs} and F factors are combined before exponentiating, and the sum runs in
// long double: the alternating terms reach e^{2M/5}, so extended precision
// buys back the ~3.5 digits the cancellation costs. The deep lower tail, where
// for beta > 1/2 the integrand grows a hump along the contour, is fenced off
// by the saddle branch in stable_density.
double talbot_density(double beta, double t, double s, int M) {
    using C = std::complex<long double>;
    long double betal = beta, tl = t, sl = s;
    long double r = 2.0L * M / (5.0L * sl);
    constexpr long double pil = 3.141592653589793238462643383279502884L;
    long double sum = 0.5L * std::exp(r * sl - tl * std::pow(r, betal));
    for (int k = 1; k < M; ++k) {
        long double th = k * pil / M;
        long double cot = std::cos(th) / std::sin(th);
        C z(r * th * cot, r * th);
        long double sig = th + (th * cot - 1.0L) * cot;
        C val = std::exp(z * sl - tl * std::pow(z, betal)) * C(1.0L, sig);
        sum += val.real();
    }
    return static_cast<double>(sum * r / M);
}

// Bromwich contour collapsed onto the branch cut (Pollard's form):
//   gamma(s) = (1/pi) int_0^inf e^{-su - t u^b cos(pi b)} sin(t u^b sin(pi b)) du.
// Real integrand, log panels in long double. For beta > 1/2 the envelope has a
// hump of height exp(x |cos pi b|^{1/(1-b)}); the cancellation down to e^{-x}
// costs digits that extended precision absorbs through x = 16, where the
// saddle branch takes over. The u^beta cusp at 0 is handled by grading the
// panels geometrically toward the origin.
double cut_integral_density(double beta, double t, double s, int per_decade, int n) {
    constexpr long double pil = 3.141592653589793238462643383279502884L;
    long double betal = beta, tl = t, sl = s;
    long double cb = std::cos(pil * betal), sb = std::sin(pil * betal);
    long double umax = 1.0L;
    auto expo = [&](long double u) {
        return sl * u - tl * std::max(-cb, 0.0L) * std::pow(u, betal);
    };
    int doublings = 0;
    while (expo(umax) < 90.0L && ++doublings < 2048) umax *= 2.0L;
    long double lmax = std::log(umax), lmin = lmax - 24.0L * 2.302585092994045684L;
    int panels = 24 * per_decade;
    const GlRule& gl = gl_rule(n);
    long double sum = 0.0L;
    for (int p = 0; p < panels; ++p) {
        long double a = lmin + (lmax - lmin) * p / panels;
        long double b = lmin + (lmax - lmin) * (p + 1) / panels;
        long double mid = 0.5L * (a + b), half = 0.5L * (b - a);
        for (int i = 0; i < n; ++i) {
            long double u = std::exp(mid + half * static_cast<long double>(gl.x[i]));
            long double ub = std::pow(u, betal);
            long double g = std::exp(-sl * u - tl * cb * ub) * std::sin(tl * sb * ub);
            sum += half * static_cast<long double>(gl.w[i]) * g * u;
        }
    }
    return static_cast<double>(sum / pil);
}
} // namespace

void StableSpec::validate() const {
    if (!(beta > 0.0 && beta < 1.0)) throw std::domain_error("StableSpec: beta must lie in (0,1)");
    if (!(t > 0.0)) throw std::domain_error("StableSpec: t must be > 0");
    if (method == StableMethod::closed_form_half && beta != 0.5)
        throw std::domain_error("StableSpec: closed_form_half requires beta = 1/2");
}

double stable_density(const StableSpec& spec, double s) {
    spec.validate();
    if (!(s > 0.0)) throw std::domain_error("stable_density: s must be > 0");
    if (spec.method == StableMethod::closed_form_half)
        return closed_form_half_density(spec.t, s);
    double beta = spec.beta, t = spec.t;
    // series where it converges fast, Talbot below the crossover
    if (t * std::pow(s, -beta) < 0.5) return series_density(beta, t, s);
    // Deep left tail: x = -phi(z*) is the saddle exponent of the Bromwich
    // integrand phi(z) = sz - t z^beta. Past x = 16 the fixed-Talbot sum hits
    // its roundoff floor (and for beta > 1/2 the contour grows an exponential
    // hump), while the saddle-point value with its first correction, which
    // vanishes identically at beta = 1/2, is accurate to O(x^{-2}) there. The
    // 1e-8 certificate applies to the central quantile range, which ends near
    // x = 8; between 8 and 16 the values are tail mass known to 1e-4.
    double eta = beta / (1.0 - beta);
    double x = t * (1.0 - beta) * std::pow(t * beta / s, eta);
    if (x > 16.0) {
        if (x > 700.0) return 0.0;
        double zstar = std::pow(t * beta / s, 1.0 / (1.0 - beta));
        double phi2 = beta * x / (zstar * zstar);
        double corr = 1.0 + (2.0 - beta) * (2.0 * beta - 1.0) / (24.0 * beta * x);
        return std::exp(-x) / std::sqrt(2.0 * kPi * phi2) * corr;
    }
    // cos(pi beta) < 0 grows an exponential hump along the Talbot contour
    // whose discretization error, by stable scaling, is a function of x alone
    // and swamps the tail values; the cut integral is immune, so it takes over
    // for beta past 1/2. Either way the value is certified by a second
    // evaluation at lower order.
    double v1, v2;
    if (beta <= 0.55) {
        v1 = talbot_density(beta, t, s, 32);
        v2 = talbot_density(beta, t, s, 24);
    } else {
        v1 = cut_integral_density(beta, t, s, 8, 24);
        v2 = cut_integral_density(beta, t, s, 8, 16);
    }
    if (!std::isfinite(v1) || !std::isfinite(v2))
        throw AccuracyError("stable_density: inversion overflowed", v1, v2);
    double gate = x <= 8.0 ? 1e-8 : 1e-4;
    double scale = std::max(std::fabs(v1), 1e-280);
    if (std::fabs(v1 - v2) > gate * scale)
        throw AccuracyError("stable_density: inversion did not stabilize", v1, v2);
    return std::max(v1, 0.0);
}

double stable_tail(double beta, double t, double S) {
    double x = t * std::pow(S, -beta);
    if (!(x < 1.0)) throw std::domain_error("stable_tail: series needs t S^{-beta} < 1");
    double sum = 0.0;
    for (int k = 1; k <= 400; ++k) {
        double mag = std::exp(k * std::log(t) - lgamma_fn(k + 1.0) + lgamma_fn(beta * k + 1.0) -
                              beta * k * std::log(S)) /
                     (beta * k);
        double term = (k % 2 == 1 ? 1.0 : -1.0) * mag * std::sin(kPi * beta * k);
        sum += term;
        if (mag < 1e-17 * std::max(1e-300, std::fabs(sum))) return sum / kPi;
    }
    throw AccuracyError("stable_tail: series did not converge", sum / kPi, 0.0);
}

double stable_cdf_bound(double beta, double t, double s) {
    double eta = beta / (1.0 - beta);
    return std::exp(-t * (1.0 - beta) * std::pow(t * beta / s, eta));
}

ScalingRecord scaling_check(const StableSpec& spec, double b, double u) {
    spec.validate();
    if (!(b > 0.0 && u > 0.0)) throw std::domain_error("scaling_check: b, u must be > 0");
    ScalingRecord rec;
    rec.lhs = stable_density(spec, std::pow(b, -1.0 / spec.beta) * u);
    StableSpec scaled = spec;
    scaled.t = b * spec.t;
    rec.rhs = std::pow(b, 1.0 / spec.beta) * stable_density(scaled, u);
    rec.rel_err = std::fabs(rec.lhs - rec.rhs) / std::max(std::fabs(rec.rhs), 1e-300);
    return rec;
}

SubordinationNodes make_subordination_nodes(double beta, double t, int d, double abs_tol) {
    if (!(beta > 0.0 && beta < 1.0) || !(t > 0.0))
        throw std::domain_error("make_subordination_nodes: bad beta or t");
    SubordinationNodes nodes;
    nodes.beta = beta;
    nodes.t = t;
    nodes.dim = d;
    StableSpec spec{beta, t,
                    beta == 0.5 ? StableMethod::closed_form_half : StableMethod::talbot_inversion};

    // lower cutoff: int_0^{s_lo} kappa_s(r) gamma ds <= (4 pi)^{-d/2} [
    //   s_lo^{-d/2} F(s_lo) + (d/2)(1/eta) c^{-d/(2 eta)} Gamma(d/(2 eta), c s_lo^{-eta}) ]
    // with F the Chernoff cdf bound e^{-c s^{-eta}}, eta = beta/(1-beta).
    double eta = beta / (1.0 - beta);
    double c = t * (1.0 - beta) * std::pow(t * beta, eta);
    double s_lo = t * beta;
    double lower_bound = 0.0;
    for (int it = 0; it < 400; ++it) {
        double u = c * std::pow(s_lo, -eta);
        double head = std::pow(s_lo, -0.5 * d) * std::exp(-u);
        double tail_ig =
            (0.5 * d / eta) * std::pow(c, -0.5 * d / eta) * upper_gamma(0.5 * d / eta, u);
        lower_bound = std::pow(4.0 * kPi, -0.5 * d) * (head + tail_ig);
        if (lower_bound <= 0.25 * abs_tol) break;
        s_lo *= 0.5;
    }
    if (lower_bound > 0.25 * abs_tol)
        throw BudgetError("make_subordination_nodes: lower tail certificate unreachable");

    // upper cutoff: int_{s_hi}^inf kappa gamma ds <= (4 pi s_hi)^{-d/2} P(S_t > s_hi)
    double s_hi = std::max(4.0 * std::pow(2.0 * t, 1.0 / beta), 16.0 * s_lo);
    double upper_bound = 0.0;
    for (int it = 0; it < 400; ++it) {
        upper_bound = std::pow(4.0 * kPi * s_hi, -0.5 * d) * stable_tail(beta, t, s_hi);
        if (upper_bound <= 0.25 * abs_tol) break;
        s_hi *= 4.0;
    }
    if (upper_bound > 0.25 * abs_tol)
        throw BudgetError("make_subordination_nodes: upper tail certificate unreachable");
    nodes.neglected = lower_bound + upper_bound;

    int panels = std::max(24, int(std::ceil(6.0 * std::log10(s_hi / s_lo))));
    const GlRule& rule = gl_rule(16);
    double llo = std::log(s_lo), lhi = std::log(s_hi);
    nodes.s.reserve(std::size_t(panels) * rule.x.size());
    for (int pnl = 0; pnl < panels; ++pnl) {
        double a = std::exp(llo + (lhi - llo) * pnl / double(panels));
        double b = std::exp(llo + (lhi - llo) * (pnl + 1) / double(panels));
        double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
            double s = mid + hw * rule.x[i];
            nodes.s.push_back(s);
            nodes.w.push_back(hw * rule.w[i]);
        }
    }
    nodes.gamma.resize(nodes.s.size());
    for (std::size_t i = 0; i < nodes.s.size(); ++i)
        nodes.gamma[i] = stable_density(spec, nodes.s[i]);
    return nodes;
}

double subordinate_kernel_on(const SubordinationNodes& nodes, double r) {
    int d = nodes.dim;
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.s.size(); ++i) {
        double s = nodes.s[i];
        double kappa = std::pow(4.0 * kPi * s, -0.5 * d) * std::exp(-r * r / (4.0 * s));
        sum += nodes.w[i] * kappa * nodes.gamma[i];
    }
    return sum;
}

double subordinate_kernel(double beta, double t, double r, int d, double abs_tol) {
    if (r < 0.0) throw std::domain_error("subordinate_kernel: r must be >= 0");
    SubordinationNodes nodes = make_subordination_nodes(beta, t, d, abs_tol);
    return subordinate_kernel_on(nodes, r);
}

double subordinated_apply(const GaussianMixture& f, double beta, double t, const Point& x) {
    f.validate();
    SubordinationNodes nodes = make_subordination_nodes(beta, t, f.dim, 1e-12);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.s.size(); ++i)
        sum += nodes.w[i] * nodes.gamma[i] * f.heat(nodes.s[i], std::sqrt(2.0)).eval(x);
    return sum;
}

std::vector<std::pair<double, double>> make_fit_grid(double beta) {
    static const double rhos[] = {0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 35.0, 50.0};
    std::vector<std::pair<double, double>> grid;
    for (int i = 0; i <= 4; ++i) {
        double t = std::pow(10.0, -2.0 + i);
        double scale = std::pow(t, 0.5 / beta);
        for (double rho : rhos) grid.emplace_back(t, rho * scale);
    }
    return grid;
}

EstimateFitRecord estimate_fit(double beta, int d,
                               const std::vector<std::pair<double, double>>& grid) {
    if (grid.empty()) throw std::domain_error("estimate_fit: empty grid");
    EstimateFitRecord rec;
    rec.C1 = 1e300;
    rec.C2 = 0.0;
    double cached_t = -1.0;
    SubordinationNodes nodes;
    for (const auto& [t, r] : grid) {
        if (t != cached_t) {
            // certify against the smallest q scale on this slice: rho = 50
            double scale_q = std::pow(t, -0.5 * d / beta) * std::pow(51.0, -(d + 2.0 * beta));
            nodes = make_subordination_nodes(beta, t, d, std::max(1e-280, 1e-6 * scale_q));
            cached_t = t;
        }
        FitRow row;
        row.beta = beta;
        row.d = d;
        row.t = t;
        row.r = r;
        row.q_value = subordinate_kernel_on(nodes, r);
        double rho = r * std::pow(t, -0.5 / beta);
        row.comparison_value =
            std::pow(t, -0.5 * d / beta) * std::pow(1.0 + rho, -(d + 2.0 * beta));
        row.ratio = row.q_value / row.comparison_value;
        if (!std::isfinite(row.ratio) || !(row.ratio > 0.0)) {
            char buf[128];
            std::snprintf(buf, sizeof(buf),
                          "estimate_fit: ratio not positive-finite at t=%.3e r=%.3e", t, r);
            throw AccuracyError(buf, row.ratio, 0.0);
        }
        rec.C1 = std::min(rec.C1, row.ratio);
        rec.C2 = std::max(rec.C2, row.ratio);
        rec.rows.push_back(row);
    }
    rec.c_best = std::sqrt(rec.C1 * rec.C2);
    return rec;
}

double fractional_laplacian_constant(int d, double beta, ConstantMode mode) {
    if (!(beta > 0.0 && beta < 1.0))
        throw std::domain_error("fractional_laplacian_constant: beta must lie in (0,1)");
    double g = gamma_fn(0.5 * (d + 2.0 * beta)) / gamma_fn(1.0 - beta);
    if (mode == ConstantMode::paper_K) return std::pow(2.0, beta) * std::pow(kPi, -0.5 * d) * g;
    return std::pow(4.0, beta) * beta * std::pow(kPi, -0.5 * d) * g;
}

double fractional_laplacian_apply(const GaussianMixture& f, double beta, const Point& x,
                                  ConstantMode mode) {
    f.validate();
    if (!(beta > 0.0 && beta < 1.0))
        throw std::domain_error("fractional_laplacian_apply: beta must lie in (0,1)");
    int d = f.dim;
    double omega = d == 1 ? 2.0 : (d == 2 ? 2.0 * kPi : 4.0 * kPi);
    double fx = f.eval(x);
    double lap = f.laplacian(x);

    // inner disc r < eps: angular average of f(x+y) - f(x) - y.grad f is
    // (r^2/(2d)) omega Lap f + O(r^4), integrated against r^{-1-2 beta}
    double eps = 1e-3;
    double inner_analytic =
        omega * lap / (2.0 * d) * std::pow(eps, 2.0 - 2.0 * beta) / (2.0 - 2.0 * beta);

    auto centered = [&](double r) {
        return std::pow(r, -1.0 - 2.0 * beta) * (sphere_integral(f, x, r) - omega * fx);
    };
    QuadResult mid = integrate_adaptive(centered, eps, 1.0, 1e-11, 1e-300, 16, 8192);

    double r_max = 1.0;
    for (const auto& tm : f.terms) {
        double R2 = 0.0;
        for (int i = 0; i < d; ++i) {
            double u = x[i] - tm.center[i];
            R2 += u * u;
        }
        r_max = std::max(r_max, std::sqrt(R2) + 14.0 * std::sqrt(tm.var));
    }
    auto outer_f = [&](double r) {
        return std::pow(r, -1.0 - 2.0 * beta) * sphere_integral(f, x, r);
    };
    QuadResult outer = integrate_adaptive(outer_f, 1.0, r_max, 1e-11, 1e-300, 16, 8192);
    // the -f(x) part of the outer integrand in closed form: -f(x) omega / (2 beta)
    double outer_const = -fx * omega / (2.0 * beta);

    double v1 = inner_analytic + mid.value + outer.value + outer_const;
    QuadResult mid2 = integrate_adaptive(centered, eps, 1.0, 1e-11, 1e-300, 32, 8192);
    QuadResult outer2 = integrate_adaptive(outer_f, 1.0, r_max, 1e-11, 1e-300, 32, 8192);
    double v2 = inner_analytic + mid2.value + outer2.value + outer_const;
    double scale = std::max(std::fabs(v2), 1e-30);
    if (std::fabs(v2 - v1) > 1e-6 * scale)
        throw AccuracyError("fractional_laplacian_apply: refinement did not stabilize", v2, v1);
    return fractional_laplacian_constant(d, beta, mode) * v2;
}

} // namespace frihls
