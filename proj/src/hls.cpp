#include "frihls/hls.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "frihls/errors.hpp"
#include "frihls/gammafn.hpp"
#include "frihls/gauss_legendre.hpp"
#include "frihls/grid_field.hpp"
#include "frihls/kernels.hpp"

namespace frihls {

const char* hls_method_name(HlsMethod m) {
    switch (m) {
    case HlsMethod::mellin: return "mellin";
    case HlsMethod::riesz: return "riesz";
    case HlsMethod::fourier: return "fourier";
    }
    return "?";
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

// Pointwise I_alpha f with the Mellin quadrature frozen once: heat mixtures
// and weights are cached per node, so a norm costing thousands of evaluations
// does not rebuild the rule each time. Panel layout matches
// mellin_fractional_integral (split at t = 1, log-spaced, fixed GL order).
class MellinEvaluator {
public:
    MellinEvaluator(const GaussianMixture& f, double alpha, int dim) {
        double l1 = 0.0, mass_abs_sup = 0.0;
        GaussianMixture fabs = f.abs_amplitudes();
        for (const auto& t : fabs.terms) {
            l1 += t.amp * std::pow(2.0 * kPi * t.var, 0.5 * dim);
            mass_abs_sup += t.amp;
        }
        double tol = 1e-7 * std::max(1.0, mass_abs_sup);
        MellinQuadrature quad = make_mellin_quadrature(alpha, dim, l1, mass_abs_sup, tol);
        double split = std::clamp(1.0, quad.t_min, quad.t_max);
        int p_lo = std::max(8, quad.panels / 2);
        int p_hi = std::max(8, quad.panels - p_lo);
        std::vector<double> brk;
        if (split > quad.t_min) {
            auto b = log_breakpoints(quad.t_min, split, p_lo);
            brk.insert(brk.end(), b.begin(), b.end());
        }
        if (quad.t_max > split) {
            auto b = log_breakpoints(split, quad.t_max, p_hi);
            if (!brk.empty()) b.erase(b.begin());
            brk.insert(brk.end(), b.begin(), b.end());
        }
        const GlRule& rule = gl_rule(quad.nodes_per_panel);
        double inv_gamma = 1.0 / gamma_fn(0.5 * alpha);
        for (std::size_t k = 0; k + 1 < brk.size(); ++k) {
            double mid = 0.5 * (brk[k] + brk[k + 1]);
            double half = 0.5 * (brk[k + 1] - brk[k]);
            for (std::size_t j = 0; j < rule.x.size(); ++j) {
                double t = mid + half * rule.x[j];
                heats_.push_back(f.heat(t));
                weights_.push_back(half * rule.w[j] * std::pow(t, 0.5 * alpha - 1.0) *
                                   inv_gamma);
            }
        }
    }

    double operator()(const Point& x) const {
        double s = 0.0;
        for (std::size_t j = 0; j < heats_.size(); ++j)
            s += weights_[j] * heats_[j].eval(x);
        return s;
    }

private:
    static constexpr double kPi = 3.14159265358979323846;
    std::vector<GaussianMixture> heats_;
    std::vector<double> weights_;
};

constexpr double kPi = 3.14159265358979323846;

double unit_sphere_area(int d) {
    // omega_{d-1}; the d = 1 radial path integrates both half-lines itself.
    if (d == 1) return 2.0;
    if (d == 2) return 2.0 * kPi;
    return 4.0 * kPi;
}

double signed_mass_scale(const GaussianMixture& f) {
    double s = 0.0;
    for (const auto& t : f.terms)
        s += std::fabs(t.amp) * std::pow(2.0 * kPi * t.var, 0.5 * double(f.dim));
    return s;
}

using PointEval = std::function<double(const Point&)>;

// Largest |I| near radius r, probed slightly inward so an isolated zero of a
// signed integrand cannot fake a vanishing far field.
double probe_amplitude(const PointEval& eval, const Point& c0, int dim, double r) {
    static const double scales[3] = {1.0, 0.94, 0.88};
    double best = 0.0;
    for (double s : scales) {
        Point y = c0;
        y[0] = c0[0] + s * r;
        best = std::max(best, std::fabs(eval(y)));
        if (dim == 1) {
            y[0] = c0[0] - s * r;
            best = std::max(best, std::fabs(eval(y)));
        }
    }
    return best;
}

// Tail of int r^{d-1} |I|^q dr past R under |I(r)| = amp (r/R)^{s}, including
// the angular factor.
double tail_model(int dim, double amp, double R, double s, double q) {
    double expo = s * q + double(dim);
    return unit_sphere_area(dim) * std::pow(amp, q) * std::pow(R, double(dim)) / (-expo);
}

QNormRecord qnorm_radial(const PointEval& eval, const GaussianMixture& f, double alpha,
                         double q, double rel_tol) {
    int dim = f.dim;
    Point c0{0.0, 0.0, 0.0};
    if (dim >= 2 && !f.common_center(c0))
        throw PreconditionError(
            "fractional_q_norm: dim >= 2 radial quadrature needs a common center "
            "(the fourier method handles scattered centers)");

    auto g = [&](double r) {
        Point y = c0;
        y[0] = c0[0] + r;
        double v = std::pow(std::fabs(eval(y)), q);
        if (dim == 1) {
            y[0] = c0[0] - r;
            v += std::pow(std::fabs(eval(y)), q);
        } else {
            v *= unit_sphere_area(dim) * std::pow(r, double(dim) - 1.0);
        }
        return v;
    };

    double r_core = 4.0;
    for (const auto& t : f.terms) {
        double off = 0.0;
        for (int i = 0; i < dim; ++i) {
            double u = t.center[i] - c0[i];
            off += u * u;
        }
        r_core = std::max(r_core, std::sqrt(off) + 12.0 * std::sqrt(t.var) + 2.0);
    }

    QuadResult core = integrate_adaptive(g, 0.0, r_core, 0.25 * rel_tol, 1e-300, 16, 16384);
    double acc = core.value;
    double R = r_core;
    bool has_mass = std::fabs(f.mass()) > 1e-10 * signed_mass_scale(f);
    double dead_floor = 1e-280;

    double s_meas = alpha - dim, tail = 0.0;
    bool settled = false;
    for (int shell = 0; shell < 34 && !settled; ++shell) {
        QuadResult sh = integrate_adaptive(g, R, 2.0 * R, 0.25 * rel_tol, 1e-300, 16, 8192);
        acc += sh.value;
        R *= 2.0;
        double a_in = probe_amplitude(eval, c0, dim, 0.5 * R);
        double a_out = probe_amplitude(eval, c0, dim, R);
        if (a_in < dead_floor && a_out < dead_floor) {
            tail = 0.0;
            s_meas = alpha - dim;
            settled = true;
            break;
        }
        if (a_in <= 0.0 || a_out <= 0.0) continue;
        s_meas = std::log(a_out / a_in) / std::log(2.0);
        // mass-carrying fields must decay exactly like r^{alpha-d}; signed
        // cancellations may only decay faster
        double s_mod = has_mass ? (alpha - dim) : std::min(s_meas, alpha - dim);
        tail = tail_model(dim, a_out, R, s_mod, q);
        if (s_meas <= alpha - dim + 0.35 && tail <= 0.25 * rel_tol * std::max(acc, 1e-300))
            settled = true;
    }
    if (!settled)
        throw AccuracyError("fractional_q_norm: far-field exponent did not settle", s_meas,
                            alpha - dim);

    QNormRecord rec;
    double total = acc + tail;
    if (!(total > 0.0))
        throw PreconditionError("fractional_q_norm: vanishing norm, nothing to certify");
    rec.value = std::pow(total, 1.0 / q);
    rec.tail_fraction = tail / total;
    rec.tail_exponent = s_meas;
    return rec;
}

QNormRecord qnorm_fourier(const GaussianMixture& f, double alpha, double q, double rel_tol) {
    int dim = f.dim;
    double spread = f.max_spread();
    double L, n_cap;
    if (dim == 1) {
        L = std::clamp(4.0 * spread, 40.0, 120.0);
        n_cap = 16384;
    } else if (dim == 2) {
        L = std::clamp(2.0 * spread, 10.0, 50.0);
        n_cap = 1024;
    } else {
        L = std::clamp(2.0 * spread, 10.0, 40.0);
        n_cap = 256;
    }
    double sig_min = std::sqrt(f.terms.front().var);
    for (const auto& t : f.terms) sig_min = std::min(sig_min, std::sqrt(t.var));
    double h_target = sig_min / 3.0;
    int n = dim == 1 ? 256 : 64;
    while (2.0 * L / n > h_target && n < n_cap) n *= 2;
    if (2.0 * L / n > h_target)
        throw BudgetError("fractional_q_norm: fourier grid resolution exceeds the budget");

    GridField G = sample_mixture(f, L, n);
    GridField If = fourier_fractional(G, alpha, ZeroModePolicy::zeta_regularized);

    double h = If.spacing();
    double R_t = 0.5 * L;
    double acc = 0.0;
    int nd1 = dim >= 2 ? n : 1, nd2 = dim >= 3 ? n : 1;
    for (int i = 0; i < n; ++i) {
        double x0 = If.coord(i), r2base = x0 * x0;
        for (int j = 0; j < nd1; ++j) {
            double x1 = dim >= 2 ? If.coord(j) : 0.0;
            double r2b = r2base + x1 * x1;
            for (int k = 0; k < nd2; ++k) {
                double x2 = dim >= 3 ? If.coord(k) : 0.0;
                if (r2b + x2 * x2 > R_t * R_t) continue;
                double v = If.data[If.flat(i, j, k)];
                acc += std::pow(std::fabs(v), q);
            }
        }
    }
    acc *= std::pow(h, double(dim));

    double mass = f.mass();
    double a_far = std::fabs(mass) * riesz_constant(dim, alpha);
    double tail = 0.0;
    if (std::fabs(mass) > 1e-10 * signed_mass_scale(f)) {
        tail = tail_model(dim, a_far * std::pow(R_t, alpha - dim), R_t, alpha - dim, q);
        double frac_est = tail / std::max(acc + tail, 1e-300);
        if (frac_est > 1e-6) {
            // far-field consistency: grid samples on the axes near the trust
            // radius must sit on the mass amplitude within loose bounds
            double r_probe = 0.9 * R_t;
            int m = int(std::lround(r_probe / h));
            m = std::min(m, n / 2 - 1);
            double got = 0.0;
            int cnt = 0;
            for (int axis = 0; axis < dim; ++axis) {
                for (int sgn = -1; sgn <= 1; sgn += 2) {
                    int idx[3] = {n / 2, dim >= 2 ? n / 2 : 0, dim >= 3 ? n / 2 : 0};
                    idx[axis] += sgn * m;
                    got += std::fabs(If.data[If.flat(idx[0], idx[1], idx[2])]);
                    ++cnt;
                }
            }
            got /= cnt;
            double model = a_far * std::pow(m * h, alpha - dim);
            if (!(got > 0.55 * model && got < 1.8 * model))
                throw AccuracyError(
                    "fractional_q_norm: fourier far field inconsistent with mass amplitude",
                    got, model);
        }
    }
    double total = acc + tail;
    if (tail > 0.02 * total)
        throw AccuracyError("fractional_q_norm: fourier box too small for the requested tail",
                            tail, 0.02 * total);
    if (!(total > 0.0))
        throw PreconditionError("fractional_q_norm: vanishing norm, nothing to certify");
    (void)rel_tol;

    QNormRecord rec;
    rec.value = std::pow(total, 1.0 / q);
    rec.tail_fraction = tail / total;
    rec.tail_exponent = alpha - dim;
    return rec;
}

} // namespace

QNormRecord fractional_q_norm(const GaussianMixture& f, const FractionalParams& params,
                              double q, HlsMethod method, double rel_tol) {
    f.validate();
    params.validate();
    if (f.dim != params.dim)
        throw PreconditionError("fractional_q_norm: mixture/params dim mismatch");
    if (!(q >= 1.0)) throw PreconditionError("fractional_q_norm: q must be >= 1");
    if (!((params.dim - params.alpha) * q > params.dim * (1.0 + 1e-12)))
        throw PreconditionError("fractional_q_norm: need (d - alpha) q > d for a finite norm");
    if (!(rel_tol > 0.0 && rel_tol <= 0.05))
        throw PreconditionError("fractional_q_norm: rel_tol must lie in (0, 0.05]");

    switch (method) {
    case HlsMethod::mellin: {
        MellinEvaluator ev(f, params.alpha, params.dim);
        return qnorm_radial([&](const Point& x) { return ev(x); }, f, params.alpha, q,
                            rel_tol);
    }
    case HlsMethod::riesz:
        return qnorm_radial(
            [&](const Point& x) { return riesz_convolution_oracle(f, params, x); }, f,
            params.alpha, q, rel_tol);
    case HlsMethod::fourier:
        return qnorm_fourier(f, params.alpha, q, rel_tol);
    }
    throw PreconditionError("fractional_q_norm: unknown method");
}

HlsRatioRecord hls_ratio(const GaussianMixture& f, const FractionalParams& params,
                         HlsMethod method) {
    QNormRecord qn = fractional_q_norm(f, params, params.q, method);
    double fp = lp_norm(f, params.p);
    if (!(fp > 0.0)) throw PreconditionError("hls_ratio: ||f||_p vanishes");
    HlsRatioRecord rec;
    rec.norm_f_p = fp;
    rec.norm_If_q = qn.value;
    rec.ratio = qn.value / fp;
    rec.tail_fraction = qn.tail_fraction;
    rec.tail_exponent = qn.tail_exponent;
    return rec;
}

DilationRecord dilation_invariance_check(const GaussianMixture& f,
                                         const FractionalParams& params,
                                         const std::vector<double>& lambdas, double qprime) {
    f.validate();
    params.validate();
    if (lambdas.empty())
        throw PreconditionError("dilation_invariance_check: empty lambda list");
    for (double l : lambdas)
        if (!(l > 0.0)) throw PreconditionError("dilation_invariance_check: lambda <= 0");

    DilationRecord rec;
    rec.lambdas = lambdas;
    for (double l : lambdas)
        rec.ratios.push_back(hls_ratio(f.dilated(l), params, HlsMethod::mellin).ratio);
    double lo = *std::min_element(rec.ratios.begin(), rec.ratios.end());
    double hi = *std::max_element(rec.ratios.begin(), rec.ratios.end());
    rec.max_rel_spread = (hi - lo) / lo;

    if (qprime > 0.0) {
        if (!((params.dim - params.alpha) * qprime > params.dim))
            throw PreconditionError("dilation_invariance_check: q' misses the decay budget");
        rec.qprime = qprime;
        double base =
            fractional_q_norm(f, params, qprime, HlsMethod::mellin).value /
            lp_norm(f, params.p);
        double drift = double(params.dim) * (1.0 / params.q - 1.0 / qprime);
        for (double l : lambdas) {
            GaussianMixture fl = f.dilated(l);
            double wr = fractional_q_norm(fl, params, qprime, HlsMethod::mellin).value /
                        lp_norm(fl, params.p);
            rec.wrong_ratios.push_back(wr);
            double predicted = std::pow(l, drift);
            rec.wrong_max_rel_err =
                std::max(rec.wrong_max_rel_err, std::fabs(wr / base / predicted - 1.0));
        }
    }
    return rec;
}

void HlsSweepConfig::validate() const {
    if (dims.empty() || alphas.empty() || ps.empty())
        throw PreconditionError("HlsSweepConfig: dims/alphas/ps must be non-empty");
    for (int d : dims)
        if (d < 1 || d > 3) throw PreconditionError("HlsSweepConfig: dims must lie in 1..3");
    for (double a : alphas)
        if (!(a > 0.0)) throw PreconditionError("HlsSweepConfig: alpha <= 0");
    for (double p : ps)
        if (!(p > 1.0)) throw PreconditionError("HlsSweepConfig: p <= 1");
    if (family_size < 0) throw PreconditionError("HlsSweepConfig: family_size < 0");
    if (methods.empty()) throw PreconditionError("HlsSweepConfig: methods must be non-empty");
    if (threads < 1) throw PreconditionError("HlsSweepConfig: threads < 1");
    if (!(rel_tol > 0.0 && rel_tol <= 0.05))
        throw PreconditionError("HlsSweepConfig: rel_tol must lie in (0, 0.05]");
}

HlsReport hls_sweep(const HlsSweepConfig& cfg, const HlsSuppliedConstants& supplied) {
    cfg.validate();

    struct Cell {
        int d;
        double alpha, p;
    };
    std::vector<Cell> cells;
    for (int d : cfg.dims)
        for (double a : cfg.alphas)
            for (double p : cfg.ps) cells.push_back({d, a, p});

    int canon = cfg.include_canonical ? 1 : 0;
    int fam = canon + cfg.family_size;
    int nm = int(cfg.methods.size());
    std::int64_t total = std::int64_t(cells.size()) * fam * nm;

    HlsReport report;
    report.supplied = supplied;
    report.entries.resize(std::size_t(total));

    auto run_task = [&](std::int64_t t) {
        int mi = int(t % nm);
        std::int64_t rest = t / nm;
        int fi = int(rest % fam);
        const Cell& cell = cells[std::size_t(rest / fam)];
        HlsEntry& e = report.entries[std::size_t(t)];
        e.d = cell.d;
        e.alpha = cell.alpha;
        e.p = cell.p;
        e.method = hls_method_name(cfg.methods[std::size_t(mi)]);
        if (cfg.include_canonical && fi == 0) {
            e.f_id = "bump";
        } else {
            char buf[16];
            std::snprintf(buf, sizeof(buf), "mix%03d", fi - canon);
            e.f_id = buf;
        }
        try {
            GaussianMixture f = (cfg.include_canonical && fi == 0)
                                    ? standard_gaussian(cell.d)
                                    : seeded_mixture(cfg.family_seed, fi - canon, cell.d);
            FractionalParams prm = FractionalParams::make(cell.alpha, cell.p, cell.d);
            e.q = prm.q;
            HlsRatioRecord r = hls_ratio(f, prm, cfg.methods[std::size_t(mi)]);
            e.norm_f_p = r.norm_f_p;
            e.norm_If_q = r.norm_If_q;
            e.ratio = r.ratio;
            e.ok = true;
        } catch (const std::exception& ex) {
            e.ok = false;
            e.error = ex.what();
        }
    };

    // task-level pool: one entry per task, slots fixed up front, so assembly
    // order never depends on the thread count
    if (cfg.threads <= 1 || total <= 1) {
        for (std::int64_t t = 0; t < total; ++t) run_task(t);
    } else {
        std::atomic<std::int64_t> next{0};
        auto worker = [&]() {
            for (;;) {
                std::int64_t t = next.fetch_add(1);
                if (t >= total) return;
                run_task(t);
            }
        };
        std::vector<std::thread> pool;
        for (int t = 1; t < cfg.threads; ++t) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();
    }

    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        HlsCellConstants cc;
        cc.d = cells[ci].d;
        cc.alpha = cells[ci].alpha;
        cc.p = cells[ci].p;
        cc.doob_bound = std::pow(cc.p / (cc.p - 1.0), cc.p);
        cc.p_star = std::max(cc.p, cc.p / (cc.p - 1.0));
        std::int64_t lo = std::int64_t(ci) * fam * nm, hi = lo + std::int64_t(fam) * nm;
        for (std::int64_t t = lo; t < hi; ++t) {
            const HlsEntry& e = report.entries[std::size_t(t)];
            if (e.ok) cc.c_empirical = std::max(cc.c_empirical, e.ratio);
        }
        report.cells.push_back(cc);
    }
    return report;
}

} // namespace frihls
