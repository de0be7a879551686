#include "frihls/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "frihls/gauss_legendre.hpp"
#include "frihls/rng.hpp"

namespace frihls {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

double sqdist(const Point& a, const Point& b, int d) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) {
        double t = a[i] - b[i];
        s += t * t;
    }
    return s;
}
} // namespace

void GaussianMixture::validate() const {
    if (dim < 1 || dim > 3) throw std::domain_error("GaussianMixture: dim must be 1..3");
    if (terms.empty()) throw std::domain_error("GaussianMixture: needs at least one term");
    for (const auto& t : terms)
        if (!(t.var > 0.0)) throw std::domain_error("GaussianMixture: width^2 must be > 0");
}

double GaussianMixture::eval(const Point& x) const {
    double s = 0.0;
    for (const auto& t : terms) s += t.amp * std::exp(-sqdist(x, t.center, dim) / (2.0 * t.var));
    return s;
}

Point GaussianMixture::grad(const Point& x) const {
    Point g{0.0, 0.0, 0.0};
    for (const auto& t : terms) {
        double e = t.amp * std::exp(-sqdist(x, t.center, dim) / (2.0 * t.var));
        for (int i = 0; i < dim; ++i) g[i] -= (x[i] - t.center[i]) / t.var * e;
    }
    return g;
}

double GaussianMixture::laplacian(const Point& x) const {
    double s = 0.0;
    for (const auto& t : terms) {
        double r2 = sqdist(x, t.center, dim);
        double e = t.amp * std::exp(-r2 / (2.0 * t.var));
        s += e * (r2 / (t.var * t.var) - dim / t.var);
    }
    return s;
}

GaussianMixture GaussianMixture::heat(double t, double sigma) const {
    if (t < 0.0) throw std::domain_error("heat: t must be >= 0");
    GaussianMixture out = *this;
    double add = sigma * sigma * t;
    for (auto& tm : out.terms) {
        double v2 = tm.var + add;
        tm.amp *= std::pow(tm.var / v2, 0.5 * dim);
        tm.var = v2;
    }
    return out;
}

GaussianMixture GaussianMixture::abs_amplitudes() const {
    GaussianMixture out = *this;
    for (auto& t : out.terms) t.amp = std::fabs(t.amp);
    return out;
}

GaussianMixture GaussianMixture::dilated(double lambda) const {
    if (!(lambda > 0.0)) throw std::domain_error("dilated: lambda must be > 0");
    GaussianMixture out = *this;
    for (auto& t : out.terms) {
        for (int i = 0; i < dim; ++i) t.center[i] /= lambda;
        t.var /= lambda * lambda;
    }
    return out;
}

GaussianMixture GaussianMixture::scaled(double k) const {
    GaussianMixture out = *this;
    for (auto& t : out.terms) t.amp *= k;
    return out;
}

double GaussianMixture::mass() const {
    double s = 0.0;
    for (const auto& t : terms) s += t.amp * std::pow(2.0 * kPi * t.var, 0.5 * dim);
    return s;
}

bool GaussianMixture::common_center(Point& c) const {
    c = terms[0].center;
    for (const auto& t : terms)
        for (int i = 0; i < dim; ++i)
            if (t.center[i] != c[i]) return false;
    return true;
}

double GaussianMixture::max_spread() const {
    double m = 0.0;
    for (const auto& t : terms) {
        double r = norm2(t.center, dim) + 10.0 * std::sqrt(t.var);
        m = std::max(m, r);
    }
    return m;
}

GaussianMixture mix_sum(const GaussianMixture& a, const GaussianMixture& b) {
    if (a.dim != b.dim) throw std::domain_error("mix_sum: dimension mismatch");
    GaussianMixture out = a;
    out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
    return out;
}

double l2_inner(const GaussianMixture& f, const GaussianMixture& g) {
    int d = f.dim;
    double s = 0.0;
    for (const auto& a : f.terms)
        for (const auto& b : g.terms) {
            double vs = a.var + b.var;
            double w = a.var * b.var / vs;
            s += a.amp * b.amp * std::pow(2.0 * kPi * w, 0.5 * d) *
                 std::exp(-sqdist(a.center, b.center, d) / (2.0 * vs));
        }
    return s;
}

double grad_l2_inner(const GaussianMixture& f, const GaussianMixture& g) {
    // grad G_a . grad G_b = [(x-c_a).(x-c_b) / (v_a v_b)] G_a G_b; under the
    // product Gaussian (mean m, covariance w I) the moment is
    // (m-c_a).(m-c_b) + d w.
    int d = f.dim;
    double s = 0.0;
    for (const auto& a : f.terms)
        for (const auto& b : g.terms) {
            double vs = a.var + b.var;
            double w = a.var * b.var / vs;
            double massp = a.amp * b.amp * std::pow(2.0 * kPi * w, 0.5 * d) *
                           std::exp(-sqdist(a.center, b.center, d) / (2.0 * vs));
            double dot = d * w;
            for (int i = 0; i < d; ++i) {
                double m = (b.var * a.center[i] + a.var * b.center[i]) / vs;
                dot += (m - a.center[i]) * (m - b.center[i]);
            }
            s += massp * dot / (a.var * b.var);
        }
    return s;
}

namespace {

// |f|^p is smooth away from zero crossings; the adaptive driver handles the
// kinks by refinement. Bounding box from max_spread covers tails to e^{-50}.
double lp_norm_1d(const GaussianMixture& f, double p) {
    double R = f.max_spread();
    auto ip = [&f, p](double x) {
        Point q{x, 0.0, 0.0};
        return std::pow(std::fabs(f.eval(q)), p);
    };
    QuadResult r = integrate_adaptive(ip, -R, R, 1e-10);
    return std::pow(r.value, 1.0 / p);
}

double lp_norm_radial(const GaussianMixture& f, double p, const Point& c) {
    int d = f.dim;
    double R = 0.0;
    for (const auto& t : f.terms) R = std::max(R, 10.0 * std::sqrt(t.var));
    double sphere = d == 2 ? 2.0 * kPi : 4.0 * kPi;
    auto ip = [&](double r) {
        Point q = c;
        q[0] += r;
        return std::pow(std::fabs(f.eval(q)), p) * std::pow(r, d - 1);
    };
    QuadResult qr = integrate_adaptive(ip, 0.0, R, 1e-10);
    return std::pow(sphere * qr.value, 1.0 / p);
}

double lp_norm_lattice(const GaussianMixture& f, double p) {
    int d = f.dim;
    double vmin = f.terms[0].var;
    for (const auto& t : f.terms) vmin = std::min(vmin, t.var);
    double h = 0.5 * std::sqrt(vmin);
    double R = f.max_spread();
    int n = int(std::ceil(2.0 * R / h)) + 1;
    double s = 0.0;
    Point q{0.0, 0.0, 0.0};
    if (d == 2) {
        for (int i = 0; i < n; ++i) {
            q[0] = -R + i * h;
            for (int j = 0; j < n; ++j) {
                q[1] = -R + j * h;
                s += std::pow(std::fabs(f.eval(q)), p);
            }
        }
        return std::pow(s * h * h, 1.0 / p);
    }
    for (int i = 0; i < n; ++i) {
        q[0] = -R + i * h;
        for (int j = 0; j < n; ++j) {
            q[1] = -R + j * h;
            for (int k = 0; k < n; ++k) {
                q[2] = -R + k * h;
                s += std::pow(std::fabs(f.eval(q)), p);
            }
        }
    }
    return std::pow(s * h * h * h, 1.0 / p);
}

} // namespace

double lp_norm(const GaussianMixture& f, double p) {
    f.validate();
    if (!(p >= 1.0)) throw std::domain_error("lp_norm: p must be >= 1");
    if (f.dim == 1) return lp_norm_1d(f, p);
    Point c;
    if (f.common_center(c)) return lp_norm_radial(f, p, c);
    return lp_norm_lattice(f, p);
}

double linf_norm(const GaussianMixture& f) {
    f.validate();
    int d = f.dim;
    double vmin = f.terms[0].var;
    for (const auto& t : f.terms) vmin = std::min(vmin, t.var);
    double best = 0.0;
    // lattice scan
    double h = 0.5 * std::sqrt(vmin);
    double R = f.max_spread();
    int n = std::min(201, int(std::ceil(2.0 * R / h)) + 1);
    h = 2.0 * R / (n - 1);
    Point q{0.0, 0.0, 0.0};
    Point best_q{0.0, 0.0, 0.0};
    int nj = d >= 2 ? n : 1, nk = d >= 3 ? n : 1;
    for (int i = 0; i < n; ++i) {
        q[0] = -R + i * h;
        for (int j = 0; j < nj; ++j) {
            q[1] = d >= 2 ? -R + j * h : 0.0;
            for (int k = 0; k < nk; ++k) {
                q[2] = d >= 3 ? -R + k * h : 0.0;
                double v = std::fabs(f.eval(q));
                if (v > best) {
                    best = v;
                    best_q = q;
                }
            }
        }
    }
    // ascent from each center and from the best lattice point
    std::vector<Point> starts;
    for (const auto& t : f.terms) starts.push_back(t.center);
    starts.push_back(best_q);
    for (Point x : starts) {
        double sign = f.eval(x) >= 0.0 ? 1.0 : -1.0;
        double step = std::sqrt(vmin);
        for (int it = 0; it < 200; ++it) {
            Point g = f.grad(x);
            double gn = norm2(g, d);
            if (gn * step < 1e-15) break;
            Point xn = x;
            for (int i = 0; i < d; ++i) xn[i] += sign * step * g[i] / gn;
            if (sign * f.eval(xn) > sign * f.eval(x)) {
                x = xn;
            } else {
                step *= 0.5;
            }
        }
        best = std::max(best, std::fabs(f.eval(x)));
    }
    return best;
}

namespace {

// exp-scaled modified Bessel I0: e^{-x} I0(x), stable for all x >= 0
double i0_scaled(double x) {
    if (x < 30.0) return std::exp(-x) * std::cyl_bessel_i(0.0, x);
    // I0(x) ~ e^x/sqrt(2 pi x) sum_k ((2k-1)!!)^2 / (k! (8x)^k)
    static const double num[6] = {1.0, 9.0, 225.0, 11025.0, 893025.0, 108056025.0};
    double r = 1.0, fact = 1.0, pow8 = 1.0;
    for (int k = 1; k <= 6; ++k) {
        fact *= k;
        pow8 *= 8.0 * x;
        r += num[k - 1] / (fact * pow8);
    }
    return r / std::sqrt(2.0 * kPi * x);
}

double sphere_term(int d, double A, double R, double v, double r) {
    if (d == 1) {
        double em = (R - r) * (R - r) / (2.0 * v), ep = (R + r) * (R + r) / (2.0 * v);
        return A * (std::exp(-em) + std::exp(-ep));
    }
    double rho = r * R / v;
    if (d == 2) return A * 2.0 * kPi * std::exp(-(R - r) * (R - r) / (2.0 * v)) * i0_scaled(rho);
    if (rho < 1e-8)
        return A * 4.0 * kPi * std::exp(-(R * R + r * r) / (2.0 * v)) * (1.0 + rho * rho / 6.0);
    double em = std::exp(-(R - r) * (R - r) / (2.0 * v));
    double ep = std::exp(-(R + r) * (R + r) / (2.0 * v));
    return A * 2.0 * kPi * (v / (r * R)) * (em - ep);
}

} // namespace

double sphere_integral(const GaussianMixture& f, const Point& x, double r) {
    double s = 0.0;
    for (const auto& t : f.terms) {
        double R2 = 0.0;
        for (int i = 0; i < f.dim; ++i) {
            double u = x[i] - t.center[i];
            R2 += u * u;
        }
        s += sphere_term(f.dim, t.amp, std::sqrt(R2), t.var, r);
    }
    return s;
}

GaussianMixture standard_gaussian(int dim) {
    GaussianMixture f;
    f.dim = dim;
    f.terms.push_back({1.0, {0.0, 0.0, 0.0}, 1.0});
    return f;
}

GaussianMixture seeded_mixture(std::uint64_t seed, int index, int dim) {
    Rng rng(seed, 0xA11C0FFEEull + index);
    GaussianMixture f;
    f.dim = dim;
    int n = 1 + int(rng.uniform() * 3.0); // 1..3 bumps
    for (int i = 0; i < n; ++i) {
        GaussTerm t;
        double u = rng.uniform();
        // keep amplitudes away from 0 so norms are well scaled
        t.amp = (u < 0.5 ? -1.0 : 1.0) * (0.4 + 1.2 * rng.uniform());
        for (int k = 0; k < dim; ++k) t.center[k] = -2.5 + 5.0 * rng.uniform();
        t.var = 0.5 + 1.5 * rng.uniform();
        f.terms.push_back(t);
    }
    return f;
}

} // namespace frihls
