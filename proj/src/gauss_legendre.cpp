#include "frihls/gauss_legendre.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace frihls {

namespace {

GlRule make_rule(int n) {
    GlRule r;
    r.x.resize(n);
    r.w.resize(n);
    constexpr double kPi = 3.141592653589793238462643383279502884;
    int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // Legendre recurrence for P_n(x), P'_n(x)
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.w[i] = w;
        r.w[n - 1 - i] = w;
    }
    return r;
}

std::map<int, GlRule> g_rules;
std::mutex g_rules_mu;

} // namespace

const GlRule& gl_rule(int n) {
    if (n < 2) throw std::invalid_argument("gl_rule: n >= 2");
    std::lock_guard<std::mutex> lk(g_rules_mu);
    auto it = g_rules.find(n);
    if (it == g_rules.end()) it = g_rules.emplace(n, make_rule(n)).first;
    return it->second;
}

double integrate_gl(const Fn1& f, double a, double b, int n) {
    const GlRule& r = gl_rule(n);
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += r.w[i] * f(c + h * r.x[i]);
    return s * h;
}

QuadResult integrate_adaptive(const Fn1& f, double a, double b,
                              double rel_tol, double abs_tol, int n, int max_panels) {
    struct Panel {
        double a, b, coarse;
    };
    std::vector<Panel> stack{{a, b, integrate_gl(f, a, b, n)}};
    QuadResult out;
    double scale = std::fabs(stack[0].coarse);
    while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();
        double fine = integrate_gl(f, p.a, p.b, 2 * n);
        double err = std::fabs(fine - p.coarse);
        double tol = std::max(abs_tol, rel_tol * std::max(scale, std::fabs(fine)));
        // local tolerance proportional to panel width keeps the global sum bounded
        double local = tol * (p.b - p.a) / (b - a);
        if (err <= local || out.panels >= max_panels || (p.b - p.a) < 1e-14 * (b - a)) {
            out.value += fine;
            out.error += err;
            out.panels += 1;
        } else {
            double mid = 0.5 * (p.a + p.b);
            stack.push_back({p.a, mid, integrate_gl(f, p.a, mid, n)});
            stack.push_back({mid, p.b, integrate_gl(f, mid, p.b, n)});
        }
        scale = std::max(scale, std::fabs(out.value));
    }
    return out;
}

QuadResult integrate_to_inf(const Fn1& f, double a, double rel_tol, double abs_tol) {
    auto g = [&f, a](double u) {
        double om = 1.0 - u;
        double t = a + u / om;
        return f(t) / (om * om);
    };
    return integrate_adaptive(g, 0.0, 1.0, rel_tol, abs_tol);
}

std::vector<double> graded_breakpoints(double sing, double b, int m, double ratio) {
    std::vector<double> brk;
    brk.reserve(m + 1);
    brk.push_back(sing);
    for (int k = m - 1; k >= 0; --k) brk.push_back(sing + (b - sing) * std::pow(ratio, k));
    return brk;
}

double integrate_panels(const Fn1& f, const std::vector<double>& brk, int n) {
    double s = 0.0;
    for (size_t i = 0; i + 1 < brk.size(); ++i) s += integrate_gl(f, brk[i], brk[i + 1], n);
    return s;
}

} // namespace frihls
