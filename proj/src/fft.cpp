#include "frihls/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace frihls {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

// FFTW planning is not thread-safe and FFTW_ESTIMATE plans are cheap, so a
// global mutex-guarded cache keyed by (dim, n, sign) is enough. Execution
// uses the new-array interface on caller buffers.
struct PlanCache {
    std::mutex mu;
    std::map<std::tuple<int, int, int>, fftw_plan> plans;
    std::vector<fftw_complex*> scratch; // alignment donors kept alive

    fftw_plan get(int dim, int n, int sign) {
        std::lock_guard<std::mutex> lock(mu);
        auto key = std::make_tuple(dim, n, sign);
        auto it = plans.find(key);
        if (it != plans.end()) return it->second;
        std::size_t total = 1;
        for (int i = 0; i < dim; ++i) total *= std::size_t(n);
        fftw_complex* buf = fftw_alloc_complex(total);
        int dims[3] = {n, n, n};
        fftw_plan p = fftw_plan_dft(dim, dims, buf, buf, sign, FFTW_ESTIMATE);
        if (!p) throw std::runtime_error("fftw_plan_dft failed");
        scratch.push_back(buf);
        plans.emplace(key, p);
        return p;
    }
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}
} // namespace

Spectrum forward_fft(const GridField& g) {
    g.validate();
    Spectrum s;
    s.dim = g.dim;
    s.n = g.n;
    s.L = g.L;
    s.coef.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) s.coef[i] = g.data[i];
    fftw_plan p = cache().get(g.dim, g.n, FFTW_FORWARD);
    auto* buf = reinterpret_cast<fftw_complex*>(s.coef.data());
    fftw_execute_dft(p, buf, buf);
    return s;
}

GridField inverse_fft(const Spectrum& s) {
    GridField g;
    g.dim = s.dim;
    g.n = s.n;
    g.L = s.L;
    std::vector<std::complex<double>> tmp = s.coef;
    fftw_plan p = cache().get(s.dim, s.n, FFTW_BACKWARD);
    auto* buf = reinterpret_cast<fftw_complex*>(tmp.data());
    fftw_execute_dft(p, buf, buf);
    double scale = 1.0 / double(tmp.size());
    g.data.resize(tmp.size());
    for (std::size_t i = 0; i < tmp.size(); ++i) g.data[i] = tmp[i].real() * scale;
    g.validate();
    return g;
}

double grid_frequency(int n, double L, int k) {
    int folded = k < n / 2 ? k : k - n;
    return kPi / L * double(folded);
}

void apply_multiplier(Spectrum& s, const std::function<double(const Point& xi)>& m) {
    int n = s.n, d = s.dim;
    Point xi{0.0, 0.0, 0.0};
    if (d == 1) {
        for (int i = 0; i < n; ++i) {
            xi[0] = grid_frequency(n, s.L, i);
            s.coef[i] *= m(xi);
        }
        return;
    }
    if (d == 2) {
        std::size_t idx = 0;
        for (int i = 0; i < n; ++i) {
            xi[0] = grid_frequency(n, s.L, i);
            for (int j = 0; j < n; ++j, ++idx) {
                xi[1] = grid_frequency(n, s.L, j);
                s.coef[idx] *= m(xi);
            }
        }
        return;
    }
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i) {
        xi[0] = grid_frequency(n, s.L, i);
        for (int j = 0; j < n; ++j) {
            xi[1] = grid_frequency(n, s.L, j);
            for (int k = 0; k < n; ++k, ++idx) {
                xi[2] = grid_frequency(n, s.L, k);
                s.coef[idx] *= m(xi);
            }
        }
    }
}

GridField fourier_multiplier_apply(const GridField& g,
                                   const std::function<double(const Point& xi)>& m) {
    Spectrum s = forward_fft(g);
    apply_multiplier(s, m);
    return inverse_fft(s);
}

} // namespace frihls
