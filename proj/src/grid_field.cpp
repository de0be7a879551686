#include "frihls/grid_field.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "frihls/errors.hpp"
#include "frihls/parallel.hpp"

namespace frihls {

namespace {
bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
} // namespace

void GridField::validate() const {
    if (dim < 1 || dim > 3) throw std::domain_error("GridField: dim must be 1..3");
    if (!power_of_two(n)) throw std::domain_error("GridField: points per axis must be a power of two");
    if (!(L > 0.0)) throw std::domain_error("GridField: half-width must be > 0");
    std::size_t want = 1;
    for (int i = 0; i < dim; ++i) want *= std::size_t(n);
    if (data.size() != want) throw std::domain_error("GridField: sample count does not match n^dim");
}

std::size_t GridField::flat(int i, int j, int k) const {
    std::size_t idx = std::size_t(i);
    if (dim >= 2) idx = idx * n + j;
    if (dim >= 3) idx = idx * n + k;
    return idx;
}

GridField sample_mixture(const GaussianMixture& f, double L, int n) {
    f.validate();
    GridField g;
    g.dim = f.dim;
    g.n = n;
    g.L = L;
    std::size_t total = 1;
    for (int i = 0; i < g.dim; ++i) total *= std::size_t(n);
    g.data.resize(total);
    g.validate();
    double h = g.spacing();
    int d = g.dim;
    parallel_for(0, total, [&](std::size_t idx) {
        std::size_t rem = idx;
        Point x{0.0, 0.0, 0.0};
        for (int ax = d - 1; ax >= 0; --ax) {
            x[ax] = -L + h * double(rem % n);
            rem /= n;
        }
        g.data[idx] = f.eval(x);
    });
    return g;
}

double grid_center_value(const GridField& g) {
    int c = g.n / 2;
    return g.data[g.flat(c, g.dim >= 2 ? c : 0, g.dim >= 3 ? c : 0)];
}

double grid_value_at(const GridField& g, const Point& x) {
    double h = g.spacing();
    int ij[3] = {0, 0, 0};
    for (int ax = 0; ax < g.dim; ++ax) {
        long idx = std::lround((x[ax] + g.L) / h);
        if (idx < 0 || idx >= g.n) throw std::domain_error("grid_value_at: point outside the box");
        ij[ax] = int(idx);
    }
    return g.data[g.flat(ij[0], ij[1], ij[2])];
}

double grid_lp(const GridField& g, double p) {
    if (!(p >= 1.0)) throw std::domain_error("grid_lp: p must be >= 1");
    double s = parallel_sum(0, g.size(), [&](std::size_t i) {
        return std::pow(std::fabs(g.data[i]), p);
    });
    double hd = std::pow(g.spacing(), g.dim);
    return std::pow(s * hd, 1.0 / p);
}

double grid_linf(const GridField& g) {
    double m = 0.0;
    for (double v : g.data) m = std::max(m, std::fabs(v));
    return m;
}

double grid_mean(const GridField& g) {
    double s = parallel_sum(0, g.size(), [&](std::size_t i) { return g.data[i]; });
    return s / double(g.size());
}

double grid_max_abs_diff(const GridField& a, const GridField& b) {
    if (a.dim != b.dim || a.n != b.n || a.data.size() != b.data.size())
        throw std::domain_error("grid_max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i)
        m = std::max(m, std::fabs(a.data[i] - b.data[i]));
    return m;
}

double boundary_max_abs(const GridField& g) {
    int d = g.dim, n = g.n;
    double m = 0.0;
    auto touch = [&](int i, int j, int k) { m = std::max(m, std::fabs(g.data[g.flat(i, j, k)])); };
    if (d == 1) {
        touch(0, 0, 0);
        touch(n - 1, 0, 0);
        return m;
    }
    if (d == 2) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i == 0 || i == n - 1 || j == 0 || j == n - 1) touch(i, j, 0);
        return m;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (i == 0 || i == n - 1 || j == 0 || j == n - 1 || k == 0 || k == n - 1)
                    touch(i, j, k);
    return m;
}

void require_boundary_decay(const GridField& g, const char* op_name) {
    double bmax = boundary_max_abs(g);
    double gmax = grid_linf(g);
    if (bmax > 1e-12 * gmax) {
        char buf[256];
        std::snprintf(buf, sizeof(buf),
                      "%s: boundary decay violated, max |field| on the boundary shell is %.6e "
                      "(overall max %.6e, required ratio 1e-12)",
                      op_name, bmax, gmax);
        throw PreconditionError(buf);
    }
}

namespace {
static_assert(std::endian::native == std::endian::little,
              "GridField serialization assumes a little-endian host");
}

void write_grid_field(const GridField& g, const std::string& path) {
    g.validate();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_grid_field: cannot open " + path);
    char header[33];
    std::snprintf(header, sizeof(header), "GRIDFLD1%2d%6d% .9e", g.dim, g.n, g.L);
    out.write(header, 32);
    out.write(reinterpret_cast<const char*>(g.data.data()),
              std::streamsize(g.data.size() * sizeof(double)));
    if (!out) throw std::runtime_error("write_grid_field: short write to " + path);
}

GridField read_grid_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_grid_field: cannot open " + path);
    char header[33] = {0};
    in.read(header, 32);
    if (!in || std::memcmp(header, "GRIDFLD1", 8) != 0)
        throw std::runtime_error("read_grid_field: bad magic in " + path);
    GridField g;
    char dbuf[3] = {header[8], header[9], 0};
    char nbuf[7];
    std::memcpy(nbuf, header + 10, 6);
    nbuf[6] = 0;
    char lbuf[17];
    std::memcpy(lbuf, header + 16, 16);
    lbuf[16] = 0;
    g.dim = std::atoi(dbuf);
    g.n = std::atoi(nbuf);
    g.L = std::atof(lbuf);
    std::size_t total = 1;
    for (int i = 0; i < g.dim && g.dim >= 1 && g.dim <= 3; ++i) total *= std::size_t(g.n);
    g.data.resize(total);
    in.read(reinterpret_cast<char*>(g.data.data()), std::streamsize(total * sizeof(double)));
    if (!in) throw std::runtime_error("read_grid_field: truncated data in " + path);
    g.validate();
    return g;
}

} // namespace frihls
