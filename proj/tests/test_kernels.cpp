#include <cmath>

#include "doctest.h"
#include "frihls/gammafn.hpp"
#include "frihls/gauss_legendre.hpp"
#include "frihls/kernels.hpp"

using namespace frihls;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("heat kernel normalizes to unit mass") {
    for (int d : {1, 2, 3}) {
        HeatKernelSpec spec{1.0, d};
        double t = 0.7;
        auto f = [&](double r) {
            double surf = d == 1 ? 2.0 : (d == 2 ? 2.0 * kPi * r : 4.0 * kPi * r * r);
            return surf * heat_kernel(spec, r, t);
        };
        QuadResult q = integrate_to_inf(f, 0.0, 1e-12);
        CHECK(q.value == doctest::Approx(1.0).epsilon(1e-10));
    }
    // explicit value: (2 pi t)^{-1/2} at r = 0, d = 1
    HeatKernelSpec s1{1.0, 1};
    CHECK(heat_kernel(s1, 0.0, 2.0) == doctest::Approx(1.0 / std::sqrt(4.0 * kPi)));
}

TEST_CASE("gradient bound margin stays at or below one on the heat scale") {
    // |grad p_t|(x) <= (|x|/t) p_t(x) family bound, normalized so 1 is sharp
    for (int d : {1, 2, 3}) {
        HeatKernelSpec spec{1.0, d};
        for (double t : {1e-3, 1.0, 1e3}) {
            for (double u : {0.3, 1.0, 3.0, 6.0}) {
                Point x{u * std::sqrt(t), 0.0, 0.0};
                double m = grad_bound_margin(spec, x, t);
                CHECK(m <= 1.0 + 1e-12);
                CHECK(m >= 0.0);
            }
        }
    }
}

TEST_CASE("poisson kernel has unit boundary mass and the right pole") {
    for (int d : {1, 2}) {
        auto f = [&](double r) {
            double surf = d == 1 ? 2.0 : 2.0 * kPi * r;
            return surf * poisson_kernel(d, 1.5, r);
        };
        QuadResult q = integrate_to_inf(f, 0.0, 1e-12);
        CHECK(q.value == doctest::Approx(1.0).epsilon(1e-9));
    }
    // d = 1: y / (pi (y^2 + r^2))
    CHECK(poisson_kernel(1, 2.0, 1.0) == doctest::Approx(2.0 / (kPi * 5.0)).epsilon(1e-13));
}

TEST_CASE("riesz kernel: homogeneity and normalization constant") {
    RieszKernelSpec spec{0.5, 1};
    CHECK(riesz_kernel(spec, 3.0) / riesz_kernel(spec, 1.5) ==
          doctest::Approx(std::pow(2.0, 0.5 - 1.0)).epsilon(1e-13));
    // the constant carries the 2^{alpha/2} of the (1/2)Delta generator:
    // riesz_constant = 2^{alpha/2} * classical Riesz constant
    double alpha = 1.0;
    int d = 3;
    double classical = gamma_fn(0.5 * (d - alpha)) /
                       (std::pow(2.0, alpha) * std::pow(kPi, 0.5 * d) *
                        gamma_fn(0.5 * alpha));
    RieszKernelSpec s3{alpha, d};
    CHECK(riesz_constant(d, alpha) ==
          doctest::Approx(std::pow(2.0, 0.5 * alpha) * classical).epsilon(1e-12));
    CHECK(riesz_kernel(s3, 1.0) == doctest::Approx(riesz_constant(d, alpha)).epsilon(1e-13));
    // alpha = 2, d = 3: kernel is 2 * (4 pi r)^{-1}, the harmonic Green function
    RieszKernelSpec g3{2.0, 3};
    CHECK(riesz_kernel(g3, 1.7) ==
          doctest::Approx(2.0 / (4.0 * kPi * 1.7)).epsilon(1e-13));
}

TEST_CASE("norm2 ignores trailing coordinates beyond dim") {
    Point x{3.0, 4.0, 5.0};
    CHECK(norm2(x, 2) == doctest::Approx(5.0));
    CHECK(norm2(x, 3) == doctest::Approx(std::sqrt(50.0)));
}
