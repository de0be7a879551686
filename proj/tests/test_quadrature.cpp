#include <cmath>

#include "doctest.h"
#include "frihls/gammafn.hpp"
#include "frihls/gauss_legendre.hpp"

using namespace frihls;

TEST_CASE("gl rule integrates polynomials of degree 2n-1 exactly") {
    const GlRule& rule = gl_rule(8);
    // int_{-1}^1 x^14 dx = 2/15
    double s = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i)
        s += rule.w[i] * std::pow(rule.x[i], 14);
    CHECK(s == doctest::Approx(2.0 / 15.0).epsilon(1e-14));
}

TEST_CASE("fixed-order GL on a shifted interval") {
    double got = integrate_gl([](double x) { return std::sin(x); }, 0.0, 3.0, 32);
    CHECK(got == doctest::Approx(1.0 - std::cos(3.0)).epsilon(1e-14));
}

TEST_CASE("adaptive bisection resolves a boundary layer") {
    // int_0^1 1/sqrt(x) dx = 2, integrable singularity at 0
    QuadResult q = integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 1e-14, 1.0,
                                      1e-10, 1e-300, 16, 16384);
    CHECK(q.value == doctest::Approx(2.0 - 2e-7).epsilon(1e-8));
    // smooth but peaked
    QuadResult p = integrate_adaptive(
        [](double x) { return std::exp(-500.0 * (x - 0.3) * (x - 0.3)); }, 0.0, 1.0, 1e-12);
    CHECK(p.value == doctest::Approx(std::sqrt(3.14159265358979324 / 500.0)).epsilon(1e-10));
}

TEST_CASE("semi-infinite route reproduces Gamma") {
    for (double s : {0.5, 1.0, 2.5}) {
        QuadResult q = integrate_to_inf(
            [s](double t) { return std::pow(t, s - 1.0) * std::exp(-t); }, 1e-12, 1e-11);
        CHECK(q.value == doctest::Approx(gamma_fn(s)).epsilon(1e-7));
    }
}

TEST_CASE("graded breakpoints shrink geometrically toward the singular end") {
    auto brk = graded_breakpoints(0.0, 1.0, 6, 0.5);
    REQUIRE(brk.size() == 7);
    CHECK(brk.front() == doctest::Approx(0.0));
    CHECK(brk.back() == doctest::Approx(1.0));
    double got = integrate_panels([](double x) { return 1.0 / std::sqrt(x + 1e-12) - 1.0; },
                                  graded_breakpoints(0.0, 1.0, 40, 0.5), 32);
    CHECK(got == doctest::Approx(1.0).epsilon(1e-5));
}
