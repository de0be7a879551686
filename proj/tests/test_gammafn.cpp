#include <cmath>

#include "doctest.h"
#include "frihls/gammafn.hpp"

using namespace frihls;

TEST_CASE("gamma function on half-integers and integers") {
    const double sqrt_pi = 1.7724538509055160273;
    CHECK(gamma_fn(0.5) == doctest::Approx(sqrt_pi).epsilon(1e-13));
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gamma_fn(1.5) == doctest::Approx(0.5 * sqrt_pi).epsilon(1e-13));
    CHECK(gamma_fn(6.0) == doctest::Approx(120.0).epsilon(1e-13));
    CHECK(gamma_fn(170.0) == doctest::Approx(std::exp(lgamma_fn(170.0))).epsilon(1e-10));
    // reflection-free recurrence: Gamma(x+1) = x Gamma(x)
    for (double x : {0.25, 0.9, 2.7, 11.3}) {
        CHECK(gamma_fn(x + 1.0) == doctest::Approx(x * gamma_fn(x)).epsilon(1e-12));
    }
}

TEST_CASE("riemann zeta and dirichlet beta reference points") {
    CHECK(riemann_zeta(2.0) == doctest::Approx(1.6449340668482264).epsilon(1e-12));
    CHECK(riemann_zeta(3.0) == doctest::Approx(1.2020569031595943).epsilon(1e-12));
    CHECK(riemann_zeta(0.5) == doctest::Approx(-1.4603545088095868).epsilon(1e-11));
    CHECK(dirichlet_beta(2.0) == doctest::Approx(0.9159655941772190).epsilon(1e-12));
    CHECK(dirichlet_beta(1.0) == doctest::Approx(0.7853981633974483).epsilon(1e-12));
}

TEST_CASE("upper incomplete gamma") {
    // Gamma(1, x) = e^{-x}
    CHECK(upper_gamma(1.0, 2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
    // Gamma(a, 0) = Gamma(a)
    CHECK(upper_gamma(2.5, 0.0) == doctest::Approx(gamma_fn(2.5)).epsilon(1e-12));
    // recurrence Gamma(a+1, x) = a Gamma(a, x) + x^a e^{-x}
    double a = 1.7, x = 3.1;
    CHECK(upper_gamma(a + 1.0, x) ==
          doctest::Approx(a * upper_gamma(a, x) + std::pow(x, a) * std::exp(-x))
              .epsilon(1e-12));
}

TEST_CASE("epstein zeta frozen references") {
    // independent lattice-sum / analytic-continuation values
    CHECK(epstein_zeta(1, 0.5) == doctest::Approx(-2.9207090176).epsilon(1e-9));
    CHECK(epstein_zeta(2, 1.0) == doctest::Approx(-3.9002649200).epsilon(1e-9));
    CHECK(epstein_zeta(2, 1.5) == doctest::Approx(-10.0775594788).epsilon(1e-9));
    CHECK(epstein_zeta(3, 2.0) == doctest::Approx(-8.9136329176).epsilon(1e-9));
    // d = 1 reduces to 2 zeta(s)
    CHECK(epstein_zeta(1, 2.0) == doctest::Approx(2.0 * riemann_zeta(2.0)).epsilon(1e-12));
}
