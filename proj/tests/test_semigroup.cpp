#include <cmath>

#include "doctest.h"
#include "frihls/grid_field.hpp"
#include "frihls/mixture.hpp"
#include "frihls/rng.hpp"
#include "frihls/semigroup.hpp"

using namespace frihls;

TEST_CASE("heat semigroup composes exactly on mixtures") {
    GaussianMixture f = seeded_mixture(kDefaultSeed, 4, 2);
    GaussianMixture lhs = apply_heat(apply_heat(f, 0.3), 1.1);
    GaussianMixture rhs = apply_heat(f, 1.4);
    for (double x : {-2.0, 0.0, 1.7}) {
        CHECK(lhs.eval({x, 0.5, 0.0}) == doctest::Approx(rhs.eval({x, 0.5, 0.0})).epsilon(1e-13));
    }
}

TEST_CASE("center value of the evolved standard gaussian is (1+t)^{-d/2}") {
    for (int d : {1, 2, 3}) {
        GaussianMixture f = standard_gaussian(d);
        CHECK(apply_heat(f, 3.0).eval({0.0, 0.0, 0.0}) ==
              doctest::Approx(std::pow(4.0, -0.5 * d)).epsilon(1e-13));
    }
}

TEST_CASE("Lp norms contract under the semigroup") {
    GaussianMixture f = seeded_mixture(kDefaultSeed, 9, 1);
    for (double p : {1.5, 2.0, 4.0}) {
        double n0 = lp_norm(f, p);
        double prev = n0;
        for (double t : {0.2, 1.0, 5.0}) {
            double nt = lp_norm(apply_heat(f, t), p);
            CHECK(nt <= prev * (1.0 + 1e-12)); // monotone along the flow
            prev = nt;
        }
    }
}

TEST_CASE("grid route matches the exact route") {
    GaussianMixture f = seeded_mixture(kDefaultSeed, 2, 1);
    GridField F = sample_mixture(f, 60.0, 1024);
    GridField Ft = apply_heat_grid(F, 1.3);
    GaussianMixture ft = apply_heat(f, 1.3);
    for (double x : {-1.0, 0.0, 2.5}) {
        CHECK(grid_value_at(Ft, {x, 0.0, 0.0}) ==
              doctest::Approx(ft.eval({x, 0.0, 0.0})).epsilon(1e-9));
    }
}

TEST_CASE("log grid spans the requested decades") {
    std::vector<double> tg = log_t_grid(1e-3, 1e3, 25);
    REQUIRE(tg.size() == 25);
    CHECK(tg.front() == doctest::Approx(1e-3));
    CHECK(tg.back() == doctest::Approx(1e3));
    for (std::size_t i = 1; i < tg.size(); ++i) {
        CHECK(tg[i] / tg[i - 1] == doctest::Approx(tg[1] / tg[0]).epsilon(1e-12));
    }
}

TEST_CASE("maximal function dominates every time slice") {
    GaussianMixture f = standard_gaussian(1);
    std::vector<double> tg = log_t_grid(1e-2, 1e2, 30);
    for (double x : {0.0, 1.0, 4.0}) {
        double fs = maximal_function(f, {x, 0.0, 0.0}, tg);
        for (double t : {1e-2, 0.5, 1e2}) {
            CHECK(fs + 1e-15 >= apply_heat(f, t).eval({x, 0.0, 0.0}));
        }
        CHECK(fs >= f.eval({x, 0.0, 0.0}) * 0.999); // t -> 0 end included
    }
}

TEST_CASE("ultracontractivity constant is finite and scale-covariant") {
    GaussianMixture f = standard_gaussian(1);
    std::vector<double> tg = log_t_grid(1e-3, 1e3, 40);
    double c = ultracontractivity_constant(f, 2.0, tg);
    CHECK(std::isfinite(c));
    CHECK(c > 0.0);
    // amplitude scaling cancels in the ratio
    CHECK(ultracontractivity_constant(f.scaled(5.0), 2.0, tg) ==
          doctest::Approx(c).epsilon(1e-12));
}
