#include <cmath>
#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "frihls/errors.hpp"
#include "frihls/fft.hpp"
#include "frihls/grid_field.hpp"
#include "frihls/mixture.hpp"
#include "frihls/rng.hpp"

using namespace frihls;

TEST_CASE("grid geometry: spacing, coordinates, flattening") {
    GaussianMixture f = standard_gaussian(2);
    GridField g = sample_mixture(f, 8.0, 32);
    CHECK(g.spacing() == doctest::Approx(0.5));
    CHECK(g.coord(0) == doctest::Approx(-8.0));
    CHECK(g.coord(16) == doctest::Approx(0.0));
    CHECK(g.data[g.flat(16, 16, 0)] == doctest::Approx(1.0));
    CHECK(grid_center_value(g) == doctest::Approx(1.0));
}

TEST_CASE("grid lp agrees with the mixture closed form") {
    for (int d : {1, 2}) {
        GaussianMixture f = standard_gaussian(d);
        GridField g = sample_mixture(f, 16.0, d == 1 ? 1024 : 128);
        CHECK(grid_lp(g, 2.0) == doctest::Approx(lp_norm(f, 2.0)).epsilon(1e-10));
    }
}

TEST_CASE("binary round trip is bit exact") {
    GaussianMixture f = seeded_mixture(kDefaultSeed, 3, 2);
    GridField g = sample_mixture(f, 24.0, 64);
    std::string path = (std::filesystem::temp_directory_path() / "gf_roundtrip.bin").string();
    write_grid_field(g, path);
    GridField h = read_grid_field(path);
    std::filesystem::remove(path);
    CHECK(h.dim == g.dim);
    CHECK(h.n == g.n);
    CHECK(h.L == doctest::Approx(g.L));
    CHECK(grid_max_abs_diff(g, h) == 0.0);
}

TEST_CASE("fourier multiplier with unit symbol is the identity") {
    GaussianMixture f = seeded_mixture(kDefaultSeed, 0, 1);
    GridField g = sample_mixture(f, 40.0, 512);
    GridField h = fourier_multiplier_apply(g, [](const Point&) { return 1.0; });
    CHECK(grid_max_abs_diff(g, h) < 1e-13);
}

TEST_CASE("fourier derivative symbol matches the mixture laplacian") {
    GaussianMixture f = standard_gaussian(1);
    GridField g = sample_mixture(f, 40.0, 1024);
    GridField lap = fourier_multiplier_apply(
        g, [](const Point& xi) { return -(xi[0] * xi[0]); });
    for (double x : {-1.0, 0.0, 0.5}) {
        CHECK(grid_value_at(lap, {x, 0.0, 0.0}) ==
              doctest::Approx(f.laplacian({x, 0.0, 0.0})).epsilon(1e-8));
    }
}

TEST_CASE("boundary decay guard trips on wide fields") {
    GaussianMixture f = standard_gaussian(1);
    GridField tight = sample_mixture(f, 4.0, 64); // e^{-8} boundary, too fat
    CHECK_THROWS_AS(require_boundary_decay(tight, "test"), PreconditionError);
    GridField wide = sample_mixture(f, 30.0, 64);
    CHECK_NOTHROW(require_boundary_decay(wide, "test"));
}
