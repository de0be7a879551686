#include <cmath>
#include <cstdint>
#include <set>

#include "doctest.h"
#include "frihls/rng.hpp"

using namespace frihls;

TEST_CASE("philox counter core is a pure function of (counter, key)") {
    auto [a1, b1] = philox2x64(17, 4, 0x5EEDF12AULL);
    auto [a2, b2] = philox2x64(17, 4, 0x5EEDF12AULL);
    CHECK(a1 == a2);
    CHECK(b1 == b2);
    auto [a3, b3] = philox2x64(18, 4, 0x5EEDF12AULL);
    CHECK(a1 != a3);
    auto [a4, b4] = philox2x64(17, 5, 0x5EEDF12AULL);
    CHECK(a1 != a4);
    (void)b3;
    (void)b4;
}

TEST_CASE("u01 maps to the open interval") {
    CHECK(u01(0) > 0.0);
    CHECK(u01(~0ULL) < 1.0);
    CHECK(u01(0) == 0x1.0p-54);
}

TEST_CASE("sequential stream replays and substreams decorrelate") {
    Rng r1(kDefaultSeed, 3);
    Rng r2(kDefaultSeed, 3);
    for (int i = 0; i < 100; ++i) CHECK(r1.bits() == r2.bits());

    Rng s0(kDefaultSeed, 0);
    Rng s1(kDefaultSeed, 1);
    int same = 0;
    for (int i = 0; i < 64; ++i) same += s0.bits() == s1.bits();
    CHECK(same == 0);
}

TEST_CASE("normals have sane moments and replay") {
    Rng r(kDefaultSeed, 7);
    const int n = 20000;
    double s1 = 0.0, s2 = 0.0, s4 = 0.0;
    for (int i = 0; i < n; ++i) {
        double z = r.normal();
        s1 += z;
        s2 += z * z;
        s4 += z * z * z * z;
    }
    s1 /= n;
    s2 /= n;
    s4 /= n;
    CHECK(std::fabs(s1) < 4.0 / std::sqrt(double(n)));          // mean ~ N(0, 1/n)
    CHECK(s2 == doctest::Approx(1.0).epsilon(0.03));            // var
    CHECK(s4 == doctest::Approx(3.0).epsilon(0.08));            // kurtosis
    Rng r2(kDefaultSeed, 7);
    CHECK(r2.normal() != r2.normal()); // consecutive draws differ
}

TEST_CASE("uniforms fill the unit interval evenly") {
    Rng r(kDefaultSeed, 11);
    int bins[10] = {0};
    const int n = 50000;
    for (int i = 0; i < n; ++i) {
        double u = r.uniform();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
        ++bins[int(u * 10.0)];
    }
    for (int b : bins) CHECK(std::fabs(b - n / 10.0) < 5.0 * std::sqrt(n * 0.1 * 0.9));
}
