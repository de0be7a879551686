#pragma once
// Counter-based RNG (Philox2x64-10). Streams are addressed by logical indices
// (seed, stream, step), so any parallel schedule reproduces the same numbers;
// reproducibility across thread counts reduces to keying discipline.

#include <cmath>
#include <cstdint>
#include <utility>

namespace frihls {

inline std::pair<std::uint64_t, std::uint64_t>
philox2x64(std::uint64_t c0, std::uint64_t c1, std::uint64_t key) {
    constexpr std::uint64_t kMul = 0xD2B74407B1CE6E93ULL;
    constexpr std::uint64_t kWeyl = 0x9E3779B97F4A7C15ULL;
    for (int r = 0; r < 10; ++r) {
        unsigned __int128 prod = static_cast<unsigned __int128>(kMul) * c0;
        std::uint64_t hi = static_cast<std::uint64_t>(prod >> 64);
        std::uint64_t lo = static_cast<std::uint64_t>(prod);
        c0 = hi ^ key ^ c1;
        c1 = lo;
        key += kWeyl;
    }
    return {c0, c1};
}

// (0, 1), never returns an endpoint: 53-bit mantissa plus half-ulp offset.
inline double u01(std::uint64_t bits) {
    return (bits >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

// Two independent standard normals from one counter (Box-Muller).
inline void normal_pair(std::uint64_t c0, std::uint64_t c1, std::uint64_t key,
                        double& z0, double& z1) {
    auto [a, b] = philox2x64(c0, c1, key);
    double u1 = u01(a), u2 = u01(b);
    double r = std::sqrt(-2.0 * std::log(u1));
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    z0 = r * std::cos(kTwoPi * u2);
    z1 = r * std::sin(kTwoPi * u2);
}

// Sequential convenience stream on top of the counter core. `stream` selects
// an independent substream of the same seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(seed), hi_(stream) {}

    std::uint64_t bits() {
        if (have_bits_) {
            have_bits_ = false;
            return cached_bits_;
        }
        auto [a, b] = philox2x64(ctr_++, hi_, key_);
        cached_bits_ = b;
        have_bits_ = true;
        return a;
    }

    double uniform() { return u01(bits()); }

    double normal() {
        if (have_normal_) {
            have_normal_ = false;
            return cached_normal_;
        }
        auto [a, b] = philox2x64(ctr_++, hi_ ^ 0x8000000000000000ULL, key_);
        double z0, z1;
        double u1 = u01(a), u2 = u01(b);
        double r = std::sqrt(-2.0 * std::log(u1));
        constexpr double kTwoPi = 6.283185307179586476925286766559;
        z0 = r * std::cos(kTwoPi * u2);
        z1 = r * std::sin(kTwoPi * u2);
        cached_normal_ = z1;
        have_normal_ = true;
        return z0;
    }

private:
    std::uint64_t key_;
    std::uint64_t hi_;
    std::uint64_t ctr_ = 0;
    std::uint64_t cached_bits_ = 0;
    double cached_normal_ = 0.0;
    bool have_bits_ = false;
    bool have_normal_ = false;
};

constexpr std::uint64_t kDefaultSeed = 0x5EEDF12AULL;

} // namespace frihls
