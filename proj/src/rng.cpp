#include "aggts/rng.hpp"

#include <cmath>

namespace aggts {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

} // namespace

std::uint64_t Rng::mix64(std::uint64_t z) {
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) {
    // splitmix64 chain fills the xoshiro state
    std::uint64_t x = seed;
    for (auto& w : s_) {
        x += kGolden;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        w = z ^ (z >> 31);
    }
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t stream_id) {
    return Rng(mix64(seed + (stream_id + 1) * kGolden));
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    // Box-Muller, cosine branch only; u1 shifted into (0,1]
    const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

long Rng::poisson(double mean) {
    if (mean <= 0.0) return 0;
    long total = 0;
    // chunking keeps exp(-chunk) well away from underflow
    while (mean > 30.0) {
        total += poisson(30.0);
        mean -= 30.0;
    }
    const double limit = std::exp(-mean);
    long k = 0;
    double prod = 1.0;
    do {
        ++k;
        prod *= uniform01();
    } while (prod > limit);
    return total + k - 1;
}

} // namespace aggts
