#ifndef AGGTS_RNG_HPP
#define AGGTS_RNG_HPP

#include <cstdint>

namespace aggts {

/// xoshiro256++ with splitmix64 seeding: a fixed, platform-independent
/// 64-bit stream. Stream splitting: stream k of seed s is seeded from
/// mix64(s + (k+1) * 0x9E3779B97F4A7C15), so substreams are decorrelated
/// and reproducible in any implementation of the same algorithms.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    static Rng stream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t next_u64();

    /// Uniform on [0,1), 53-bit resolution.
    double uniform01();

    /// Standard normal via Box-Muller; consumes exactly two uniforms.
    double normal();

    /// Exact Poisson draw (Knuth's product method, chunked for large means).
    long poisson(double mean);

    static std::uint64_t mix64(std::uint64_t z); // splitmix64 finalizer

private:
    std::uint64_t s_[4];
};

} // namespace aggts

#endif
