#pragma once

#include <cstdint>
#include <random>

namespace isr {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; maps (seed, stream) to a well-mixed child seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream)
{
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
inline double unit_interval(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline bool fair_coin(Rng& rng) { return (rng() >> 63) != 0; }

/// Uniform integer in [0, bound) by rejection; avoids the implementation-defined
/// std::uniform_int_distribution so streams are reproducible across toolchains.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound)
{
    if (bound <= 1)
        return 0;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

} // namespace isr
