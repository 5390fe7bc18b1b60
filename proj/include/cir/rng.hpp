#pragma once

#include <cstdint>
#include <random>

namespace cir {

using Rng = std::mt19937_64;

// splitmix64 scramble; gives well-separated streams from (seed, index).
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent per-trial stream: trial i's results do not depend on how many
// draws earlier trials consumed, so means are reproducible for a given seed
// no matter how the trial loop is organized.
inline Rng substream(std::uint64_t seed, std::uint64_t index) {
    return Rng(mix64(seed ^ mix64(index + 0x51a7ed00d1ceULL)));
}

// Bounded draw without std::uniform_int_distribution, whose output is not
// pinned down by the standard; this one is identical everywhere.
inline int uniform_index(Rng& rng, int n) {
    // Rejection sampling: unbiased.
    std::uint64_t bound = ~0ULL - ~0ULL % static_cast<std::uint64_t>(n);
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= bound);
    return static_cast<int>(x % static_cast<std::uint64_t>(n));
}

inline double uniform_unit(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0,1)
}

}  // namespace cir
