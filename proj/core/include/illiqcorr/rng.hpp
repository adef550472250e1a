#pragma once

#include <cstdint>
#include <random>

namespace illiq {

// Deterministic seeding utilities. Monte Carlo replications and bootstrap
// replicates each run on their own engine, keyed by (root seed, index), so
// results do not depend on how work is distributed across threads.

// SplitMix64 finalizer; full-period avalanche of a 64-bit state.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Collapse a root seed and up to two indices into one well-mixed 64-bit seed.
constexpr std::uint64_t mix_seed(std::uint64_t root, std::uint64_t i,
                                 std::uint64_t j = 0) noexcept {
    return splitmix64(splitmix64(splitmix64(root) ^ i) ^ j);
}

// Fresh engine for sub-task (i, j) of the job identified by root.
inline std::mt19937_64 sub_stream(std::uint64_t root, std::uint64_t i,
                                  std::uint64_t j = 0) {
    return std::mt19937_64(mix_seed(root, i, j));
}

// 53-bit uniform draw in [0,1); avoids library-specific distribution
// internals so draws depend only on the engine state.
inline double uniform_u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace illiq
