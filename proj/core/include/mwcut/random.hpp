#ifndef MWCUT_RANDOM_HPP
#define MWCUT_RANDOM_HPP

#include <cstdint>
#include <random>

namespace mwcut {

// All randomness in the library flows through these helpers so that seeded
// runs are reproducible across platforms (uniform_real_distribution and
// friends are not bit-stable across standard library implementations).

// Uniform double in the open interval (0,1): a 53-bit variate offset by half
// a step, so 0 and 1 are never produced.
inline double uniform01(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

// Uniform integer in [0, n), n >= 1.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(rng()) * n) >> 64);
}

// Decorrelated per-trial seed for Monte Carlo batches.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (trial + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace mwcut

#endif
