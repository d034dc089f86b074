#pragma once

#include <cstdint>

namespace twoenv {

/// SplitMix64 finalizer (Vigna): the published 64-bit mixing function used
/// to derive per-trial stream states.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// SplitMix64 generator. One add and three xor-shift-multiplies per draw.
struct SplitMix64 {
    std::uint64_t state = 0;

    constexpr std::uint64_t next() noexcept {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

/// Counter-based stream derivation: trial i of a run with the given seed
/// draws from a SplitMix64 generator whose initial state is
/// mix64(seed XOR i). Streams are independent of execution order and worker
/// count, so parallel runs and paired comparisons reproduce bit-identically.
///
/// Draw protocol within a trial: draw 1 selects the base amount, draw 2
/// selects the held envelope, draw 3 (only when the strategy is randomized)
/// selects the decision.
constexpr SplitMix64 trial_stream(std::uint64_t seed, std::uint64_t trial_index) noexcept {
    return SplitMix64{mix64(seed ^ trial_index)};
}

}  // namespace twoenv
