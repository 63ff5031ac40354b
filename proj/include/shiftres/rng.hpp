#pragma once

#include <cstdint>
#include <random>

namespace shiftres {

/// SplitMix64 finalizer. Used to derive independent sub-seeds from a base seed.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Uniform double in [0, 1) from the top 53 bits of the generator output.
/// Avoids std::uniform_real_distribution so that streams are identical across
/// standard library implementations.
inline double u01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// Deterministic seed ladder: every sub-experiment of a run draws its seed
/// from (base, stream, counter) so it can be reproduced in isolation.
///
/// Streams: 1 = reservoir adjacency, 2 = task initial condition,
/// 3 = random shift vectors (counter = point_index * 2^20 + ensemble_member).
struct SeedLadder {
    std::uint64_t base = 1;

    static constexpr std::uint64_t kStreamReservoir = 1;
    static constexpr std::uint64_t kStreamInitialState = 2;
    static constexpr std::uint64_t kStreamShifts = 3;

    std::uint64_t derive(std::uint64_t stream, std::uint64_t counter = 0) const {
        return mix64(mix64(base ^ mix64(stream)) ^ counter);
    }

    std::uint64_t reservoir_seed() const { return derive(kStreamReservoir); }
    std::uint64_t initial_state_seed() const { return derive(kStreamInitialState); }

    std::uint64_t shift_seed(std::uint64_t point_index, std::uint64_t member) const {
        return derive(kStreamShifts, (point_index << 20) + member);
    }
};

} // namespace shiftres
