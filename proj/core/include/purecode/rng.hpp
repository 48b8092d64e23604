#pragma once

#include <cstdint>

namespace purecode {

/// 64-bit finalizer (MurmurHash3 / SplitMix64 style avalanche).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z ^= z >> 33;
    z *= 0xFF51AFD7ED558CCDULL;
    z ^= z >> 33;
    z *= 0xC4CEB9FE1A85EC53ULL;
    z ^= z >> 33;
    return z;
}

/// SplitMix64 (Steele, Lea & Flood 2014): a counter-based generator with a
/// 64-bit state advanced by the golden-ratio increment and mixed through an
/// avalanche finalizer. Trivially splittable: any (seed, index) pair derives
/// an independent stream, which keeps sharded Monte Carlo runs reproducible.
class SplitMix64 {
  public:
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), using the full 64-bit output.
    constexpr double next_unit() noexcept {
        return static_cast<double>(next()) * 0x1.0p-64;
    }

  private:
    std::uint64_t state_;
};

/// The per-shot stream for (seed, shot index). Distinct indices give
/// decorrelated streams, so shots can be computed in any order or in
/// shards and still merge to the sequential result.
constexpr SplitMix64 shot_stream(std::uint64_t seed, std::uint64_t shot_index) noexcept {
    return SplitMix64(mix64(seed ^ mix64(shot_index + 0x9E3779B97F4A7C15ULL)));
}

}  // namespace purecode
