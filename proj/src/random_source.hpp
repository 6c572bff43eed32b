#pragma once

#include <array>
#include <cstdint>

namespace labtile {

/// Deterministic random source: xoshiro256++ seeded through splitmix64.
/// Both algorithms are fixed and platform-independent, so identical seeds
/// yield identical sequences everywhere; this is the project's
/// reproducibility contract and platform-default generators must not be
/// substituted. A RandomSource is single-owner: never share one across
/// threads, derive() independent sources instead.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : seed_(seed) {
        std::uint64_t x = seed;
        for (auto& word : state_) word = splitmix64(x);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1), 53 significant bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    std::uint64_t seed() const { return seed_; }

    /// Independent source for parallel work (one per image or sweep cell).
    /// Deterministic in (seed, stream).
    RandomSource derive(std::uint64_t stream) const {
        std::uint64_t x = seed_ ^ (0x9E3779B97F4A7C15ull * (stream + 1));
        return RandomSource(splitmix64(x));
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::array<std::uint64_t, 4> state_;
};

}  // namespace labtile
