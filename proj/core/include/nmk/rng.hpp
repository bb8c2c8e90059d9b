#pragma once

#include <cmath>
#include <cstdint>

namespace nmk {

/// Deterministic, platform-independent generator (xoshiro256++ seeded via
/// splitmix64). Substreams keyed by (seed, stream index) are statistically
/// independent, which makes parallel simulation reproducible regardless of
/// scheduling.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : Rng(seed, 0) {}

    Rng(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t x = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
        for (auto& word : state_) word = splitmix(x);
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

    /// Uniform in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Exponential variate by inverse CDF; rate > 0. Strictly positive: the
    /// underlying uniform lives in the open interval (0, 1).
    double exponential(double rate) {
        const double u = (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
        return -std::log1p(-u) / rate;
    }

  private:
    static std::uint64_t splitmix(std::uint64_t& x) {
        x += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

    std::uint64_t state_[4];
};

}  // namespace nmk
