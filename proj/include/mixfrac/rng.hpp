#pragma once

#include <cstdint>

namespace mixfrac {

/// SplitMix64: tiny, seedable, identical on every platform. std::mt19937
/// would do, but distribution outputs are not pinned by the standard and the
/// reports must be byte-reproducible across toolchains.
class SplitMix64 {
  public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [lo, hi] inclusive (small ranges; modulo bias is
    /// immaterial at 2^64).
    long range(long lo, long hi) { return lo + long(next() % uint64_t(hi - lo + 1)); }

  private:
    uint64_t state_;
};

} // namespace mixfrac
