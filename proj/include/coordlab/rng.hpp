#pragma once

#include <cstdint>

namespace coordlab {

// SplitMix64: tiny counter-based generator with full 64-bit state avalanche.
// Used for simulation so that runs are reproducible across platforms and
// independent of the standard library's distribution implementations.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n). Lemire's multiply-shift; the slight modulo
    // bias (< 2^-40 for the n used here) is irrelevant for sampling agents.
    std::uint32_t next_below(std::uint32_t n) {
        return static_cast<std::uint32_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

  private:
    std::uint64_t state_;
};

// Derives a stream seed for one replica from the master seed.  Feeding the
// index through a SplitMix64 step decorrelates adjacent replicas.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
    SplitMix64 g(master ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    return g.next_u64();
}

}  // namespace coordlab
