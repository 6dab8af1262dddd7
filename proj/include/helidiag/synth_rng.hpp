// Deterministic random streams. std engines leave distribution output
// implementation-defined, so seeded reproducibility uses this fixed scheme:
// splitmix64 state updates, doubles from the top 53 bits.
#pragma once

#include <cstdint>

namespace helidiag {

class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t state_;
};

/// FNV-1a, used to derive per-module seeds from one global seed:
/// module_seed = splitmix64_mix(global_seed ^ fnv1a(module_name)).
std::uint64_t fnv1a(const char* text);

/// One splitmix64 scramble of a value (seed-splitting helper).
std::uint64_t seed_mix(std::uint64_t v);

}  // namespace helidiag
