// Seeded randomness helpers with bit-identical results across
// platforms (std distributions are implementation-defined, so none are used
// anywhere results depend on them).
#pragma once

#include <cstdint>
#include <random>

namespace qaoa {

/// Uniform double in [0,1) from the top 53 bits of one engine draw.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// splitmix64 finalizer; decorrelates per-task seeds derived from one root.
inline std::uint64_t mix_seed(std::uint64_t root, std::uint64_t salt) {
    std::uint64_t z = root + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace qaoa
