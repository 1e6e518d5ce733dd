#pragma once

#include <cstdint>

namespace qkdsim::rng {

// Counter-based generator built on the splitmix64 output function. Every
// (stream, counter) pair maps to an independent 64-bit word, so draws can be
// evaluated in any order by any number of workers with identical results.

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

struct StreamKey {
  std::uint64_t value = 0;
};

constexpr std::uint64_t derive(std::uint64_t key, std::uint64_t word) {
  return mix64(key + kGolden * (word + 1));
}

/// Per-role stream, split from the master seed by channel coordinates.
/// role: 0 = alice modulator, 1 = bob modulator, 2 = detectors.
constexpr StreamKey stream_key(std::uint64_t master_seed, std::uint32_t wavelength_idx,
                               std::uint32_t subcarrier_idx, std::uint32_t role) {
  std::uint64_t k = mix64(master_seed + kGolden);
  k = derive(k, wavelength_idx);
  k = derive(k, subcarrier_idx);
  k = derive(k, role);
  return {k};
}

/// counter-th word of a stream (the splitmix64 sequence seeded by the key).
constexpr std::uint64_t draw(StreamKey key, std::uint64_t counter) {
  return mix64(key.value + kGolden * (counter + 1));
}

/// Uniform double in [0, 1) from the top 53 bits.
constexpr double to_unit(std::uint64_t word) {
  return static_cast<double>(word >> 11) * 0x1.0p-53;
}

constexpr bool top_bit(std::uint64_t word) { return (word >> 63) != 0; }

}  // namespace qkdsim::rng
