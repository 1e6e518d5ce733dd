#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qkdsim/phase.hpp"

namespace qkdsim {

enum class Bit : std::uint8_t { zero = 0, one = 1 };

/// The two conjugate encoding bases. Z carries phases {0, pi}, X carries
/// {pi/2, 3pi/2}; the receiver analyzes with 0 (Z) or pi/2 (X).
enum class Basis : std::uint8_t { z = 0, x = 1 };

/// Per-gate detector verdict for one subcarrier channel. A click on the
/// upper-sideband detector decodes as bit 0, lower sideband as bit 1.
enum class Outcome : std::uint8_t { none = 0, usb = 1, lsb = 2, both = 3 };

constexpr Bit flip(Bit b) { return b == Bit::zero ? Bit::one : Bit::zero; }

/// Sender phase for a (bit, basis) pair: (0,Z)->0, (1,Z)->pi,
/// (0,X)->pi/2, (1,X)->3pi/2.
constexpr Phase phase_for(Bit bit, Basis basis) {
  int q = (basis == Basis::x ? 1 : 0) + (bit == Bit::one ? 2 : 0);
  return Phase::quarter(q);
}

/// Receiver analysis phase: Z->0, X->pi/2.
constexpr Phase bob_phase_for(Basis basis) {
  return Phase::quarter(basis == Basis::x ? 1 : 0);
}

/// Phase mismatch alice - bob, canonical in [0, 2*pi). cos of the result is
/// +1/-1 for matched bases (bit 0/1) and 0 for mismatched bases.
inline Phase delta_phase(Phase alice, Phase bob) { return alice - bob; }

/// Identifies one subcarrier channel inside the multiplex.
struct ChannelId {
  std::uint16_t wavelength_idx = 0;
  std::uint16_t subcarrier_idx = 0;

  friend constexpr bool operator==(ChannelId a, ChannelId b) {
    return a.wavelength_idx == b.wavelength_idx &&
           a.subcarrier_idx == b.subcarrier_idx;
  }
  friend constexpr bool operator<(ChannelId a, ChannelId b) {
    if (a.wavelength_idx != b.wavelength_idx)
      return a.wavelength_idx < b.wavelength_idx;
    return a.subcarrier_idx < b.subcarrier_idx;
  }

  std::string to_string() const {
    return "w" + std::to_string(wavelength_idx) + "s" +
           std::to_string(subcarrier_idx);
  }
};

/// One slot of Alice's and Bob's modulator settings on a single channel.
struct ChannelPulse {
  Bit alice_bit = Bit::zero;
  Basis alice_basis = Basis::z;
  Phase alice_phase;  // always phase_for(alice_bit, alice_basis)
  Basis bob_basis = Basis::z;
  Phase bob_phase;  // always bob_phase_for(bob_basis)
};

/// Per-slot modulator settings across all channels, channel-major in
/// (wavelength_idx, subcarrier_idx) order.
struct PulseRecord {
  std::uint64_t slot_index = 0;
  std::vector<ChannelPulse> channels;
};

/// Per-slot detector outcomes across all channels, same channel order.
struct DetectionRecord {
  std::uint64_t slot_index = 0;
  std::vector<Outcome> channels;
};

inline const char* to_token(Basis b) { return b == Basis::z ? "z" : "x"; }

inline const char* to_token(Outcome o) {
  switch (o) {
    case Outcome::none: return "none";
    case Outcome::usb: return "usb";
    case Outcome::lsb: return "lsb";
    case Outcome::both: return "double";
  }
  return "?";
}

}  // namespace qkdsim
