#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace qkdsim {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Optical/RF modulation phase, canonical in [0, 2*pi).
///
/// The protocol only ever inscribes multiples of pi/2. Those are tracked
/// exactly (as a quarter-turn index) so that phase algebra and the derived
/// interference cosines stay free of trigonometric rounding: cos and sin of
/// a quarter-exact phase are looked up as {-1, 0, +1}. Arbitrary phases
/// (dispersion offsets, drift) fall back to floating point.
class Phase {
 public:
  constexpr Phase() = default;

  static Phase from_radians(double radians) {
    Phase p;
    p.rad_ = canonicalize(radians);
    p.quarter_ = quarter_of(p.rad_);
    return p;
  }

  /// Exact multiple of pi/2: quarter(k) == k*pi/2, k taken mod 4.
  static constexpr Phase quarter(int k) {
    Phase p;
    p.quarter_ = static_cast<std::int8_t>(((k % 4) + 4) % 4);
    p.rad_ = kQuarterRad[p.quarter_];
    return p;
  }

  constexpr double radians() const { return rad_; }
  constexpr bool is_quarter_exact() const { return quarter_ >= 0; }
  constexpr int quarter_index() const { return quarter_; }

  /// cos of this phase; exact for quarter multiples.
  double cos() const {
    return quarter_ >= 0 ? kQuarterCos[quarter_] : std::cos(rad_);
  }
  double sin() const {
    return quarter_ >= 0 ? kQuarterSin[quarter_] : std::sin(rad_);
  }

  /// cos(phase + offset_radians) without losing quarter exactness:
  /// cos(q + t) = cos(q)cos(t) - sin(q)sin(t).
  double cos_plus(double offset_radians) const {
    if (offset_radians == 0.0) return cos();
    if (quarter_ >= 0) {
      return kQuarterCos[quarter_] * std::cos(offset_radians) -
             kQuarterSin[quarter_] * std::sin(offset_radians);
    }
    return std::cos(rad_ + offset_radians);
  }

  friend Phase operator+(Phase a, Phase b) {
    if (a.quarter_ >= 0 && b.quarter_ >= 0)
      return quarter(a.quarter_ + b.quarter_);
    return from_radians(a.rad_ + b.rad_);
  }
  friend Phase operator-(Phase a, Phase b) {
    if (a.quarter_ >= 0 && b.quarter_ >= 0)
      return quarter(a.quarter_ - b.quarter_);
    return from_radians(a.rad_ - b.rad_);
  }

  friend constexpr bool operator==(Phase a, Phase b) { return a.rad_ == b.rad_; }

  /// Reduce to [0, 2*pi). Idempotent: values already in range pass through
  /// bit-identically (fmod is exact for |x| < divisor).
  static double canonicalize(double radians) {
    double r = std::fmod(radians, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;  // fmod rounding at the seam
    return r;
  }

 private:
  static constexpr double kQuarterRad[4] = {
      0.0, std::numbers::pi / 2, std::numbers::pi, 1.5 * std::numbers::pi};
  static constexpr double kQuarterCos[4] = {1.0, 0.0, -1.0, 0.0};
  static constexpr double kQuarterSin[4] = {0.0, 1.0, 0.0, -1.0};

  static constexpr std::int8_t quarter_of(double canonical) {
    for (int k = 0; k < 4; ++k)
      if (canonical == kQuarterRad[k]) return static_cast<std::int8_t>(k);
    return -1;
  }

  double rad_ = 0.0;
  std::int8_t quarter_ = 0;
};

}  // namespace qkdsim
