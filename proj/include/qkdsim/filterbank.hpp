#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkdsim/config.hpp"

namespace qkdsim::filterbank {

/// One spectral line at the receiver input, identified by its signed offset
/// from the optical carrier.
struct SpectralComponent {
  enum class Kind { carrier, sideband, intermod };

  Kind kind = Kind::carrier;
  int subcarrier_index = -1;  // sidebands only
  int sign = 0;               // +1 upper, -1 lower
  double offset_ghz = 0.0;

  static SpectralComponent carrier() { return {}; }
  static SpectralComponent sideband(int subcarrier_index, int sign, double f_ghz) {
    return {Kind::sideband, subcarrier_index, sign, sign * f_ghz};
  }
  static SpectralComponent intermod(double signed_offset_ghz) {
    return {Kind::intermod, -1, signed_offset_ghz < 0 ? -1 : 1, signed_offset_ghz};
  }
};

struct Port {
  enum class Kind { carrier, sideband };
  Kind kind = Kind::carrier;
  int subcarrier_index = -1;
  int sign = 0;
  double center_offset_ghz = 0.0;
};

/// All third-order two-tone and three-tone mixing frequencies 2fi-fj and
/// fi+fj-fk that fall inside the modeled band (0, 2*f_max]. Throws
/// ConfigError if any product lands on a signal frequency, since such a
/// plan cannot be filtered apart.
inline std::vector<double> imd_frequencies(const std::vector<double>& fs) {
  std::vector<double> products;
  if (fs.size() < 2) return products;
  const double f_max = *std::max_element(fs.begin(), fs.end());

  auto add = [&](double f) {
    if (f <= 0.0 || f > 2.0 * f_max) return;
    for (double signal : fs) {
      if (f == signal)
        throw ConfigError("intermodulation product at " + std::to_string(f) +
                          " GHz collides with a signal subcarrier");
    }
    products.push_back(f);
  };

  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t j = 0; j < fs.size(); ++j)
      if (i != j) add(2.0 * fs[i] - fs[j]);
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t j = i + 1; j < fs.size(); ++j)
      for (std::size_t k = 0; k < fs.size(); ++k)
        if (k != i && k != j) add(fs[i] + fs[j] - fs[k]);

  std::sort(products.begin(), products.end());
  products.erase(std::unique(products.begin(), products.end()), products.end());
  return products;
}

/// Effective routing matrix of the three-stage grating filter: a carrier
/// reflection port plus one transmission port per sideband (2N+1 ports).
/// The stages collapse to three numbers: intended insertion loss, wrong-port
/// extinction, and an extra upper/lower split rejection applied on top of
/// the extinction for leakage that crosses the band splitter.
class PortMatrix {
 public:
  PortMatrix(const WavelengthChannel& channel, const FilterParams& filter)
      : intended_(db_to_linear(-filter.insertion_loss_db)),
        extinction_(db_to_linear(-filter.extinction_db)),
        reflectivity_(filter.carrier_reflectivity),
        band_split_(db_to_linear(-kBandSplitRejectionDb)) {
    if (channel.subcarriers.empty())
      throw ConfigError("filter bank requires at least one subcarrier");
    ports_.push_back({Port::Kind::carrier, -1, 0, 0.0});
    for (std::size_t s = 0; s < channel.subcarriers.size(); ++s) {
      const double f = channel.subcarriers[s].frequency_ghz;
      frequencies_.push_back(f);
      ports_.push_back({Port::Kind::sideband, static_cast<int>(s), -1, -f});
      ports_.push_back({Port::Kind::sideband, static_cast<int>(s), +1, +f});
    }
  }

  std::size_t port_count() const { return ports_.size(); }
  const std::vector<Port>& ports() const { return ports_; }
  double intended_transmission() const { return intended_; }
  const std::vector<double>& frequencies() const { return frequencies_; }

  /// Transmission of one component into every port, in port order.
  std::vector<double> route(const SpectralComponent& c) const {
    std::vector<double> row(ports_.size(), 0.0);
    switch (c.kind) {
      case SpectralComponent::Kind::carrier:
        for (std::size_t p = 0; p < ports_.size(); ++p) {
          row[p] = ports_[p].kind == Port::Kind::carrier
                       ? reflectivity_
                       : (1.0 - reflectivity_) * intended_ * extinction_;
        }
        return row;
      case SpectralComponent::Kind::sideband:
        if (c.subcarrier_index < 0 ||
            c.subcarrier_index >= static_cast<int>(frequencies_.size()))
          throw std::invalid_argument("route: sideband index outside channel plan");
        [[fallthrough]];
      case SpectralComponent::Kind::intermod:
        for (std::size_t p = 0; p < ports_.size(); ++p) {
          const Port& port = ports_[p];
          if (port.kind == Port::Kind::carrier) {
            row[p] = intended_ * extinction_ * band_split_;
          } else if (c.kind == SpectralComponent::Kind::sideband &&
                     port.subcarrier_index == c.subcarrier_index &&
                     port.sign == c.sign) {
            row[p] = intended_;
          } else {
            const bool crosses_split = port.sign != c.sign;
            row[p] = intended_ * extinction_ * (crosses_split ? band_split_ : 1.0);
          }
        }
        return row;
    }
    throw std::invalid_argument("route: unknown spectral component kind");
  }

 private:
  // Rejection of the upper/lower band separation stage, on top of the
  // per-port extinction.
  static constexpr double kBandSplitRejectionDb = 20.0;

  std::vector<Port> ports_;
  std::vector<double> frequencies_;
  double intended_;
  double extinction_;
  double reflectivity_;
  double band_split_;
};

inline PortMatrix build_port_matrix(const WavelengthChannel& channel,
                                    const FilterParams& filter) {
  return PortMatrix(channel, filter);
}

}  // namespace qkdsim::filterbank
