#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkdsim/types.hpp"

namespace qkdsim {

/// dB power factor to linear scale.
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

struct SubcarrierParams {
  double frequency_ghz = 0.0;       // f_n
  double mean_photon_number = 1.0;  // photons per pulse per subcarrier, <= 1
  double modulation_index = 0.2;
};

struct WavelengthChannel {
  double center_wavelength_nm = 1550.0;
  std::vector<SubcarrierParams> subcarriers;
};

struct DetectorParams {
  double efficiency = 0.1;       // quantum efficiency of each gated SPAD
  double dark_count_prob = 1e-5; // per gate, per detector pair
  double gate_width_ns = 2.5;
};

struct LinkParams {
  double fiber_loss_db = 4.0;
  double bob_loss_db = 4.5;       // receiver-internal losses, Raman relief
  double cwdm_insertion_db = 0.5; // per mux stage; applied twice (mux+demux)
  double dispersion_ps_nm_km = 17.0;
  double fiber_length_km = 10.0;
  // Net accumulated dispersion after the compensating fiber. This, not the
  // raw span dispersion, sets the interference phase offset.
  double dcf_residual_ps_nm = 0.0;
  bool reference_active = true;
};

struct ReferenceChannelParams {
  double power_dbm = -25.0;
  // Scattered-photon click probability per watt of co-propagating reference
  // power per detector gate. The default is calibrated so that scattering
  // counts equal dark counts at -25 dBm input and 4.5 dB receiver loss.
  double raman_coefficient_per_w_per_gate = default_raman_coefficient();

  static double default_raman_coefficient() {
    return 1e-5 / (dbm_to_watts(-25.0) * db_to_linear(-4.5));
  }
};

struct FilterParams {
  double extinction_db = 25.0;
  double insertion_loss_db = 1.5;
  double carrier_reflectivity = 0.999;
};

/// Residual crosstalk ratios relative to the signal photon probability.
/// Neither intermodulation nor source-linewidth leakage can be derived from
/// first principles at this level, so both are parametric suppressions.
struct CrosstalkParams {
  double imd_rejection_db = 30.0;
  double phn_rejection_db = 23.0;
  double phn_scale = 0.005;  // keeps the linewidth term below d_B/10 by default
};

struct SystemConfig {
  std::vector<WavelengthChannel> wavelength_channels;
  DetectorParams detectors;
  LinkParams link;
  ReferenceChannelParams reference;
  FilterParams filter;
  CrosstalkParams crosstalk;
  double visibility = 0.96;       // interference contrast V
  double pulse_rate_hz = 1e6;
  double secret_fraction = 0.31;  // sifted -> secret discount

  std::size_t channel_count() const {
    std::size_t n = 0;
    for (const auto& wc : wavelength_channels) n += wc.subcarriers.size();
    return n;
  }

  /// Flattened (wavelength_idx, subcarrier_idx) list in canonical order.
  std::vector<ChannelId> channels() const {
    std::vector<ChannelId> out;
    out.reserve(channel_count());
    for (std::uint16_t w = 0; w < wavelength_channels.size(); ++w)
      for (std::uint16_t s = 0; s < wavelength_channels[w].subcarriers.size(); ++s)
        out.push_back({w, s});
    return out;
  }

  const SubcarrierParams& subcarrier(ChannelId id) const {
    return wavelength_channels.at(id.wavelength_idx).subcarriers.at(id.subcarrier_idx);
  }
  const WavelengthChannel& wavelength(ChannelId id) const {
    return wavelength_channels.at(id.wavelength_idx);
  }
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline void check(std::vector<std::string>& errors, bool ok, std::string msg) {
  if (!ok) errors.push_back(std::move(msg));
}

}  // namespace detail

/// Validates every structural invariant and derived bound. Returns one
/// message per violation; empty means valid. Pure, so trivially idempotent.
inline std::vector<std::string> validate_config(const SystemConfig& cfg) {
  using detail::check;
  std::vector<std::string> errors;

  check(errors, !cfg.wavelength_channels.empty(), "wavelength_channels: must contain at least one channel");
  check(errors, cfg.visibility > 0.0 && cfg.visibility <= 1.0,
        "visibility: must be in (0, 1] (got " + std::to_string(cfg.visibility) + ")");
  check(errors, cfg.pulse_rate_hz > 0.0, "pulse_rate_hz: must be > 0");
  check(errors, cfg.secret_fraction > 0.0 && cfg.secret_fraction <= 1.0,
        "secret_fraction: must be in (0, 1]");

  const auto& det = cfg.detectors;
  check(errors, det.efficiency > 0.0 && det.efficiency <= 1.0, "detectors.efficiency: must be in (0, 1]");
  check(errors, det.dark_count_prob >= 0.0, "detectors.dark_count_prob: must be >= 0");
  check(errors, det.gate_width_ns > 0.0, "detectors.gate_width_ns: must be > 0");

  const auto& link = cfg.link;
  check(errors, link.fiber_loss_db >= 0.0, "link.fiber_loss_db: negative loss");
  check(errors, link.bob_loss_db >= 0.0, "link.bob_loss_db: negative loss");
  check(errors, link.cwdm_insertion_db >= 0.0, "link.cwdm_insertion_db: negative loss");
  check(errors, link.fiber_length_km >= 0.0, "link.fiber_length_km: must be >= 0");

  check(errors, cfg.reference.raman_coefficient_per_w_per_gate >= 0.0,
        "reference.raman_coefficient_per_w_per_gate: must be >= 0");

  const auto& f = cfg.filter;
  check(errors, f.extinction_db >= 0.0, "filter.extinction_db: must be >= 0");
  check(errors, f.insertion_loss_db >= 0.0, "filter.insertion_loss_db: must be >= 0");
  check(errors, f.carrier_reflectivity >= 0.0 && f.carrier_reflectivity <= 1.0,
        "filter.carrier_reflectivity: must be in [0, 1]");

  const auto& ct = cfg.crosstalk;
  check(errors, ct.imd_rejection_db >= 0.0, "crosstalk.imd_rejection_db: must be >= 0");
  check(errors, ct.phn_rejection_db >= 0.0, "crosstalk.phn_rejection_db: must be >= 0");
  check(errors, ct.phn_scale >= 0.0, "crosstalk.phn_scale: must be >= 0");

  for (std::size_t w = 0; w < cfg.wavelength_channels.size(); ++w) {
    const auto& wc = cfg.wavelength_channels[w];
    const std::string prefix = "wavelength_channels[" + std::to_string(w) + "]";
    check(errors, wc.center_wavelength_nm > 0.0, prefix + ".center_wavelength_nm: must be > 0");
    check(errors, !wc.subcarriers.empty(), prefix + ".subcarriers: must contain at least one subcarrier");
    for (std::size_t s = 0; s < wc.subcarriers.size(); ++s) {
      const auto& sc = wc.subcarriers[s];
      const std::string sp = prefix + ".subcarriers[" + std::to_string(s) + "]";
      check(errors, sc.frequency_ghz > 0.0, sp + ".frequency_ghz: must be > 0");
      check(errors, sc.mean_photon_number > 0.0 && sc.mean_photon_number <= 1.0,
            sp + ".mean_photon_number: must be in (0, 1] (got " +
                std::to_string(sc.mean_photon_number) + ")");
      check(errors, sc.modulation_index > 0.0 && sc.modulation_index <= 1.0,
            sp + ".modulation_index: must be in (0, 1]");
      for (std::size_t t = 0; t < s; ++t) {
        if (wc.subcarriers[t].frequency_ghz == sc.frequency_ghz) {
          errors.push_back(prefix + ": duplicate subcarrier frequency " +
                           std::to_string(sc.frequency_ghz) + " GHz");
        }
      }
    }
  }

  // Derived bounds: linear budget and worst-case click probability per
  // detector per gate. Computed only if the raw fields are sane.
  if (errors.empty()) {
    const double transmission =
        db_to_linear(-(link.fiber_loss_db + 2.0 * link.cwdm_insertion_db +
                       f.insertion_loss_db));
    double p_raman = 0.0;
    if (link.reference_active) {
      p_raman = cfg.reference.raman_coefficient_per_w_per_gate *
                (dbm_to_watts(cfg.reference.power_dbm) * db_to_linear(-link.bob_loss_db));
    }
    for (const auto& wc : cfg.wavelength_channels) {
      double p_signal_sum = 0.0;
      for (const auto& sc : wc.subcarriers)
        p_signal_sum += det.efficiency * sc.mean_photon_number * transmission;
      for (const auto& sc : wc.subcarriers) {
        const double p_signal = det.efficiency * sc.mean_photon_number * transmission;
        const double p_filter = (p_signal_sum - p_signal) * db_to_linear(-f.extinction_db);
        const double p_imd = p_signal * db_to_linear(-ct.imd_rejection_db);
        const double p_phn = p_signal * db_to_linear(-ct.phn_rejection_db) * ct.phn_scale;
        const double p_x = p_raman + p_filter + p_imd + p_phn;
        const double worst_click =
            p_signal * (1.0 + cfg.visibility) / 2.0 + p_x / 2.0 + det.dark_count_prob / 2.0;
        check(errors, worst_click <= 1.0,
              "derived click probability per detector per gate exceeds 1 (" +
                  std::to_string(worst_click) + ") for subcarrier " +
                  std::to_string(sc.frequency_ghz) + " GHz");
      }
    }
  }

  return errors;
}

inline std::string join_errors(const std::vector<std::string>& errors) {
  std::string out;
  for (const auto& e : errors) {
    if (!out.empty()) out += "; ";
    out += e;
  }
  return out;
}

/// Throwing form of validate_config for pipeline entry points.
inline const SystemConfig& ensure_valid(const SystemConfig& cfg) {
  auto errors = validate_config(cfg);
  if (!errors.empty()) throw ConfigError(join_errors(errors));
  return cfg;
}

/// The demonstration-link configuration shipped as configs/paper_baseline.json:
/// one wavelength channel at 1557.30 nm carrying 10 and 15 GHz subcarriers,
/// mu = 1, 10% SPAD efficiency, 1e-5 darks, 6.5 dB total loss, V = 0.96,
/// 1 MHz pulse rate, compensated dispersion, -25 dBm reference channel.
inline SystemConfig baseline_config() {
  SystemConfig cfg;
  cfg.wavelength_channels = {
      {1557.30, {{10.0, 1.0, 0.2}, {15.0, 1.0, 0.2}}},
  };
  return cfg;
}

/// Two-tier variant: a second wavelength channel at 1548.78 nm, same
/// subcarrier plan, for M*N = 4 parallel keys.
inline SystemConfig baseline_wdm_config() {
  SystemConfig cfg = baseline_config();
  cfg.wavelength_channels.insert(cfg.wavelength_channels.begin(),
                                 {1548.78, {{10.0, 1.0, 0.2}, {15.0, 1.0, 0.2}}});
  return cfg;
}

}  // namespace qkdsim
