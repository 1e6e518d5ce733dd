#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qkdsim/config.hpp"
#include "qkdsim/phase.hpp"
#include "qkdsim/types.hpp"

namespace qkdsim::physics {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

/// Single-photon detection probabilities at the two sideband detectors of
/// one subcarrier.
struct SidebandProbabilities {
  double p_usb = 0.0;
  double p_lsb = 0.0;
};

/// Wrong-count probability decomposition for one channel, per detector pair
/// per gate.
struct CrosstalkBudget {
  double p_raman = 0.0;   // reference-channel scattering
  double p_filter = 0.0;  // finite-extinction leakage of neighbouring subcarriers
  double p_imd = 0.0;     // third-order intermodulation residue
  double p_phn = 0.0;     // source-linewidth leakage near the carrier
  double p_x = 0.0;       // sum of the above

  static CrosstalkBudget make(double raman, double filter, double imd, double phn) {
    CrosstalkBudget b{raman, filter, imd, phn, 0.0};
    b.p_x = b.p_raman + b.p_filter + b.p_imd + b.p_phn;
    return b;
  }
};

/// Closed-form per-channel performance figures.
struct RateEstimate {
  double detection_prob_per_pulse = 0.0;  // p_signal + p_x + d_B
  double sifted_rate_bps = 0.0;
  double secret_rate_bps = 0.0;
  double qber = 0.0;
  double p_signal = 0.0;
  CrosstalkBudget crosstalk;
  double v_eff = 0.0;
  double theta_d_rad = 0.0;
};

/// Interference detection probabilities:
///   p_usb = rho*mu*T * (1 + V cos(dphi + theta_d)) / 2
///   p_lsb = rho*mu*T * (1 - V cos(dphi + theta_d)) / 2
/// Their sum is rho*mu*T for any phase (photon-number conservation).
inline SidebandProbabilities detection_probabilities(Phase delta_phi, double rho,
                                                     double mu, double transmission,
                                                     double visibility,
                                                     Phase dispersion_offset) {
  const double base = rho * mu * transmission;
  if (base > 1.0)
    throw std::domain_error("detection_probabilities: rho*mu*T exceeds 1");
  const double interference =
      visibility * delta_phi.cos_plus(dispersion_offset.radians());
  return {base * (1.0 + interference) / 2.0, base * (1.0 - interference) / 2.0};
}

/// Linear end-to-end transmission of the quantum band: span loss, two CWDM
/// passes and the receiver filter insertion loss.
inline double end_to_end_transmission(const LinkParams& link, const FilterParams& filter) {
  return db_to_linear(-(link.fiber_loss_db + 2.0 * link.cwdm_insertion_db +
                        filter.insertion_loss_db));
}

/// Interference phase offset of a two-sideband channel under accumulated
/// chromatic dispersion:  theta_d = pi * lambda^2 * (D*L) * f^2 / c.
/// Scales with the subcarrier frequency squared; zero when compensated.
inline Phase accumulated_dispersion_phase(double accumulated_ps_nm, double wavelength_nm,
                                          double f_ghz) {
  if (accumulated_ps_nm == 0.0) return Phase::quarter(0);
  const double lambda_m = wavelength_nm * 1e-9;
  const double dl_s_per_m = accumulated_ps_nm * 1e-3;  // ps/nm -> s/m
  const double f_hz = f_ghz * 1e9;
  return Phase::from_radians(std::numbers::pi * lambda_m * lambda_m * dl_s_per_m *
                             f_hz * f_hz / kSpeedOfLight);
}

inline Phase dispersion_phase_offset(double dispersion_ps_nm_km, double length_km,
                                     double wavelength_nm, double f_ghz) {
  return accumulated_dispersion_phase(dispersion_ps_nm_km * length_km, wavelength_nm,
                                      f_ghz);
}

/// Effective dispersion phase of the configured link for one channel.
inline Phase link_dispersion_phase(const SystemConfig& cfg, ChannelId id) {
  return accumulated_dispersion_phase(cfg.link.dcf_residual_ps_nm,
                                      cfg.wavelength(id).center_wavelength_nm,
                                      cfg.subcarrier(id).frequency_ghz);
}

/// Reference-channel scattering click probability per gate, linear in the
/// product of launched power and receiver transmission. Zero when the
/// reference channel is off.
inline double raman_click_probability(const ReferenceChannelParams& ref,
                                      double bob_loss_db, bool active) {
  if (!active) return 0.0;
  return ref.raman_coefficient_per_w_per_gate *
         (dbm_to_watts(ref.power_dbm) * db_to_linear(-bob_loss_db));
}

/// Signal photon probability rho*mu*T for one channel.
inline double signal_probability(const SystemConfig& cfg, ChannelId id) {
  return cfg.detectors.efficiency * cfg.subcarrier(id).mean_photon_number *
         end_to_end_transmission(cfg.link, cfg.filter);
}

/// Wrong-count budget for one channel. Filter leakage sums the other
/// subcarriers of the same wavelength channel suppressed by the extinction
/// ratio; intermodulation and linewidth terms are fixed rejections relative
/// to the channel's own signal probability.
inline CrosstalkBudget crosstalk_budget(const SystemConfig& cfg, ChannelId id) {
  const double p_signal = signal_probability(cfg, id);
  const double raman = raman_click_probability(cfg.reference, cfg.link.bob_loss_db,
                                               cfg.link.reference_active);

  double neighbour_sum = 0.0;
  const auto& wc = cfg.wavelength(id);
  for (std::size_t s = 0; s < wc.subcarriers.size(); ++s) {
    if (s == id.subcarrier_idx) continue;
    neighbour_sum += cfg.detectors.efficiency * wc.subcarriers[s].mean_photon_number *
                     end_to_end_transmission(cfg.link, cfg.filter);
  }
  const double filter = neighbour_sum * db_to_linear(-cfg.filter.extinction_db);
  const double imd = p_signal * db_to_linear(-cfg.crosstalk.imd_rejection_db);
  const double phn = p_signal * db_to_linear(-cfg.crosstalk.phn_rejection_db) *
                     cfg.crosstalk.phn_scale;
  return CrosstalkBudget::make(raman, filter, imd, phn);
}

/// QBER = [(1 - V_eff) p_signal + p_x + d_B] / [2 (p_signal + p_x + d_B)].
/// For V_eff in [0, 1] the result lies in [0, 0.5].
inline double qber_closed_form(double v_eff, double p_signal, double p_x, double d_b) {
  const double total = p_signal + p_x + d_b;
  if (total <= 0.0)
    throw std::domain_error("qber_closed_form: zero detection probability");
  return ((1.0 - v_eff) * p_signal + p_x + d_b) / (2.0 * total);
}

/// Closed-form rates for one channel. The effective visibility folds in the
/// dispersion phase offset (V cos theta_d) and collapses to zero when the
/// stabilizing reference channel is inactive. The factor 1/2 is the
/// basis-match probability of unbiased base choices.
inline RateEstimate rate_estimate(const SystemConfig& cfg, ChannelId id) {
  RateEstimate est;
  est.p_signal = signal_probability(cfg, id);
  est.crosstalk = crosstalk_budget(cfg, id);
  est.theta_d_rad = link_dispersion_phase(cfg, id).radians();
  est.v_eff = cfg.link.reference_active
                  ? cfg.visibility * link_dispersion_phase(cfg, id).cos()
                  : 0.0;
  est.detection_prob_per_pulse =
      est.p_signal + est.crosstalk.p_x + cfg.detectors.dark_count_prob;
  est.sifted_rate_bps = cfg.pulse_rate_hz * est.detection_prob_per_pulse * 0.5;
  est.qber = qber_closed_form(est.v_eff, est.p_signal, est.crosstalk.p_x,
                              cfg.detectors.dark_count_prob);
  est.secret_rate_bps = cfg.secret_fraction * est.sifted_rate_bps;
  return est;
}

/// Aggregated-over-best-single ratio in dB: 10 log10(sum / max).
inline double multiplexing_gain_db(const std::vector<double>& per_channel_rates) {
  if (per_channel_rates.empty())
    throw std::domain_error("multiplexing_gain_db: no channels");
  double sum = 0.0, best = 0.0;
  for (double r : per_channel_rates) {
    if (r < 0.0) throw std::domain_error("multiplexing_gain_db: negative rate");
    sum += r;
    if (r > best) best = r;
  }
  if (best == 0.0)
    throw std::domain_error("multiplexing_gain_db: all rates are zero");
  return 10.0 * std::log10(sum / best);
}

}  // namespace qkdsim::physics
