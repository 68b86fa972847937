#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ispec/trace.hpp"

namespace ispec::photon {

/// Pulsed weak-coherent source and threshold single-photon detector.
/// mean_photons_per_pulse is the mean photon number at the interferometer
/// output plane; extinction_ratio_db may be +inf for a perfect carver.
struct PulseTrainConfig {
  double rep_rate = 1e9;                 // Hz
  double pulse_width = 200e-12;          // s
  double extinction_ratio_db = 60.0;     // dB
  double mean_photons_per_pulse = 0.02;  // mu
  double detector_efficiency = 0.5;      // [0, 1]
  double dark_rate = 0.0;                // counts/s
  double bin_duration = 50e-6;           // s

  double mu_eff() const { return mean_photons_per_pulse * detector_efficiency; }
  void validate() const;
};

enum class BinLabel : std::uint8_t { zero = 0, pi = 1, unmodulated = 2 };

/// Per-bin photon counts with the modulation label applied to each bin.
struct TimeTagSeries {
  struct Bin {
    std::uint64_t count = 0;
    BinLabel label = BinLabel::unmodulated;
  };
  std::vector<Bin> bins;
  double bin_duration = 0.0;  // s
  double t0 = 0.0;            // s
};

/// Folded per-bin phase plus drift-rate statistics.
struct DriftStats {
  std::vector<double> drift_trace;  // rad, one value per bin, in [0, pi]
  std::vector<double> rate_trace;   // rad/ms
  double rate_std = 0.0;            // rad/ms
  double rate_max_abs = 0.0;        // rad/ms, == max |rate_trace| exactly
};

/// Click probability per pulse for a weak-coherent pulse interfering at
/// phase dphi with the given visibility:
///   p = 1 - exp(-mu_eff (1 + V cos dphi)/2 - p_leak),  combined with the
/// dark probability dark_rate/rep_rate via p_total = 1 - (1-p)(1-p_dark).
/// p_leak = mu_eff * 10^(-ER/10) models intensity-modulator leakage between
/// pulses as an incoherent background. Valid in the weak-signal regime
/// mu_eff <= 0.5.
double click_probability(double dphi, double visibility,
                         const PulseTrainConfig& cfg);

/// Bernoulli per-pulse click simulation, accumulated into bins of
/// bin_duration. dphi_trace must be sampled at rep_rate; the pattern labels
/// bins cyclically (pi adds a pi phase shift); an empty pattern means all
/// bins are unmodulated. Per-bin seeds are derived from (seed, bin index),
/// so disjoint bin ranges are reproducible and parallelisable.
TimeTagSeries simulate_counts(const PhaseTrace& dphi_trace, double visibility,
                              const PulseTrainConfig& cfg,
                              std::span<const BinLabel> pattern,
                              std::uint64_t seed);

/// Count-to-phase inversion using fringe extrema:
///   phase = arccos(clamp((2c - (r_max+r_min))/(r_max-r_min), -1, 1)),
/// then a centred finite difference (one-sided at the ends) divided by the
/// bin duration, expressed in rad/ms.
DriftStats counts_to_phase(const TimeTagSeries& series, double r_max,
                           double r_min);

/// Same, with r_max/r_min defaulted to the observed extrema of the series.
DriftStats counts_to_phase(const TimeTagSeries& series);

struct QberResult {
  double qber = 0.0;
  std::uint64_t n_correct = 0;
  std::uint64_t n_error = 0;
};

/// Single-detector decision rule: clicks in pi-labelled bins are errors,
/// clicks in zero-labelled bins are correct. Unmodulated bins are ignored.
QberResult qber(const TimeTagSeries& series);

/// Free-running drift preset: Wiener diffusion calibrated against the
/// folded-phase oracle so the drift-rate std lands near 7 rad/ms at the
/// default 50 us bin duration.
inline constexpr double kDriftPresetDiffusion = 6400.0;  // rad^2/s

}  // namespace ispec::photon
