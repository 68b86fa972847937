#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ispec/trace.hpp"

namespace ispec::spectral {

enum class SpectrumUnit { phase_psd, freq_psd };

struct WelchMeta {
  std::size_t window_len = 0;
  double overlap = 0.0;
  std::string window_kind = "hann";
  std::size_t segment_count = 0;
};

/// One-sided PSD estimate. DC is excluded; freqs are strictly increasing.
/// Bins masked invalid (e.g. near delay-transfer nulls) keep their frequency
/// but carry no trustworthy value.
struct SpectrumEstimate {
  std::vector<double> freqs;  // Hz
  std::vector<double> values;
  SpectrumUnit unit = SpectrumUnit::phase_psd;
  std::vector<std::uint8_t> valid;
  WelchMeta meta;
};

struct VisibilityEstimate {
  double visibility = 0.0;
  double p_max = 0.0;
  double p_min = 0.0;
  std::size_t window_samples = 0;
};

struct ExtractedPhase {
  PhaseTrace phase;
  double clamped_fraction = 0.0;  // fraction of samples clipped into [-1, 1]
};

inline constexpr double kDefaultNullGuard = 0.05;
inline constexpr std::size_t kDefaultWelchWindow = 1000000;
inline constexpr double kDefaultWelchOverlap = 0.5;

/// Conservative fringe-visibility estimate: moving-average smooth, then the
/// smallest (max-min)/(max+min) over sliding extrema windows. The reported
/// p_max/p_min are those of the most conservative window.
VisibilityEstimate moving_extrema_visibility(std::span<const double> samples,
                                             std::size_t smooth_window,
                                             std::size_t extrema_window);
VisibilityEstimate moving_extrema_visibility(const VoltageTrace& trace,
                                             std::size_t smooth_window,
                                             std::size_t extrema_window);
VisibilityEstimate moving_extrema_visibility(const PowerTrace& trace,
                                             std::size_t smooth_window,
                                             std::size_t extrema_window);

/// Inverts the interference law: dphi = arccos(clamp((2V - s)/d, -1, 1)),
/// bounded in [0, pi]. Excursions beyond [0, pi] fold back (no unwrapping);
/// the clamped fraction is reported as a quality metric.
ExtractedPhase extract_phase(const VoltageTrace& trace, double s, double d);

/// Welch PSD: averaged Hann-windowed modified periodograms with per-segment
/// mean removal, hop = window_len*(1-overlap), variance-preserving (density)
/// normalisation so the PSD integrates to the signal variance.
SpectrumEstimate welch_psd(const PhaseTrace& phase, std::size_t window_len,
                           double overlap);

/// S_phi(f) = S_dphi(f) / (4 sin^2(pi f tau)). Bins with sin^2(pi f tau)
/// below null_guard are masked invalid instead of divided.
SpectrumEstimate compensate_delay(const SpectrumEstimate& s_dphi, double tau,
                                  double null_guard = kDefaultNullGuard);

/// S_nu(f) = f^2 S_phi(f); unit becomes freq_psd, mask preserved.
SpectrumEstimate to_frequency_psd(const SpectrumEstimate& s_phi);

struct StitchResult {
  SpectrumEstimate spectrum;
  /// Per boundary: 10*log10 of the ratio of adjacent parts' median PSD over
  /// the overlap decade. Reported, never used to rescale.
  std::vector<double> boundary_consistency_db;
};

/// Concatenates multiple-rate estimates, each part supplying the bins within
/// its assigned band. Parts must be sorted by coverage and share a unit;
/// each boundary must lie inside the overlap of its adjacent parts.
StitchResult stitch_spectra(const std::vector<SpectrumEstimate>& parts,
                            const std::vector<double>& boundaries);

}  // namespace ispec::spectral
