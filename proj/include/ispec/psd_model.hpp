#pragma once

#include <vector>

#include "ispec/errors.hpp"

namespace ispec::noise {

enum class ComponentKind { power_law, lorentzian_tone, white_floor };

/// One additive term of an analytic one-sided phase-noise PSD [rad^2/Hz].
///
/// power_law:       S(f) = amplitude_at_ref * (f / ref_freq)^exponent
/// lorentzian_tone: S(f) = integrated_power * (fwhm/2pi) / ((f-center)^2 + (fwhm/2)^2)
/// white_floor:     S(f) = level
///
/// Tones are normalised by integrated power [rad^2] rather than peak height
/// so narrow tones remain grid-independent.
struct PsdComponent {
  ComponentKind kind = ComponentKind::white_floor;
  double amplitude_at_ref = 0.0;  // rad^2/Hz at ref_freq (power_law)
  double ref_freq = 1.0;          // Hz (power_law)
  double exponent = 0.0;          // PSD ~ f^exponent (power_law)
  double center = 0.0;            // Hz (lorentzian_tone)
  double fwhm = 0.0;              // Hz (lorentzian_tone)
  double integrated_power = 0.0;  // rad^2 (lorentzian_tone)
  double level = 0.0;             // rad^2/Hz (white_floor)

  static PsdComponent power_law(double amplitude_at_ref, double ref_freq,
                                double exponent);
  static PsdComponent lorentzian_tone(double center, double fwhm,
                                      double integrated_power);
  static PsdComponent white_floor(double level);

  double eval(double f) const;
};

/// Sum of components with a declared validity band. Immutable after
/// construction; evaluation is pure and reentrant.
class PsdModel {
 public:
  PsdModel(std::vector<PsdComponent> components, double f_min, double f_max);

  /// S_phi(f) [rad^2/Hz]. Throws range_error outside [f_min, f_max]:
  /// extrapolation (especially toward DC for f^-2 terms) is refused rather
  /// than silently diverging.
  double eval(double f) const;

  double f_min() const { return f_min_; }
  double f_max() const { return f_max_; }
  const std::vector<PsdComponent>& components() const { return components_; }

 private:
  std::vector<PsdComponent> components_;
  double f_min_;
  double f_max_;
};

inline double eval_psd(const PsdModel& model, double f) { return model.eval(f); }

// ---------------------------------------------------------------------------
// Presets. The amplitudes below are simulator defaults, not measured values:
// they reproduce the qualitative features (peak positions, band shapes) and
// give free-drift statistics of the right magnitude in the pulsed scenario.
// ---------------------------------------------------------------------------

/// Laser tone defaults: a narrow feature at 30 kHz rides on the white
/// frequency-noise floor. The integrated power is chosen so the tone peaks at
/// kLaserTonePeakRatio times the floor in frequency-PSD units.
inline constexpr double kLaserToneFreqHz = 30e3;
inline constexpr double kLaserToneFwhmHz = 1.0;
inline constexpr double kLaserTonePeakRatio = 100.0;

/// Model band shared by all presets.
inline constexpr double kPresetFminHz = 1e-4;
inline constexpr double kPresetFmaxHz = 1e9;

/// Lorentzian-lineshape laser as white frequency noise:
/// S_nu(f) = linewidth/pi, i.e. S_phi(f) = linewidth/(pi f^2), plus the
/// 30 kHz tone. Linewidth must lie in (0, 1e6] Hz.
PsdModel preset_laser(double linewidth_hz);

enum class FibreKind { smf_like, hcf_like };

/// Fibre-spool phase noise: a thermal tone (3 Hz for smf_like, weaker and at
/// 1.5 Hz for hcf_like), a broad acoustic shoulder spanning roughly
/// 10 Hz - 1 kHz, and a white floor.
PsdModel preset_fibre(FibreKind kind);

// Fibre preset defaults [tone centre Hz, fwhm Hz, integrated power rad^2].
inline constexpr double kSmfThermalToneHz = 3.0;
inline constexpr double kSmfThermalFwhmHz = 1.5;
inline constexpr double kSmfThermalPowerRad2 = 5.0;
inline constexpr double kHcfThermalToneHz = 1.5;
inline constexpr double kHcfThermalFwhmHz = 1.0;
inline constexpr double kHcfThermalPowerRad2 = 1.0;
inline constexpr double kAcousticCenterHz = 120.0;
inline constexpr double kAcousticFwhmHz = 700.0;
inline constexpr double kSmfAcousticPowerRad2 = 12.0;
inline constexpr double kHcfAcousticPowerRad2 = 10.0;
inline constexpr double kFibreWhiteFloor = 1e-9;

}  // namespace ispec::noise
