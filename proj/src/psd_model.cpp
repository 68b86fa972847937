#include "ispec/psd_model.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace ispec::noise {

namespace {

constexpr double kMaxExponent = 6.0;

void require(bool ok, const char* msg) {
  if (!ok) throw argument_error(msg);
}

}  // namespace

PsdComponent PsdComponent::power_law(double amplitude_at_ref, double ref_freq,
                                     double exponent) {
  require(std::isfinite(amplitude_at_ref) && amplitude_at_ref >= 0.0,
          "power_law amplitude must be finite and >= 0");
  require(std::isfinite(ref_freq) && ref_freq > 0.0,
          "power_law ref_freq must be > 0");
  require(std::isfinite(exponent) && std::abs(exponent) <= kMaxExponent,
          "power_law exponent must be finite with |exponent| <= 6");
  PsdComponent c;
  c.kind = ComponentKind::power_law;
  c.amplitude_at_ref = amplitude_at_ref;
  c.ref_freq = ref_freq;
  c.exponent = exponent;
  return c;
}

PsdComponent PsdComponent::lorentzian_tone(double center, double fwhm,
                                           double integrated_power) {
  require(std::isfinite(center) && center > 0.0, "lorentzian center must be > 0");
  require(std::isfinite(fwhm) && fwhm > 0.0, "lorentzian fwhm must be > 0");
  require(std::isfinite(integrated_power) && integrated_power >= 0.0,
          "lorentzian integrated_power must be >= 0");
  PsdComponent c;
  c.kind = ComponentKind::lorentzian_tone;
  c.center = center;
  c.fwhm = fwhm;
  c.integrated_power = integrated_power;
  return c;
}

PsdComponent PsdComponent::white_floor(double level) {
  require(std::isfinite(level) && level >= 0.0,
          "white_floor level must be finite and >= 0");
  PsdComponent c;
  c.kind = ComponentKind::white_floor;
  c.level = level;
  return c;
}

double PsdComponent::eval(double f) const {
  switch (kind) {
    case ComponentKind::power_law:
      return amplitude_at_ref * std::pow(f / ref_freq, exponent);
    case ComponentKind::lorentzian_tone: {
      const double half = 0.5 * fwhm;
      const double d = f - center;
      return integrated_power * (fwhm / (2.0 * std::numbers::pi)) /
             (d * d + half * half);
    }
    case ComponentKind::white_floor:
      return level;
  }
  return 0.0;
}

PsdModel::PsdModel(std::vector<PsdComponent> components, double f_min,
                   double f_max)
    : components_(std::move(components)), f_min_(f_min), f_max_(f_max) {
  require(std::isfinite(f_min_) && f_min_ > 0.0, "f_min must be > 0");
  require(std::isfinite(f_max_) && f_max_ > f_min_, "f_max must be > f_min");
}

double PsdModel::eval(double f) const {
  if (!(f >= f_min_ && f <= f_max_)) {
    throw range_error("PSD evaluated outside [f_min, f_max]");
  }
  double sum = 0.0;
  for (const auto& c : components_) sum += c.eval(f);
  if (!std::isfinite(sum)) {
    throw model_error("PSD evaluation produced a non-finite value");
  }
  return sum;
}

PsdModel preset_laser(double linewidth_hz) {
  if (!(std::isfinite(linewidth_hz) && linewidth_hz > 0.0 &&
        linewidth_hz <= 1e6)) {
    throw argument_error("laser linewidth must lie in (0, 1e6] Hz");
  }
  const double snu_floor = linewidth_hz / std::numbers::pi;  // Hz^2/Hz
  // Tone integrated power such that its peak, in S_nu units, sits at
  // kLaserTonePeakRatio times the white frequency-noise floor.
  const double peak_sphi =
      kLaserTonePeakRatio * snu_floor / (kLaserToneFreqHz * kLaserToneFreqHz);
  const double tone_power =
      peak_sphi * std::numbers::pi * kLaserToneFwhmHz / 2.0;
  std::vector<PsdComponent> comps;
  comps.push_back(PsdComponent::power_law(snu_floor, 1.0, -2.0));
  comps.push_back(PsdComponent::lorentzian_tone(kLaserToneFreqHz,
                                                kLaserToneFwhmHz, tone_power));
  return PsdModel(std::move(comps), kPresetFminHz, kPresetFmaxHz);
}

PsdModel preset_fibre(FibreKind kind) {
  std::vector<PsdComponent> comps;
  if (kind == FibreKind::smf_like) {
    comps.push_back(PsdComponent::lorentzian_tone(
        kSmfThermalToneHz, kSmfThermalFwhmHz, kSmfThermalPowerRad2));
    comps.push_back(PsdComponent::lorentzian_tone(
        kAcousticCenterHz, kAcousticFwhmHz, kSmfAcousticPowerRad2));
  } else {
    comps.push_back(PsdComponent::lorentzian_tone(
        kHcfThermalToneHz, kHcfThermalFwhmHz, kHcfThermalPowerRad2));
    comps.push_back(PsdComponent::lorentzian_tone(
        kAcousticCenterHz, kAcousticFwhmHz, kHcfAcousticPowerRad2));
  }
  comps.push_back(PsdComponent::white_floor(kFibreWhiteFloor));
  return PsdModel(std::move(comps), kPresetFminHz, kPresetFmaxHz);
}

}  // namespace ispec::noise
