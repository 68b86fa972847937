#include "ispec/interferometer.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "ispec/errors.hpp"
#include "ispec/rng.hpp"
#include "ispec/synth.hpp"

namespace ispec::ifo {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw argument_error(msg);
}

constexpr int kInterpTaps = 64;
constexpr double kKaiserBeta = 10.0;

double bessel_i0(double x) {
  // Series form; converges quickly for the argument range used here.
  double sum = 1.0;
  double term = 1.0;
  const double q = x * x / 4.0;
  for (int k = 1; k < 64; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k));
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

double sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

// Kaiser-windowed-sinc fractional-delay taps for offset mu in (0, 1),
// normalised to unit DC gain. Tap j applies to x[m + I + j].
std::vector<double> fractional_delay_taps(double mu) {
  const int half = kInterpTaps / 2;
  std::vector<double> taps(kInterpTaps);
  const double denom = bessel_i0(kKaiserBeta);
  double sum = 0.0;
  for (int j = -(half - 1); j <= half; ++j) {
    const double x = static_cast<double>(j) - mu;
    const double frac = x / static_cast<double>(half);
    const double w =
        frac * frac >= 1.0
            ? 0.0
            : bessel_i0(kKaiserBeta * std::sqrt(1.0 - frac * frac)) / denom;
    taps[j + half - 1] = sinc(x) * w;
    sum += taps[j + half - 1];
  }
  for (double& t : taps) t /= sum;
  return taps;
}

}  // namespace

void AmziConfig::validate() const {
  require(std::isfinite(tau) && tau >= 0.0, "tau must be >= 0");
  require(insertion_loss_arm1_db >= 0.0 && insertion_loss_arm2_db >= 0.0,
          "arm losses must be >= 0 dB");
  require(visibility_cap > 0.0 && visibility_cap <= 1.0,
          "visibility_cap must lie in (0, 1]");
  require(std::isfinite(input_power) && input_power > 0.0,
          "input_power must be > 0");
}

void DetectorConfig::validate() const {
  require(std::isfinite(responsivity) && responsivity > 0.0,
          "responsivity must be > 0");
  require(additive_noise_rms >= 0.0, "additive_noise_rms must be >= 0");
  require(std::isfinite(fs) && fs > 0.0, "detector fs must be > 0");
}

PhaseTrace delay_difference(const PhaseTrace& phase, double tau) {
  require(std::isfinite(tau) && tau >= 0.0, "tau must be >= 0");
  require(phase.fs > 0.0, "fs must be > 0");
  const std::size_t n = phase.samples.size();
  require(tau < static_cast<double>(n) / phase.fs,
          "tau must be shorter than the trace");

  const double offset = tau * phase.fs;
  const double rounded = std::round(offset);
  const bool integral = std::abs(offset - rounded) < 1e-9;

  PhaseTrace out;
  out.fs = phase.fs;
  out.t0 = phase.t0;
  out.seed_provenance = {0, "derived"};

  if (integral) {
    const std::size_t shift = static_cast<std::size_t>(rounded);
    const std::size_t n_out = n - shift;
    out.samples.resize(n_out);
    for (std::size_t m = 0; m < n_out; ++m) {
      out.samples[m] = phase.samples[m + shift] - phase.samples[m];
    }
    return out;
  }

  const std::size_t shift = static_cast<std::size_t>(std::ceil(offset));
  const std::size_t whole = static_cast<std::size_t>(std::floor(offset));
  const double mu = offset - std::floor(offset);
  const auto taps = fractional_delay_taps(mu);
  const int half = kInterpTaps / 2;
  const std::size_t n_out = n - shift;
  out.samples.resize(n_out);

  const auto& x = phase.samples;
  auto interp_clamped = [&](std::size_t m) {
    double acc = 0.0;
    for (int j = -(half - 1); j <= half; ++j) {
      const long long idx =
          static_cast<long long>(m + whole) + static_cast<long long>(j);
      const std::size_t ci = static_cast<std::size_t>(
          std::clamp<long long>(idx, 0, static_cast<long long>(n) - 1));
      acc += taps[j + half - 1] * x[ci];
    }
    return acc;
  };

  // Bulk region where the whole filter support is in range.
  std::size_t m_lo = whole >= static_cast<std::size_t>(half - 1)
                         ? 0
                         : static_cast<std::size_t>(half - 1) - whole;
  std::size_t m_hi =
      n >= whole + static_cast<std::size_t>(half) + 1
          ? std::min(n_out, n - whole - static_cast<std::size_t>(half))
          : 0;
  if (m_lo > n_out) m_lo = n_out;
  for (std::size_t m = 0; m < m_lo; ++m) {
    out.samples[m] = interp_clamped(m) - x[m];
  }
  for (std::size_t m = m_lo; m < m_hi; ++m) {
    const double* base = x.data() + (m + whole - (half - 1));
    double acc = 0.0;
    for (int j = 0; j < kInterpTaps; ++j) acc += taps[j] * base[j];
    out.samples[m] = acc - x[m];
  }
  for (std::size_t m = std::max(m_lo, m_hi); m < n_out; ++m) {
    out.samples[m] = interp_clamped(m) - x[m];
  }
  return out;
}

PowerTrace interference_power(const PhaseTrace& dphi, const AmziConfig& cfg) {
  cfg.validate();
  // 50:50 input split, per-arm dB losses, ideal recombination.
  const double p1 =
      0.5 * cfg.input_power * std::pow(10.0, -cfg.insertion_loss_arm1_db / 10.0);
  const double p2 =
      0.5 * cfg.input_power * std::pow(10.0, -cfg.insertion_loss_arm2_db / 10.0);
  const double s = p1 + p2;  // P_max + P_min of the ideal fringe
  const double d = 2.0 * std::sqrt(p1 * p2) * cfg.visibility_cap;
  PowerTrace out;
  out.fs = dphi.fs;
  out.t0 = dphi.t0;
  out.samples.resize(dphi.samples.size());
  for (std::size_t i = 0; i < dphi.samples.size(); ++i) {
    out.samples[i] = 0.5 * (s + d * std::cos(dphi.samples[i]));
  }
  return out;
}

VoltageTrace detect_classical(const PowerTrace& power,
                              const DetectorConfig& det, std::uint64_t seed) {
  det.validate();
  require(std::abs(power.fs - det.fs) <= 1e-9 * std::max(power.fs, det.fs),
          "power trace and detector sampling rates must match");
  VoltageTrace out;
  out.fs = power.fs;
  out.t0 = power.t0;
  out.samples.resize(power.samples.size());
  GaussianRng rng(seed);
  const bool noisy = det.additive_noise_rms > 0.0;
  for (std::size_t i = 0; i < power.samples.size(); ++i) {
    const double t = power.t0 + static_cast<double>(i) / power.fs;
    double v = det.responsivity * power.samples[i] + det.dc_offset +
               det.offset_drift_rate * t;
    if (noisy) v += det.additive_noise_rms * rng.gaussian();
    out.samples[i] = v;
  }
  return out;
}

std::map<std::string, VoltageTrace> run_parallel_amzis(
    const AmziScenario& scenario) {
  require(scenario.fs > 0.0, "scenario fs must be > 0");
  require(scenario.duration > 0.0, "scenario duration must be > 0");
  require(!scenario.channels.empty(), "scenario needs at least one channel");
  scenario.detector.validate();

  const std::size_t n_out = static_cast<std::size_t>(
      std::llround(scenario.duration * scenario.fs));
  require(n_out >= 2, "scenario duration too short for the sampling rate");

  double tau_max = 0.0;
  for (const auto& ch : scenario.channels) {
    ch.amzi.validate();
    tau_max = std::max(tau_max, ch.amzi.tau);
  }
  const std::size_t margin =
      static_cast<std::size_t>(std::ceil(tau_max * scenario.fs)) + 1;
  const std::size_t n_synth = std::bit_ceil(n_out + margin);
  require(n_synth <= scenario.max_samples,
          "duration*fs exceeds the scenario memory budget");

  DetectorConfig det = scenario.detector;
  det.fs = scenario.fs;

  const PhaseTrace laser = synth::synth_colored(
      scenario.laser, scenario.fs, n_synth,
      derive_seed(scenario.seed, kLaserSeedStream));

  std::map<std::string, VoltageTrace> result;
  for (std::size_t i = 0; i < scenario.channels.size(); ++i) {
    const auto& ch = scenario.channels[i];
    PhaseTrace fibre = synth::synth_colored(
        ch.fibre, scenario.fs, n_synth,
        derive_seed(scenario.seed, kFibreSeedStreamBase + i));
    PhaseTrace total = synth::sum_traces(laser, fibre);
    fibre.samples.clear();
    fibre.samples.shrink_to_fit();
    PhaseTrace dphi = delay_difference(total, ch.amzi.tau);
    total.samples.clear();
    total.samples.shrink_to_fit();
    PowerTrace power = interference_power(dphi, ch.amzi);
    dphi.samples.clear();
    dphi.samples.shrink_to_fit();
    VoltageTrace volt = detect_classical(
        power, det, derive_seed(scenario.seed, kDetectorSeedStreamBase + i));
    volt.samples.resize(std::min(volt.samples.size(), n_out));
    result.emplace(ch.name, std::move(volt));
  }
  return result;
}

}  // namespace ispec::ifo
