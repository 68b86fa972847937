#include "ispec/photon_count.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ispec/errors.hpp"
#include "ispec/rng.hpp"

namespace ispec::photon {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw argument_error(msg);
}

}  // namespace

void PulseTrainConfig::validate() const {
  require(std::isfinite(rep_rate) && rep_rate > 0.0, "rep_rate must be > 0");
  require(std::isfinite(pulse_width) && pulse_width > 0.0,
          "pulse_width must be > 0");
  require(rep_rate * pulse_width < 1.0,
          "pulse_width must fit inside the pulse period");
  require(mean_photons_per_pulse >= 0.0, "mu must be >= 0");
  require(extinction_ratio_db >= 0.0, "extinction_ratio must be >= 0 dB");
  require(detector_efficiency >= 0.0 && detector_efficiency <= 1.0,
          "detector_efficiency must lie in [0, 1]");
  require(std::isfinite(dark_rate) && dark_rate >= 0.0 && dark_rate <= rep_rate,
          "dark_rate must lie in [0, rep_rate]");
  require(bin_duration * rep_rate >= 1.0 - 1e-9,
          "bin_duration must cover at least one pulse");
}

double click_probability(double dphi, double visibility,
                         const PulseTrainConfig& cfg) {
  require(visibility >= 0.0 && visibility <= 1.0,
          "visibility must lie in [0, 1]");
  cfg.validate();
  const double mu = cfg.mu_eff();
  require(mu <= 0.5, "mu_eff above the weak-signal model guard (0.5)");
  const double p_leak =
      std::isinf(cfg.extinction_ratio_db)
          ? 0.0
          : mu * std::pow(10.0, -cfg.extinction_ratio_db / 10.0);
  const double x = mu * (1.0 + visibility * std::cos(dphi)) / 2.0 + p_leak;
  const double p = -std::expm1(-x);
  const double p_dark = cfg.dark_rate / cfg.rep_rate;
  return 1.0 - (1.0 - p) * (1.0 - p_dark);
}

TimeTagSeries simulate_counts(const PhaseTrace& dphi_trace, double visibility,
                              const PulseTrainConfig& cfg,
                              std::span<const BinLabel> pattern,
                              std::uint64_t seed) {
  cfg.validate();
  require(visibility >= 0.0 && visibility <= 1.0,
          "visibility must lie in [0, 1]");
  require(std::abs(dphi_trace.fs - cfg.rep_rate) <=
              1e-9 * std::max(dphi_trace.fs, cfg.rep_rate),
          "dphi trace must be sampled at the repetition rate");
  const double ppb = cfg.bin_duration * cfg.rep_rate;
  require(std::abs(ppb - std::round(ppb)) <= 1e-6,
          "bin_duration must align to a whole number of pulses");
  const std::size_t pulses_per_bin =
      static_cast<std::size_t>(std::llround(ppb));
  const std::size_t n_bins = dphi_trace.samples.size() / pulses_per_bin;
  require(n_bins >= 1, "trace shorter than one bin");
  require(cfg.mu_eff() <= 0.5, "mu_eff above the weak-signal model guard");

  // Precompute the pieces of click_probability that do not vary per pulse.
  const double mu = cfg.mu_eff();
  const double p_leak =
      std::isinf(cfg.extinction_ratio_db)
          ? 0.0
          : mu * std::pow(10.0, -cfg.extinction_ratio_db / 10.0);
  const double p_dark = cfg.dark_rate / cfg.rep_rate;

  TimeTagSeries series;
  series.bin_duration = cfg.bin_duration;
  series.t0 = dphi_trace.t0;
  series.bins.resize(n_bins);
  for (std::size_t b = 0; b < n_bins; ++b) {
    const BinLabel label =
        pattern.empty() ? BinLabel::unmodulated : pattern[b % pattern.size()];
    const double add = label == BinLabel::pi ? std::numbers::pi : 0.0;
    GaussianRng rng(derive_seed(seed, b));
    std::uint64_t count = 0;
    const double* dphi = dphi_trace.samples.data() + b * pulses_per_bin;
    for (std::size_t i = 0; i < pulses_per_bin; ++i) {
      const double x =
          mu * (1.0 + visibility * std::cos(dphi[i] + add)) / 2.0 + p_leak;
      const double p = -std::expm1(-x);
      const double p_total = 1.0 - (1.0 - p) * (1.0 - p_dark);
      if (rng.bernoulli(p_total)) ++count;
    }
    series.bins[b] = {count, label};
  }
  return series;
}

DriftStats counts_to_phase(const TimeTagSeries& series, double r_max,
                           double r_min) {
  require(series.bins.size() >= 2, "need at least two bins");
  require(series.bin_duration > 0.0, "bin_duration must be > 0");
  require(r_min >= 0.0 && r_max > r_min,
          "degenerate count extrema: r_max must exceed r_min >= 0");

  const std::size_t n = series.bins.size();
  DriftStats stats;
  stats.drift_trace.resize(n);
  const double mid = 0.5 * (r_max + r_min);
  const double amp = 0.5 * (r_max - r_min);
  for (std::size_t i = 0; i < n; ++i) {
    const double c =
        (static_cast<double>(series.bins[i].count) - mid) / amp;
    stats.drift_trace[i] = std::acos(std::clamp(c, -1.0, 1.0));
  }

  // Centred finite differences, one-sided at the endpoints; rad/s -> rad/ms.
  stats.rate_trace.resize(n);
  const double tb = series.bin_duration;
  const auto& ph = stats.drift_trace;
  stats.rate_trace[0] = (ph[1] - ph[0]) / tb * 1e-3;
  stats.rate_trace[n - 1] = (ph[n - 1] - ph[n - 2]) / tb * 1e-3;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    stats.rate_trace[i] = (ph[i + 1] - ph[i - 1]) / (2.0 * tb) * 1e-3;
  }

  double mean = 0.0;
  for (double r : stats.rate_trace) mean += r;
  mean /= static_cast<double>(n);
  double var = 0.0;
  double max_abs = 0.0;
  for (double r : stats.rate_trace) {
    var += (r - mean) * (r - mean);
    max_abs = std::max(max_abs, std::abs(r));
  }
  stats.rate_std = std::sqrt(var / static_cast<double>(n));
  stats.rate_max_abs = max_abs;
  return stats;
}

DriftStats counts_to_phase(const TimeTagSeries& series) {
  require(!series.bins.empty(), "empty series");
  std::uint64_t lo = series.bins[0].count;
  std::uint64_t hi = series.bins[0].count;
  for (const auto& b : series.bins) {
    lo = std::min(lo, b.count);
    hi = std::max(hi, b.count);
  }
  return counts_to_phase(series, static_cast<double>(hi),
                         static_cast<double>(lo));
}

QberResult qber(const TimeTagSeries& series) {
  bool has_zero = false;
  bool has_pi = false;
  QberResult res;
  for (const auto& b : series.bins) {
    if (b.label == BinLabel::zero) {
      has_zero = true;
      res.n_correct += b.count;
    } else if (b.label == BinLabel::pi) {
      has_pi = true;
      res.n_error += b.count;
    }
  }
  require(has_zero && has_pi,
          "qber needs both zero- and pi-labelled bins");
  const std::uint64_t total = res.n_correct + res.n_error;
  if (total == 0) {
    throw undefined_result_error("qber undefined: no clicks at all");
  }
  res.qber = static_cast<double>(res.n_error) / static_cast<double>(total);
  return res;
}

}  // namespace ispec::photon
