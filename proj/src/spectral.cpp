#include "ispec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <deque>
#include <limits>
#include <numbers>

#include "ispec/errors.hpp"
#include "ispec/fft.hpp"

namespace ispec::spectral {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw argument_error(msg);
}

double median_of(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double m = v[mid];
  if (v.size() % 2 == 0) {
    const double lo = *std::max_element(v.begin(), v.begin() + mid);
    m = 0.5 * (m + lo);
  }
  return m;
}

// Sliding-window extrema via monotonic deques, O(n).
template <typename Cmp>
std::vector<double> sliding_extreme(std::span<const double> x, std::size_t w,
                                    Cmp better) {
  std::vector<double> out;
  out.reserve(x.size() - w + 1);
  std::deque<std::size_t> dq;
  for (std::size_t i = 0; i < x.size(); ++i) {
    while (!dq.empty() && !better(x[dq.back()], x[i])) dq.pop_back();
    dq.push_back(i);
    if (dq.front() + w <= i) dq.pop_front();
    if (i + 1 >= w) out.push_back(x[dq.front()]);
  }
  return out;
}

}  // namespace

VisibilityEstimate moving_extrema_visibility(std::span<const double> samples,
                                             std::size_t smooth_window,
                                             std::size_t extrema_window) {
  require(smooth_window >= 1, "smooth_window must be >= 1");
  require(extrema_window > smooth_window,
          "extrema_window must exceed smooth_window");
  require(samples.size() >= extrema_window,
          "trace shorter than extrema_window");

  // Moving average ("valid" mode) via a running sum.
  std::vector<double> smooth;
  smooth.reserve(samples.size() - smooth_window + 1);
  double acc = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    acc += samples[i];
    if (i + 1 >= smooth_window) {
      smooth.push_back(acc / static_cast<double>(smooth_window));
      acc -= samples[i + 1 - smooth_window];
    }
  }

  const std::size_t w = std::min(extrema_window, smooth.size());
  const auto maxs =
      sliding_extreme(smooth, w, [](double a, double b) { return a > b; });
  const auto mins =
      sliding_extreme(smooth, w, [](double a, double b) { return a < b; });

  VisibilityEstimate best;
  best.visibility = std::numeric_limits<double>::infinity();
  best.window_samples = extrema_window;
  for (std::size_t i = 0; i < maxs.size(); ++i) {
    const double hi = maxs[i];
    const double lo = mins[i];
    const double denom = hi + lo;
    const double v = denom != 0.0 ? (hi - lo) / denom : 0.0;
    if (v < best.visibility) {
      best.visibility = v;
      best.p_max = hi;
      best.p_min = lo;
    }
  }
  best.visibility = std::clamp(best.visibility, 0.0, 1.0);
  return best;
}

VisibilityEstimate moving_extrema_visibility(const VoltageTrace& trace,
                                             std::size_t smooth_window,
                                             std::size_t extrema_window) {
  return moving_extrema_visibility(std::span<const double>(trace.samples),
                                   smooth_window, extrema_window);
}

VisibilityEstimate moving_extrema_visibility(const PowerTrace& trace,
                                             std::size_t smooth_window,
                                             std::size_t extrema_window) {
  return moving_extrema_visibility(std::span<const double>(trace.samples),
                                   smooth_window, extrema_window);
}

ExtractedPhase extract_phase(const VoltageTrace& trace, double s, double d) {
  require(d > 0.0, "fringe amplitude d must be > 0");
  require(s >= d, "fringe sum s must be >= d");
  ExtractedPhase out;
  out.phase.fs = trace.fs;
  out.phase.t0 = trace.t0;
  out.phase.seed_provenance = {0, "extracted"};
  out.phase.samples.resize(trace.samples.size());
  std::size_t clamped = 0;
  for (std::size_t i = 0; i < trace.samples.size(); ++i) {
    double c = (2.0 * trace.samples[i] - s) / d;
    if (c < -1.0 || c > 1.0) {
      ++clamped;
      c = std::clamp(c, -1.0, 1.0);
    }
    out.phase.samples[i] = std::acos(c);
  }
  out.clamped_fraction = trace.samples.empty()
                             ? 0.0
                             : static_cast<double>(clamped) /
                                   static_cast<double>(trace.samples.size());
  return out;
}

SpectrumEstimate welch_psd(const PhaseTrace& phase, std::size_t window_len,
                           double overlap) {
  const std::size_t n = phase.samples.size();
  require(window_len >= 2, "window_len must be >= 2");
  require(window_len <= n, "window_len exceeds trace length");
  require(overlap >= 0.0 && overlap < 1.0, "overlap must lie in [0, 1)");
  require(phase.fs > 0.0, "fs must be > 0");

  const std::size_t L = window_len;
  const std::size_t hop = std::max<std::size_t>(
      1, static_cast<std::size_t>(
             std::llround(static_cast<double>(L) * (1.0 - overlap))));
  const std::size_t n_seg = (n - L) / hop + 1;

  // Periodic Hann window.
  std::vector<double> win(L);
  double win_pow = 0.0;
  for (std::size_t m = 0; m < L; ++m) {
    win[m] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi *
                                   static_cast<double>(m) /
                                   static_cast<double>(L)));
    win_pow += win[m] * win[m];
  }

  const std::size_t n_bins = L / 2;  // k = 1 .. L/2, DC dropped
  std::vector<double> accum(n_bins + 1, 0.0);
  std::vector<double> seg(L);
  std::vector<std::complex<double>> spec;
  for (std::size_t si = 0; si < n_seg; ++si) {
    const double* src = phase.samples.data() + si * hop;
    double mean = 0.0;
    for (std::size_t m = 0; m < L; ++m) mean += src[m];
    mean /= static_cast<double>(L);
    for (std::size_t m = 0; m < L; ++m) seg[m] = (src[m] - mean) * win[m];
    rfft(seg, spec);
    for (std::size_t k = 1; k <= n_bins; ++k) {
      accum[k] += std::norm(spec[k]);
    }
  }

  SpectrumEstimate est;
  est.unit = SpectrumUnit::phase_psd;
  est.meta = {L, overlap, "hann", n_seg};
  est.freqs.resize(n_bins);
  est.values.resize(n_bins);
  est.valid.assign(n_bins, 1);
  const double df = phase.fs / static_cast<double>(L);
  // Density normalisation: one-sided values scaled by 2 except the Nyquist
  // bin (present only for even L, which L/2 bins always are here).
  const double base = 1.0 / (phase.fs * win_pow * static_cast<double>(n_seg));
  for (std::size_t k = 1; k <= n_bins; ++k) {
    const bool nyquist = (2 * k == L);
    est.freqs[k - 1] = df * static_cast<double>(k);
    est.values[k - 1] = accum[k] * base * (nyquist ? 1.0 : 2.0);
  }
  return est;
}

SpectrumEstimate compensate_delay(const SpectrumEstimate& s_dphi, double tau,
                                  double null_guard) {
  require(s_dphi.unit == SpectrumUnit::phase_psd,
          "compensate_delay expects a phase PSD");
  require(tau > 0.0, "tau must be > 0");
  require(null_guard > 0.0 && null_guard < 1.0,
          "null_guard must lie in (0, 1)");
  SpectrumEstimate out = s_dphi;
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const double s = std::sin(std::numbers::pi * out.freqs[i] * tau);
    const double s2 = s * s;
    if (s2 < null_guard) {
      out.valid[i] = 0;
    } else if (out.valid[i]) {
      out.values[i] /= 4.0 * s2;
    }
  }
  return out;
}

SpectrumEstimate to_frequency_psd(const SpectrumEstimate& s_phi) {
  require(s_phi.unit == SpectrumUnit::phase_psd,
          "to_frequency_psd expects a phase PSD");
  SpectrumEstimate out = s_phi;
  out.unit = SpectrumUnit::freq_psd;
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] *= out.freqs[i] * out.freqs[i];
  }
  return out;
}

StitchResult stitch_spectra(const std::vector<SpectrumEstimate>& parts,
                            const std::vector<double>& boundaries) {
  require(!parts.empty(), "stitch needs at least one part");
  require(boundaries.size() + 1 == parts.size(),
          "need exactly one boundary between adjacent parts");
  for (std::size_t i = 1; i < parts.size(); ++i) {
    require(parts[i].unit == parts[0].unit, "stitch parts must share a unit");
    require(parts[i - 1].freqs.front() <= parts[i].freqs.front() &&
                parts[i - 1].freqs.back() <= parts[i].freqs.back(),
            "stitch parts must be sorted by coverage");
  }

  StitchResult res;
  res.spectrum.unit = parts[0].unit;
  res.spectrum.meta = parts[0].meta;
  res.spectrum.meta.window_kind = "stitched";

  for (std::size_t b = 0; b < boundaries.size(); ++b) {
    const auto& lo = parts[b];
    const auto& hi = parts[b + 1];
    const double overlap_lo = std::max(lo.freqs.front(), hi.freqs.front());
    const double overlap_hi = std::min(lo.freqs.back(), hi.freqs.back());
    require(overlap_lo < overlap_hi, "adjacent stitch parts do not overlap");
    require(boundaries[b] > overlap_lo && boundaries[b] < overlap_hi,
            "boundary outside the overlap of its adjacent parts");
    if (b > 0) {
      require(boundaries[b] > boundaries[b - 1],
              "boundaries must be increasing");
    }
    // Consistency metric: median ratio over the decade centred on the
    // boundary, clipped to the common coverage. No rescaling is applied.
    const double span = std::sqrt(10.0);
    const double mlo = std::max(boundaries[b] / span, overlap_lo);
    const double mhi = std::min(boundaries[b] * span, overlap_hi);
    auto band_median = [&](const SpectrumEstimate& p) {
      std::vector<double> vals;
      for (std::size_t i = 0; i < p.freqs.size(); ++i) {
        if (p.valid[i] && p.freqs[i] >= mlo && p.freqs[i] <= mhi) {
          vals.push_back(p.values[i]);
        }
      }
      return median_of(std::move(vals));
    };
    const double med_lo = band_median(lo);
    const double med_hi = band_median(hi);
    require(std::isfinite(med_lo) && std::isfinite(med_hi) && med_lo > 0.0 &&
                med_hi > 0.0,
            "no valid overlap bins for the stitch consistency metric");
    res.boundary_consistency_db.push_back(10.0 * std::log10(med_hi / med_lo));
  }

  for (std::size_t p = 0; p < parts.size(); ++p) {
    const double band_lo = p == 0 ? 0.0 : boundaries[p - 1];
    const double band_hi = p + 1 < parts.size()
                               ? boundaries[p]
                               : std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < parts[p].freqs.size(); ++i) {
      const double f = parts[p].freqs[i];
      if (f > band_lo && f <= band_hi) {
        res.spectrum.freqs.push_back(f);
        res.spectrum.values.push_back(parts[p].values[i]);
        res.spectrum.valid.push_back(parts[p].valid[i]);
      }
    }
  }
  return res;
}

}  // namespace ispec::spectral
