#include "ispec/synth.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <vector>

#include "ispec/errors.hpp"
#include "ispec/fft.hpp"
#include "ispec/rng.hpp"

namespace ispec::synth {

namespace {

// One power-of-two block of frequency-domain synthesis, appended to out.
void synth_block(const noise::PsdModel& model, double fs, std::size_t n,
                 std::uint64_t block_seed, std::vector<double>& out) {
  const double df = fs / static_cast<double>(n);
  const std::size_t half = n / 2;
  GaussianRng rng(block_seed);
  std::vector<std::complex<double>> coeff(half + 1);
  coeff[0] = 0.0;  // DC forced to zero
  for (std::size_t k = 1; k <= half; ++k) {
    const double s = model.eval(df * static_cast<double>(k));
    // E|X_k|^2 = S(f_k) * fs * n / 2 makes the one-sided periodogram
    // 2|X_k|^2/(fs n) match the model in expectation.
    const double sigma2 = s * fs * static_cast<double>(n) / 2.0;
    const double a = rng.gaussian();
    const double b = rng.gaussian();
    if (k < half) {
      coeff[k] = std::sqrt(sigma2 / 2.0) * std::complex<double>(a, b);
    } else {
      coeff[k] = std::sqrt(sigma2) * a;  // Nyquist bin is real
    }
  }
  std::vector<double> block;
  irfft(coeff, n, block);
  out.insert(out.end(), block.begin(), block.end());
}

}  // namespace

PhaseTrace synth_colored_chunked(const noise::PsdModel& model, double fs,
                                 std::size_t n_total, std::uint64_t seed,
                                 std::size_t chunk_len) {
  if (!(fs > 0.0)) throw argument_error("fs must be > 0");
  if (chunk_len < 2 || !std::has_single_bit(chunk_len)) {
    throw argument_error("chunk length must be a power of two >= 2");
  }
  if (n_total == 0 || n_total % chunk_len != 0) {
    throw argument_error("n must be a positive multiple of the chunk length");
  }
  if (fs / 2.0 > model.f_max()) {
    throw range_error("fs/2 exceeds the model's f_max");
  }
  if (fs / static_cast<double>(chunk_len) < model.f_min()) {
    throw range_error("fs/n resolves below the model's f_min");
  }
  PhaseTrace trace;
  trace.fs = fs;
  trace.t0 = 0.0;
  trace.seed_provenance = {seed, "colored-fd-v1"};
  trace.samples.reserve(n_total);
  const std::size_t n_chunks = n_total / chunk_len;
  for (std::size_t c = 0; c < n_chunks; ++c) {
    synth_block(model, fs, chunk_len, derive_seed(seed, c), trace.samples);
  }
  return trace;
}

PhaseTrace synth_colored(const noise::PsdModel& model, double fs,
                         std::size_t n, std::uint64_t seed) {
  if (n < 2 || !std::has_single_bit(n)) {
    throw argument_error("n must be a power of two >= 2");
  }
  return synth_colored_chunked(model, fs, n, seed, n);
}

PhaseTrace synth_wiener(double diffusion, double fs, std::size_t n,
                        std::uint64_t seed) {
  if (!(diffusion >= 0.0) || !std::isfinite(diffusion)) {
    throw argument_error("diffusion must be >= 0");
  }
  if (!(fs > 0.0)) throw argument_error("fs must be > 0");
  if (n < 2) throw argument_error("n must be >= 2");
  PhaseTrace trace;
  trace.fs = fs;
  trace.t0 = 0.0;
  trace.seed_provenance = {seed, "wiener-v1"};
  trace.samples.assign(n, 0.0);
  if (diffusion == 0.0) return trace;
  GaussianRng rng(seed);
  const double step_sigma = std::sqrt(diffusion / fs);
  double acc = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    acc += step_sigma * rng.gaussian();
    trace.samples[i] = acc;
  }
  return trace;
}

PhaseTrace apply_phase_pattern(const PhaseTrace& trace,
                               std::span<const double> pattern,
                               double dwell_s) {
  if (pattern.empty()) throw argument_error("pattern must not be empty");
  const double dwell_samples_f = dwell_s * trace.fs;
  if (!(dwell_samples_f >= 1.0 - 1e-9)) {
    throw argument_error("dwell must span at least one sample");
  }
  const std::size_t dwell_samples =
      static_cast<std::size_t>(std::llround(dwell_samples_f));
  PhaseTrace out = trace;
  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    out.samples[i] += pattern[(i / dwell_samples) % pattern.size()];
  }
  return out;
}

PhaseTrace sum_traces(const PhaseTrace& a, const PhaseTrace& b) {
  if (a.fs != b.fs || a.samples.size() != b.samples.size() || a.t0 != b.t0) {
    throw argument_error("sum_traces requires matching fs, length and t0");
  }
  PhaseTrace out = a;
  out.seed_provenance = {0, "derived"};
  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    out.samples[i] += b.samples[i];
  }
  return out;
}

}  // namespace ispec::synth
