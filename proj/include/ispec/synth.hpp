#pragma once

#include <cstdint>
#include <span>

#include "ispec/psd_model.hpp"
#include "ispec/trace.hpp"

namespace ispec::synth {

/// Frequency-domain colored-noise synthesis. Draws one complex circular
/// Gaussian coefficient per positive-frequency bin with expected squared
/// magnitude proportional to eval_psd, enforces Hermitian symmetry and
/// inverse-transforms; the result has expected one-sided PSD equal to the
/// model. The DC bin is forced to zero (a phase offset is unobservable
/// through the interferometer).
///
/// Preconditions: n a power of two, fs/2 <= model.f_max, fs/n >= model.f_min.
/// Identical (model, fs, n, seed) gives bit-identical output.
PhaseTrace synth_colored(const noise::PsdModel& model, double fs,
                         std::size_t n, std::uint64_t seed);

/// Same process generated in independent chunks of chunk_len samples
/// (chunk k uses derive_seed(seed, k)); n_total must be a multiple of
/// chunk_len. synth_colored(model, fs, n, seed) is the single-chunk case,
/// so chunk boundaries are reproducible and chunks may be generated in any
/// order or in parallel.
PhaseTrace synth_colored_chunked(const noise::PsdModel& model, double fs,
                                 std::size_t n_total, std::uint64_t seed,
                                 std::size_t chunk_len);

/// Wiener phase process: cumulative sum of i.i.d. Gaussian increments with
/// variance diffusion/fs per step, starting at 0.
PhaseTrace synth_wiener(double diffusion, double fs, std::size_t n,
                        std::uint64_t seed);

/// Adds pattern[k] to all samples in the k-th dwell interval; the pattern
/// repeats cyclically over the trace length. dwell*fs must round to >= 1.
PhaseTrace apply_phase_pattern(const PhaseTrace& trace,
                               std::span<const double> pattern, double dwell_s);

/// Elementwise sum; fs, length and t0 must match.
PhaseTrace sum_traces(const PhaseTrace& a, const PhaseTrace& b);

}  // namespace ispec::synth
