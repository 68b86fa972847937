#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ispec {

/// Forward real FFT: n real samples -> n/2+1 complex bins, unnormalised
/// (matches the plain DFT sum). Any n >= 2 is accepted.
void rfft(std::span<const double> in, std::vector<std::complex<double>>& out);

/// Inverse of rfft: n/2+1 bins -> n real samples, scaled by 1/n so that
/// irfft(rfft(x), n) == x. The input span is copied; callers may reuse it.
void irfft(std::span<const std::complex<double>> in, std::size_t n,
           std::vector<double>& out);

}  // namespace ispec
