#include "ispec/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

#include "ispec/errors.hpp"

namespace ispec {

namespace {

// FFTW plan creation is not thread-safe; executions via the new-array
// interface are. Plans are cached per transform size and created with
// FFTW_UNALIGNED so they accept ordinary vector storage.
std::mutex g_plan_mutex;

fftw_plan forward_plan(std::size_t n) {
  static std::map<std::size_t, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<double> in(n);
  std::vector<std::complex<double>> out(n / 2 + 1);
  fftw_plan p = fftw_plan_dft_r2c_1d(
      static_cast<int>(n), in.data(),
      reinterpret_cast<fftw_complex*>(out.data()),
      FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!p) throw model_error("FFT planning failed");
  cache.emplace(n, p);
  return p;
}

fftw_plan inverse_plan(std::size_t n) {
  static std::map<std::size_t, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<std::complex<double>> in(n / 2 + 1);
  std::vector<double> out(n);
  fftw_plan p = fftw_plan_dft_c2r_1d(
      static_cast<int>(n), reinterpret_cast<fftw_complex*>(in.data()),
      out.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!p) throw model_error("FFT planning failed");
  cache.emplace(n, p);
  return p;
}

}  // namespace

void rfft(std::span<const double> in, std::vector<std::complex<double>>& out) {
  const std::size_t n = in.size();
  if (n < 2) throw argument_error("rfft needs at least two samples");
  out.assign(n / 2 + 1, {});
  fftw_plan p = forward_plan(n);
  // r2c destroys its input for odd sizes; always transform a copy.
  std::vector<double> tmp(in.begin(), in.end());
  fftw_execute_dft_r2c(p, tmp.data(),
                       reinterpret_cast<fftw_complex*>(out.data()));
}

void irfft(std::span<const std::complex<double>> in, std::size_t n,
           std::vector<double>& out) {
  if (n < 2) throw argument_error("irfft needs at least two samples");
  if (in.size() != n / 2 + 1) {
    throw argument_error("irfft spectrum length must be n/2+1");
  }
  std::vector<std::complex<double>> tmp(in.begin(), in.end());
  out.assign(n, 0.0);
  fftw_plan p = inverse_plan(n);
  fftw_execute_dft_c2r(p, reinterpret_cast<fftw_complex*>(tmp.data()),
                       out.data());
  const double scale = 1.0 / static_cast<double>(n);
  for (double& v : out) v *= scale;
}

}  // namespace ispec
