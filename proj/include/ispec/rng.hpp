#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace ispec {

/// splitmix64 mixing step; the basis of all sub-stream seed derivation.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed for sub-stream `stream` of a parent seed. Chunked and parallel
/// generation must derive their per-chunk seeds through this function and
/// nothing else, so that chunk boundaries stay reproducible regardless of
/// execution order.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t stream) {
  return splitmix64(parent ^ splitmix64(stream + 1));
}

/// Gaussian/uniform stream on top of mt19937_64. Box-Muller is hand-rolled
/// because std::normal_distribution's output sequence is not pinned by the
/// standard and would break the bit-identical-output contract.
class GaussianRng {
 public:
  explicit GaussianRng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in (0, 1], 53-bit resolution.
  double uniform01() {
    return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
  }

  /// Standard normal deviate.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  /// Bernoulli draw with success probability p in [0, 1].
  bool bernoulli(double p) { return uniform01() <= p; }

  std::uint64_t next_u64() { return gen_(); }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace ispec
