#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ispec {

/// Generator seed and algorithm tag of a synthesized trace. Traces produced
/// by transformations keep the tag "derived".
struct SeedProvenance {
  std::uint64_t seed = 0;
  std::string algorithm = "derived";
};

/// Uniformly sampled phase time series [rad].
struct PhaseTrace {
  std::vector<double> samples;
  double fs = 0.0;  // Hz
  double t0 = 0.0;  // s
  SeedProvenance seed_provenance;

  std::size_t size() const { return samples.size(); }
  double duration() const { return static_cast<double>(samples.size()) / fs; }
};

/// Optical power at a detector input [W].
struct PowerTrace {
  std::vector<double> samples;
  double fs = 0.0;
  double t0 = 0.0;

  std::size_t size() const { return samples.size(); }
  double duration() const { return static_cast<double>(samples.size()) / fs; }
};

/// Photodetector output [V].
struct VoltageTrace {
  std::vector<double> samples;
  double fs = 0.0;
  double t0 = 0.0;

  std::size_t size() const { return samples.size(); }
  double duration() const { return static_cast<double>(samples.size()) / fs; }
};

}  // namespace ispec
