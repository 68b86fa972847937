#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ispec/psd_model.hpp"
#include "ispec/trace.hpp"

namespace ispec::ifo {

/// Asymmetric Mach-Zehnder description. visibility_cap lumps polarisation
/// mismatch, mode overlap and attenuation imbalance into one scalar.
struct AmziConfig {
  double tau = 0.0;                    // s, arm temporal asymmetry
  double insertion_loss_arm1_db = 0.0;
  double insertion_loss_arm2_db = 0.0;
  double visibility_cap = 1.0;         // (0, 1]
  double input_power = 1.0;            // W

  void validate() const;
};

/// Classical fast-photodetector chain. Bandwidth is not modelled: all
/// simulated rates sit far below a GHz-class detector's rolloff.
struct DetectorConfig {
  double responsivity = 1.0;        // V/W
  double dc_offset = 0.0;           // V
  double offset_drift_rate = 0.0;   // V/s
  double additive_noise_rms = 0.0;  // V
  double fs = 0.0;                  // Hz

  void validate() const;
};

/// dphi(t) = phi(t + tau) - phi(t). Non-integer sample offsets use 64-tap
/// Kaiser-windowed-sinc interpolation; the output is shortened by
/// ceil(tau*fs) samples. The first/last ~32 samples of a fractional-delay
/// output reuse edge samples where the filter support overruns the trace.
PhaseTrace delay_difference(const PhaseTrace& phase, double tau);

/// Interference law P = (1/2){S + D cos(dphi)} with S and D computed from
/// the two arm powers (input split 50:50, per-arm dB losses applied) and
/// D scaled by visibility_cap.
PowerTrace interference_power(const PhaseTrace& dphi, const AmziConfig& cfg);

/// V(t) = responsivity*P(t) + dc_offset + offset_drift_rate*t + Gaussian
/// noise of the configured RMS; seeded and reproducible.
VoltageTrace detect_classical(const PowerTrace& power,
                              const DetectorConfig& det, std::uint64_t seed);

struct ChannelSpec {
  std::string name;
  noise::PsdModel fibre;
  AmziConfig amzi;
};

inline constexpr std::size_t kDefaultMaxSamples = std::size_t{1} << 26;

/// Parallel AMZIs fed by one laser: channels share the laser seed stream and
/// differ in fibre and detector seeds.
struct AmziScenario {
  noise::PsdModel laser;
  std::vector<ChannelSpec> channels;
  DetectorConfig detector;  // fs is forced to the scenario fs
  double duration = 0.0;    // s
  double fs = 0.0;          // Hz
  std::uint64_t seed = 0;
  std::size_t max_samples = kDefaultMaxSamples;  // memory budget cap
};

// Fixed sub-stream tags for derive_seed(scenario.seed, tag).
inline constexpr std::uint64_t kLaserSeedStream = 0x10;
inline constexpr std::uint64_t kFibreSeedStreamBase = 0x100;
inline constexpr std::uint64_t kDetectorSeedStreamBase = 0x200;

std::map<std::string, VoltageTrace> run_parallel_amzis(
    const AmziScenario& scenario);

}  // namespace ispec::ifo
