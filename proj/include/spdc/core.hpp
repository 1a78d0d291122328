#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace spdc {

// Thrown when a SourceParams invariant or an input precondition is violated.
class validation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when an iterative numerical procedure fails (non-convergence,
// bracket failure, rank deficiency).
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class PairDistribution { Poisson, Thermal };

std::string to_string(PairDistribution d);
PairDistribution pair_distribution_from_string(const std::string& s);

// Full physical configuration of the source and detection chain.
// Defaults mirror the reference setup: 31.1 MHz repetition rate, 1.8 ns
// coincidence window, 9.5% conditional detection efficiency, fluorescence
// singles at 5% of SPDC singles, 50/s dark counts.
struct SourceParams {
  double alpha = 0.01;             // mean pair number per pulse
  double eta_signal = 0.095;       // per-arm system detection efficiency
  double eta_idler = 0.095;
  double mixing_p = 1.0;           // singlet weight of the Werner defect (A-D analysis)
  double mixing_p_hv = 1.0;        // singlet weight used for H-V analysis
  double rep_rate = 31.1e6;        // Hz
  double coinc_window = 1.8e-9;    // s
  double dark_rate_signal = 50.0;  // counts/s
  double dark_rate_idler = 50.0;
  double fluor_fraction = 0.05;    // fluorescence singles / SPDC singles per arm
  PairDistribution pair_distribution = PairDistribution::Poisson;
};

// Returns params unchanged if every invariant holds; throws validation_error
// naming the first violated invariant otherwise.
const SourceParams& validate(const SourceParams& p);

// Stable fingerprint over all fields (FNV-1a of the canonical text form).
std::uint64_t params_hash(const SourceParams& p);

// Linear polarization analyzer angles for the signal and idler arms, radians
// from H. The ortho flags select the orthogonal complement (theta + pi/2) on
// a side, used to build the four CHSH sub-settings.
struct AnalyzerPair {
  double theta_s = 0.0;
  double theta_i = 0.0;
  bool ortho_s = false;
  bool ortho_i = false;

  double effective_s() const;
  double effective_i() const;
};

// Per-run tallies from the pulse-by-pulse simulation.
struct CountRecord {
  std::uint64_t pulses = 0;
  std::uint64_t singles_s = 0;
  std::uint64_t singles_i = 0;
  std::uint64_t coincidences = 0;
  std::uint64_t seed = 0;
  std::uint64_t params_hash = 0;
  std::string rng_name;

  CountRecord& operator+=(const CountRecord& other);
};

}  // namespace spdc
