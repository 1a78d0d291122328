#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "spdc/core.hpp"

namespace spdc {

// Pulse-by-pulse stochastic simulation of the source and detection chain.
//
// Pulses are partitioned into fixed-size blocks; every block draws from its
// own RNG streams derived deterministically from (seed, block, stream), so
// results are byte-identical for any shard (worker thread) count. Per pulse:
// the pair count is sampled from the configured distribution, each pair's
// joint analyzer outcome from the Werner-state probabilities, each passed
// photon is detected with its arm's efficiency, unpolarized fluorescence
// photons and dark counts are added per arm, and an arm clicks when at least
// one detection lands in the pulse window.

inline constexpr std::uint64_t kBlockPulses = 1'000'000;
inline constexpr const char* kRngName = "mt19937_64/splitmix64-blocks";

// Single-pulse diagnostic record.
struct PulseOutcome {
  int n_pairs = 0;
  bool detected_s = false;
  bool detected_i = false;
  bool cause_pair_s = false, cause_pair_i = false;
  bool cause_fluor_s = false, cause_fluor_i = false;
  bool cause_dark_s = false, cause_dark_i = false;
};

CountRecord simulate_run(const SourceParams& params, const AnalyzerPair& analyzers,
                         std::uint64_t n_pulses, std::uint64_t seed, int shards = 1);

// Same run, reported per block (for the `simulate` CSV output).
std::vector<CountRecord> simulate_blocks(const SourceParams& params,
                                         const AnalyzerPair& analyzers,
                                         std::uint64_t n_pulses, std::uint64_t seed,
                                         int shards = 1);

struct FringePoint {
  double theta_i = 0.0;     // radians
  double mean_coinc = 0.0;  // mean coincidences over the repeats
  double std_coinc = 0.0;   // sample standard deviation
};

std::vector<FringePoint> fringe_scan(const SourceParams& params, double theta_s,
                                     std::span<const double> theta_i_grid,
                                     std::uint64_t pulses_per_point, int repeats,
                                     std::uint64_t seed, int shards = 1);

struct SinusoidFit {
  double c_max = 0.0;
  double c_min = 0.0;
  double phase = 0.0;  // radians
  double visibility = 0.0;
  double visibility_err = 0.0;
  bool clipped_min = false;  // fitted c_min was negative and clipped to 0
};

// Weighted least squares of a + b sin^2(theta - phi); requires >= 5 points
// spanning at least half a fringe period. Empty errors means unit weights.
SinusoidFit fit_sinusoid(std::span<const double> angles, std::span<const double> counts,
                         std::span<const double> errors = {});

enum class Basis { HV, AD };

struct VisibilityPoint {
  double alpha = 0.0;
  std::optional<double> visibility;  // empty when no coincidences observed
  double sigma = 0.0;                // Poisson-propagated 1-sigma
  std::uint64_t counts_max = 0;
  std::uint64_t counts_min = 0;
};

// Visibility estimate per alpha from simulated orthogonal- and
// parallel-analyzer runs. The A-D basis applies mixing_p; H-V uses
// mixing_p_hv.
std::vector<VisibilityPoint> visibility_vs_alpha(const SourceParams& tmpl,
                                                 std::span<const double> alpha_grid,
                                                 Basis basis,
                                                 std::uint64_t pulses_per_point,
                                                 std::uint64_t seed, int shards = 1);

// Exact per-pulse click and coincidence probabilities for the simulated
// chain, via the pair-number generating function. Companion expectation for
// the sampler; includes fluorescence and dark contributions.
struct PulseProbs {
  double click_s = 0.0;
  double click_i = 0.0;
  double coincidence = 0.0;
};

PulseProbs expected_pulse_probs(const SourceParams& params, const AnalyzerPair& analyzers);

// Expected fringe visibility of the simulated chain in the given basis
// (ratio of expected coincidence probabilities at the orthogonal and
// parallel settings).
double expected_visibility(const SourceParams& params, Basis basis);

// Werner mixing weight p such that the expected fringe visibility in `basis`
// equals v_target, by bisection. Throws numerical_error when v_target exceeds
// the defect-free visibility at the given alpha.
double mixing_for_target_visibility(double v_target, const SourceParams& params, Basis basis);

// Analyzer settings used for visibility extrema in a basis.
AnalyzerPair extremum_setting(Basis basis, bool orthogonal);

// Poisson-propagated visibility estimate from two counts.
VisibilityPoint visibility_from_counts(double alpha, std::uint64_t counts_max,
                                       std::uint64_t counts_min);

}  // namespace spdc
