#pragma once

#include <optional>
#include <utility>

#include "spdc/core.hpp"

namespace spdc {

// Closed-form multi-pair visibility model for a pulsed singlet source with
// photon-number non-resolving detectors and equal per-arm efficiency eta.

struct CoincidenceExtrema {
  double c_min = 0.0;  // per-pulse coincidence probability, parallel analyzers
  double c_max = 0.0;  // per-pulse coincidence probability, orthogonal analyzers
  std::optional<double> visibility;  // empty when c_max == 0 (no pairs)
  int truncation_n = 0;              // highest pair number included in the sums
};

// Probability weight for exactly n pairs in a pulse.
// Poisson: e^{-alpha} alpha^n / n!
// Thermal (single-mode geometric): alpha^n / (1+alpha)^{n+1}
double pair_weight(int n, double alpha, PairDistribution dist);

// Per-n coincidence probability extrema for n independent singlet pairs,
// H/V arrangements binomially distributed:
//   c_min(n) = 2^{-n} sum_{k=1}^{n-1} C(n,k) [1-(1-eta)^k][1-(1-eta)^{n-k}]
//   c_max(n) = 2^{-n} sum_{k=1}^{n}   C(n,k) [1-(1-eta)^k]^2
// n = 0 is rejected; the pulse-averaged sums start at n = 1.
std::pair<double, double> c_n_extrema(int n, double eta);

// Independent oracle for c_n_extrema: enumerates all 2^n polarization
// arrangements and computes the per-arm detection probabilities by
// inclusion-exclusion over per-photon Bernoulli(eta) detection.
// Guarded to n <= 12.
std::pair<double, double> brute_force_c_n(int n, double eta);

// Pulse-averaged C_min, C_max and visibility. The sums over n are truncated
// once the pair-number tail mass drops below 1e-12. Requires
// eta_signal == eta_idler.
CoincidenceExtrema coincidence_extrema(const SourceParams& params);

struct SmallAlphaResult {
  double c_min = 0.0;
  double c_max = 0.0;
  double visibility = 0.0;
};

// Two-pair truncation of the model:
//   C_min = eta^2 alpha^2 / 4
//   C_max = (eta^2 alpha / 2) [1 + (alpha/4)(2 - 4 eta + eta^2)]
//   V     = 1 - alpha
SmallAlphaResult small_alpha(double alpha, double eta);

// Finds alpha with full-model visibility v_target by bisection (tolerance
// 1e-6 in V); throws numerical_error if no solution exists below alpha = 10.
double invert_visibility(double v_target, double eta, PairDistribution dist);

// Smallest n_max whose pair-number tail mass is below tail_bound.
int truncation_order(double alpha, PairDistribution dist, double tail_bound = 1e-12);

}  // namespace spdc
