#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "spdc/quantum_state.hpp"

namespace spdc {

// Two-qubit state tomography: forward count model over 16 product-projector
// settings and maximum-likelihood reconstruction through a positive
// T-factor parametrization.

struct TomoSetting {
  std::string label;  // e.g. "HV", "DR"
  Eigen::Vector2cd arm_s;
  Eigen::Vector2cd arm_i;
};

using TomoSettings = std::vector<TomoSetting>;

// The canonical {H, V, D, R} x {H, V, D, R} projector set.
TomoSettings standard_settings();

// Rank of the 16 x 16 real design matrix; 16 means tomographically complete.
int design_rank(const TomoSettings& settings);

// Expected counts n_per_setting * p_i(state).
std::vector<double> forward_counts_exact(const TwoQubitState& state,
                                         const TomoSettings& settings,
                                         double n_per_setting);

// Poisson draws about the expectations.
std::vector<double> forward_counts_sampled(const TwoQubitState& state,
                                           const TomoSettings& settings,
                                           double n_per_setting, std::uint64_t seed);

enum class TomoCost {
  LeastSquares,       // sum (n_i - m_i)^2 / max(n_i, 1)
  PoissonLikelihood,  // Poisson deviance, minimized at the MLE
};

struct TomoResult {
  TwoQubitState rho_hat;
  double fidelity = 0.0;  // to the singlet
  double tangle = 0.0;
  double purity = 0.0;
  double fit_residual = 0.0;
  int iterations = 0;
};

// Reconstructs rho from 16 counts. The unnormalized matrix T T^dagger with T
// lower-triangular (16 real parameters, overall scale absorbs the count
// normalization) guarantees Hermiticity, positivity and unit trace after
// normalization. A Levenberg-Marquardt refinement starts from eigenvalue-
// clipped linear inversion; convergence at relative cost change < 1e-10 or
// 1e4 iterations.
TomoResult reconstruct(std::span<const double> counts, const TomoSettings& settings,
                       TomoCost cost = TomoCost::LeastSquares);

}  // namespace spdc
