#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

#include "spdc/core.hpp"

namespace spdc {

// Two-qubit polarization algebra in the basis {HH, HV, VH, VV} (signal x idler).

struct TwoQubitState {
  Eigen::Matrix4cd rho;
};

// Wraps a raw matrix as a state after checking Hermiticity (1e-12), unit
// trace (1e-12) and positive semidefiniteness. Eigenvalues within -1e-10 of
// zero are clipped to the PSD cone and the state renormalized; anything more
// negative is rejected.
TwoQubitState make_state(const Eigen::Matrix4cd& rho);

// |psi-><psi-| with |psi-> = (|HV> - |VH>)/sqrt(2).
TwoQubitState singlet();

// p |psi-><psi-| + (1-p) I/4.
TwoQubitState werner(double p);

// Jones vector of a linear polarization at angle theta from H.
Eigen::Vector2cd linear_jones(double theta);

// Named tomography polarizations: H, V, D = (H+V)/sqrt2, A = (H-V)/sqrt2,
// R = (H - iV)/sqrt2, L = (H + iV)/sqrt2.
Eigen::Vector2cd jones_h();
Eigen::Vector2cd jones_v();
Eigen::Vector2cd jones_d();
Eigen::Vector2cd jones_a();
Eigen::Vector2cd jones_r();
Eigen::Vector2cd jones_l();

// Tr{rho Pi_a x Pi_b} for pure per-arm states a, b.
double joint_projection_prob(const TwoQubitState& state, const Eigen::Vector2cd& arm_s,
                             const Eigen::Vector2cd& arm_i);

// Coincidence probability behind linear analyzers at the pair's effective angles.
double coincidence_prob(const TwoQubitState& state, const AnalyzerPair& analyzers);

// Tr{rho rho_psi-}.
double fidelity_to_singlet(const TwoQubitState& state);

// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 between mixed states.
double fidelity(const TwoQubitState& a, const TwoQubitState& b);

// Squared Wootters concurrence.
double tangle(const TwoQubitState& state);

double purity(const TwoQubitState& state);

// Row-major (re, im) flattening used by the tomography fixtures.
std::array<double, 32> to_flat(const TwoQubitState& state);
TwoQubitState from_flat(const std::array<double, 32>& flat);

}  // namespace spdc
