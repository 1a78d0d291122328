#include "spdc/quantum_state.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace spdc {

namespace {

using std::complex;
const complex<double> kI(0.0, 1.0);

Eigen::Vector4cd kron_vec(const Eigen::Vector2cd& a, const Eigen::Vector2cd& b) {
  Eigen::Vector4cd out;
  out << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
  return out;
}

Eigen::Matrix4cd kron_mat(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
  return out;
}

Eigen::Vector4cd singlet_ket() {
  Eigen::Vector4cd psi;
  psi << 0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0;
  return psi;
}

}  // namespace

TwoQubitState make_state(const Eigen::Matrix4cd& rho) {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw validation_error("state not Hermitian");
  if (std::fabs(rho.trace().real() - 1.0) > 1e-12 || std::fabs(rho.trace().imag()) > 1e-12)
    throw validation_error("state trace != 1");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho);
  double min_ev = es.eigenvalues().minCoeff();
  if (min_ev < -1e-10) throw validation_error("state not positive semidefinite");
  if (min_ev < 0.0) {
    // clip onto the PSD cone and renormalize
    Eigen::Vector4d ev = es.eigenvalues().cwiseMax(0.0);
    ev /= ev.sum();
    Eigen::Matrix4cd fixed =
        es.eigenvectors() * ev.asDiagonal().toDenseMatrix().cast<complex<double>>() *
        es.eigenvectors().adjoint();
    return TwoQubitState{fixed};
  }
  return TwoQubitState{rho};
}

TwoQubitState singlet() {
  Eigen::Vector4cd psi = singlet_ket();
  return TwoQubitState{psi * psi.adjoint()};
}

TwoQubitState werner(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw validation_error("werner: p out of [0,1]");
  Eigen::Matrix4cd rho =
      p * singlet().rho + (1.0 - p) * 0.25 * Eigen::Matrix4cd::Identity();
  return TwoQubitState{rho};
}

Eigen::Vector2cd linear_jones(double theta) {
  Eigen::Vector2cd v;
  v << std::cos(theta), std::sin(theta);
  return v;
}

Eigen::Vector2cd jones_h() { return linear_jones(0.0); }
Eigen::Vector2cd jones_v() { return linear_jones(M_PI / 2.0); }
Eigen::Vector2cd jones_d() { return linear_jones(M_PI / 4.0); }
Eigen::Vector2cd jones_a() { return linear_jones(-M_PI / 4.0); }

Eigen::Vector2cd jones_r() {
  Eigen::Vector2cd v;
  v << 1.0 / std::sqrt(2.0), -kI / std::sqrt(2.0);
  return v;
}

Eigen::Vector2cd jones_l() {
  Eigen::Vector2cd v;
  v << 1.0 / std::sqrt(2.0), kI / std::sqrt(2.0);
  return v;
}

double joint_projection_prob(const TwoQubitState& state, const Eigen::Vector2cd& arm_s,
                             const Eigen::Vector2cd& arm_i) {
  Eigen::Vector4cd joint = kron_vec(arm_s, arm_i);
  complex<double> p = joint.adjoint() * state.rho * joint;
  return p.real();
}

double coincidence_prob(const TwoQubitState& state, const AnalyzerPair& analyzers) {
  return joint_projection_prob(state, linear_jones(analyzers.effective_s()),
                               linear_jones(analyzers.effective_i()));
}

double fidelity_to_singlet(const TwoQubitState& state) {
  return (state.rho * singlet().rho).trace().real();
}

double fidelity(const TwoQubitState& a, const TwoQubitState& b) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(a.rho);
  Eigen::Vector4d ev = es.eigenvalues().cwiseMax(0.0);
  Eigen::Matrix4cd sqrt_a =
      es.eigenvectors() *
      ev.cwiseSqrt().asDiagonal().toDenseMatrix().cast<complex<double>>() *
      es.eigenvectors().adjoint();
  Eigen::Matrix4cd m = sqrt_a * b.rho * sqrt_a;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es2(m);
  double f = es2.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return f * f;
}

double tangle(const TwoQubitState& state) {
  // spin-flip: rho_tilde = (sy x sy) rho* (sy x sy)
  Eigen::Matrix2cd sy;
  sy << 0.0, -kI, kI, 0.0;
  Eigen::Matrix4cd yy = kron_mat(sy, sy);
  Eigen::Matrix4cd rho_tilde = yy * state.rho.conjugate() * yy;
  // lambda_i = sqrt eigenvalues of rho rho_tilde = eigenvalues of the
  // Hermitian matrix sqrt(rho) rho_tilde sqrt(rho); the Hermitian route is
  // far better conditioned than a general eigensolve
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> rho_es(state.rho);
  Eigen::Matrix4cd sqrt_rho =
      rho_es.eigenvectors() *
      rho_es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
      rho_es.eigenvectors().adjoint();
  Eigen::Matrix4cd m = sqrt_rho * rho_tilde * sqrt_rho;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(0.5 * (m + m.adjoint().eval()));
  // zero out eigenvalues at the numerical-noise floor: sqrt would amplify
  // O(eps) noise to O(sqrt(eps)) in the concurrence
  const double floor = 1e-13 * std::max(es.eigenvalues().maxCoeff(), 0.0);
  Eigen::Vector4d clipped =
      (es.eigenvalues().array() < floor).select(0.0, es.eigenvalues());
  Eigen::Vector4d lambda = clipped.cwiseMax(0.0).cwiseSqrt();
  std::sort(lambda.data(), lambda.data() + 4, std::greater<double>());
  double c = lambda(0) - lambda(1) - lambda(2) - lambda(3);
  c = std::max(0.0, c);
  return c * c;
}

double purity(const TwoQubitState& state) {
  return (state.rho * state.rho).trace().real();
}

std::array<double, 32> to_flat(const TwoQubitState& state) {
  std::array<double, 32> out{};
  int k = 0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      out[k++] = state.rho(r, c).real();
      out[k++] = state.rho(r, c).imag();
    }
  return out;
}

TwoQubitState from_flat(const std::array<double, 32>& flat) {
  Eigen::Matrix4cd rho;
  int k = 0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      rho(r, c) = complex<double>(flat[k], flat[k + 1]);
      k += 2;
    }
  return make_state(rho);
}

}  // namespace spdc
