#include "spdc/tomography.hpp"

#include <cmath>
#include <random>

namespace spdc {

namespace {

using Vec16 = Eigen::Matrix<double, 16, 1>;
using Mat16 = Eigen::Matrix<double, 16, 16>;

Eigen::Vector4cd joint_ket(const TomoSetting& s) {
  Eigen::Vector4cd v;
  v << s.arm_s(0) * s.arm_i(0), s.arm_s(0) * s.arm_i(1), s.arm_s(1) * s.arm_i(0),
      s.arm_s(1) * s.arm_i(1);
  return v;
}

// Hermitian parametrization of a 4x4 matrix: 4 diagonal entries, then
// (re, im) of the 6 upper-triangle entries.
Eigen::Matrix4cd hermitian_from_params(const Vec16& x) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  int k = 0;
  for (int r = 0; r < 4; ++r) m(r, r) = x(k++);
  for (int r = 0; r < 4; ++r)
    for (int c = r + 1; c < 4; ++c) {
      std::complex<double> z(x(k), x(k + 1));
      k += 2;
      m(r, c) = z;
      m(c, r) = std::conj(z);
    }
  return m;
}

Vec16 hermitian_to_params(const Eigen::Matrix4cd& m) {
  Vec16 x;
  int k = 0;
  for (int r = 0; r < 4; ++r) x(k++) = m(r, r).real();
  for (int r = 0; r < 4; ++r)
    for (int c = r + 1; c < 4; ++c) {
      x(k++) = m(r, c).real();
      x(k++) = m(r, c).imag();
    }
  return x;
}

// Row i of the real design matrix: d count_i / d hermitian-params.
Mat16 design_matrix(const TomoSettings& settings) {
  Mat16 a;
  for (std::size_t i = 0; i < settings.size(); ++i) {
    Eigen::Vector4cd v = joint_ket(settings[i]);
    Eigen::Matrix4cd proj = v * v.adjoint();  // Tr(rho proj) = sum conj(proj) .* rho
    Vec16 row;
    int k = 0;
    for (int r = 0; r < 4; ++r) row(k++) = proj(r, r).real();
    for (int r = 0; r < 4; ++r)
      for (int c = r + 1; c < 4; ++c) {
        // contribution of Re/Im rho_rc to Tr(rho proj)
        row(k++) = 2.0 * proj(r, c).real();
        row(k++) = 2.0 * proj(r, c).imag();
      }
    a.row(static_cast<int>(i)) = row.transpose();
  }
  return a;
}

// Lower-triangular T packed as 16 reals: diagonal first, then (re, im) of the
// sub-diagonal entries row by row.
Eigen::Matrix4cd t_from_params(const Vec16& t) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  int k = 0;
  for (int r = 0; r < 4; ++r) m(r, r) = t(k++);
  for (int r = 1; r < 4; ++r)
    for (int c = 0; c < r; ++c) {
      m(r, c) = std::complex<double>(t(k), t(k + 1));
      k += 2;
    }
  return m;
}

Vec16 params_from_t(const Eigen::Matrix4cd& m) {
  Vec16 t;
  int k = 0;
  for (int r = 0; r < 4; ++r) t(k++) = m(r, r).real();
  for (int r = 1; r < 4; ++r)
    for (int c = 0; c < r; ++c) {
      t(k++) = m(r, c).real();
      t(k++) = m(r, c).imag();
    }
  return t;
}

struct Problem {
  std::vector<Eigen::Vector4cd> kets;
  std::vector<double> counts;
  TomoCost cost;

  // model counts m_i = |T^dagger v_i|^2 for the unnormalized rho = T T^dagger
  void model(const Vec16& t, Eigen::VectorXd& m) const {
    Eigen::Matrix4cd tt = t_from_params(t).adjoint();
    for (std::size_t i = 0; i < kets.size(); ++i) m(static_cast<int>(i)) = (tt * kets[i]).squaredNorm();
  }

  void residuals(const Vec16& t, Eigen::VectorXd& r) const {
    Eigen::VectorXd m(static_cast<int>(kets.size()));
    model(t, m);
    for (std::size_t i = 0; i < kets.size(); ++i) {
      const int ii = static_cast<int>(i);
      const double n = counts[i];
      const double mi = std::max(m(ii), 1e-300);
      if (cost == TomoCost::LeastSquares) {
        r(ii) = (n - mi) / std::sqrt(std::max(n, 1.0));
      } else {
        // signed Poisson deviance residual; sum of squares is the deviance
        double dev = n > 0.0 ? 2.0 * (mi - n + n * std::log(n / mi)) : 2.0 * mi;
        r(ii) = std::copysign(std::sqrt(std::max(dev, 0.0)), n - mi);
      }
    }
  }

  double cost_value(const Vec16& t) const {
    Eigen::VectorXd r(static_cast<int>(kets.size()));
    residuals(t, r);
    return r.squaredNorm();
  }
};

}  // namespace

TomoSettings standard_settings() {
  struct Named {
    const char* name;
    Eigen::Vector2cd v;
  };
  const Named basis[4] = {{"H", jones_h()}, {"V", jones_v()}, {"D", jones_d()}, {"R", jones_r()}};
  TomoSettings out;
  out.reserve(16);
  for (const auto& s : basis)
    for (const auto& i : basis)
      out.push_back(TomoSetting{std::string(s.name) + i.name, s.v, i.v});
  return out;
}

int design_rank(const TomoSettings& settings) {
  if (settings.size() != 16) throw validation_error("design_rank: need exactly 16 settings");
  Eigen::JacobiSVD<Mat16> svd(design_matrix(settings));
  svd.setThreshold(1e-10);
  return static_cast<int>(svd.rank());
}

std::vector<double> forward_counts_exact(const TwoQubitState& state,
                                         const TomoSettings& settings,
                                         double n_per_setting) {
  if (n_per_setting < 1.0) throw validation_error("forward_counts: n_per_setting must be >= 1");
  std::vector<double> out;
  out.reserve(settings.size());
  for (const auto& s : settings)
    out.push_back(n_per_setting * joint_projection_prob(state, s.arm_s, s.arm_i));
  return out;
}

std::vector<double> forward_counts_sampled(const TwoQubitState& state,
                                           const TomoSettings& settings,
                                           double n_per_setting, std::uint64_t seed) {
  auto expected = forward_counts_exact(state, settings, n_per_setting);
  std::mt19937_64 rng(seed);
  for (double& c : expected) {
    if (c <= 0.0) {
      c = 0.0;
      continue;
    }
    std::poisson_distribution<long long> draw(c);
    c = static_cast<double>(draw(rng));
  }
  return expected;
}

TomoResult reconstruct(std::span<const double> counts, const TomoSettings& settings,
                       TomoCost cost) {
  if (counts.size() != settings.size() || counts.size() != 16)
    throw validation_error("reconstruct: need 16 counts matching the settings");
  if (design_rank(settings) < 16)
    throw validation_error("reconstruct: rank-deficient settings");

  Problem prob;
  prob.cost = cost;
  prob.counts.assign(counts.begin(), counts.end());
  for (const auto& s : settings) prob.kets.push_back(joint_ket(s));

  // linear inversion for the unnormalized rho, then project onto the PSD cone
  Mat16 a = design_matrix(settings);
  Vec16 y;
  for (int i = 0; i < 16; ++i) y(i) = counts[i];
  Vec16 x = a.colPivHouseholderQr().solve(y);
  Eigen::Matrix4cd rho_un = hermitian_from_params(x);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho_un);
  double scale = std::max(es.eigenvalues().maxCoeff(), 1.0);
  // floor well above zero: seeding T exactly on the rank boundary leaves the
  // optimizer with vanishing gradients in the missing directions
  Eigen::Vector4d ev = es.eigenvalues().cwiseMax(1e-3 * scale);
  Eigen::Matrix4cd psd = es.eigenvectors() *
                         ev.asDiagonal().toDenseMatrix().cast<std::complex<double>>() *
                         es.eigenvectors().adjoint();
  auto seed_params = [](const Eigen::Matrix4cd& m) {
    Eigen::LLT<Eigen::Matrix4cd> llt(m);
    if (llt.info() != Eigen::Success)
      throw numerical_error("reconstruct: Cholesky seeding failed");
    return params_from_t(llt.matrixL());
  };

  // Levenberg-Marquardt on the 16 T parameters, forward-difference Jacobian
  const int n_obs = 16;
  int iterations = 0;
  auto run_lm = [&](Vec16 t) {
    Eigen::VectorXd r(n_obs);
    prob.residuals(t, r);
    double current = r.squaredNorm();
    if (!std::isfinite(current)) throw numerical_error("reconstruct: non-finite initial cost");
    double lambda = 1e-3;
    bool done = false;
    const double t_scale = std::max(t.cwiseAbs().maxCoeff(), 1e-6);

    for (; iterations < 10000 && !done; ++iterations) {
      Eigen::Matrix<double, 16, 16> jac;
      Eigen::VectorXd r_h(n_obs);
      for (int j = 0; j < 16; ++j) {
        double h = 1e-7 * (t_scale + std::fabs(t(j)));
        Vec16 tj = t;
        tj(j) += h;
        prob.residuals(tj, r_h);
        jac.col(j) = (r_h - r) / h;
      }
      Mat16 jtj = jac.transpose() * jac;
      Vec16 g = jac.transpose() * r;
      if (g.cwiseAbs().maxCoeff() < 1e-14) break;

      bool accepted = false;
      for (int attempt = 0; attempt < 40; ++attempt) {
        Mat16 damped = jtj;
        damped.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-12);
        Vec16 delta = damped.ldlt().solve(-g);
        Vec16 t_new = t + delta;
        double trial = prob.cost_value(t_new);
        if (std::isfinite(trial) && trial <= current) {
          double rel = (current - trial) / std::max(current, 1e-300);
          t = t_new;
          prob.residuals(t, r);
          current = trial;
          lambda = std::max(lambda * 0.3, 1e-12);
          accepted = true;
          if (rel < 1e-10) done = true;
          break;
        }
        lambda *= 4.0;
      }
      if (!accepted) break;  // no downhill step at any damping; at a minimum
    }
    return std::pair<Vec16, double>(t, current);
  };

  auto [t, current] = run_lm(seed_params(psd));
  if (current > 10.0 * n_obs) {
    // stalled fit: retry from a heavily mixed full-rank seed and keep the better
    Eigen::Matrix4cd blend =
        0.5 * psd + 0.5 * (psd.trace().real() / 4.0) * Eigen::Matrix4cd::Identity();
    auto [t2, cost2] = run_lm(seed_params(blend));
    if (cost2 < current) {
      t = t2;
      current = cost2;
    }
  }

  Eigen::Matrix4cd t_mat = t_from_params(t);
  Eigen::Matrix4cd rho_fit = t_mat * t_mat.adjoint();
  double tr = rho_fit.trace().real();
  if (!(tr > 0.0)) throw numerical_error("reconstruct: zero-trace estimate");
  rho_fit /= tr;
  // symmetrize away accumulated roundoff before validation
  rho_fit = 0.5 * (rho_fit + rho_fit.adjoint()).eval();

  TomoResult result;
  result.rho_hat = make_state(rho_fit);
  result.fidelity = fidelity_to_singlet(result.rho_hat);
  result.tangle = tangle(result.rho_hat);
  result.purity = purity(result.rho_hat);
  result.fit_residual = current;
  result.iterations = iterations;
  return result;
}

}  // namespace spdc
