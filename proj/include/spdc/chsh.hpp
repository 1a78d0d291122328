#pragma once

#include <array>
#include <cstdint>

#include "spdc/core.hpp"
#include "spdc/quantum_state.hpp"

namespace spdc {

// CHSH S-parameter estimation: S = |E(ts,ti) + E(ts,ti') - E(ts',ti) + E(ts',ti')|,
// each E from the four analyzer combinations (t, t+pi/2) per side.

struct ChshAngles {
  double theta_s = 0.0;
  double theta_s_prime = 0.0;
  double theta_i = 0.0;
  double theta_i_prime = 0.0;
};

// The S-maximizing settings: theta_s = -pi/4, theta_s' = 0, theta_i = 5pi/8,
// theta_i' = 7pi/8.
ChshAngles default_angles();

// Counts for one setting's four analyzer combinations; (+) is the chosen
// angle, (-) its orthogonal complement.
struct SettingCounts {
  double c_pp = 0.0;
  double c_pm = 0.0;
  double c_mp = 0.0;
  double c_mm = 0.0;

  double total() const { return c_pp + c_pm + c_mp + c_mm; }
};

struct Expectation {
  double e = 0.0;
  double err = 0.0;  // 1-sigma, independent-Poisson propagation
};

// E = (c_pp - c_pm - c_mp + c_mm) / total; throws validation_error on
// total == 0.
Expectation expectation(const SettingCounts& counts);

struct ChshResult {
  std::array<Expectation, 4> e_values{};
  double s = 0.0;
  double s_err = 0.0;
  std::array<SettingCounts, 4> counts{};
};

// Combines the four settings (ordered ts-ti, ts-ti', ts'-ti, ts'-ti') with
// the sign pattern + + - +; s_err by quadrature.
ChshResult s_from_counts(const std::array<SettingCounts, 4>& counts);

// Analytic S from state traces; no sampling.
double s_exact(const TwoQubitState& state, const ChshAngles& angles);

// Expected counts for each setting at a total of n_per_setting coincidences.
std::array<SettingCounts, 4> exact_setting_counts(const TwoQubitState& state,
                                                  const ChshAngles& angles,
                                                  double n_per_setting);

// Poisson-sampled counts about the expectations.
std::array<SettingCounts, 4> sampled_setting_counts(const TwoQubitState& state,
                                                    const ChshAngles& angles,
                                                    double n_per_setting,
                                                    std::uint64_t seed);

// The 16 analyzer pairs behind the four settings, in E-combination order.
std::array<std::array<AnalyzerPair, 4>, 4> chsh_analyzer_grid(const ChshAngles& angles);

}  // namespace spdc
