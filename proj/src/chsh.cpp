#include "spdc/chsh.hpp"

#include <cmath>
#include <random>

namespace spdc {

ChshAngles default_angles() {
  return ChshAngles{-M_PI / 4.0, 0.0, 5.0 * M_PI / 8.0, 7.0 * M_PI / 8.0};
}

Expectation expectation(const SettingCounts& c) {
  const double total = c.total();
  if (total <= 0.0) throw validation_error("expectation: setting total is zero");
  const double num = c.c_pp - c.c_pm - c.c_mp + c.c_mm;
  Expectation out;
  out.e = num / total;
  // E = num/total with each count an independent Poisson variable
  double var = 0.0;
  const double counts[4] = {c.c_pp, c.c_pm, c.c_mp, c.c_mm};
  const double signs[4] = {1.0, -1.0, -1.0, 1.0};
  for (int k = 0; k < 4; ++k) {
    double d = (signs[k] * total - num) / (total * total);
    var += d * d * counts[k];
  }
  out.err = std::sqrt(var);
  return out;
}

ChshResult s_from_counts(const std::array<SettingCounts, 4>& counts) {
  static const char* names[4] = {"(ts,ti)", "(ts,ti')", "(ts',ti)", "(ts',ti')"};
  ChshResult r;
  r.counts = counts;
  double var = 0.0;
  for (int k = 0; k < 4; ++k) {
    if (counts[k].total() <= 0.0)
      throw validation_error(std::string("s_from_counts: empty setting ") + names[k]);
    r.e_values[k] = expectation(counts[k]);
    var += r.e_values[k].err * r.e_values[k].err;
  }
  r.s = std::fabs(r.e_values[0].e + r.e_values[1].e - r.e_values[2].e + r.e_values[3].e);
  r.s_err = std::sqrt(var);
  return r;
}

std::array<std::array<AnalyzerPair, 4>, 4> chsh_analyzer_grid(const ChshAngles& angles) {
  const double ts[2] = {angles.theta_s, angles.theta_s_prime};
  const double ti[2] = {angles.theta_i, angles.theta_i_prime};
  std::array<std::array<AnalyzerPair, 4>, 4> grid{};
  for (int s = 0; s < 2; ++s)
    for (int i = 0; i < 2; ++i) {
      int setting = 2 * s + i;
      grid[setting][0] = AnalyzerPair{ts[s], ti[i], false, false};  // ++
      grid[setting][1] = AnalyzerPair{ts[s], ti[i], false, true};   // +-
      grid[setting][2] = AnalyzerPair{ts[s], ti[i], true, false};   // -+
      grid[setting][3] = AnalyzerPair{ts[s], ti[i], true, true};    // --
    }
  return grid;
}

std::array<SettingCounts, 4> exact_setting_counts(const TwoQubitState& state,
                                                  const ChshAngles& angles,
                                                  double n_per_setting) {
  auto grid = chsh_analyzer_grid(angles);
  std::array<SettingCounts, 4> out{};
  for (int k = 0; k < 4; ++k) {
    out[k].c_pp = n_per_setting * coincidence_prob(state, grid[k][0]);
    out[k].c_pm = n_per_setting * coincidence_prob(state, grid[k][1]);
    out[k].c_mp = n_per_setting * coincidence_prob(state, grid[k][2]);
    out[k].c_mm = n_per_setting * coincidence_prob(state, grid[k][3]);
  }
  return out;
}

std::array<SettingCounts, 4> sampled_setting_counts(const TwoQubitState& state,
                                                    const ChshAngles& angles,
                                                    double n_per_setting,
                                                    std::uint64_t seed) {
  auto exact = exact_setting_counts(state, angles, n_per_setting);
  std::mt19937_64 rng(seed);
  for (auto& setting : exact) {
    for (double* c : {&setting.c_pp, &setting.c_pm, &setting.c_mp, &setting.c_mm}) {
      if (*c <= 0.0) {
        *c = 0.0;
        continue;
      }
      std::poisson_distribution<long long> draw(*c);
      *c = static_cast<double>(draw(rng));
    }
  }
  return exact;
}

double s_exact(const TwoQubitState& state, const ChshAngles& angles) {
  return s_from_counts(exact_setting_counts(state, angles, 1.0)).s;
}

}  // namespace spdc
