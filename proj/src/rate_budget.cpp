#include "spdc/rate_budget.hpp"

#include <cmath>

#include "spdc/montecarlo.hpp"
#include "spdc/multipair.hpp"

namespace spdc {

AccidentalRatio accidental_ratio(double rep_rate, double coinc_window) {
  if (!(rep_rate > 0.0) || !(coinc_window > 0.0))
    throw validation_error("accidental_ratio: rep_rate and coinc_window must be positive");
  AccidentalRatio r;
  r.ratio = rep_rate * coinc_window;
  r.cw_advantage = 1.0 / r.ratio;
  r.windows_overlap = r.ratio > 1.0;
  return r;
}

double max_alpha(double v_target, const SourceParams& params) {
  if (params.eta_signal != params.eta_idler)
    throw validation_error("max_alpha: asymmetric efficiencies rejected");
  return invert_visibility(v_target, params.eta_signal, params.pair_distribution);
}

namespace {

double pgf(double x, double alpha, PairDistribution dist) {
  if (dist == PairDistribution::Poisson) return std::exp(-alpha * (1.0 - x));
  return 1.0 / (1.0 + alpha * (1.0 - x));
}

}  // namespace

BudgetReport accidental_budget(const SourceParams& params, double v_target) {
  validate(params);
  BudgetReport rep;
  rep.ratio = accidental_ratio(params.rep_rate, params.coinc_window);

  const double rp = params.rep_rate;
  const auto dist = params.pair_distribution;
  const double alpha = params.alpha;

  // per-pulse click probabilities behind a linear analyzer (pass prob 1/2)
  const double pair_click_s = 1.0 - pgf(1.0 - params.eta_signal * 0.5, alpha, dist);
  const double pair_click_i = 1.0 - pgf(1.0 - params.eta_idler * 0.5, alpha, dist);
  const double fluor_mean = params.fluor_fraction * alpha;
  const double fluor_click_s = 1.0 - std::exp(-fluor_mean * params.eta_signal * 0.5);
  const double fluor_click_i = 1.0 - std::exp(-fluor_mean * params.eta_idler * 0.5);
  const double dark_s = params.dark_rate_signal * params.coinc_window;
  const double dark_i = params.dark_rate_idler * params.coinc_window;

  SourceParams clean = params;
  clean.fluor_fraction = 0.0;
  clean.dark_rate_signal = clean.dark_rate_idler = 0.0;
  clean.mixing_p = clean.mixing_p_hv = 1.0;
  auto extrema = coincidence_extrema(clean);

  rep.multi_pair = rp * extrema.c_min;
  rep.fluorescence = rp * (pair_click_s * fluor_click_i + fluor_click_s * pair_click_i);
  rep.dark_cross = rp * (dark_s * (pair_click_i + fluor_click_i) +
                         dark_i * (pair_click_s + fluor_click_s));
  rep.dark_dark = rp * dark_s * dark_i;

  SourceParams hv = params;
  hv.mixing_p = params.mixing_p_hv;  // H-V is the natural analysis basis
  auto probs = expected_pulse_probs(hv, extremum_setting(Basis::HV, true));
  rep.singles_s = rp * probs.click_s;
  rep.singles_i = rp * probs.click_i;
  rep.coincidences = rp * probs.coincidence;

  rep.target_visibility = v_target;
  rep.max_alpha = max_alpha(v_target, params);
  return rep;
}

}  // namespace spdc
