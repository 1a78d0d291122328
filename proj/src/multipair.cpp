#include "spdc/multipair.hpp"

#include <cmath>

namespace spdc {

namespace {

// C(n,k) by the multiplicative recurrence; exact in double for n <= 64.
double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  double c = 1.0;
  for (int j = 1; j <= k; ++j) c = c * static_cast<double>(n - k + j) / static_cast<double>(j);
  return c;
}

// P(at least one of k Bernoulli(eta) photons detected), by inclusion-exclusion.
double detect_ge1_incl_excl(int k, double eta) {
  double p = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= k; ++j) {
    p += sign * binomial(k, j) * std::pow(eta, j);
    sign = -sign;
  }
  return p;
}

}  // namespace

double pair_weight(int n, double alpha, PairDistribution dist) {
  if (n < 0) throw validation_error("pair_weight: n negative");
  if (!(alpha >= 0.0)) throw validation_error("pair_weight: alpha negative");
  if (dist == PairDistribution::Poisson) {
    if (alpha == 0.0) return n == 0 ? 1.0 : 0.0;
    // log-space to stay finite for large n
    double log_p = -alpha + n * std::log(alpha) - std::lgamma(n + 1.0);
    return std::exp(log_p);
  }
  return std::pow(alpha, n) / std::pow(1.0 + alpha, n + 1);
}

int truncation_order(double alpha, PairDistribution dist, double tail_bound) {
  double cum = 0.0;
  for (int n = 0; n < 4096; ++n) {
    cum += pair_weight(n, alpha, dist);
    if (1.0 - cum < tail_bound) return n;
  }
  throw numerical_error("truncation_order: tail bound not reached by n = 4096");
}

std::pair<double, double> c_n_extrema(int n, double eta) {
  if (n < 1) throw validation_error("c_n_extrema: n must be >= 1");
  if (!(eta >= 0.0 && eta <= 1.0)) throw validation_error("c_n_extrema: eta out of [0,1]");
  const double scale = std::pow(0.5, n);
  double c_min = 0.0;
  for (int k = 1; k <= n - 1; ++k) {
    double miss_k = 1.0 - std::pow(1.0 - eta, k);
    double miss_nk = 1.0 - std::pow(1.0 - eta, n - k);
    c_min += binomial(n, k) * miss_k * miss_nk;
  }
  double c_max = 0.0;
  for (int k = 1; k <= n; ++k) {
    double hit = 1.0 - std::pow(1.0 - eta, k);
    c_max += binomial(n, k) * hit * hit;
  }
  return {scale * c_min, scale * c_max};
}

std::pair<double, double> brute_force_c_n(int n, double eta) {
  if (n < 1) throw validation_error("brute_force_c_n: n must be >= 1");
  if (n > 12) throw validation_error("brute_force_c_n: n > 12 rejected");
  if (!(eta >= 0.0 && eta <= 1.0)) throw validation_error("brute_force_c_n: eta out of [0,1]");
  const double arrangement_weight = std::pow(0.5, n);
  double c_min = 0.0;
  double c_max = 0.0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    // bit set: signal photon H (idler V); bit clear: signal V (idler H)
    int k = 0;
    for (int b = 0; b < n; ++b) k += (mask >> b) & 1u;
    // orthogonal analyzers (signal H, idler V): both arms draw from the k pairs
    c_max += arrangement_weight * detect_ge1_incl_excl(k, eta) * detect_ge1_incl_excl(k, eta);
    // parallel analyzers (signal H, idler H): signal from k pairs, idler from n-k
    c_min += arrangement_weight * detect_ge1_incl_excl(k, eta) * detect_ge1_incl_excl(n - k, eta);
  }
  return {c_min, c_max};
}

CoincidenceExtrema coincidence_extrema(const SourceParams& params) {
  validate(params);
  if (params.eta_signal != params.eta_idler)
    throw validation_error("coincidence_extrema: asymmetric efficiencies rejected");
  const double eta = params.eta_signal;
  const double alpha = params.alpha;

  CoincidenceExtrema out;
  if (alpha == 0.0) return out;  // no pairs, visibility undefined

  out.truncation_n = truncation_order(alpha, params.pair_distribution);
  for (int n = 1; n <= out.truncation_n; ++n) {
    auto [cn_min, cn_max] = c_n_extrema(n, eta);
    double w = pair_weight(n, alpha, params.pair_distribution);
    out.c_min += w * cn_min;
    out.c_max += w * cn_max;
  }
  if (out.c_max > 0.0)
    out.visibility = (out.c_max - out.c_min) / (out.c_max + out.c_min);
  return out;
}

SmallAlphaResult small_alpha(double alpha, double eta) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw validation_error("small_alpha: alpha out of [0,1]");
  if (!(eta >= 0.0 && eta <= 1.0)) throw validation_error("small_alpha: eta out of [0,1]");
  SmallAlphaResult r;
  r.c_min = 0.25 * eta * eta * alpha * alpha;
  r.c_max = 0.5 * eta * eta * alpha * (1.0 + 0.25 * alpha * (2.0 - 4.0 * eta + eta * eta));
  r.visibility = 1.0 - alpha;
  return r;
}

double invert_visibility(double v_target, double eta, PairDistribution dist) {
  if (!(v_target > 0.0 && v_target < 1.0))
    throw validation_error("invert_visibility: v_target must be in (0,1)");
  SourceParams p;
  p.eta_signal = p.eta_idler = eta;
  p.fluor_fraction = 0.0;
  p.dark_rate_signal = p.dark_rate_idler = 0.0;
  p.pair_distribution = dist;
  auto vis_at = [&](double alpha) {
    p.alpha = alpha;
    auto ex = coincidence_extrema(p);
    if (!ex.visibility) throw numerical_error("invert_visibility: visibility undefined");
    return *ex.visibility;
  };

  double lo = 1e-9;
  double hi = 10.0;
  double v_lo = vis_at(lo);
  double v_hi = vis_at(hi);
  if (v_lo < v_target || v_hi > v_target)
    throw numerical_error("invert_visibility: target not bracketed below alpha = 10");
  // the model is monotone nonincreasing in alpha; spot-check the bracket
  double prev = v_lo;
  for (int i = 1; i <= 8; ++i) {
    double v = vis_at(lo + (hi - lo) * i / 9.0);
    if (v > prev + 1e-9)
      throw numerical_error("invert_visibility: visibility not monotone on bracket");
    prev = v;
  }

  for (int iter = 0; iter < 200; ++iter) {
    double mid = 0.5 * (lo + hi);
    double v = vis_at(mid);
    if (std::fabs(v - v_target) < 1e-6) return mid;
    if (v > v_target)
      lo = mid;
    else
      hi = mid;
  }
  throw numerical_error("invert_visibility: bisection failed to converge");
}

}  // namespace spdc
