#include "spdc/montecarlo.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "spdc/multipair.hpp"
#include "spdc/quantum_state.hpp"

namespace spdc {

namespace {

constexpr std::uint64_t kNoEvent = std::numeric_limits<std::uint64_t>::max();

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(seed ^ splitmix64(a)) ^ splitmix64(~b));
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Per-pair joint analyzer-outcome probabilities (pass/pass, pass/fail,
// fail/pass, fail/fail) for the Werner state behind the given analyzers.
struct PairCells {
  double pp = 0.0, pf = 0.0, fp = 0.0, ff = 0.0;
};

PairCells pair_cells(double mixing_p, const AnalyzerPair& analyzers) {
  TwoQubitState state = werner(mixing_p);
  // fold the caller's ortho flags into the base angles before building the
  // four-outcome table, so "pass" always means the requested setting
  AnalyzerPair a{analyzers.effective_s(), analyzers.effective_i()};
  PairCells c;
  c.pp = coincidence_prob(state, a);
  a.ortho_i = true;
  c.pf = coincidence_prob(state, a);
  a.ortho_s = true;
  c.ff = coincidence_prob(state, a);
  a.ortho_i = false;
  c.fp = coincidence_prob(state, a);
  return c;
}

// Immutable per-run context shared across blocks.
struct RunContext {
  SourceParams params;
  PairCells cells;
  double p_pair_pulse = 0.0;   // P(n >= 1)
  double p_fluor_s = 0.0;      // P(>= 1 detected fluorescence photon), per arm
  double p_fluor_i = 0.0;
  double p_dark_s = 0.0;
  double p_dark_i = 0.0;
  std::vector<double> cond_cdf;  // CDF of n given n >= 1, index 0 -> n = 1
};

RunContext make_context(const SourceParams& params, const AnalyzerPair& analyzers) {
  validate(params);
  RunContext ctx;
  ctx.params = params;
  ctx.cells = pair_cells(params.mixing_p, analyzers);
  const double p0 = pair_weight(0, params.alpha, params.pair_distribution);
  ctx.p_pair_pulse = 1.0 - p0;
  const double fluor_mean = params.fluor_fraction * params.alpha;
  ctx.p_fluor_s = 1.0 - std::exp(-fluor_mean * params.eta_signal * 0.5);
  ctx.p_fluor_i = 1.0 - std::exp(-fluor_mean * params.eta_idler * 0.5);
  ctx.p_dark_s = params.dark_rate_signal * params.coinc_window;
  ctx.p_dark_i = params.dark_rate_idler * params.coinc_window;
  if (ctx.p_pair_pulse > 0.0) {
    int n_max = truncation_order(params.alpha, params.pair_distribution);
    ctx.cond_cdf.reserve(n_max);
    double cum = 0.0;
    for (int n = 1; n <= n_max; ++n) {
      cum += pair_weight(n, params.alpha, params.pair_distribution) / ctx.p_pair_pulse;
      ctx.cond_cdf.push_back(cum);
    }
    if (ctx.cond_cdf.empty()) ctx.cond_cdf.push_back(1.0);
    ctx.cond_cdf.back() = 1.0;
  }
  return ctx;
}

// Sorted Bernoulli event stream over pulse indices, advanced by geometric gaps.
struct EventStream {
  double p = 0.0;
  std::mt19937_64 rng;
  std::uint64_t next = kNoEvent;
  double inv_log_q = 0.0;  // 1 / log(1 - p)

  void init(double prob, std::uint64_t seed) {
    p = prob;
    rng.seed(seed);
    if (p <= 0.0) {
      next = kNoEvent;
      return;
    }
    inv_log_q = p < 1.0 ? 1.0 / std::log1p(-p) : 0.0;
    next = 0;
    step_from(0);
  }

  // positions the stream at the first event at index >= from
  void step_from(std::uint64_t from) { next = from + gap(); }

  void advance() { next = (next == kNoEvent) ? kNoEvent : next + 1 + gap(); }

 private:
  std::uint64_t gap() {
    if (p >= 1.0) return 0;
    double u = uniform01(rng);
    double g = std::log1p(-u) * inv_log_q;
    if (g >= 1e18) return kNoEvent / 2;  // effectively never
    return static_cast<std::uint64_t>(g);
  }
};

int sample_cond_pairs(const RunContext& ctx, std::mt19937_64& rng) {
  double u = uniform01(rng);
  const auto& cdf = ctx.cond_cdf;
  for (std::size_t i = 0; i < cdf.size(); ++i)
    if (u < cdf[i]) return static_cast<int>(i) + 1;
  return static_cast<int>(cdf.size());
}

CountRecord simulate_block(const RunContext& ctx, std::uint64_t seed,
                           std::uint64_t block_idx, std::uint64_t block_pulses) {
  enum { kPair = 0, kFluorS, kFluorI, kDarkS, kDarkI, kNumStreams };
  EventStream streams[kNumStreams];
  const double probs[kNumStreams] = {ctx.p_pair_pulse, ctx.p_fluor_s, ctx.p_fluor_i,
                                     ctx.p_dark_s, ctx.p_dark_i};
  for (int s = 0; s < kNumStreams; ++s)
    streams[s].init(probs[s], mix_seed(seed, block_idx, static_cast<std::uint64_t>(s)));

  const double eta_s = ctx.params.eta_signal;
  const double eta_i = ctx.params.eta_idler;
  const PairCells& q = ctx.cells;

  CountRecord rec;
  rec.pulses = block_pulses;
  for (;;) {
    std::uint64_t pulse = kNoEvent;
    for (auto& st : streams) pulse = std::min(pulse, st.next);
    if (pulse >= block_pulses) break;

    bool click_s = false;
    bool click_i = false;
    if (streams[kPair].next == pulse) {
      int n = sample_cond_pairs(ctx, streams[kPair].rng);
      for (int j = 0; j < n; ++j) {
        double u = uniform01(streams[kPair].rng);
        bool pass_s, pass_i;
        if (u < q.pp) {
          pass_s = true; pass_i = true;
        } else if (u < q.pp + q.pf) {
          pass_s = true; pass_i = false;
        } else if (u < q.pp + q.pf + q.fp) {
          pass_s = false; pass_i = true;
        } else {
          pass_s = false; pass_i = false;
        }
        if (pass_s && uniform01(streams[kPair].rng) < eta_s) click_s = true;
        if (pass_i && uniform01(streams[kPair].rng) < eta_i) click_i = true;
      }
      streams[kPair].advance();
    }
    if (streams[kFluorS].next == pulse) {
      click_s = true;
      streams[kFluorS].advance();
    }
    if (streams[kFluorI].next == pulse) {
      click_i = true;
      streams[kFluorI].advance();
    }
    if (streams[kDarkS].next == pulse) {
      click_s = true;
      streams[kDarkS].advance();
    }
    if (streams[kDarkI].next == pulse) {
      click_i = true;
      streams[kDarkI].advance();
    }

    rec.singles_s += click_s;
    rec.singles_i += click_i;
    rec.coincidences += (click_s && click_i);
  }
  return rec;
}

}  // namespace

std::vector<CountRecord> simulate_blocks(const SourceParams& params,
                                         const AnalyzerPair& analyzers,
                                         std::uint64_t n_pulses, std::uint64_t seed,
                                         int shards) {
  if (n_pulses < 1) throw validation_error("simulate: n_pulses must be >= 1");
  if (shards < 1) throw validation_error("simulate: shards must be >= 1");
  RunContext ctx = make_context(params, analyzers);
  const std::uint64_t n_blocks = (n_pulses + kBlockPulses - 1) / kBlockPulses;
  std::vector<CountRecord> blocks(n_blocks);
  const std::uint64_t hash = params_hash(params);

  auto work = [&](std::uint64_t first) {
    for (std::uint64_t b = first; b < n_blocks; b += static_cast<std::uint64_t>(shards)) {
      std::uint64_t pulses =
          (b + 1 == n_blocks) ? n_pulses - b * kBlockPulses : kBlockPulses;
      blocks[b] = simulate_block(ctx, seed, b, pulses);
      blocks[b].seed = seed;
      blocks[b].params_hash = hash;
      blocks[b].rng_name = kRngName;
    }
  };

  if (shards == 1 || n_blocks == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < shards; ++t) pool.emplace_back(work, static_cast<std::uint64_t>(t));
    for (auto& th : pool) th.join();
  }
  return blocks;
}

CountRecord simulate_run(const SourceParams& params, const AnalyzerPair& analyzers,
                         std::uint64_t n_pulses, std::uint64_t seed, int shards) {
  auto blocks = simulate_blocks(params, analyzers, n_pulses, seed, shards);
  CountRecord total;
  total.seed = seed;
  total.params_hash = params_hash(params);
  total.rng_name = kRngName;
  for (const auto& b : blocks) total += b;
  return total;
}

std::vector<FringePoint> fringe_scan(const SourceParams& params, double theta_s,
                                     std::span<const double> theta_i_grid,
                                     std::uint64_t pulses_per_point, int repeats,
                                     std::uint64_t seed, int shards) {
  if (theta_i_grid.empty()) throw validation_error("fringe_scan: empty grid");
  if (repeats < 1) throw validation_error("fringe_scan: repeats must be >= 1");
  std::vector<FringePoint> out;
  out.reserve(theta_i_grid.size());
  for (std::size_t j = 0; j < theta_i_grid.size(); ++j) {
    AnalyzerPair a{theta_s, theta_i_grid[j]};
    double sum = 0.0, sum_sq = 0.0;
    for (int r = 0; r < repeats; ++r) {
      auto rec = simulate_run(params, a, pulses_per_point,
                              mix_seed(seed, j, 0x10000u + static_cast<std::uint64_t>(r)),
                              shards);
      double c = static_cast<double>(rec.coincidences);
      sum += c;
      sum_sq += c * c;
    }
    FringePoint pt;
    pt.theta_i = theta_i_grid[j];
    pt.mean_coinc = sum / repeats;
    pt.std_coinc =
        repeats > 1
            ? std::sqrt(std::max(0.0, (sum_sq - sum * sum / repeats) / (repeats - 1)))
            : 0.0;
    out.push_back(pt);
  }
  return out;
}

SinusoidFit fit_sinusoid(std::span<const double> angles, std::span<const double> counts,
                         std::span<const double> errors) {
  const std::size_t n = angles.size();
  if (n != counts.size() || (!errors.empty() && errors.size() != n))
    throw validation_error("fit_sinusoid: length mismatch");
  if (n < 5) throw validation_error("fit_sinusoid: need at least 5 points");
  double lo = *std::min_element(angles.begin(), angles.end());
  double hi = *std::max_element(angles.begin(), angles.end());
  if (hi - lo < M_PI / 2.0 - 1e-12)
    throw validation_error("fit_sinusoid: grid must span at least half a fringe period");

  // a + b sin^2(theta - phi) = c0 + c1 cos(2 theta) + c2 sin(2 theta); fit the
  // linear form, then map back.
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  Eigen::Vector3d v = Eigen::Vector3d::Zero();
  double chi2_base = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double w = 1.0;
    if (!errors.empty()) {
      double s = std::max(errors[k], 1e-12);
      w = 1.0 / (s * s);
    }
    Eigen::Vector3d x(1.0, std::cos(2.0 * angles[k]), std::sin(2.0 * angles[k]));
    m += w * x * x.transpose();
    v += w * counts[k] * x;
    chi2_base += w * counts[k] * counts[k];
  }
  Eigen::FullPivLU<Eigen::Matrix3d> lu(m);
  if (!lu.isInvertible())
    throw numerical_error("fit_sinusoid: degenerate design (angles do not constrain the fit)");
  Eigen::Vector3d c = lu.solve(v);
  Eigen::Matrix3d cov = lu.inverse();
  if (errors.empty()) {
    // unweighted: scale covariance by the residual variance
    double chi2 = chi2_base - 2.0 * c.dot(v) + c.dot(m * c);
    double dof = static_cast<double>(n) - 3.0;
    cov *= std::max(chi2, 0.0) / std::max(dof, 1.0);
  }

  const double amp = std::hypot(c(1), c(2));
  SinusoidFit fit;
  fit.c_max = c(0) + amp;
  fit.c_min = c(0) - amp;
  fit.phase = 0.5 * std::atan2(-c(2), -c(1));
  if (fit.c_min < -1e-9 * std::max(1.0, std::fabs(fit.c_max))) fit.clipped_min = true;
  double c_min_eff = std::max(fit.c_min, 0.0);
  double denom = fit.c_max + c_min_eff;
  if (denom <= 0.0) throw numerical_error("fit_sinusoid: non-positive fringe amplitude");
  fit.visibility = (fit.c_max - c_min_eff) / denom;
  fit.c_min = c_min_eff;

  // 1-sigma on V = amp / c0 from the linear-fit covariance
  if (amp > 0.0 && c(0) > 0.0) {
    Eigen::Vector3d g(-amp / (c(0) * c(0)), c(1) / (amp * c(0)), c(2) / (amp * c(0)));
    fit.visibility_err = std::sqrt(std::max(0.0, g.dot(cov * g)));
  }
  return fit;
}

AnalyzerPair extremum_setting(Basis basis, bool orthogonal) {
  if (basis == Basis::HV) return AnalyzerPair{0.0, orthogonal ? M_PI / 2.0 : 0.0};
  return AnalyzerPair{M_PI / 4.0, orthogonal ? 3.0 * M_PI / 4.0 : M_PI / 4.0};
}

VisibilityPoint visibility_from_counts(double alpha, std::uint64_t counts_max,
                                       std::uint64_t counts_min) {
  VisibilityPoint pt;
  pt.alpha = alpha;
  pt.counts_max = counts_max;
  pt.counts_min = counts_min;
  const double n_max = static_cast<double>(counts_max);
  const double n_min = static_cast<double>(counts_min);
  const double total = n_max + n_min;
  if (total <= 0.0) return pt;  // visibility undefined
  pt.visibility = (n_max - n_min) / total;
  // Poisson propagation, with counts floored at 1 so sigma never collapses
  const double nx = std::max(n_max, 1.0);
  const double nn = std::max(n_min, 1.0);
  pt.sigma = 2.0 * std::sqrt(nx * nx * nn + nn * nn * nx) / (total * total);
  return pt;
}

std::vector<VisibilityPoint> visibility_vs_alpha(const SourceParams& tmpl,
                                                 std::span<const double> alpha_grid,
                                                 Basis basis,
                                                 std::uint64_t pulses_per_point,
                                                 std::uint64_t seed, int shards) {
  std::vector<VisibilityPoint> out;
  out.reserve(alpha_grid.size());
  for (std::size_t j = 0; j < alpha_grid.size(); ++j) {
    SourceParams p = tmpl;
    p.alpha = alpha_grid[j];
    p.mixing_p = basis == Basis::HV ? tmpl.mixing_p_hv : tmpl.mixing_p;
    std::uint64_t c_max = 0, c_min = 0;
    if (p.alpha > 0.0) {
      c_max = simulate_run(p, extremum_setting(basis, true), pulses_per_point,
                           mix_seed(seed, j, 0), shards)
                  .coincidences;
      c_min = simulate_run(p, extremum_setting(basis, false), pulses_per_point,
                           mix_seed(seed, j, 1), shards)
                  .coincidences;
    }
    out.push_back(visibility_from_counts(p.alpha, c_max, c_min));
  }
  return out;
}

namespace {

double pgf(double x, double alpha, PairDistribution dist) {
  if (dist == PairDistribution::Poisson) return std::exp(-alpha * (1.0 - x));
  return 1.0 / (1.0 + alpha * (1.0 - x));
}

}  // namespace

PulseProbs expected_pulse_probs(const SourceParams& params, const AnalyzerPair& analyzers) {
  validate(params);
  PairCells q = pair_cells(params.mixing_p, analyzers);
  const double eta_s = params.eta_signal;
  const double eta_i = params.eta_idler;
  // per-pair no-detection probabilities
  const double a = 1.0 - eta_s * (q.pp + q.pf);
  const double b = 1.0 - eta_i * (q.pp + q.fp);
  const double c = q.ff + q.pf * (1.0 - eta_s) + q.fp * (1.0 - eta_i) +
                   q.pp * (1.0 - eta_s) * (1.0 - eta_i);
  const double alpha = params.alpha;
  const auto dist = params.pair_distribution;
  const double fluor_mean = params.fluor_fraction * alpha;
  const double no_s = pgf(a, alpha, dist) * std::exp(-fluor_mean * eta_s * 0.5) *
                      (1.0 - params.dark_rate_signal * params.coinc_window);
  const double no_i = pgf(b, alpha, dist) * std::exp(-fluor_mean * eta_i * 0.5) *
                      (1.0 - params.dark_rate_idler * params.coinc_window);
  const double no_both = pgf(c, alpha, dist) * std::exp(-fluor_mean * eta_s * 0.5) *
                         std::exp(-fluor_mean * eta_i * 0.5) *
                         (1.0 - params.dark_rate_signal * params.coinc_window) *
                         (1.0 - params.dark_rate_idler * params.coinc_window);
  PulseProbs out;
  out.click_s = 1.0 - no_s;
  out.click_i = 1.0 - no_i;
  out.coincidence = 1.0 - no_s - no_i + no_both;
  return out;
}

double expected_visibility(const SourceParams& params, Basis basis) {
  SourceParams p = params;
  if (basis == Basis::HV) p.mixing_p = params.mixing_p_hv;
  double c_max = expected_pulse_probs(p, extremum_setting(basis, true)).coincidence;
  double c_min = expected_pulse_probs(p, extremum_setting(basis, false)).coincidence;
  if (c_max + c_min <= 0.0)
    throw numerical_error("expected_visibility: no coincidence probability");
  return (c_max - c_min) / (c_max + c_min);
}

double mixing_for_target_visibility(double v_target, const SourceParams& params,
                                    Basis basis) {
  if (!(v_target > 0.0 && v_target < 1.0))
    throw validation_error("mixing_for_target_visibility: v_target must be in (0,1)");
  SourceParams p = params;
  auto vis_at = [&](double mix) {
    if (basis == Basis::HV)
      p.mixing_p_hv = mix;
    else
      p.mixing_p = mix;
    return expected_visibility(p, basis);
  };
  double hi = 1.0;
  double v_hi = vis_at(hi);
  if (v_target > v_hi)
    throw numerical_error(
        "mixing_for_target_visibility: target exceeds the defect-free visibility");
  double lo = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    double mid = 0.5 * (lo + hi);
    if (vis_at(mid) > v_target)
      hi = mid;
    else
      lo = mid;
    if (hi - lo < 1e-12) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace spdc
