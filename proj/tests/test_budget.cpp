#include <doctest.h>

#include <cmath>

#include "spdc/montecarlo.hpp"
#include "spdc/multipair.hpp"
#include "spdc/rate_budget.hpp"

using namespace spdc;

TEST_CASE("cw/pulsed accidental ratio") {
  auto r = accidental_ratio(31.1e6, 1.8e-9);
  CHECK(std::fabs(r.ratio - 0.05598) <= 1e-5);
  CHECK(r.cw_advantage == doctest::Approx(17.86).epsilon(1e-3));
  CHECK(!r.windows_overlap);

  CHECK(accidental_ratio(31.1e6, 1e-9).ratio == doctest::Approx(0.0311).epsilon(1e-3));
  CHECK(accidental_ratio(1e9, 1e-9).ratio == doctest::Approx(1.0));
  CHECK(accidental_ratio(2e9, 1e-9).windows_overlap);
  CHECK_THROWS_AS(accidental_ratio(0.0, 1e-9), validation_error);
}

TEST_CASE("ratio is bilinear in rate and window") {
  auto base = accidental_ratio(10e6, 1.5e-9);
  CHECK(accidental_ratio(3.0 * 10e6, 1.5e-9).ratio == doctest::Approx(3.0 * base.ratio));
  CHECK(accidental_ratio(10e6, 2.0 * 1.5e-9).ratio == doctest::Approx(2.0 * base.ratio));
}

TEST_CASE("clean source budget is the multi-pair floor alone") {
  SourceParams p;
  p.alpha = 0.01;
  p.fluor_fraction = 0.0;
  p.dark_rate_signal = p.dark_rate_idler = 0.0;
  auto rep = accidental_budget(p);
  double eta = p.eta_signal;
  CHECK(rep.multi_pair ==
        doctest::Approx(p.rep_rate * eta * eta * p.alpha * p.alpha / 4.0).epsilon(0.02));
  CHECK(rep.fluorescence == 0.0);
  CHECK(rep.dark_total() == 0.0);
  CHECK(rep.accidental_total() == doctest::Approx(rep.multi_pair));
}

TEST_CASE("source off leaves only dark-dark accidentals") {
  SourceParams p;
  p.alpha = 0.0;
  auto rep = accidental_budget(p);
  CHECK(rep.multi_pair == 0.0);
  CHECK(rep.fluorescence == 0.0);
  CHECK(rep.dark_cross == 0.0);
  CHECK(rep.dark_dark ==
        doctest::Approx(p.rep_rate * std::pow(50.0 * 1.8e-9, 2)).epsilon(1e-9));
}

TEST_CASE("alpha power scaling of the budget terms") {
  SourceParams p;
  p.alpha = 0.002;
  auto low = accidental_budget(p);
  p.alpha = 0.004;
  auto high = accidental_budget(p);
  CHECK(high.multi_pair / low.multi_pair == doctest::Approx(4.0).epsilon(0.01));
  CHECK(high.fluorescence / low.fluorescence == doctest::Approx(4.0).epsilon(0.01));
  CHECK(high.dark_cross / low.dark_cross == doctest::Approx(2.0).epsilon(0.01));
  CHECK(high.dark_dark == doctest::Approx(low.dark_dark));
}

TEST_CASE("multi-pair term has log-log slope 2") {
  SourceParams p;
  p.fluor_fraction = 0.0;
  p.dark_rate_signal = p.dark_rate_idler = 0.0;
  p.alpha = 1e-3;
  double lo = accidental_budget(p).multi_pair;
  p.alpha = 1e-2;
  double hi = accidental_budget(p).multi_pair;
  double slope = std::log(hi / lo) / std::log(10.0);
  CHECK(std::fabs(slope - 2.0) <= 0.01);
}

TEST_CASE("max alpha inverts the visibility model") {
  SourceParams p;
  CHECK(std::fabs(max_alpha(0.99, p) - 0.01) <= 1e-3);
  CHECK(std::fabs(max_alpha(0.95, p) - 0.05) <= 5e-3);
  CHECK(max_alpha(0.9999, p) <= 2e-4);
  auto rep = accidental_budget(p, 0.99);
  CHECK(rep.target_visibility == doctest::Approx(0.99));
  CHECK(rep.max_alpha == doctest::Approx(max_alpha(0.99, p)));
}

TEST_CASE("budget throughput matches monte carlo with noise enabled") {
  SourceParams p;
  p.alpha = 0.1;
  const std::uint64_t n = 10'000'000;
  auto rep = accidental_budget(p);
  auto rec = simulate_run(p, extremum_setting(Basis::HV, true), n, 55, 4);
  double scale = static_cast<double>(n) / p.rep_rate;  // budget rates are per second
  for (auto [observed, rate] :
       {std::pair{rec.singles_s, rep.singles_s}, std::pair{rec.singles_i, rep.singles_i},
        std::pair{rec.coincidences, rep.coincidences}}) {
    double mean = rate * scale;
    CHECK(std::fabs(static_cast<double>(observed) - mean) <= 4.0 * std::sqrt(mean));
  }
}

TEST_CASE("accidental floor reproduces the parallel-analyzer monte carlo rate") {
  SourceParams p;
  p.fluor_fraction = 0.0;
  p.dark_rate_signal = p.dark_rate_idler = 0.0;
  for (double alpha : {0.01, 0.1}) {
    p.alpha = alpha;
    auto rep = accidental_budget(p);
    const std::uint64_t n = alpha < 0.05 ? 400'000'000ull : 40'000'000ull;
    auto rec = simulate_run(p, extremum_setting(Basis::HV, false), n, 77, 4);
    double mean = rep.multi_pair / p.rep_rate * static_cast<double>(n);
    CHECK(std::fabs(static_cast<double>(rec.coincidences) - mean) <=
          3.0 * std::sqrt(std::max(mean, 1.0)));
  }
}
