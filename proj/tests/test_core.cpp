#include <doctest.h>

#include <cmath>
#include <string>

#include "spdc/config.hpp"
#include "spdc/core.hpp"

using namespace spdc;

TEST_CASE("default parameters are accepted") {
  SourceParams p;
  CHECK_NOTHROW(validate(p));
  CHECK(p.alpha == doctest::Approx(0.01));
  CHECK(p.eta_signal == doctest::Approx(0.095));
  CHECK(p.rep_rate == doctest::Approx(31.1e6));
  CHECK(p.coinc_window == doctest::Approx(1.8e-9));
  CHECK(p.fluor_fraction == doctest::Approx(0.05));
  CHECK(p.dark_rate_signal == doctest::Approx(50.0));
}

TEST_CASE("validation names the violated invariant") {
  SourceParams p;
  p.alpha = -0.1;
  CHECK_THROWS_WITH_AS(validate(p), doctest::Contains("alpha negative"), validation_error);

  SourceParams q;
  q.rep_rate = 1e9;  // 1.8 ns window -> product 1.8 > 1
  CHECK_THROWS_AS(validate(q), validation_error);
  try {
    validate(q);
  } catch (const validation_error& e) {
    CHECK(std::string(e.what()).find("rep_rate") != std::string::npos);
  }

  SourceParams r;
  r.eta_signal = 1.5;
  CHECK_THROWS_AS(validate(r), validation_error);
  r = SourceParams{};
  r.mixing_p = -0.01;
  CHECK_THROWS_AS(validate(r), validation_error);
  r = SourceParams{};
  r.dark_rate_idler = -1.0;
  CHECK_THROWS_AS(validate(r), validation_error);
}

TEST_CASE("validation is idempotent") {
  SourceParams p;
  p.alpha = 0.3;
  const SourceParams& once = validate(p);
  const SourceParams& twice = validate(once);
  CHECK(params_hash(once) == params_hash(twice));
}

TEST_CASE("params_hash changes iff a field changes") {
  SourceParams a, b;
  CHECK(params_hash(a) == params_hash(b));
  b.alpha = 0.011;
  CHECK(params_hash(a) != params_hash(b));
  b = a;
  b.pair_distribution = PairDistribution::Thermal;
  CHECK(params_hash(a) != params_hash(b));
  b = a;
  b.mixing_p_hv = 0.999;
  CHECK(params_hash(a) != params_hash(b));
}

TEST_CASE("analyzer pair effective angles honor the orthogonal flags") {
  AnalyzerPair a{0.3, 1.1, false, false};
  CHECK(a.effective_s() == doctest::Approx(0.3));
  CHECK(a.effective_i() == doctest::Approx(1.1));
  AnalyzerPair b{0.3, 1.1, true, true};
  CHECK(b.effective_s() == doctest::Approx(0.3 + M_PI / 2));
  CHECK(b.effective_i() == doctest::Approx(1.1 + M_PI / 2));
}

TEST_CASE("count record accumulation") {
  CountRecord a{1000, 10, 12, 3};
  CountRecord b{500, 5, 4, 2};
  a += b;
  CHECK(a.pulses == 1500);
  CHECK(a.singles_s == 15);
  CHECK(a.singles_i == 16);
  CHECK(a.coincidences == 5);
}

TEST_CASE("pair distribution names round-trip") {
  CHECK(to_string(PairDistribution::Poisson) == "poisson");
  CHECK(to_string(PairDistribution::Thermal) == "thermal");
  CHECK(pair_distribution_from_string("poisson") == PairDistribution::Poisson);
  CHECK(pair_distribution_from_string("thermal") == PairDistribution::Thermal);
  CHECK_THROWS_AS(pair_distribution_from_string("bose"), validation_error);
}

TEST_CASE("config parsing") {
  SourceParams p = parse_config_text("alpha = 0.02\n# comment\n\npair_distribution = thermal\n");
  CHECK(p.alpha == doctest::Approx(0.02));
  CHECK(p.pair_distribution == PairDistribution::Thermal);
  CHECK(p.eta_signal == doctest::Approx(0.095));  // untouched default

  CHECK_THROWS_WITH_AS(parse_config_text("alpha = banana\n"),
                       doctest::Contains("line 1"), validation_error);
  CHECK_THROWS_WITH_AS(parse_config_text("alpha = 0.1\nbogus_key = 3\n"),
                       doctest::Contains("line 2"), validation_error);
  CHECK_THROWS_AS(parse_config_text("no equals sign here\n"), validation_error);
  CHECK_THROWS_AS(parse_config("/nonexistent/path.cfg"), validation_error);
}

TEST_CASE("config text round-trips exactly") {
  SourceParams p;
  p.alpha = 0.12345678901234567;
  p.eta_signal = p.eta_idler = 1.0 / 3.0;
  p.pair_distribution = PairDistribution::Thermal;
  SourceParams q = parse_config_text(config_to_text(p));
  CHECK(params_hash(p) == params_hash(q));
}
