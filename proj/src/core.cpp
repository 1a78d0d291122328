#include "spdc/core.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace spdc {

std::string to_string(PairDistribution d) {
  return d == PairDistribution::Poisson ? "poisson" : "thermal";
}

PairDistribution pair_distribution_from_string(const std::string& s) {
  if (s == "poisson") return PairDistribution::Poisson;
  if (s == "thermal") return PairDistribution::Thermal;
  throw validation_error("pair_distribution must be 'poisson' or 'thermal', got '" + s + "'");
}

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw validation_error(message);
}

bool is_probability(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

const SourceParams& validate(const SourceParams& p) {
  require(std::isfinite(p.alpha) && p.alpha >= 0.0, "alpha negative");
  require(is_probability(p.eta_signal), "eta_signal out of [0,1]");
  require(is_probability(p.eta_idler), "eta_idler out of [0,1]");
  require(is_probability(p.mixing_p), "mixing_p out of [0,1]");
  require(is_probability(p.mixing_p_hv), "mixing_p_hv out of [0,1]");
  require(std::isfinite(p.rep_rate) && p.rep_rate > 0.0, "rep_rate not positive");
  require(std::isfinite(p.coinc_window) && p.coinc_window > 0.0, "coinc_window not positive");
  require(std::isfinite(p.dark_rate_signal) && p.dark_rate_signal >= 0.0, "dark_rate_signal negative");
  require(std::isfinite(p.dark_rate_idler) && p.dark_rate_idler >= 0.0, "dark_rate_idler negative");
  require(std::isfinite(p.fluor_fraction) && p.fluor_fraction >= 0.0, "fluor_fraction negative");
  require(p.rep_rate * p.coinc_window <= 1.0, "rep_rate*coinc_window > 1");
  require(p.dark_rate_signal * p.coinc_window <= 1.0, "dark_rate_signal*coinc_window > 1");
  require(p.dark_rate_idler * p.coinc_window <= 1.0, "dark_rate_idler*coinc_window > 1");
  return p;
}

std::uint64_t params_hash(const SourceParams& p) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "%.17g|%.17g|%.17g|%.17g|%.17g|%.17g|%.17g|%.17g|%.17g|%.17g|%s",
                p.alpha, p.eta_signal, p.eta_idler, p.mixing_p, p.mixing_p_hv,
                p.rep_rate, p.coinc_window, p.dark_rate_signal, p.dark_rate_idler,
                p.fluor_fraction, to_string(p.pair_distribution).c_str());
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char* c = buf; *c; ++c) {
    h ^= static_cast<unsigned char>(*c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

double AnalyzerPair::effective_s() const {
  return theta_s + (ortho_s ? std::numbers::pi / 2.0 : 0.0);
}

double AnalyzerPair::effective_i() const {
  return theta_i + (ortho_i ? std::numbers::pi / 2.0 : 0.0);
}

CountRecord& CountRecord::operator+=(const CountRecord& other) {
  pulses += other.pulses;
  singles_s += other.singles_s;
  singles_i += other.singles_i;
  coincidences += other.coincidences;
  return *this;
}

}  // namespace spdc
