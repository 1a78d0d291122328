#include "spdc/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace spdc {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double x;
  try {
    x = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw validation_error("malformed value for " + key + ": '" + value + "'");
  }
  if (pos != value.size() || !std::isfinite(x))
    throw validation_error("malformed value for " + key + ": '" + value + "'");
  return x;
}

}  // namespace

void apply_config_key(SourceParams& params, const std::string& key, const std::string& value) {
  if (key == "alpha") params.alpha = parse_double(key, value);
  else if (key == "eta_signal") params.eta_signal = parse_double(key, value);
  else if (key == "eta_idler") params.eta_idler = parse_double(key, value);
  else if (key == "mixing_p") params.mixing_p = parse_double(key, value);
  else if (key == "mixing_p_hv") params.mixing_p_hv = parse_double(key, value);
  else if (key == "rep_rate") params.rep_rate = parse_double(key, value);
  else if (key == "coinc_window") params.coinc_window = parse_double(key, value);
  else if (key == "dark_rate_signal") params.dark_rate_signal = parse_double(key, value);
  else if (key == "dark_rate_idler") params.dark_rate_idler = parse_double(key, value);
  else if (key == "fluor_fraction") params.fluor_fraction = parse_double(key, value);
  else if (key == "pair_distribution") params.pair_distribution = pair_distribution_from_string(value);
  else throw validation_error("unknown key '" + key + "'");
}

SourceParams parse_config_text(const std::string& text, SourceParams base) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw validation_error("line " + std::to_string(line_no) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    try {
      apply_config_key(base, key, value);
    } catch (const validation_error& e) {
      throw validation_error("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return base;
}

SourceParams parse_config(const std::string& path, SourceParams base) {
  std::ifstream in(path);
  if (!in) throw validation_error("config file not readable: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), base);
}

std::string config_to_text(const SourceParams& p) {
  char buf[768];
  std::snprintf(buf, sizeof(buf),
                "alpha = %.17g\n"
                "eta_signal = %.17g\n"
                "eta_idler = %.17g\n"
                "mixing_p = %.17g\n"
                "mixing_p_hv = %.17g\n"
                "rep_rate = %.17g\n"
                "coinc_window = %.17g\n"
                "dark_rate_signal = %.17g\n"
                "dark_rate_idler = %.17g\n"
                "fluor_fraction = %.17g\n"
                "pair_distribution = %s\n",
                p.alpha, p.eta_signal, p.eta_idler, p.mixing_p, p.mixing_p_hv, p.rep_rate,
                p.coinc_window, p.dark_rate_signal, p.dark_rate_idler, p.fluor_fraction,
                to_string(p.pair_distribution).c_str());
  return buf;
}

}  // namespace spdc
