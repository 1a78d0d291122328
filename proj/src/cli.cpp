#include "spdc/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "spdc/chsh.hpp"
#include "spdc/config.hpp"
#include "spdc/montecarlo.hpp"
#include "spdc/multipair.hpp"
#include "spdc/quantum_state.hpp"
#include "spdc/rate_budget.hpp"
#include "spdc/tomography.hpp"

namespace spdc::cli {

namespace {

constexpr double kDegToRad = M_PI / 180.0;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

// CSV output with a '#'-prefixed provenance header; everything after the
// header is the data section.
class CsvFile {
 public:
  CsvFile(const std::string& path, const std::string& command, const SourceParams& params,
          std::uint64_t seed, int shards) {
    if (path.empty() || path == "-") {
      out_ = &std::cout;
    } else {
      file_.open(path);
      if (!file_) throw std::ios_base::failure("cannot write output file: " + path);
      out_ = &file_;
    }
    *out_ << "# spdcsim " << command << "\n";
    *out_ << "# seed = " << seed << "\n";
    *out_ << "# shards = " << shards << "\n";
    *out_ << "# generator = " << kRngName << "\n";
    std::istringstream cfg(config_to_text(params));
    std::string line;
    while (std::getline(cfg, line)) *out_ << "# " << line << "\n";
  }

  void comment(const std::string& text) { *out_ << "# " << text << "\n"; }
  void line(const std::string& text) { *out_ << text << "\n"; }

 private:
  std::ofstream file_;
  std::ostream* out_ = nullptr;
};

struct GlobalOptions {
  std::string config_path;
  std::uint64_t seed = 1;
  std::string out = "-";
  std::uint64_t pulses = 1'000'000;
  int shards = 1;
  std::vector<std::string> overrides;  // key=value, applied after the config file

  SourceParams load_params() const {
    SourceParams p;
    if (!config_path.empty()) p = parse_config(config_path);
    for (const auto& kv : overrides) {
      auto eq = kv.find('=');
      if (eq == std::string::npos)
        throw validation_error("override '" + kv + "': expected key=value");
      apply_config_key(p, kv.substr(0, eq), kv.substr(eq + 1));
    }
    return p;
  }
};

std::vector<double> linspace(double lo, double hi, int steps) {
  std::vector<double> g;
  if (steps < 1) throw validation_error("grid needs at least one point");
  if (steps == 1) return {lo};
  g.reserve(steps);
  for (int i = 0; i < steps; ++i) g.push_back(lo + (hi - lo) * i / (steps - 1));
  return g;
}

void write_fringe_section(CsvFile& csv, const std::string& basis_name,
                          const std::vector<FringePoint>& points) {
  for (const auto& pt : points)
    csv.line(basis_name + "," + fmt(pt.theta_i / kDegToRad) + "," + fmt(pt.mean_coinc) +
             "," + fmt(pt.std_coinc));
}

SinusoidFit fit_fringe(const std::vector<FringePoint>& points, int repeats) {
  std::vector<double> angles, counts, errors;
  for (const auto& pt : points) {
    angles.push_back(pt.theta_i);
    counts.push_back(pt.mean_coinc);
    // standard error of the mean, floored so empty-fringe points keep finite weight
    errors.push_back(std::max(pt.std_coinc / std::sqrt(static_cast<double>(repeats)), 0.5));
  }
  return fit_sinusoid(angles, counts, errors);
}

// ---- subcommand bodies ----------------------------------------------------

void cmd_model_curve(const GlobalOptions& g, double alpha_min, double alpha_max, int steps) {
  SourceParams params = g.load_params();
  CsvFile csv(g.out, "model-curve", params, g.seed, g.shards);
  csv.line("alpha,c_min,c_max,visibility,visibility_first_order");
  for (double alpha : linspace(alpha_min, alpha_max, steps)) {
    SourceParams p = params;
    p.alpha = alpha;
    auto ex = coincidence_extrema(p);
    std::string v = ex.visibility ? fmt(*ex.visibility) : "nan";
    csv.line(fmt(alpha) + "," + fmt(ex.c_min) + "," + fmt(ex.c_max) + "," + v + "," +
             fmt(1.0 - alpha));
  }
}

void cmd_simulate(const GlobalOptions& g, double theta_s_deg, double theta_i_deg) {
  SourceParams params = validate(g.load_params());
  AnalyzerPair analyzers{theta_s_deg * kDegToRad, theta_i_deg * kDegToRad};
  auto blocks = simulate_blocks(params, analyzers, g.pulses, g.seed, g.shards);
  CsvFile csv(g.out, "simulate", params, g.seed, g.shards);
  csv.comment("pulses = " + std::to_string(g.pulses));
  csv.comment("theta_s_deg = " + fmt(theta_s_deg) + ", theta_i_deg = " + fmt(theta_i_deg));
  csv.line("pulse_block,singles_s,singles_i,coincidences");
  CountRecord total;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    total += blocks[b];
    csv.line(std::to_string(b) + "," + std::to_string(blocks[b].singles_s) + "," +
             std::to_string(blocks[b].singles_i) + "," +
             std::to_string(blocks[b].coincidences));
  }
  csv.comment("total: singles_s = " + std::to_string(total.singles_s) +
              ", singles_i = " + std::to_string(total.singles_i) +
              ", coincidences = " + std::to_string(total.coincidences));
}

void cmd_fringe(const GlobalOptions& g, double theta_s_deg, double start_deg,
                double stop_deg, double step_deg, int repeats) {
  SourceParams params = validate(g.load_params());
  if (step_deg <= 0.0) throw validation_error("fringe: step must be positive");
  std::vector<double> grid;
  for (double t = start_deg; t <= stop_deg + 1e-9; t += step_deg) grid.push_back(t * kDegToRad);
  auto points = fringe_scan(params, theta_s_deg * kDegToRad, grid, g.pulses, repeats, g.seed,
                            g.shards);
  auto fit = fit_fringe(points, repeats);
  CsvFile csv(g.out, "fringe", params, g.seed, g.shards);
  csv.comment("pulses_per_point = " + std::to_string(g.pulses) +
              ", repeats = " + std::to_string(repeats));
  csv.comment("fit: c_max = " + fmt(fit.c_max) + ", c_min = " + fmt(fit.c_min) +
              ", phase_deg = " + fmt(fit.phase / kDegToRad) +
              ", visibility = " + fmt(fit.visibility) + " +- " + fmt(fit.visibility_err));
  csv.line("theta_i_deg,mean_coinc,std_coinc");
  for (const auto& pt : points)
    csv.line(fmt(pt.theta_i / kDegToRad) + "," + fmt(pt.mean_coinc) + "," + fmt(pt.std_coinc));
}

void write_chsh(CsvFile& csv, const ChshResult& result) {
  static const char* names[4] = {"ts_ti", "ts_tip", "tsp_ti", "tsp_tip"};
  csv.line("setting,c_pp,c_pm,c_mp,c_mm,e,e_err");
  for (int k = 0; k < 4; ++k) {
    const auto& c = result.counts[k];
    csv.line(std::string(names[k]) + "," + fmt(c.c_pp) + "," + fmt(c.c_pm) + "," +
             fmt(c.c_mp) + "," + fmt(c.c_mm) + "," + fmt(result.e_values[k].e) + "," +
             fmt(result.e_values[k].err));
  }
  csv.line("S," + fmt(result.s) + "," + fmt(result.s_err) + ",,,,");
}

ChshResult chsh_from_simulation(const SourceParams& params, std::uint64_t pulses_per_setting,
                                std::uint64_t seed, int shards) {
  auto grid = chsh_analyzer_grid(default_angles());
  std::array<SettingCounts, 4> counts{};
  for (int k = 0; k < 4; ++k) {
    double* slots[4] = {&counts[k].c_pp, &counts[k].c_pm, &counts[k].c_mp, &counts[k].c_mm};
    for (int j = 0; j < 4; ++j) {
      auto rec = simulate_run(params, grid[k][j], pulses_per_setting,
                              seed + 16u * static_cast<std::uint64_t>(k) +
                                  static_cast<std::uint64_t>(j),
                              shards);
      *slots[j] = static_cast<double>(rec.coincidences);
    }
  }
  return s_from_counts(counts);
}

void cmd_chsh(const GlobalOptions& g, std::optional<double> werner_p, bool sampled,
              bool simulate, double n_per_setting) {
  SourceParams params = g.load_params();
  ChshResult result;
  std::string mode;
  if (simulate) {
    validate(params);
    result = chsh_from_simulation(params, g.pulses, g.seed, g.shards);
    mode = "monte-carlo";
  } else {
    double p = werner_p.value_or(1.0);
    TwoQubitState state = werner(p);
    auto counts = sampled
                      ? sampled_setting_counts(state, default_angles(), n_per_setting, g.seed)
                      : exact_setting_counts(state, default_angles(), n_per_setting);
    result = s_from_counts(counts);
    mode = sampled ? "sampled" : "exact";
  }
  CsvFile csv(g.out, "chsh", params, g.seed, g.shards);
  csv.comment("mode = " + mode);
  if (werner_p) csv.comment("werner_p = " + fmt(*werner_p));
  write_chsh(csv, result);
}

void write_tomo(CsvFile& csv, const TomoResult& result) {
  csv.line("kind,values");
  auto flat = to_flat(result.rho_hat);
  std::string row = "rho";
  for (double v : flat) row += "," + fmt(v);
  csv.line(row);
  csv.line("metrics," + fmt(result.fidelity) + "," + fmt(result.tangle) + "," +
           fmt(result.purity) + "," + fmt(result.fit_residual) + "," +
           std::to_string(result.iterations));
}

std::vector<double> read_tomo_counts(const std::string& path, const TomoSettings& settings) {
  std::ifstream in(path);
  if (!in) throw validation_error("counts file not readable: " + path);
  std::map<std::string, double> by_label;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto comma = line.find(',');
    if (comma == std::string::npos)
      throw validation_error("counts line " + std::to_string(line_no) +
                             ": expected label,count");
    std::string label = line.substr(0, comma);
    if (label == "setting" || label == "label") continue;  // header row
    by_label[label] = std::stod(line.substr(comma + 1));
  }
  std::vector<double> counts;
  for (const auto& s : settings) {
    auto it = by_label.find(s.label);
    if (it == by_label.end())
      throw validation_error("counts file missing setting " + s.label);
    counts.push_back(it->second);
  }
  return counts;
}

void cmd_tomo(const GlobalOptions& g, const std::string& input, bool simulate,
              double werner_p, double n_per_setting, bool exact) {
  SourceParams params = g.load_params();
  auto settings = standard_settings();
  std::vector<double> counts;
  if (!input.empty()) {
    counts = read_tomo_counts(input, settings);
  } else if (simulate) {
    TwoQubitState state = werner(werner_p);
    counts = exact ? forward_counts_exact(state, settings, n_per_setting)
                   : forward_counts_sampled(state, settings, n_per_setting, g.seed);
  } else {
    throw validation_error("tomo: need --input or --simulate");
  }
  auto result = reconstruct(counts, settings);
  CsvFile csv(g.out, "tomo", params, g.seed, g.shards);
  std::string count_row = "counts";
  for (double c : counts) count_row += "," + fmt(c);
  csv.comment(count_row);
  write_tomo(csv, result);
}

void cmd_budget(const GlobalOptions& g, double v_target) {
  SourceParams params = validate(g.load_params());
  auto rep = accidental_budget(params, v_target);
  CsvFile csv(g.out, "budget", params, g.seed, g.shards);
  csv.line(
      "ratio_cw_over_pulsed,cw_advantage,windows_overlap,multi_pair,fluorescence,"
      "dark_cross,dark_dark,accidental_total,singles_s,singles_i,coincidences,"
      "target_visibility,max_alpha");
  csv.line(fmt(rep.ratio.ratio) + "," + fmt(rep.ratio.cw_advantage) + "," +
           std::to_string(rep.ratio.windows_overlap ? 1 : 0) + "," + fmt(rep.multi_pair) +
           "," + fmt(rep.fluorescence) + "," + fmt(rep.dark_cross) + "," +
           fmt(rep.dark_dark) + "," + fmt(rep.accidental_total()) + "," +
           fmt(rep.singles_s) + "," + fmt(rep.singles_i) + "," + fmt(rep.coincidences) +
           "," + fmt(rep.target_visibility) + "," + fmt(rep.max_alpha));
}

// ---- scenario presets -----------------------------------------------------

constexpr std::uint64_t kPulsesPerSecond = 31'100'000;

ScenarioSummary fringe_preset(const std::string& name, double alpha, double v_hv_target,
                              double v_ad_target, const std::string& out_dir,
                              std::uint64_t seed, int shards) {
  SourceParams params;
  params.alpha = alpha;
  params.mixing_p_hv = mixing_for_target_visibility(v_hv_target, params, Basis::HV);
  params.mixing_p = mixing_for_target_visibility(v_ad_target, params, Basis::AD);

  std::vector<double> grid;
  for (int k = 0; k <= 12; ++k) grid.push_back(k * M_PI / 12.0);
  const int repeats = 30;

  SourceParams hv = params;
  hv.mixing_p = params.mixing_p_hv;
  auto hv_points = fringe_scan(hv, 0.0, grid, kPulsesPerSecond, repeats, seed, shards);
  auto hv_fit = fit_fringe(hv_points, repeats);

  auto ad_points =
      fringe_scan(params, M_PI / 4.0, grid, kPulsesPerSecond, repeats, seed + 1, shards);
  auto ad_fit = fit_fringe(ad_points, repeats);

  std::string path = (std::filesystem::path(out_dir) / (name + ".csv")).string();
  CsvFile csv(path, "scenario " + name, params, seed, shards);
  csv.comment("pulses_per_point = " + std::to_string(kPulsesPerSecond) +
              ", repeats = " + std::to_string(repeats));
  csv.comment("fit_v_hv = " + fmt(hv_fit.visibility) + " +- " + fmt(hv_fit.visibility_err));
  csv.comment("fit_v_ad = " + fmt(ad_fit.visibility) + " +- " + fmt(ad_fit.visibility_err));
  csv.line("basis,theta_i_deg,mean_coinc,std_coinc");
  write_fringe_section(csv, "HV", hv_points);
  write_fringe_section(csv, "AD", ad_points);

  ScenarioSummary sum;
  sum.files.push_back(path);
  sum.metrics["v_hv_fit"] = hv_fit.visibility;
  sum.metrics["v_hv_err"] = hv_fit.visibility_err;
  sum.metrics["v_ad_fit"] = ad_fit.visibility;
  sum.metrics["v_ad_err"] = ad_fit.visibility_err;
  sum.metrics["mixing_p_hv"] = params.mixing_p_hv;
  sum.metrics["mixing_p_ad"] = params.mixing_p;
  return sum;
}

ScenarioSummary fig6_preset(const std::string& out_dir, std::uint64_t seed, int shards) {
  SourceParams params;
  params.fluor_fraction = 0.0;
  params.dark_rate_signal = params.dark_rate_idler = 0.0;
  const std::vector<double> grid = {0.01, 0.02, 0.05, 0.07, 0.1, 0.15,
                                    0.2,  0.3,  0.4,  0.5,  0.6, 0.7};
  const std::uint64_t pulses = 10'000'000;
  auto mc = visibility_vs_alpha(params, grid, Basis::HV, pulses, seed, shards);

  std::string path = (std::filesystem::path(out_dir) / "fig6-curve.csv").string();
  CsvFile csv(path, "scenario fig6-curve", params, seed, shards);
  csv.comment("pulses_per_point = " + std::to_string(pulses));
  csv.line("alpha,model_c_min,model_c_max,model_visibility,visibility_first_order,"
           "mc_visibility,mc_sigma");
  double max_dev_ratio = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    SourceParams p = params;
    p.alpha = grid[j];
    auto ex = coincidence_extrema(p);
    double model_v = ex.visibility.value_or(std::nan(""));
    if (grid[j] <= 0.1 && ex.visibility)
      max_dev_ratio = std::max(max_dev_ratio,
                               std::fabs(model_v - (1.0 - grid[j])) / (grid[j] * grid[j]));
    std::string mc_v = mc[j].visibility ? fmt(*mc[j].visibility) : "undefined";
    csv.line(fmt(grid[j]) + "," + fmt(ex.c_min) + "," + fmt(ex.c_max) + "," + fmt(model_v) +
             "," + fmt(1.0 - grid[j]) + "," + mc_v + "," + fmt(mc[j].sigma));
  }
  csv.comment("model_first_order_dev_over_alpha_sq_max = " + fmt(max_dev_ratio));

  ScenarioSummary sum;
  sum.files.push_back(path);
  sum.metrics["model_first_order_dev_over_alpha_sq_max"] = max_dev_ratio;
  return sum;
}

ScenarioSummary chsh_preset(const std::string& out_dir, std::uint64_t seed, int shards) {
  SourceParams params;
  params.alpha = 0.0007;
  const std::uint64_t pulses = 30 * kPulsesPerSecond;  // 30 1-s blocks per measurement
  auto result = chsh_from_simulation(params, pulses, seed, shards);

  std::string path = (std::filesystem::path(out_dir) / "chsh-low-flux.csv").string();
  CsvFile csv(path, "scenario chsh-low-flux", params, seed, shards);
  csv.comment("pulses_per_measurement = " + std::to_string(pulses));
  write_chsh(csv, result);

  ScenarioSummary sum;
  sum.files.push_back(path);
  sum.metrics["s"] = result.s;
  sum.metrics["s_err"] = result.s_err;
  return sum;
}

ScenarioSummary tomo_preset(const std::string& out_dir, std::uint64_t seed, int shards) {
  SourceParams params;
  params.alpha = 0.0007;
  const double werner_weight = 0.9847;
  const double n_per_setting = 6000.0;  // ~30 s of coincidences at this flux
  auto settings = standard_settings();
  auto counts = forward_counts_sampled(werner(werner_weight), settings, n_per_setting, seed);
  auto result = reconstruct(counts, settings);

  std::string path = (std::filesystem::path(out_dir) / "tomo-low-flux.csv").string();
  CsvFile csv(path, "scenario tomo-low-flux", params, seed, shards);
  csv.comment("werner_p = " + fmt(werner_weight) +
              ", n_per_setting = " + fmt(n_per_setting));
  write_tomo(csv, result);

  ScenarioSummary sum;
  sum.files.push_back(path);
  sum.metrics["fidelity"] = result.fidelity;
  sum.metrics["tangle"] = result.tangle;
  sum.metrics["purity"] = result.purity;
  return sum;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig2-fringe", "fig3-fringe", "fig6-curve", "chsh-low-flux", "tomo-low-flux"};
}

ScenarioSummary run_scenario(const std::string& name, const std::string& out_dir,
                             std::uint64_t seed, int shards) {
  std::filesystem::create_directories(out_dir);
  if (name == "fig2-fringe")
    return fringe_preset(name, 0.001, 0.9979, 0.9811, out_dir, seed, shards);
  if (name == "fig3-fringe")
    return fringe_preset(name, 0.011, 0.9804, 0.9664, out_dir, seed, shards);
  if (name == "fig6-curve") return fig6_preset(out_dir, seed, shards);
  if (name == "chsh-low-flux") return chsh_preset(out_dir, seed, shards);
  if (name == "tomo-low-flux") return tomo_preset(out_dir, seed, shards);
  throw validation_error("unknown preset '" + name + "'");
}

int run(int argc, const char* const* argv) {
  CLI::App app{"Pulsed SPDC entangled-photon source simulator and analysis toolkit"};
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--config", g.config_path, "key = value configuration file");
  app.add_option("--seed", g.seed, "RNG master seed");
  app.add_option("--out", g.out, "output path ('-' for stdout)");
  app.add_option("--pulses", g.pulses, "pulses per run/point/setting");
  app.add_option("--shards", g.shards, "worker shards (does not change results)");
  app.add_option("--set", g.overrides,
                 "parameter override key=value, beats --config (repeatable)");
  double alpha_override = 0.0;
  auto* alpha_opt =
      app.add_option("--alpha", alpha_override, "shorthand for --set alpha=VALUE");
  app.fallthrough();

  // model-curve
  double alpha_min = 0.001, alpha_max = 0.7;
  int alpha_steps = 71;
  auto* mc = app.add_subcommand("model-curve", "closed-form visibility model over an alpha grid");
  mc->add_option("--alpha-min", alpha_min);
  mc->add_option("--alpha-max", alpha_max);
  mc->add_option("--alpha-steps", alpha_steps);

  // simulate
  double theta_s_deg = 0.0, theta_i_deg = 90.0;
  auto* sim = app.add_subcommand("simulate", "pulse-by-pulse coincidence simulation");
  sim->add_option("--theta-s-deg", theta_s_deg);
  sim->add_option("--theta-i-deg", theta_i_deg);

  // fringe
  double fr_theta_s = 0.0, fr_start = 0.0, fr_stop = 180.0, fr_step = 15.0;
  int fr_repeats = 30;
  auto* fr = app.add_subcommand("fringe", "quantum-interference fringe scan and sinusoid fit");
  fr->add_option("--theta-s-deg", fr_theta_s);
  fr->add_option("--theta-start-deg", fr_start);
  fr->add_option("--theta-stop-deg", fr_stop);
  fr->add_option("--theta-step-deg", fr_step);
  fr->add_option("--repeats", fr_repeats);

  // chsh
  double werner_p_value = 1.0;
  bool chsh_sampled = false, chsh_simulate = false;
  double chsh_n = 10000.0;
  auto* ch = app.add_subcommand("chsh", "CHSH S parameter, exact or sampled");
  auto* wp_opt = ch->add_option("--werner-p", werner_p_value, "Werner singlet weight");
  ch->add_flag("--sampled", chsh_sampled, "Poisson-sample the expected counts");
  ch->add_flag("--simulate", chsh_simulate, "full Monte Carlo per analyzer setting");
  ch->add_option("--n-per-setting", chsh_n);

  // tomo
  std::string tomo_input;
  bool tomo_simulate = false, tomo_exact = false;
  double tomo_werner_p = 1.0, tomo_n = 30000.0;
  auto* tm = app.add_subcommand("tomo", "16-setting state tomography reconstruction");
  tm->add_option("--input", tomo_input, "counts CSV (rows: setting label,count)");
  tm->add_flag("--simulate", tomo_simulate, "generate counts from a Werner state");
  tm->add_flag("--exact", tomo_exact, "use exact expected counts (with --simulate)");
  tm->add_option("--werner-p", tomo_werner_p);
  tm->add_option("--n-per-setting", tomo_n);

  // budget
  double budget_v = 0.99;
  auto* bd = app.add_subcommand("budget", "accidental-coincidence and throughput budget");
  bd->add_option("--target-visibility", budget_v);

  // scenario
  std::string scenario_name;
  auto* sc = app.add_subcommand("scenario", "run a named preset");
  sc->add_option("name", scenario_name, "preset name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (alpha_opt->count() > 0)
    g.overrides.push_back("alpha=" + fmt(alpha_override));

  try {
    if (mc->parsed()) cmd_model_curve(g, alpha_min, alpha_max, alpha_steps);
    else if (sim->parsed()) cmd_simulate(g, theta_s_deg, theta_i_deg);
    else if (fr->parsed()) cmd_fringe(g, fr_theta_s, fr_start, fr_stop, fr_step, fr_repeats);
    else if (ch->parsed()) {
      std::optional<double> wp;
      if (wp_opt->count() > 0) wp = werner_p_value;
      cmd_chsh(g, wp, chsh_sampled, chsh_simulate, chsh_n);
    } else if (tm->parsed()) {
      cmd_tomo(g, tomo_input, tomo_simulate, tomo_werner_p, tomo_n, tomo_exact);
    } else if (bd->parsed()) {
      cmd_budget(g, budget_v);
    } else if (sc->parsed()) {
      std::string out_dir = g.out == "-" ? "." : g.out;
      auto sum = run_scenario(scenario_name, out_dir, g.seed, g.shards);
      for (const auto& f : sum.files) std::cout << f << "\n";
      for (const auto& [k, v] : sum.metrics) std::cout << "# " << k << " = " << fmt(v) << "\n";
    }
  } catch (const validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const numerical_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace spdc::cli
