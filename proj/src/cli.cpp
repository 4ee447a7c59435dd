#include "qotto/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "qotto/analysis.hpp"
#include "qotto/errors.hpp"
#include "qotto/otto.hpp"
#include "qotto/verification.hpp"

namespace qotto::cli {

namespace {

// Invalid configuration detected after CLI11 parsing; reported as usage.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

void add_shared_options(CLI::App& cmd, RunConfig& cfg, std::string& config_path) {
  cmd.add_option("--nu-cold", cfg.nu_cold, "Cold stroke frequency [Hz]")->capture_default_str();
  cmd.add_option("--nu-hot", cfg.nu_hot, "Hot stroke frequency [Hz]")->capture_default_str();
  cmd.add_option("--tau", cfg.tau, "Ramp duration [s], e.g. 200e-6")->capture_default_str();
  cmd.add_option("--steps", cfg.steps, "RK4 steps per ramp")->capture_default_str();
  cmd.add_option("--p-cold", cfg.p_cold_plus, "Cold reservoir excited population")
      ->capture_default_str();
  cmd.add_option("--p-hot", cfg.p_hot_plus, "Hot reservoir excited population (> 0.5)");
  cmd.add_option("--format", cfg.format, "Output format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, OutputFormat>{{"csv", OutputFormat::csv},
                                              {"json", OutputFormat::json}},
          CLI::ignore_case))
      ->option_text("csv|json");
  cmd.add_option("--out", cfg.out_path, "Output path, or - for standard output")
      ->capture_default_str();
  cmd.add_option("--config", config_path, "key = value file with flag defaults");
}

void validate_common(const RunConfig& c, bool check_steps) {
  auto bad = [](const std::string& flag, const std::string& why) {
    throw ConfigError(flag + ": " + why);
  };
  if (!(c.nu_cold > 0.0) || !std::isfinite(c.nu_cold)) bad("--nu-cold", "must be positive");
  if (!(c.nu_hot > c.nu_cold) || !std::isfinite(c.nu_hot))
    bad("--nu-hot", "must exceed --nu-cold");
  if (!(c.tau > 0.0) || !std::isfinite(c.tau)) bad("--tau", "must be positive (seconds)");
  if (check_steps && c.steps < RampProtocol::min_steps) bad("--steps", "must be at least 100");
  if (!(c.p_cold_plus > 0.0 && c.p_cold_plus < 0.5))
    bad("--p-cold", "must lie in (0, 0.5) so that beta_cold > 0");
  if (c.p_hot_plus && !(*c.p_hot_plus > 0.5 && *c.p_hot_plus < 1.0))
    bad("--p-hot", "must lie in (0.5, 1) so that beta_hot < 0");
}

std::vector<double> grid_from(const std::optional<std::string>& text, const std::string& flag,
                              GridRange fallback) {
  const GridRange r = text ? parse_range(*text, flag) : fallback;
  return linspace(r.lo, r.hi, r.n);
}

int emit(const std::string& payload, const RunConfig& cfg, std::ostream& out, std::ostream& err,
         const std::string& summary) {
  if (cfg.out_path == "-") {
    out << payload;
    if (!summary.empty()) err << summary << " to standard output\n";
    return exit_ok;
  }
  std::ofstream f(cfg.out_path, std::ios::binary | std::ios::trunc);
  if (!f) {
    err << "error: cannot open output file '" << cfg.out_path << "' for writing\n";
    return exit_failure;
  }
  f << payload;
  f.close();
  if (!f) {
    err << "error: failed writing '" << cfg.out_path << "'\n";
    return exit_failure;
  }
  if (!summary.empty()) out << summary << " to " << cfg.out_path << "\n";
  return exit_ok;
}

nlohmann::ordered_json number_or_null(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

int cmd_cycle(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  validate_common(cfg, true);
  const RampProtocol proto{cfg.nu_cold, cfg.nu_hot, cfg.tau, cfg.steps};
  const auto cold = ReservoirSpec::from_population(cfg.nu_cold, cfg.p_cold_plus);
  const auto hot = ReservoirSpec::from_population(cfg.nu_hot, *cfg.p_hot_plus);
  const CyclePoint point(cold, hot, xi(proto));
  const CycleResult r = evaluate_cycle(point);
  const EngineCondition ec = engine_condition(point);

  if (cfg.format.value_or(OutputFormat::json) == OutputFormat::csv) {
    SweepTable t({"xi", "work_hHz", "q_hot_hHz", "q_cold_hHz", "efficiency", "eta_otto",
                  "work_adiabatic_hHz", "inner_friction_hHz", "regime"});
    t.add_row({r.xi, r.work, r.q_hot, r.q_cold,
               r.efficiency ? Cell(*r.efficiency) : Cell(std::monostate{}), r.eta_otto,
               r.work_adiabatic, r.inner_friction, std::string(to_string(r.regime))});
    return emit(t.to_csv(), cfg, out, err, "");
  }

  nlohmann::ordered_json j;
  j["inputs"] = {{"nu_cold_hz", cfg.nu_cold},       {"nu_hot_hz", cfg.nu_hot},
                 {"tau_s", cfg.tau},                {"steps", cfg.steps},
                 {"p_cold_plus", cfg.p_cold_plus},  {"p_hot_plus", *cfg.p_hot_plus},
                 {"beta_cold_per_hz", cold.beta()}, {"beta_hot_per_hz", hot.beta()}};
  j["xi"] = r.xi;
  j["work_hHz"] = r.work;
  j["q_hot_hHz"] = r.q_hot;
  j["q_cold_hHz"] = r.q_cold;
  j["efficiency"] = number_or_null(r.efficiency);
  j["eta_otto"] = r.eta_otto;
  j["work_adiabatic_hHz"] = r.work_adiabatic;
  j["inner_friction_hHz"] = r.inner_friction;
  j["xi_bound"] = std::isinf(ec.xi_bound) ? nlohmann::ordered_json("inf")
                                          : nlohmann::ordered_json(ec.xi_bound);
  j["regime"] = to_string(r.regime);
  return emit(j.dump(2) + "\n", cfg, out, err, "");
}

int cmd_sweep(const std::string& kind, const RunConfig& cfg, std::ostream& out,
              std::ostream& err) {
  validate_common(cfg, true);
  SweepTable table;
  if (kind == "xi-tau") {
    const auto taus = cfg.tau_list.value_or(linspace(100e-6, 400e-6, 13));
    for (double t : taus)
      if (!(t > 0.0 && t <= 1.0)) throw ConfigError("--tau-list: values must lie in (0, 1] s");
    table = sweep_xi_vs_tau(RampProtocol{cfg.nu_cold, cfg.nu_hot, cfg.tau, cfg.steps}, taus);
  } else if (kind == "region") {
    const auto p_grid = grid_from(cfg.p_hot_range, "--p-hot-range", {0.51, 0.99, 49});
    const auto xi_grid = grid_from(cfg.xi_range, "--xi-range", {0.0, 0.5, 51});
    for (double p : p_grid)
      if (!(p > 0.5 && p <= 1.0)) throw ConfigError("--p-hot-range: values must lie in (0.5, 1]");
    for (double x : xi_grid)
      if (!(x >= 0.0 && x <= 0.5)) throw ConfigError("--xi-range: values must lie in [0, 0.5]");
    table = region_map(cfg.p_cold_plus, cfg.nu_cold, cfg.nu_hot, p_grid, xi_grid);
  } else if (kind == "eta-phot" || kind == "eta-ratio") {
    const auto p_grid = grid_from(cfg.p_hot_range, "--p-hot-range", {0.51, 0.99, 97});
    for (double p : p_grid)
      if (!(p > 0.5 && p <= 1.0)) throw ConfigError("--p-hot-range: values must lie in (0.5, 1]");
    if (kind == "eta-phot") {
      const auto taus = cfg.tau_list.value_or(std::vector<double>{100e-6, 200e-6, 300e-6, 400e-6});
      if (taus.empty()) throw ConfigError("--tau-list: must not be empty");
      for (double t : taus)
        if (!(t > 0.0 && t <= 1.0)) throw ConfigError("--tau-list: values must lie in (0, 1] s");
      table = sweep_efficiency_vs_phot(cfg.p_cold_plus, cfg.nu_cold, cfg.nu_hot, taus, p_grid,
                                       cfg.steps);
    } else {
      const auto ratios =
          cfg.ratio_list.value_or(std::vector<double>{0.4, 2000.0 / 3600.0, 0.7});
      if (ratios.empty()) throw ConfigError("--ratio-list: must not be empty");
      for (double r : ratios)
        if (!(r > 0.0 && r < 1.0)) throw ConfigError("--ratio-list: values must lie in (0, 1)");
      table = sweep_efficiency_vs_ratio(cfg.p_cold_plus, cfg.nu_cold, ratios, cfg.tau, p_grid,
                                        cfg.steps);
    }
  } else {
    throw ConfigError("sweep: unknown kind '" + kind + "'");
  }
  const bool json = cfg.format.value_or(OutputFormat::csv) == OutputFormat::json;
  const std::string summary = kind + ": " + std::to_string(table.rows().size()) + " rows, " +
                              std::to_string(table.columns().size()) + " columns written";
  return emit(json ? table.to_json() : table.to_csv(), cfg, out, err, summary);
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  validate_common(cfg, false);
  VerifyOptions o;
  o.nu_cold = cfg.nu_cold;
  o.nu_hot = cfg.nu_hot;
  o.tau = cfg.tau;
  o.steps = cfg.steps;
  o.p_cold_plus = cfg.p_cold_plus;
  if (cfg.p_hot_plus) o.p_hot_plus = *cfg.p_hot_plus;
  const auto results = run_verification(o);
  const bool ok = all_passed(results);
  std::string report = format_report(results);
  report += ok ? "verify: all checks passed\n" : "verify: FAILED\n";
  const int rc = emit(report, cfg, out, err, "");
  if (rc != exit_ok) return rc;
  return ok ? exit_ok : exit_failure;
}

}  // namespace

GridRange parse_range(const std::string& text, const std::string& flag) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(trim(item));
  if (parts.size() != 3) throw ConfigError(flag + ": expected lo:hi:n, got '" + text + "'");
  try {
    std::size_t used = 0;
    GridRange r{std::stod(parts[0], &used), 0.0, 0};
    if (used != parts[0].size()) throw std::invalid_argument("lo");
    r.hi = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("hi");
    const long n = std::stol(parts[2], &used);
    if (used != parts[2].size() || n < 1) throw std::invalid_argument("n");
    r.n = static_cast<std::size_t>(n);
    if (r.n > 1 && !(r.hi > r.lo)) throw std::invalid_argument("order");
    return r;
  } catch (const std::logic_error&) {
    throw ConfigError(flag + ": expected lo:hi:n with lo < hi and n >= 1, got '" + text + "'");
  }
}

std::vector<std::string> config_file_arguments(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config: cannot read '" + path + "'");
  std::vector<std::string> args;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("--config: " + path + ":" + std::to_string(lineno) +
                        ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.rfind("--", 0) != 0) key = "--" + key;
    if (key == "--config") throw ConfigError("--config: nested config files are not supported");
    args.push_back(key);
    args.push_back(value);
  }
  return args;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  // First pass finds --config so its entries can be placed ahead of the
  // command-line flags (later occurrences win).
  std::vector<std::string> effective = args;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size())
      path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0)
      path = args[i].substr(9);
    else
      continue;
    try {
      const auto extra = config_file_arguments(path);
      if (!effective.empty() && effective.front().rfind("-", 0) != 0) {
        effective.insert(effective.begin() + 1, extra.begin(), extra.end());
      } else {
        effective.insert(effective.begin(), extra.begin(), extra.end());
      }
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return exit_usage;
    }
    break;
  }

  CLI::App app{"Two-level quantum Otto engine with a population-inverted hot reservoir"};
  app.name("qotto");
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  RunConfig cfg;
  std::string config_path;
  std::string sweep_kind;

  auto* cycle = app.add_subcommand("cycle", "Evaluate one cycle and print its thermodynamics");
  add_shared_options(*cycle, cfg, config_path);
  cycle->get_option("--p-hot")->required();

  auto* sweep = app.add_subcommand("sweep", "Parameter sweeps: xi-tau, region, eta-phot, eta-ratio");
  add_shared_options(*sweep, cfg, config_path);
  sweep->add_option("kind", sweep_kind, "Sweep kind")
      ->required()
      ->check(CLI::IsMember({"xi-tau", "region", "eta-phot", "eta-ratio"}));
  sweep->add_option("--tau-list", cfg.tau_list, "Comma-separated ramp durations [s]")
      ->delimiter(',');
  sweep->add_option("--ratio-list", cfg.ratio_list, "Comma-separated nu_cold/nu_hot ratios")
      ->delimiter(',');
  sweep->add_option("--p-hot-range", cfg.p_hot_range, "Hot population grid lo:hi:n");
  sweep->add_option("--xi-range", cfg.xi_range, "Transition probability grid lo:hi:n");

  auto* verify = app.add_subcommand("verify", "Run the reproduction checks");
  add_shared_options(*verify, cfg, config_path);

  std::vector<std::string> reversed(effective.rbegin(), effective.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      out << app.help();
      return exit_ok;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return exit_usage;
  }

  try {
    if (cycle->parsed()) return cmd_cycle(cfg, out, err);
    if (sweep->parsed()) return cmd_sweep(sweep_kind, cfg, out, err);
    return cmd_verify(cfg, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_failure;
  }
}

}  // namespace qotto::cli
