#include <CLI11.hpp>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "bridgewalk/experiment.hpp"
#include "bridgewalk/spectral.hpp"
#include "bridgewalk/walk.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitRuleFailure = 1;
constexpr int kExitUsage = 2;

struct CommandOptions {
  bridgewalk::ScenarioConfig scenario;
  std::string steps = "auto";
  std::vector<double> eps_list;
  std::string config_path;
  CLI::App* cmd = nullptr;
  bool sweep = false;
};

// Attaches the flags shared by every subcommand; each one also reads an
// optional key=value config file whose entries the command line overrides.
void add_common_options(CLI::App& cmd, CommandOptions& opts, bool sweep_eps) {
  opts.cmd = &cmd;
  opts.sweep = sweep_eps;
  cmd.add_option("--h1", opts.scenario.h1,
                 "first graph (complete:N | cycle:N | path:N | star:N | "
                 "random:N:P[:SEED] | file:PATH)")
      ->capture_default_str();
  cmd.add_option("--h2", opts.scenario.h2, "second graph, same forms")
      ->capture_default_str();
  cmd.add_option("--xi1", opts.scenario.xi1, "bridge vertex in the first graph")
      ->capture_default_str();
  cmd.add_option("--xi2", opts.scenario.xi2, "bridge vertex in the second graph")
      ->capture_default_str();
  if (sweep_eps) {
    cmd.add_option("--eps", opts.eps_list,
                   "bridge weights, strictly descending (at least two)")
        ->expected(2, 1000);
  } else {
    cmd.add_option("--eps", opts.scenario.epsilon, "bridge weight in (0, 1]")
        ->capture_default_str();
  }
  cmd.add_option("--steps", opts.steps,
                 "horizon in steps, or auto for twice the transfer period")
      ->capture_default_str();
  std::map<std::string, bridgewalk::ThetaSource> sources{
      {"numeric", bridgewalk::ThetaSource::numeric},
      {"asymptotic", bridgewalk::ThetaSource::asymptotic}};
  cmd.add_option("--theta-source", opts.scenario.theta_source,
                 "rotation angle source: numeric | asymptotic")
      ->transform(CLI::CheckedTransformer(sources, CLI::ignore_case))
      ->default_str("numeric");
  cmd.add_option("--seed", opts.scenario.seed, "seed for random graph descriptors")
      ->capture_default_str();
  cmd.add_option("--out-csv", opts.scenario.out_csv, "write the run as CSV");
  cmd.add_option("--config", opts.config_path,
                 "key=value file; command-line flags win");
}

std::string trimmed(const std::string& text) {
  std::size_t first = text.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  std::size_t last = text.find_last_not_of(" \t\r");
  return text.substr(first, last - first + 1);
}

[[noreturn]] void config_error(const std::string& key, const std::string& value) {
  throw bridgewalk::Error(bridgewalk::errc::parse_error,
                          "config: bad value '" + value + "' for key '" + key + "'");
}

long config_long(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    long parsed = std::stol(value, &used);
    if (used == value.size()) return parsed;
  } catch (const std::exception&) {
  }
  config_error(key, value);
}

double config_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    double parsed = std::stod(value, &used);
    if (used == value.size()) return parsed;
  } catch (const std::exception&) {
  }
  config_error(key, value);
}

std::uint64_t config_seed(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    unsigned long long parsed = std::stoull(value, &used);
    if (used == value.size()) return static_cast<std::uint64_t>(parsed);
  } catch (const std::exception&) {
  }
  config_error(key, value);
}

// Merges a flat key=value file into the options.  Keys mirror the long flags
// without the leading dashes; any key whose flag was given on the command
// line is skipped, so flags always win.
void apply_config(CommandOptions& opts) {
  if (opts.config_path.empty()) return;
  std::ifstream in(opts.config_path);
  if (!in) {
    throw bridgewalk::Error(bridgewalk::errc::io_error,
                            "cannot read config file " + opts.config_path);
  }
  bridgewalk::ScenarioConfig& scenario = opts.scenario;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trimmed(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw bridgewalk::Error(bridgewalk::errc::parse_error,
                              "config: expected key=value, got '" + line + "'");
    }
    std::string key = trimmed(line.substr(0, eq));
    std::string value = trimmed(line.substr(eq + 1));
    const CLI::Option* flag = opts.cmd->get_option_no_throw("--" + key);
    if (flag != nullptr && flag->count() > 0) continue;  // command line wins
    if (key == "h1") {
      scenario.h1 = value;
    } else if (key == "h2") {
      scenario.h2 = value;
    } else if (key == "xi1") {
      scenario.xi1 = static_cast<int>(config_long(key, value));
    } else if (key == "xi2") {
      scenario.xi2 = static_cast<int>(config_long(key, value));
    } else if (key == "eps" && opts.sweep) {
      opts.eps_list.clear();
      std::string entry;
      for (char c : value + " ") {
        if (c == ' ' || c == '\t' || c == ',') {
          if (!entry.empty()) opts.eps_list.push_back(config_double(key, entry));
          entry.clear();
        } else {
          entry.push_back(c);
        }
      }
    } else if (key == "eps") {
      scenario.epsilon = config_double(key, value);
    } else if (key == "steps") {
      opts.steps = value;
    } else if (key == "theta-source") {
      std::string lower = value;
      for (char& c : lower) c = static_cast<char>(std::tolower(c));
      if (lower == "numeric") {
        scenario.theta_source = bridgewalk::ThetaSource::numeric;
      } else if (lower == "asymptotic") {
        scenario.theta_source = bridgewalk::ThetaSource::asymptotic;
      } else {
        config_error(key, value);
      }
    } else if (key == "seed") {
      scenario.seed = config_seed(key, value);
    } else if (key == "out-csv") {
      scenario.out_csv = value;
    } else if (key == "out-svg" && opts.cmd->get_option_no_throw("--out-svg")) {
      scenario.out_svg = value;
    } else {
      throw bridgewalk::Error(bridgewalk::errc::parse_error,
                              "config: unknown key '" + key + "'");
    }
  }
}

long resolve_steps(const std::string& text) {
  if (text == "auto") return -1;
  try {
    std::size_t used = 0;
    long value = std::stol(text, &used);
    if (used == text.size() && value >= 0) return value;
  } catch (const std::exception&) {
  }
  throw CLI::ValidationError("--steps", "expected a non-negative integer or auto");
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw bridgewalk::Error(bridgewalk::errc::io_error, "cannot write " + path);
  }
  return out;
}

std::string describe(const bridgewalk::ScenarioConfig& config) {
  return config.h1 + " (xi " + std::to_string(config.xi1) + ") -- " + config.h2 +
         " (xi " + std::to_string(config.xi2) + ")";
}

void print_scenario_header(const bridgewalk::ScenarioResult& result) {
  const bridgewalk::ScenarioConfig& config = result.config;
  std::printf("graph:          %s\n", describe(config).c_str());
  std::printf("arcs:           a1=%d a2=%d\n", result.a1(), result.a2());
  std::printf("eps:            %g\n", config.epsilon);
  std::printf("horizon:        %ld steps\n", result.horizon);
  if (!std::isnan(result.cos_theta_numeric)) {
    std::printf("cos theta:      %.17g (numeric)\n", result.cos_theta_numeric);
  }
  std::printf("cos theta asym: %.17g\n", result.cos_theta_asymptotic);
  std::printf("theta used:     %.17g (%s)\n", result.theta_used,
              config.theta_source == bridgewalk::ThetaSource::numeric ? "numeric"
                                                                      : "asymptotic");
}

int run_simulate(CommandOptions& opts) {
  apply_config(opts);
  opts.scenario.steps = resolve_steps(opts.steps);
  bridgewalk::ScenarioResult result = bridgewalk::run_scenario(opts.scenario);
  bridgewalk::SeriesStats stats =
      bridgewalk::compute_stats(result.series, result.tau_formula_steps);

  print_scenario_header(result);
  std::printf("tau formula:    %ld\n", result.tau_formula_steps);
  if (result.tau_simulated_steps >= 0) {
    std::printf("tau simulated:  %ld\n", result.tau_simulated_steps);
  }
  std::printf("max mu_h2:      %.17g at t=%ld\n", stats.max_mu_h2, stats.argmax_mu_h2);
  std::printf("min mu_h1:      %.17g at t=%ld\n", stats.min_mu_h1, stats.argmin_mu_h1);
  std::printf("max |closure|:  %.3e\n", stats.max_closure_error);
  std::printf("max |sim-thy|:  %.3e\n", stats.max_abs_deviation);

  if (!opts.scenario.out_csv.empty()) {
    std::ofstream out = open_output(opts.scenario.out_csv);
    bridgewalk::write_series_csv(out, result.series);
    std::printf("csv:            %s\n", opts.scenario.out_csv.c_str());
  }
  if (!opts.scenario.out_svg.empty()) {
    std::ofstream out = open_output(opts.scenario.out_svg);
    char title[160];
    std::snprintf(title, sizeof(title), "%s, eps=%g", describe(opts.scenario).c_str(),
                  opts.scenario.epsilon);
    bridgewalk::write_series_svg(out, result.series, title);
    std::printf("svg:            %s\n", opts.scenario.out_svg.c_str());
  }

  bool pass = stats.max_closure_error <= 1e-10;
  std::printf("verdict:        %s (closure tolerance 1e-10)\n", pass ? "pass" : "FAIL");
  return pass ? kExitPass : kExitRuleFailure;
}

int run_spectrum(CommandOptions& opts) {
  apply_config(opts);
  opts.scenario.steps = resolve_steps(opts.steps);
  const bridgewalk::ScenarioConfig& config = opts.scenario;
  bridgewalk::SimpleGraph h1 = bridgewalk::parse_graph_descriptor(config.h1, config.seed);
  bridgewalk::SimpleGraph h2 = bridgewalk::parse_graph_descriptor(config.h2, config.seed);
  bridgewalk::BridgedGraph g = bridgewalk::bridge_graphs(h1, config.xi1, h2, config.xi2);

  bridgewalk::ThetaReport report = bridgewalk::theta(g, config.epsilon);
  std::printf("graph:          %s\n", describe(config).c_str());
  std::printf("arcs:           a1=%d a2=%d\n", g.a1, g.a2);
  std::printf("eps:            %g\n", config.epsilon);
  std::printf("top eigenvalues:");
  for (std::size_t k = 0; k < report.eigenvalues.size() && k < 6; ++k) {
    std::printf(" %.12g", report.eigenvalues[k]);
  }
  std::printf("\n");
  std::printf("cos theta:      %.17g (numeric)\n", report.cos_theta_numeric);
  std::printf("cos theta asym: %.17g\n", report.cos_theta_asymptotic);
  std::printf("theta:          %.17g\n", report.theta_numeric);
  std::printf("cluster size:   %zu\n", report.cluster.size());

  bridgewalk::ReducedPerturbation reduced = bridgewalk::reduced_eigenvalue(g);
  double reduced_error = std::abs(reduced.lambda1 - reduced.lambda1_closed);
  std::printf("reduced lambda: %.17g (closed %.17g, |diff| %.3e)\n", reduced.lambda1,
              reduced.lambda1_closed, reduced_error);

  bridgewalk::WalkOperator walk(g, config.epsilon);
  std::vector<double> unit = bridgewalk::unit_arc_eigenvector(g, config.epsilon);
  std::vector<bridgewalk::amplitude> unit_c(unit.begin(), unit.end());
  std::vector<bridgewalk::amplitude> unit_image = walk.apply(unit_c);
  double unit_residual = 0.0;
  for (std::size_t a = 0; a < unit_c.size(); ++a) {
    unit_residual += std::norm(unit_image[a] - unit_c[a]);
  }
  unit_residual = std::sqrt(unit_residual);
  std::printf("unit residual:  %.3e\n", unit_residual);

  double lift_residual = 0.0;
  bool lifted = report.simple();
  if (lifted) {
    bridgewalk::ArcLift lift = bridgewalk::lift_to_arc(
        g, config.epsilon, report.cos_theta_numeric, report.vertex_eigenvector);
    lift_residual = std::max(lift.plus.residual, lift.minus.residual);
    std::printf("lift residual:  %.3e (max over both signs)\n", lift_residual);

    bridgewalk::OverlapReport ov = bridgewalk::overlaps(g, config.epsilon);
    std::printf("overlap unit:   %.8f (closed %.8f)\n", ov.unit_numeric, ov.unit_closed);
    std::printf("overlap theta:  %.8f / %.8f (closed %.8f)\n", ov.theta_plus_numeric,
                ov.theta_minus_numeric, ov.theta_closed);
    std::printf("overlap sumsq:  %.8f\n", ov.sum_squares);
  } else {
    std::printf("lift:           skipped (second eigenvalue not simple)\n");
  }

  bool pass = reduced_error <= 1e-12 && unit_residual <= 1e-12 &&
              (!lifted || lift_residual <= 1e-9);
  std::printf("verdict:        %s\n", pass ? "pass" : "FAIL");
  return pass ? kExitPass : kExitRuleFailure;
}

int run_tau(CommandOptions& opts) {
  apply_config(opts);
  opts.scenario.steps = resolve_steps(opts.steps);
  bridgewalk::ScenarioResult result = bridgewalk::run_scenario(opts.scenario);
  bridgewalk::TauCheck check = bridgewalk::check_tau(result);

  print_scenario_header(result);
  std::printf("tau formula:    %ld\n", check.tau_formula_steps);
  if (check.tau_simulated_steps >= 0) {
    std::printf("tau simulated:  %ld\n", check.tau_simulated_steps);
  } else {
    std::printf("tau simulated:  not certified (horizon < 2 tau)\n");
  }
  std::printf("tolerance:      %.1f steps\n", check.tolerance);
  std::printf("verdict:        %s\n", check.pass ? "pass" : "FAIL");
  return check.pass ? kExitPass : kExitRuleFailure;
}

int run_sweep_cmd(CommandOptions& opts) {
  apply_config(opts);
  opts.scenario.steps = resolve_steps(opts.steps);
  std::vector<bridgewalk::SweepRow> rows =
      bridgewalk::run_sweep(opts.scenario, opts.eps_list);

  std::printf("graph:          %s\n", describe(opts.scenario).c_str());
  std::printf("%-10s %-12s %-12s %-14s %-6s %-6s %-10s %-8s\n", "eps", "theta",
              "max|sim-thy|", "cosdev/eps^2", "tau_f", "tau_s", "dev_ratio",
              "cos_ratio");
  bool pass = true;
  for (const bridgewalk::SweepRow& row : rows) {
    std::printf("%-10.4g %-12.6g %-12.4e %-14.6g %-6ld %-6ld %-10.4g %-8.4g%s\n",
                row.epsilon, row.theta_numeric, row.max_abs_deviation,
                row.cos_dev_over_eps2, row.tau_formula_steps, row.tau_simulated_steps,
                row.deviation_ratio, row.cos_ratio,
                row.deviation_ok && row.cos_ok ? "" : "  <- out of band");
    pass = pass && row.deviation_ok && row.cos_ok;
  }

  if (!opts.scenario.out_csv.empty()) {
    std::ofstream out = open_output(opts.scenario.out_csv);
    bridgewalk::write_sweep_csv(out, rows);
    std::printf("csv:            %s\n", opts.scenario.out_csv.c_str());
  }
  std::printf("verdict:        %s (first-order decay bands)\n", pass ? "pass" : "FAIL");
  return pass ? kExitPass : kExitRuleFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grover walk pulsation on two graphs joined by a weak bridge"};
  app.require_subcommand(1);

  CommandOptions simulate_opts, spectrum_opts, tau_opts, sweep_opts;

  CLI::App* simulate = app.add_subcommand(
      "simulate", "run the walk and report region probabilities");
  add_common_options(*simulate, simulate_opts, false);
  simulate->add_option("--out-svg", simulate_opts.scenario.out_svg,
                       "write a probability plot as SVG");

  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "eigenvalues, rotation angle and exact eigenvectors");
  add_common_options(*spectrum, spectrum_opts, false);

  CLI::App* tau = app.add_subcommand(
      "tau", "compare the transfer-period formula against simulation");
  add_common_options(*tau, tau_opts, false);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "check first-order error decay across descending eps");
  add_common_options(*sweep, sweep_opts, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (simulate->parsed()) return run_simulate(simulate_opts);
    if (spectrum->parsed()) return run_spectrum(spectrum_opts);
    if (tau->parsed()) return run_tau(tau_opts);
    return run_sweep_cmd(sweep_opts);
  } catch (const bridgewalk::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
