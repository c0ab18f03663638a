#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "bridgewalk/asymptotics.hpp"
#include "bridgewalk/graph.hpp"
#include "bridgewalk/spectral.hpp"

namespace bridgewalk {

// Graph descriptors: complete:N | cycle:N | path:N | star:N |
// random:N:P[:SEED] | file:PATH.  random without an explicit SEED uses
// default_seed.  Throws Error(parse_error) on malformed input.
SimpleGraph parse_graph_descriptor(const std::string& descriptor,
                                   std::uint64_t default_seed);

struct ScenarioConfig {
  std::string h1 = "complete:5";
  std::string h2 = "complete:5";
  int xi1 = 0;
  int xi2 = 0;
  double epsilon = 0.01;
  long steps = -1;  // -1: auto, resolves to 2 * tau_formula + 10
  ThetaSource theta_source = ThetaSource::numeric;
  std::uint64_t seed = 0;
  std::string out_csv;  // empty: no file output
  std::string out_svg;
};

struct ScenarioResult {
  ScenarioConfig config;
  BridgedGraph graph;
  long horizon = 0;
  double cos_theta_numeric = std::numeric_limits<double>::quiet_NaN();
  double cos_theta_asymptotic = 0.0;
  double theta_used = 0.0;
  long tau_formula_steps = 0;
  long tau_simulated_steps = -1;  // -1 when the horizon cannot certify a peak
  ProbabilitySeries series;       // theory columns filled

  int a1() const { return graph.a1; }
  int a2() const { return graph.a2; }
};

// Builds the bridged graph, resolves theta by the configured source, runs the
// walk and fills theory columns.  theta_source numeric requires a simple
// second eigenvalue (Error degenerate_top_eigenvalue otherwise).
ScenarioResult run_scenario(const ScenarioConfig& config);

// Everything the reporting layer prints about a series; recomputable from an
// emitted CSV alone, bit for bit.
struct SeriesStats {
  double max_mu_h2 = 0.0;
  long argmax_mu_h2 = 0;
  double min_mu_h1 = 1.0;
  long argmin_mu_h1 = 0;
  double max_abs_deviation = 0.0;   // simulated vs theory columns
  double max_closure_error = 0.0;   // |mu_h1 + mu_h2 + mu_bridge - 1|
  long tau_simulated_steps = -1;
};
SeriesStats compute_stats(const ProbabilitySeries& series, long tau_formula_steps);

struct TauCheck {
  long tau_formula_steps = 0;
  long tau_simulated_steps = -1;
  double tolerance = 0.0;  // max(2, 2% of tau_formula)
  bool pass = false;
};
TauCheck check_tau(const ScenarioResult& result);

// CSV columns: t,mu_h1,mu_h2,mu_bridge,mu_h1_theory,mu_h2_theory.  Doubles
// are printed with 17 significant digits, so write -> read round-trips exactly.
void write_series_csv(std::ostream& out, const ProbabilitySeries& series);
ProbabilitySeries read_series_csv(std::istream& in);

// Self-contained line plot of the simulated mu_h1 (solid) and mu_h2 (dashed)
// plus their theory envelopes.
void write_series_svg(std::ostream& out, const ProbabilitySeries& series,
                      const std::string& title);

struct SweepRow {
  double epsilon = 0.0;
  double theta_numeric = 0.0;
  double max_abs_deviation = 0.0;
  double cos_dev_over_eps2 = 0.0;  // |cos numeric - cos asymptotic| / eps^2
  long tau_formula_steps = 0;
  long tau_simulated_steps = -1;
  // Consecutive-row ratios; NaN on the first row.
  double deviation_ratio = std::numeric_limits<double>::quiet_NaN();
  double cos_ratio = std::numeric_limits<double>::quiet_NaN();
  bool deviation_ok = true;
  bool cos_ok = true;
};

// Runs the scenario across eps_list (>= 2 entries, strictly descending; Error
// parse_error otherwise).  Certifies first-order deviation decay: each
// deviation ratio must fall within [0.75, 1.5] x the eps ratio, and each
// |cos dev| / eps^2 ratio within [0.25, 4].
std::vector<SweepRow> run_sweep(ScenarioConfig config,
                                const std::vector<double>& eps_list);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

// Shortest 17-significant-digit decimal form used by every CSV writer.
std::string format_double(double v);

}  // namespace bridgewalk
