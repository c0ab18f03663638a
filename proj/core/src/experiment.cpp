#include "bridgewalk/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include "bridgewalk/walk.hpp"

namespace bridgewalk {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = text.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

int parse_int(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(text, &used);
  } catch (const std::exception&) {
    throw Error(errc::parse_error, what + ": not an integer: \"" + text + "\"");
  }
  if (used != text.size()) {
    throw Error(errc::parse_error, what + ": trailing junk in \"" + text + "\"");
  }
  return value;
}

double parse_probability(const std::string& text) {
  char* end = nullptr;
  double value = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || text.empty()) {
    throw Error(errc::parse_error, "bad probability \"" + text + "\"");
  }
  return value;
}

std::uint64_t parse_seed(const std::string& text) {
  std::size_t used = 0;
  std::uint64_t value = 0;
  try {
    value = std::stoull(text, &used);
  } catch (const std::exception&) {
    throw Error(errc::parse_error, "bad seed \"" + text + "\"");
  }
  if (used != text.size()) {
    throw Error(errc::parse_error, "bad seed \"" + text + "\"");
  }
  return value;
}

double parse_csv_double(const std::string& text, int line_number) {
  char* end = nullptr;
  double value = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw Error(errc::parse_error,
                "line " + std::to_string(line_number) + ": bad number \"" + text + "\"");
  }
  return value;
}

}  // namespace

std::string format_double(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

SimpleGraph parse_graph_descriptor(const std::string& descriptor,
                                   std::uint64_t default_seed) {
  std::size_t colon = descriptor.find(':');
  if (colon == std::string::npos) {
    throw Error(errc::parse_error,
                "descriptor \"" + descriptor + "\" needs the form kind:arg");
  }
  std::string kind = descriptor.substr(0, colon);
  std::string rest = descriptor.substr(colon + 1);
  if (kind == "file") {
    return read_edge_list_file(rest);  // paths may contain ':'
  }
  std::vector<std::string> args = split(rest, ':');
  if (kind == "complete" || kind == "cycle" || kind == "path" || kind == "star") {
    if (args.size() != 1) {
      throw Error(errc::parse_error, kind + " takes exactly one argument");
    }
    int n = parse_int(args[0], kind + " size");
    if (kind == "complete") return complete_graph(n);
    if (kind == "cycle") return cycle_graph(n);
    if (kind == "path") return path_graph(n);
    return star_graph(n);
  }
  if (kind == "random") {
    if (args.size() != 2 && args.size() != 3) {
      throw Error(errc::parse_error, "random takes N:P or N:P:SEED");
    }
    int n = parse_int(args[0], "random size");
    double p = parse_probability(args[1]);
    std::uint64_t seed = args.size() == 3 ? parse_seed(args[2]) : default_seed;
    return random_connected_graph(n, p, seed);
  }
  throw Error(errc::parse_error, "unknown graph kind \"" + kind + "\"");
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
  if (!(config.epsilon > 0.0) || config.epsilon > 1.0) {
    throw Error(errc::parse_error, "eps must lie in (0, 1]");
  }
  ScenarioResult result;
  result.config = config;
  SimpleGraph h1 = parse_graph_descriptor(config.h1, config.seed);
  SimpleGraph h2 = parse_graph_descriptor(config.h2, config.seed);
  result.graph = bridge_graphs(h1, config.xi1, h2, config.xi2);
  const BridgedGraph& g = result.graph;

  result.tau_formula_steps = tau_formula(g.a1, g.a2, config.epsilon);
  result.horizon = config.steps >= 0 ? config.steps
                                     : 2 * result.tau_formula_steps + 10;

  result.cos_theta_asymptotic = cos_theta_asymptotic(g, config.epsilon);
  double theta_value;
  if (config.theta_source == ThetaSource::numeric) {
    ThetaReport report = theta(g, config.epsilon);
    if (!report.simple()) {
      throw Error(errc::degenerate_top_eigenvalue,
                  "second eigenvalue is a cluster of " +
                      std::to_string(report.cluster.size()) +
                      "; rerun with the asymptotic theta source");
    }
    result.cos_theta_numeric = report.cos_theta_numeric;
    theta_value = report.theta_numeric;
  } else {
    theta_value = theta_asymptotic_value(g.a1, g.a2, config.epsilon);
  }
  result.theta_used = theta_value;

  result.series = evolve(g, config.epsilon, result.horizon);
  TheoryParams params{g.a1, g.a2, config.epsilon, theta_value};
  fill_theory(result.series, params);

  if (result.horizon >= 2 * result.tau_formula_steps) {
    result.tau_simulated_steps = tau_simulated(result.series, result.tau_formula_steps);
  }
  return result;
}

SeriesStats compute_stats(const ProbabilitySeries& series, long tau_formula_steps) {
  SeriesStats stats;
  stats.min_mu_h1 = 2.0;
  for (std::size_t t = 0; t < series.samples.size(); ++t) {
    const ProbabilityTriple& triple = series.samples[t];
    if (triple.mu_h2 > stats.max_mu_h2) {
      stats.max_mu_h2 = triple.mu_h2;
      stats.argmax_mu_h2 = static_cast<long>(t);
    }
    if (triple.mu_h1 < stats.min_mu_h1) {
      stats.min_mu_h1 = triple.mu_h1;
      stats.argmin_mu_h1 = static_cast<long>(t);
    }
    stats.max_closure_error =
        std::max(stats.max_closure_error, std::abs(triple.sum() - 1.0));
    if (series.has_theory()) {
      stats.max_abs_deviation =
          std::max({stats.max_abs_deviation,
                    std::abs(triple.mu_h1 - series.mu_h1_theory[t]),
                    std::abs(triple.mu_h2 - series.mu_h2_theory[t])});
    }
  }
  if (series.horizon() >= 2 * tau_formula_steps) {
    stats.tau_simulated_steps = tau_simulated(series, tau_formula_steps);
  }
  return stats;
}

TauCheck check_tau(const ScenarioResult& result) {
  TauCheck check;
  check.tau_formula_steps = result.tau_formula_steps;
  check.tau_simulated_steps = result.tau_simulated_steps;
  check.tolerance = std::max(2.0, 0.02 * static_cast<double>(check.tau_formula_steps));
  check.pass = check.tau_simulated_steps >= 0 &&
               std::abs(static_cast<double>(check.tau_simulated_steps -
                                            check.tau_formula_steps)) <= check.tolerance;
  return check;
}

void write_series_csv(std::ostream& out, const ProbabilitySeries& series) {
  const bool theory = series.has_theory();
  out << "t,mu_h1,mu_h2,mu_bridge,mu_h1_theory,mu_h2_theory\n";
  for (std::size_t t = 0; t < series.samples.size(); ++t) {
    const ProbabilityTriple& triple = series.samples[t];
    out << t << ',' << format_double(triple.mu_h1) << ',' << format_double(triple.mu_h2)
        << ',' << format_double(triple.mu_bridge) << ','
        << (theory ? format_double(series.mu_h1_theory[t]) : "nan") << ','
        << (theory ? format_double(series.mu_h2_theory[t]) : "nan") << '\n';
  }
}

ProbabilitySeries read_series_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(errc::parse_error, "empty series file");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,mu_h1,mu_h2,mu_bridge,mu_h1_theory,mu_h2_theory") {
    throw Error(errc::parse_error, "unexpected header \"" + line + "\"");
  }
  ProbabilitySeries series;
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields = split(line, ',');
    if (fields.size() != 6) {
      throw Error(errc::parse_error,
                  "line " + std::to_string(line_number) + ": expected 6 fields");
    }
    long t = parse_int(fields[0], "time step");
    if (t != static_cast<long>(series.samples.size())) {
      throw Error(errc::parse_error,
                  "line " + std::to_string(line_number) + ": non-consecutive step " +
                      std::to_string(t));
    }
    ProbabilityTriple triple;
    triple.mu_h1 = parse_csv_double(fields[1], line_number);
    triple.mu_h2 = parse_csv_double(fields[2], line_number);
    triple.mu_bridge = parse_csv_double(fields[3], line_number);
    series.samples.push_back(triple);
    series.mu_h1_theory.push_back(parse_csv_double(fields[4], line_number));
    series.mu_h2_theory.push_back(parse_csv_double(fields[5], line_number));
  }
  if (series.samples.empty()) {
    throw Error(errc::parse_error, "series file has no data rows");
  }
  return series;
}

namespace {

struct PlotGeometry {
  double width = 840.0, height = 520.0;
  double left = 64.0, right = 20.0, top = 44.0, bottom = 48.0;

  double x(double t, double t_max) const {
    return left + (width - left - right) * (t_max > 0 ? t / t_max : 0.0);
  }
  double y(double p) const {
    return top + (height - top - bottom) * (1.0 - p);
  }
};

std::string polyline(const PlotGeometry& geom, const std::vector<double>& values,
                     double t_max) {
  std::string points;
  char buffer[64];
  for (std::size_t t = 0; t < values.size(); ++t) {
    std::snprintf(buffer, sizeof(buffer), "%.2f,%.2f ",
                  geom.x(static_cast<double>(t), t_max),
                  geom.y(std::clamp(values[t], 0.0, 1.0)));
    points += buffer;
  }
  if (!points.empty()) points.pop_back();
  return points;
}

}  // namespace

void write_series_svg(std::ostream& out, const ProbabilitySeries& series,
                      const std::string& title) {
  PlotGeometry geom;
  double t_max = static_cast<double>(std::max<long>(series.horizon(), 1));
  std::vector<double> mu1, mu2;
  mu1.reserve(series.samples.size());
  mu2.reserve(series.samples.size());
  for (const ProbabilityTriple& triple : series.samples) {
    mu1.push_back(triple.mu_h1);
    mu2.push_back(triple.mu_h2);
  }

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << geom.width
      << "\" height=\"" << geom.height << "\" viewBox=\"0 0 " << geom.width << ' '
      << geom.height << "\">\n";
  out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "  <text x=\"" << geom.width / 2
      << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
      << title << "</text>\n";

  // Axes with probability gridlines every 0.25 and five time ticks.
  out << "  <g stroke=\"#444\" stroke-width=\"1\">\n";
  out << "    <line x1=\"" << geom.left << "\" y1=\"" << geom.y(0.0) << "\" x2=\""
      << geom.width - geom.right << "\" y2=\"" << geom.y(0.0) << "\"/>\n";
  out << "    <line x1=\"" << geom.left << "\" y1=\"" << geom.y(0.0) << "\" x2=\""
      << geom.left << "\" y2=\"" << geom.y(1.0) << "\"/>\n";
  out << "  </g>\n";
  out << "  <g font-family=\"sans-serif\" font-size=\"11\" fill=\"#222\">\n";
  for (int i = 0; i <= 4; ++i) {
    double p = 0.25 * i;
    out << "    <line x1=\"" << geom.left - 4 << "\" y1=\"" << geom.y(p) << "\" x2=\""
        << geom.left << "\" y2=\"" << geom.y(p) << "\" stroke=\"#444\"/>\n";
    out << "    <text x=\"" << geom.left - 8 << "\" y=\"" << geom.y(p) + 4
        << "\" text-anchor=\"end\">" << (i == 0 ? "0" : i == 4 ? "1" : std::to_string(25 * i) + "%")
        << "</text>\n";
  }
  for (int i = 0; i <= 4; ++i) {
    double t = t_max * i / 4.0;
    out << "    <line x1=\"" << geom.x(t, t_max) << "\" y1=\"" << geom.y(0.0)
        << "\" x2=\"" << geom.x(t, t_max) << "\" y2=\"" << geom.y(0.0) + 4
        << "\" stroke=\"#444\"/>\n";
    out << "    <text x=\"" << geom.x(t, t_max) << "\" y=\"" << geom.y(0.0) + 18
        << "\" text-anchor=\"middle\">" << static_cast<long>(t + 0.5) << "</text>\n";
  }
  out << "    <text x=\"" << (geom.left + geom.width - geom.right) / 2 << "\" y=\""
      << geom.height - 8 << "\" text-anchor=\"middle\">step</text>\n";
  out << "  </g>\n";

  if (series.has_theory()) {
    out << "  <polyline fill=\"none\" stroke=\"#b0c4ff\" stroke-width=\"3\" points=\""
        << polyline(geom, series.mu_h1_theory, t_max) << "\"/>\n";
    out << "  <polyline fill=\"none\" stroke=\"#ffc4b0\" stroke-width=\"3\" points=\""
        << polyline(geom, series.mu_h2_theory, t_max) << "\"/>\n";
  }
  out << "  <polyline fill=\"none\" stroke=\"#1f4fd8\" stroke-width=\"1.5\" points=\""
      << polyline(geom, mu1, t_max) << "\"/>\n";
  out << "  <polyline fill=\"none\" stroke=\"#d8431f\" stroke-width=\"1.5\" "
         "stroke-dasharray=\"6 3\" points=\""
      << polyline(geom, mu2, t_max) << "\"/>\n";

  out << "  <g font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "    <line x1=\"" << geom.left + 12 << "\" y1=\"40\" x2=\"" << geom.left + 40
      << "\" y2=\"40\" stroke=\"#1f4fd8\" stroke-width=\"1.5\"/>\n";
  out << "    <text x=\"" << geom.left + 46 << "\" y=\"44\">first block</text>\n";
  out << "    <line x1=\"" << geom.left + 140 << "\" y1=\"40\" x2=\"" << geom.left + 168
      << "\" y2=\"40\" stroke=\"#d8431f\" stroke-width=\"1.5\" stroke-dasharray=\"6 3\"/>\n";
  out << "    <text x=\"" << geom.left + 174 << "\" y=\"44\">second block</text>\n";
  out << "  </g>\n";
  out << "</svg>\n";
}

std::vector<SweepRow> run_sweep(ScenarioConfig config,
                                const std::vector<double>& eps_list) {
  if (eps_list.size() < 2) {
    throw Error(errc::parse_error, "sweep needs at least two eps values");
  }
  for (std::size_t i = 1; i < eps_list.size(); ++i) {
    if (!(eps_list[i] < eps_list[i - 1])) {
      throw Error(errc::parse_error, "sweep eps values must be strictly descending");
    }
  }

  std::vector<SweepRow> rows;
  rows.reserve(eps_list.size());
  for (double eps : eps_list) {
    config.epsilon = eps;
    ScenarioResult result = run_scenario(config);
    SeriesStats stats = compute_stats(result.series, result.tau_formula_steps);

    SweepRow row;
    row.epsilon = eps;
    row.theta_numeric = result.theta_used;
    row.max_abs_deviation = stats.max_abs_deviation;
    if (!std::isnan(result.cos_theta_numeric)) {
      row.cos_dev_over_eps2 =
          std::abs(result.cos_theta_numeric - result.cos_theta_asymptotic) / (eps * eps);
    }
    row.tau_formula_steps = result.tau_formula_steps;
    row.tau_simulated_steps = result.tau_simulated_steps;

    if (!rows.empty()) {
      const SweepRow& prev = rows.back();
      double eps_ratio = prev.epsilon / eps;
      if (row.max_abs_deviation > 0.0) {
        row.deviation_ratio = prev.max_abs_deviation / row.max_abs_deviation;
        row.deviation_ok = row.deviation_ratio >= 0.75 * eps_ratio &&
                           row.deviation_ratio <= 1.5 * eps_ratio;
      }
      if (row.cos_dev_over_eps2 > 0.0 && prev.cos_dev_over_eps2 > 0.0) {
        row.cos_ratio = prev.cos_dev_over_eps2 / row.cos_dev_over_eps2;
        row.cos_ok = row.cos_ratio >= 0.25 && row.cos_ratio <= 4.0;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "eps,theta,max_abs_deviation,cos_dev_over_eps2,tau_formula,tau_simulated,"
         "deviation_ratio,cos_ratio,deviation_ok,cos_ok\n";
  for (const SweepRow& row : rows) {
    out << format_double(row.epsilon) << ',' << format_double(row.theta_numeric) << ','
        << format_double(row.max_abs_deviation) << ','
        << format_double(row.cos_dev_over_eps2) << ',' << row.tau_formula_steps << ','
        << row.tau_simulated_steps << ',' << format_double(row.deviation_ratio) << ','
        << format_double(row.cos_ratio) << ',' << (row.deviation_ok ? 1 : 0) << ','
        << (row.cos_ok ? 1 : 0) << '\n';
  }
}

}  // namespace bridgewalk
