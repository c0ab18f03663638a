#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "bridgewalk/experiment.hpp"
#include "bridgewalk/walk.hpp"

using namespace bridgewalk;

namespace {

namespace fs = std::filesystem;

fs::path test_dir() {
  static fs::path dir = [] {
    fs::path p = fs::temp_directory_path() /
                 ("bridgewalk_test_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct CliResult {
  int exit_code;
  std::string output;
};

// Runs the installed CLI binary with stdout+stderr captured to a file.
CliResult run_cli(const std::string& args) {
  static int counter = 0;
  fs::path log = test_dir() / ("cli_" + std::to_string(counter++) + ".log");
  std::string command =
      std::string(BRIDGEWALK_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  int status = std::system(command.c_str());
  REQUIRE(status != -1);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, slurp(log)};
}

SimpleGraph spider(int arms, int arm_length) {
  std::vector<std::pair<int, int>> edges;
  for (int arm = 0; arm < arms; ++arm) {
    int previous = 0;
    for (int k = 0; k < arm_length; ++k) {
      int current = 1 + arm * arm_length + k;
      edges.emplace_back(std::min(previous, current), std::max(previous, current));
      previous = current;
    }
  }
  return build_simple_graph(1 + arms * arm_length, std::move(edges));
}

}  // namespace

TEST_CASE("graph descriptors cover every family") {
  CHECK(parse_graph_descriptor("complete:5", 0).arc_count() == 20);
  CHECK(parse_graph_descriptor("cycle:15", 0).edge_count() == 15);
  CHECK(parse_graph_descriptor("path:4", 0).edge_count() == 3);
  CHECK(parse_graph_descriptor("star:7", 0).degree(0) == 6);

  SimpleGraph fixed = parse_graph_descriptor("random:8:0.5:42", 0);
  CHECK(fixed.edges == random_connected_graph(8, 0.5, 42).edges);

  // Without an explicit seed the scenario seed drives the draw.
  SimpleGraph seeded = parse_graph_descriptor("random:8:0.5", 42);
  CHECK(seeded.edges == fixed.edges);

  fs::path edge_file = test_dir() / "tri:colon.edges";
  {
    std::ofstream out(edge_file);
    out << "# triangle\n0 1\n1 2\n0 2\n";
  }
  SimpleGraph from_file = parse_graph_descriptor("file:" + edge_file.string(), 0);
  CHECK(from_file.vertex_count == 3);
  CHECK(from_file.edge_count() == 3);

  for (const std::string& bad :
       {std::string("unknown:5"), std::string("complete"), std::string("complete:x"),
        std::string("complete:5:9"), std::string("random:8"),
        std::string("random:8:abc")}) {
    try {
      (void)parse_graph_descriptor(bad, 0);
      FAIL(("expected parse_error for " + bad));
    } catch (const Error& e) {
      CHECK(e.code() == errc::parse_error);
    }
  }
}

TEST_CASE("scenarios resolve horizons, angles and transfer peaks") {
  ScenarioConfig config;
  config.h1 = "complete:5";
  config.h2 = "complete:5";
  config.epsilon = 0.01;

  ScenarioResult result = run_scenario(config);
  CHECK(result.a1() == 20);
  CHECK(result.a2() == 20);
  CHECK(result.tau_formula_steps == 70);
  CHECK(result.horizon == 150);  // auto: 2 tau + 10
  CHECK(result.series.samples.size() == 151);
  CHECK(result.series.has_theory());
  CHECK(result.tau_simulated_steps == 70);
  CHECK(result.cos_theta_numeric == doctest::Approx(0.999003687311064).epsilon(1e-11));
  CHECK(result.theta_used == doctest::Approx(std::acos(result.cos_theta_numeric)));

  SeriesStats stats = compute_stats(result.series, result.tau_formula_steps);
  CHECK(stats.max_mu_h2 == doctest::Approx(0.99985936751173).epsilon(1e-9));
  CHECK(stats.argmax_mu_h2 == 70);
  CHECK(stats.max_closure_error < 1e-12);
  CHECK(stats.max_abs_deviation < 2e-3);
  CHECK(check_tau(result).pass);

  // Short horizons disable the peak certificate.
  config.steps = 30;
  ScenarioResult clipped = run_scenario(config);
  CHECK(clipped.horizon == 30);
  CHECK(clipped.tau_simulated_steps == -1);
  CHECK_FALSE(check_tau(clipped).pass);

  // Asymptotic angle source skips the eigensolve.
  config.steps = -1;
  config.theta_source = ThetaSource::asymptotic;
  ScenarioResult asym = run_scenario(config);
  CHECK(std::isnan(asym.cos_theta_numeric));
  CHECK(asym.theta_used == doctest::Approx(0.044725087168733448).epsilon(1e-15));

  config.theta_source = ThetaSource::numeric;
  config.epsilon = 1.5;
  try {
    (void)run_scenario(config);
    FAIL("expected parse_error");
  } catch (const Error& e) {
    CHECK(e.code() == errc::parse_error);
  }
}

TEST_CASE("unequal-block scenario matches the partial-transfer envelope") {
  ScenarioConfig config;
  config.h1 = "complete:5";
  config.h2 = "complete:3";
  config.epsilon = 0.01;
  config.steps = 104;

  ScenarioResult result = run_scenario(config);
  SeriesStats stats = compute_stats(result.series, result.tau_formula_steps);
  CHECK(stats.max_mu_h2 == doctest::Approx(0.710463257620421).epsilon(1e-9));
  CHECK(stats.argmax_mu_h2 == 48);
  CHECK(stats.min_mu_h1 == doctest::Approx(0.289048707199451).epsilon(1e-7));
  CHECK(stats.argmin_mu_h1 == 47);
  CHECK(std::abs(stats.max_mu_h2 - 480.0 / 676.0) < 0.02);
  CHECK(std::abs(stats.min_mu_h1 - 196.0 / 676.0) < 0.02);
  CHECK(check_tau(result).pass);  // peak at 48 vs formula 47, tolerance 2
}

TEST_CASE("degenerate second eigenvalue blocks the numeric angle source") {
  fs::path edge_file = test_dir() / "spider.edges";
  {
    std::ofstream out(edge_file);
    SimpleGraph sp = spider(3, 8);
    out << "# three arms of length eight\n";
    for (auto [u, v] : sp.edges) out << u << ' ' << v << '\n';
  }

  ScenarioConfig config;
  config.h1 = "file:" + edge_file.string();
  config.h2 = "complete:3";
  config.epsilon = 0.2;
  try {
    (void)run_scenario(config);
    FAIL("expected degenerate_top_eigenvalue");
  } catch (const Error& e) {
    CHECK(e.code() == errc::degenerate_top_eigenvalue);
  }

  // The asymptotic source does not need a simple eigenvalue.
  config.theta_source = ThetaSource::asymptotic;
  config.steps = 40;
  ScenarioResult result = run_scenario(config);
  CHECK(result.series.samples.size() == 41);
}

TEST_CASE("series CSV round-trips bit for bit") {
  ScenarioConfig config;
  config.h1 = "complete:5";
  config.h2 = "complete:3";
  config.epsilon = 0.01;
  config.steps = 104;
  ScenarioResult result = run_scenario(config);

  std::ostringstream out;
  write_series_csv(out, result.series);
  std::istringstream in(out.str());
  ProbabilitySeries replica = read_series_csv(in);

  REQUIRE(replica.samples.size() == result.series.samples.size());
  for (std::size_t t = 0; t < replica.samples.size(); ++t) {
    // Exact equality: 17 significant digits preserve every double.
    CHECK(replica.samples[t].mu_h1 == result.series.samples[t].mu_h1);
    CHECK(replica.samples[t].mu_h2 == result.series.samples[t].mu_h2);
    CHECK(replica.samples[t].mu_bridge == result.series.samples[t].mu_bridge);
    CHECK(replica.mu_h1_theory[t] == result.series.mu_h1_theory[t]);
    CHECK(replica.mu_h2_theory[t] == result.series.mu_h2_theory[t]);
  }

  // Stats recomputed from the file match the in-memory report exactly.
  SeriesStats original = compute_stats(result.series, result.tau_formula_steps);
  SeriesStats recomputed = compute_stats(replica, result.tau_formula_steps);
  CHECK(original.max_mu_h2 == recomputed.max_mu_h2);
  CHECK(original.argmax_mu_h2 == recomputed.argmax_mu_h2);
  CHECK(original.min_mu_h1 == recomputed.min_mu_h1);
  CHECK(original.max_abs_deviation == recomputed.max_abs_deviation);
  CHECK(original.max_closure_error == recomputed.max_closure_error);
  CHECK(original.tau_simulated_steps == recomputed.tau_simulated_steps);

  // Malformed inputs are rejected with parse errors.
  for (const std::string& bad :
       {std::string("wrong,header\n0,1,0,0,1,0\n"),
        std::string("t,mu_h1,mu_h2,mu_bridge,mu_h1_theory,mu_h2_theory\n0,1,0\n"),
        std::string("t,mu_h1,mu_h2,mu_bridge,mu_h1_theory,mu_h2_theory\n5,1,0,0,1,0\n"),
        std::string("t,mu_h1,mu_h2,mu_bridge,mu_h1_theory,mu_h2_theory\n0,x,0,0,1,0\n"),
        std::string("")}) {
    std::istringstream stream(bad);
    try {
      (void)read_series_csv(stream);
      FAIL("expected parse_error");
    } catch (const Error& e) {
      CHECK(e.code() == errc::parse_error);
    }
  }
}

TEST_CASE("scenario runs are deterministic") {
  ScenarioConfig config;
  config.h1 = "random:7:0.6";
  config.h2 = "complete:4";
  config.epsilon = 0.05;
  config.seed = 31;
  config.steps = 60;

  std::ostringstream first, second;
  write_series_csv(first, run_scenario(config).series);
  write_series_csv(second, run_scenario(config).series);
  CHECK(first.str() == second.str());
  CHECK(first.str().find("nan") == std::string::npos);
}

TEST_CASE("svg output is a self-contained plot") {
  ScenarioConfig config;
  config.h1 = "complete:5";
  config.h2 = "complete:5";
  config.epsilon = 0.01;
  config.steps = 150;
  ScenarioResult result = run_scenario(config);

  std::ostringstream out;
  write_series_svg(out, result.series, "pulsation");
  std::string svg = out.str();
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("pulsation") != std::string::npos);

  std::size_t polylines = 0;
  for (std::size_t pos = svg.find("<polyline"); pos != std::string::npos;
       pos = svg.find("<polyline", pos + 1)) {
    ++polylines;
  }
  CHECK(polylines == 4);  // two simulated curves and two envelopes
}

TEST_CASE("sweep certifies first-order decay and rejects bad grids") {
  ScenarioConfig config;
  config.h1 = "complete:5";
  config.h2 = "complete:5";

  std::vector<SweepRow> rows = run_sweep(config, {0.02, 0.01});
  REQUIRE(rows.size() == 2);
  CHECK(std::isnan(rows[0].deviation_ratio));
  CHECK(rows[1].deviation_ratio == doctest::Approx(1.99).epsilon(0.05));
  CHECK(rows[1].cos_ratio == doctest::Approx(0.9966).epsilon(0.01));
  CHECK(rows[1].deviation_ok);
  CHECK(rows[1].cos_ok);
  CHECK(rows[0].tau_formula_steps == 49);
  CHECK(rows[1].tau_formula_steps == 70);

  std::ostringstream out;
  write_sweep_csv(out, rows);
  std::string csv = out.str();
  CHECK(csv.find("eps,theta,max_abs_deviation") == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);

  for (const std::vector<double>& bad :
       {std::vector<double>{0.01}, std::vector<double>{0.01, 0.02},
        std::vector<double>{0.02, 0.02}}) {
    try {
      (void)run_sweep(config, bad);
      FAIL("expected parse_error");
    } catch (const Error& e) {
      CHECK(e.code() == errc::parse_error);
    }
  }
}

TEST_CASE("cli simulate writes artifacts and reports a pass") {
  fs::path csv = test_dir() / "run.csv";
  fs::path svg = test_dir() / "run.svg";
  CliResult result = run_cli(
      "simulate --h1 complete:5 --h2 complete:5 --eps 0.01 --steps 150 --out-csv " +
      csv.string() + " --out-svg " + svg.string());

  CHECK(result.exit_code == 0);
  CHECK(result.output.find("tau formula:    70") != std::string::npos);
  CHECK(result.output.find("verdict:        pass") != std::string::npos);

  std::ifstream csv_in(csv);
  ProbabilitySeries series = read_series_csv(csv_in);
  CHECK(series.samples.size() == 151);

  std::string svg_text = slurp(svg);
  CHECK(svg_text.rfind("<svg", 0) == 0);
  CHECK(svg_text.find("</svg>") != std::string::npos);
}

TEST_CASE("cli exit codes distinguish failure kinds") {
  // Honest rule failure: the formula misses the simulated peak at large eps
  // on sparse cycles.
  CliResult tau_fail = run_cli("tau --h1 cycle:15 --h2 cycle:15 --eps 0.3");
  CHECK(tau_fail.exit_code == 1);
  CHECK(tau_fail.output.find("verdict:        FAIL") != std::string::npos);

  CliResult tau_pass = run_cli("tau --h1 complete:6 --h2 cycle:15 --eps 0.01");
  CHECK(tau_pass.exit_code == 0);

  CHECK(run_cli("spectrum --h1 complete:5 --h2 complete:3 --eps 0.01").exit_code == 0);
  CHECK(run_cli("sweep --h1 complete:5 --h2 complete:5 --eps 0.02 0.01").exit_code == 0);

  // Usage errors: bad subcommand, bad flag value, bad descriptor, bad steps.
  CHECK(run_cli("bogus").exit_code == 2);
  CHECK(run_cli("simulate --eps 0").exit_code == 2);
  CHECK(run_cli("simulate --eps 2").exit_code == 2);
  CHECK(run_cli("simulate --h1 complete:1 --eps 0.01").exit_code == 2);
  CHECK(run_cli("simulate --steps -3").exit_code == 2);
  CHECK(run_cli("sweep --eps 0.01").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("cli reads config files and lets flags override them") {
  fs::path config_file = test_dir() / "scenario.cfg";
  {
    std::ofstream out(config_file);
    out << "h1=complete:5\n";
    out << "h2=complete:3\n";
    out << "eps=0.02\n";
    out << "steps=104\n";
  }

  CliResult from_config =
      run_cli("simulate --config " + config_file.string());
  CHECK(from_config.exit_code == 0);
  CHECK(from_config.output.find("complete:3") != std::string::npos);
  CHECK(from_config.output.find("eps:            0.02") != std::string::npos);

  CliResult overridden =
      run_cli("simulate --config " + config_file.string() + " --eps 0.01");
  CHECK(overridden.exit_code == 0);
  CHECK(overridden.output.find("eps:            0.01") != std::string::npos);
  CHECK(overridden.output.find("complete:3") != std::string::npos);
}

TEST_CASE("cli runs are byte-for-byte reproducible") {
  fs::path first = test_dir() / "first.csv";
  fs::path second = test_dir() / "second.csv";
  std::string args = "simulate --h1 random:7:0.6 --h2 cycle:5 --seed 9 --eps 0.05 "
                     "--steps 80 --out-csv ";
  CHECK(run_cli(args + first.string()).exit_code == 0);
  CHECK(run_cli(args + second.string()).exit_code == 0);
  CHECK(slurp(first) == slurp(second));
}
