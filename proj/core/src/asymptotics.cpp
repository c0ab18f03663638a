#include "bridgewalk/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace bridgewalk {

namespace {

void check_params(const TheoryParams& params) {
  if (params.a1 < 2 || params.a2 < 2) {
    throw std::invalid_argument("arc counts must be >= 2");
  }
  if (!(params.theta > 0.0)) {
    throw std::invalid_argument("theta must be positive");
  }
}

}  // namespace

double theta_asymptotic_value(int a1, int a2, double eps) {
  if (a1 < 2 || a2 < 2) throw std::invalid_argument("arc counts must be >= 2");
  if (!(eps > 0.0) || eps > 1.0) {
    throw std::invalid_argument("eps must lie in (0, 1]");
  }
  double c = 1.0 - (1.0 / a1 + 1.0 / a2) * eps;
  return std::acos(std::clamp(c, -1.0, 1.0));
}

TheoryPoint mu_theory(long t, const TheoryParams& params) {
  check_params(params);
  double a1 = params.a1, a2 = params.a2;
  double c = std::cos(static_cast<double>(t) * params.theta);
  TheoryPoint point;
  double u = (a1 + a2 * c) / (a1 + a2);
  double v = std::sqrt(a1 * a2) * (1.0 - c) / (a1 + a2);
  point.mu_h1 = u * u;
  point.mu_h2 = v * v;
  return point;
}

TheoryPoint mu_theory_equal_arcs(long t, const TheoryParams& params) {
  check_params(params);
  if (params.a1 != params.a2) {
    throw Error(errc::unequal_arc_counts,
                "specialization needs a1 == a2, got " + std::to_string(params.a1) +
                    " and " + std::to_string(params.a2));
  }
  double half = 0.5 * static_cast<double>(t) * params.theta;
  double c = std::cos(half), s = std::sin(half);
  TheoryPoint point;
  point.mu_h1 = c * c * c * c;
  point.mu_h2 = s * s * s * s;
  return point;
}

double effective_resistance(double a1, double a2) {
  if (!(a1 > 0.0) || !(a2 > 0.0)) {
    throw std::invalid_argument("arc counts must be positive");
  }
  return a1 * a2 / (a1 + a2);
}

long tau_formula(int a1, int a2, double eps) {
  if (a1 < 2 || a2 < 2) throw std::invalid_argument("arc counts must be >= 2");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  // Quarter period pi/theta with theta ~ sqrt(2 eps / R).
  double rate = (1.0 / a1 + 1.0 / a2) * eps;
  return static_cast<long>(std::floor(std::numbers::pi / std::sqrt(2.0 * rate)));
}

long tau_simulated(const ProbabilitySeries& series, long tau_formula_steps) {
  if (tau_formula_steps < 0) {
    throw std::invalid_argument("tau_formula_steps must be >= 0");
  }
  long horizon = series.horizon();
  if (horizon < 2 * tau_formula_steps) {
    throw Error(errc::horizon_too_short,
                "horizon " + std::to_string(horizon) + " cannot certify a peak near " +
                    std::to_string(tau_formula_steps) +
                    " (need >= " + std::to_string(2 * tau_formula_steps) + ")");
  }
  long window = std::min(horizon, 2 * tau_formula_steps + 10);
  long best = 0;
  double best_value = -1.0;
  for (long t = 0; t <= window; ++t) {
    if (series.samples[t].mu_h2 > best_value) {
      best_value = series.samples[t].mu_h2;
      best = t;
    }
  }
  return best;
}

void fill_theory(ProbabilitySeries& series, const TheoryParams& params) {
  check_params(params);
  const std::size_t count = series.samples.size();
  series.mu_h1_theory.resize(count);
  series.mu_h2_theory.resize(count);
  for (std::size_t t = 0; t < count; ++t) {
    TheoryPoint point = mu_theory(static_cast<long>(t), params);
    series.mu_h1_theory[t] = point.mu_h1;
    series.mu_h2_theory[t] = point.mu_h2;
  }
}

}  // namespace bridgewalk
