#pragma once

#include "bridgewalk/error.hpp"
#include "bridgewalk/walk.hpp"

namespace bridgewalk {

enum class ThetaSource { numeric, asymptotic };

// Inputs of the closed-form probability envelopes.  a1, a2 are the subgraph
// arc counts (each >= 2 and even by construction).
struct TheoryParams {
  int a1 = 0;
  int a2 = 0;
  double epsilon = 0.0;
  double theta = 0.0;  // resolved rotation angle
};

double theta_asymptotic_value(int a1, int a2, double eps);  // acos(1 - (1/a1 + 1/a2) eps)

struct TheoryPoint {
  double mu_h1 = 0.0;
  double mu_h2 = 0.0;
};

// Envelopes ((a1 + a2 cos(t theta)) / (a1 + a2))^2 and
// (sqrt(a1 a2) (1 - cos(t theta)) / (a1 + a2))^2.
TheoryPoint mu_theory(long t, const TheoryParams& params);

// cos^4 / sin^4 (t theta / 2) specialization; throws Error
// (unequal_arc_counts) when a1 != a2.
TheoryPoint mu_theory_equal_arcs(long t, const TheoryParams& params);

// Parallel combination a1 a2 / (a1 + a2); the transfer period scales with
// its square root.
double effective_resistance(double a1, double a2);

// floor(pi / sqrt(2 (1/a1 + 1/a2) eps)): the quarter period in steps.
long tau_formula(int a1, int a2, double eps);

// First t attaining the maximum of simulated mu_h2 over
// [0, min(horizon, 2 tau + 10)].  Requires horizon >= 2 * tau_formula_steps
// so the window provably contains a full peak (Error horizon_too_short).
long tau_simulated(const ProbabilitySeries& series, long tau_formula_steps);

// Fills the theory columns of a simulated series in place.
void fill_theory(ProbabilitySeries& series, const TheoryParams& params);

}  // namespace bridgewalk
