#pragma once

#include <complex>
#include <vector>

#include "bridgewalk/graph.hpp"

namespace bridgewalk {

using amplitude = std::complex<double>;

// Arc-indexed wave function, tied to the eps it evolves under.
struct WalkState {
  std::vector<amplitude> amplitudes;
  double epsilon = 0.0;
  long time = 0;

  double norm() const;
};

// Probability mass by region: the two subgraph arc blocks and the bridge pair.
struct ProbabilityTriple {
  double mu_h1 = 0.0;
  double mu_h2 = 0.0;
  double mu_bridge = 0.0;

  double sum() const { return mu_h1 + mu_h2 + mu_bridge; }
};

// Per-step simulated region probabilities; the theory columns are filled by
// the experiment layer once a rotation angle is available (empty until then).
struct ProbabilitySeries {
  std::vector<ProbabilityTriple> samples;  // index = time step
  std::vector<double> mu_h1_theory;
  std::vector<double> mu_h2_theory;

  long horizon() const { return static_cast<long>(samples.size()) - 1; }
  bool has_theory() const { return !mu_h1_theory.empty(); }
};

// One-step evolution operator.  The sqrt transition factors are precomputed
// at construction; step() runs in O(arc_count) with no allocation beyond a
// per-call vertex scratch, so a const WalkOperator is safe to share across
// threads.
class WalkOperator {
 public:
  WalkOperator(const BridgedGraph& g, double eps);

  // Uniform positive amplitudes on the H1 arc block, zero elsewhere.
  WalkState initial_state() const;

  // In-place single step.  Throws Error(length_mismatch) when the state size
  // differs from the arc count and std::invalid_argument when the state was
  // built for a different eps.
  void step(WalkState& state) const;

  // Pure U * psi without WalkState bookkeeping.
  std::vector<amplitude> apply(const std::vector<amplitude>& psi) const;

  // Evolves the initial state through t = 0 .. horizon, recording the region
  // probabilities at every step.
  ProbabilitySeries evolve(long horizon) const;

  ProbabilityTriple probabilities(const WalkState& state) const;

  double epsilon() const { return eps_; }
  int arc_count() const { return arc_count_; }

 private:
  int arc_count_ = 0;
  int vertex_count_ = 0;
  int a1_ = 0, a2_ = 0;
  double eps_ = 0.0;
  std::vector<int> terminal_;
  std::vector<int> inverse_;
  std::vector<double> sqrt_p_;      // sqrt(p_eps(a))
  std::vector<double> sqrt_p_rev_;  // sqrt(p_eps(reversed a))
};

// Convenience wrappers; each call rebuilds the operator tables, so loops
// should hold a WalkOperator instead.
WalkState initial_state(const BridgedGraph& g, double eps);
void step(WalkState& state, const BridgedGraph& g);
ProbabilitySeries evolve(const BridgedGraph& g, double eps, long horizon);
double region_probability(const WalkState& state, const BridgedGraph& g, Region region);

}  // namespace bridgewalk
