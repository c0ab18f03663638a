#include "bridgewalk/walk.hpp"

#include <cmath>
#include <string>

namespace bridgewalk {

double WalkState::norm() const {
  double sum = 0.0;
  for (const amplitude& z : amplitudes) sum += std::norm(z);
  return std::sqrt(sum);
}

WalkOperator::WalkOperator(const BridgedGraph& g, double eps)
    : arc_count_(g.arc_count()),
      vertex_count_(g.vertex_count),
      a1_(g.a1),
      a2_(g.a2),
      eps_(eps) {
  if (eps < 0.0 || eps > 1.0) {
    throw std::invalid_argument("eps must lie in [0, 1]");
  }
  terminal_.resize(arc_count_);
  inverse_ = g.inverse;
  sqrt_p_.resize(arc_count_);
  sqrt_p_rev_.resize(arc_count_);
  for (int a = 0; a < arc_count_; ++a) {
    terminal_[a] = g.arcs[a].terminal;
    sqrt_p_[a] = std::sqrt(g.transition_prob(a, eps));
    sqrt_p_rev_[a] = std::sqrt(g.transition_prob(g.inverse[a], eps));
  }
}

WalkState WalkOperator::initial_state() const {
  WalkState state;
  state.amplitudes.assign(arc_count_, amplitude(0.0));
  double value = 1.0 / std::sqrt(static_cast<double>(a1_));
  for (int a = 0; a < a1_; ++a) state.amplitudes[a] = value;
  state.epsilon = eps_;
  state.time = 0;
  return state;
}

void WalkOperator::step(WalkState& state) const {
  if (static_cast<int>(state.amplitudes.size()) != arc_count_) {
    throw Error(errc::length_mismatch,
                "state has " + std::to_string(state.amplitudes.size()) +
                    " amplitudes, operator expects " + std::to_string(arc_count_));
  }
  if (state.epsilon != eps_) {
    throw std::invalid_argument("state built for a different eps");
  }
  state.amplitudes = apply(state.amplitudes);
  ++state.time;
}

std::vector<amplitude> WalkOperator::apply(const std::vector<amplitude>& psi) const {
  if (static_cast<int>(psi.size()) != arc_count_) {
    throw Error(errc::length_mismatch,
                "vector has " + std::to_string(psi.size()) +
                    " amplitudes, operator expects " + std::to_string(arc_count_));
  }
  // Reflection through the arrival subspace, then arc reversal:
  //   s(x)    = sum over arcs b into x of sqrt(p(rev b)) psi(b)
  //   phi(a)  = 2 sqrt(p(rev a)) s(terminal(a)) - psi(a)
  //   out(a)  = phi(rev a)
  std::vector<amplitude> vertex_sum(vertex_count_, amplitude(0.0));
  for (int a = 0; a < arc_count_; ++a) {
    vertex_sum[terminal_[a]] += sqrt_p_rev_[a] * psi[a];
  }
  std::vector<amplitude> out(arc_count_);
  for (int a = 0; a < arc_count_; ++a) {
    int rev = inverse_[a];
    out[a] = 2.0 * sqrt_p_rev_[rev] * vertex_sum[terminal_[rev]] - psi[rev];
  }
  return out;
}

ProbabilitySeries WalkOperator::evolve(long horizon) const {
  if (horizon < 0) throw std::invalid_argument("horizon must be >= 0");
  ProbabilitySeries series;
  series.samples.reserve(horizon + 1);
  WalkState state = initial_state();
  series.samples.push_back(probabilities(state));
  for (long t = 1; t <= horizon; ++t) {
    step(state);
    series.samples.push_back(probabilities(state));
  }
  return series;
}

ProbabilityTriple WalkOperator::probabilities(const WalkState& state) const {
  if (static_cast<int>(state.amplitudes.size()) != arc_count_) {
    throw Error(errc::length_mismatch, "state size does not match arc count");
  }
  ProbabilityTriple triple;
  for (int a = 0; a < a1_; ++a) triple.mu_h1 += std::norm(state.amplitudes[a]);
  for (int a = a1_; a < a1_ + a2_; ++a) triple.mu_h2 += std::norm(state.amplitudes[a]);
  for (int a = a1_ + a2_; a < arc_count_; ++a) {
    triple.mu_bridge += std::norm(state.amplitudes[a]);
  }
  return triple;
}

WalkState initial_state(const BridgedGraph& g, double eps) {
  return WalkOperator(g, eps).initial_state();
}

void step(WalkState& state, const BridgedGraph& g) {
  WalkOperator(g, state.epsilon).step(state);
}

ProbabilitySeries evolve(const BridgedGraph& g, double eps, long horizon) {
  return WalkOperator(g, eps).evolve(horizon);
}

double region_probability(const WalkState& state, const BridgedGraph& g,
                          Region region) {
  if (static_cast<int>(state.amplitudes.size()) != g.arc_count()) {
    throw Error(errc::length_mismatch, "state size does not match arc count");
  }
  double sum = 0.0;
  for (int a = 0; a < g.arc_count(); ++a) {
    if (g.arc_region(a) == region) sum += std::norm(state.amplitudes[a]);
  }
  return sum;
}

}  // namespace bridgewalk
