#pragma once

#include <stdexcept>
#include <string>

namespace bridgewalk {

// Failure codes for contract violations that callers may want to branch on.
// Programming errors (out-of-range indices, bad call arguments) throw
// std::invalid_argument instead.
enum class errc {
  self_loop,
  duplicate_edge,
  disconnected,
  no_edges,
  bad_vertex,
  too_small,
  random_graph_retries_exhausted,
  bad_boundary_vertex,
  length_mismatch,
  no_convergence,
  degenerate_top_eigenvalue,
  eigen_residual_too_large,
  unequal_arc_counts,
  horizon_too_short,
  parse_error,
  io_error,
};

constexpr const char* errc_name(errc code) {
  switch (code) {
    case errc::self_loop: return "self_loop";
    case errc::duplicate_edge: return "duplicate_edge";
    case errc::disconnected: return "disconnected";
    case errc::no_edges: return "no_edges";
    case errc::bad_vertex: return "bad_vertex";
    case errc::too_small: return "too_small";
    case errc::random_graph_retries_exhausted: return "random_graph_retries_exhausted";
    case errc::bad_boundary_vertex: return "bad_boundary_vertex";
    case errc::length_mismatch: return "length_mismatch";
    case errc::no_convergence: return "no_convergence";
    case errc::degenerate_top_eigenvalue: return "degenerate_top_eigenvalue";
    case errc::eigen_residual_too_large: return "eigen_residual_too_large";
    case errc::unequal_arc_counts: return "unequal_arc_counts";
    case errc::horizon_too_short: return "horizon_too_short";
    case errc::parse_error: return "parse_error";
    case errc::io_error: return "io_error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace bridgewalk
