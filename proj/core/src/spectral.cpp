#include "bridgewalk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bridgewalk/walk.hpp"

namespace bridgewalk {

namespace {

double vector_norm(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}

double complex_norm(const std::vector<std::complex<double>>& v) {
  double sum = 0.0;
  for (const auto& z : v) sum += std::norm(z);
  return std::sqrt(sum);
}

}  // namespace

Matrix build_transition_matrix(const BridgedGraph& g, double eps) {
  Matrix w(g.vertex_count, g.vertex_count);
  for (int a = 0; a < g.arc_count(); ++a) {
    w(g.arcs[a].origin, g.arcs[a].terminal) = g.transition_prob(a, eps);
  }
  return w;
}

Matrix build_symmetrized_matrix(const BridgedGraph& g, double eps) {
  Matrix w(g.vertex_count, g.vertex_count);
  for (int a = 0; a < g.arc_count(); ++a) {
    int x = g.arcs[a].origin, y = g.arcs[a].terminal;
    w(x, y) = g.weight(a, eps) /
              std::sqrt(g.weighted_degree(x, eps) * g.weighted_degree(y, eps));
  }
  return w;
}

std::pair<Matrix, Matrix> split_perturbation(const BridgedGraph& g) {
  Matrix w0(g.vertex_count, g.vertex_count);
  Matrix w1(g.vertex_count, g.vertex_count);
  for (int a = 0; a < g.arc_count(); ++a) {
    int x = g.arcs[a].origin, y = g.arcs[a].terminal;
    double deg = g.degree[x];
    if (g.arc_region(a) == Region::bridge) {
      // Bridge mass enters only at first order: eps / (deg + eps).
      w1(x, y) = 1.0 / deg;
    } else {
      w0(x, y) = 1.0 / deg;
      if (g.is_boundary(x)) {
        // 1/(deg + eps) = 1/deg - eps/deg^2 + O(eps^2).
        w1(x, y) = -1.0 / (deg * deg);
      }
    }
  }
  return {std::move(w0), std::move(w1)};
}

ReducedPerturbation reduced_eigenvalue(const BridgedGraph& g) {
  auto [w0, w1] = split_perturbation(g);
  (void)w0;
  const int n = g.vertex_count;
  const int n1 = g.h1.vertex_count;
  const double a1 = g.a1, a2 = g.a2;

  // Block projector: |1_Vj><pi_j| with pi_j(x) = degree(x) / aj.
  std::vector<double> pi1(n, 0.0), pi2(n, 0.0);
  for (int v = 0; v < n; ++v) {
    if (v < n1) {
      pi1[v] = g.degree[v] / a1;
    } else {
      pi2[v] = g.degree[v] / a2;
    }
  }
  auto project = [&](const std::vector<double>& v) {
    double c1 = 0.0, c2 = 0.0;
    for (int i = 0; i < n; ++i) {
      c1 += pi1[i] * v[i];
      c2 += pi2[i] * v[i];
    }
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = (i < n1) ? c1 : c2;
    return out;
  };

  ReducedPerturbation result;
  result.lambda1_closed = -(1.0 / a1 + 1.0 / a2);

  // Images of the two indicator basis vectors under Pi W1 Pi, read off in
  // that basis again via the pi projections.
  for (int basis = 0; basis < 2; ++basis) {
    std::vector<double> e(n, 0.0);
    for (int i = 0; i < n; ++i) {
      if ((i < n1) == (basis == 0)) e[i] = 1.0;
    }
    std::vector<double> image = project(multiply(w1, project(e)));
    result.action[0][basis] = image[0];        // coefficient on 1_V1
    result.action[1][basis] = image[n - 1];    // coefficient on 1_V2
  }

  // 2x2 eigenvalues are 0 and trace; the nonzero one carries the slow mode.
  double trace = result.action[0][0] + result.action[1][1];
  result.lambda1 = trace;
  // Rows of (M - trace I) are parallel; the eigenvector is orthogonal to
  // whichever row is larger.
  double row0[2] = {result.action[0][0] - trace, result.action[0][1]};
  double row1[2] = {result.action[1][0], result.action[1][1] - trace};
  double* row = std::hypot(row0[0], row0[1]) >= std::hypot(row1[0], row1[1]) ? row0 : row1;
  result.eigvec[0] = -row[1];
  result.eigvec[1] = row[0];
  double scale = std::hypot(result.eigvec[0], result.eigvec[1]);
  if (scale > 0.0) {
    result.eigvec[0] /= scale;
    result.eigvec[1] /= scale;
  }
  return result;
}

double cos_theta_asymptotic(const BridgedGraph& g, double eps) {
  return 1.0 - (1.0 / g.a1 + 1.0 / g.a2) * eps;
}

ThetaReport theta(const BridgedGraph& g, double eps) {
  if (!(eps > 0.0) || eps > 1.0) {
    throw std::invalid_argument("theta needs eps in (0, 1]");
  }
  EigenDecomposition eig = jacobi_eigendecompose(build_symmetrized_matrix(g, eps));

  // Eigenvalue 1 is simple for a connected weighted graph; anything else
  // within 1e-12 of it means the bridge is effectively severed.
  int second = 0;
  while (second < static_cast<int>(eig.values.size()) &&
         eig.values[second] >= 1.0 - 1e-12) {
    ++second;
  }
  if (second != 1) {
    throw Error(errc::degenerate_top_eigenvalue,
                std::to_string(second) + " eigenvalues within 1e-12 of 1");
  }

  ThetaReport report;
  report.eigenvalues = eig.values;
  report.cos_theta_numeric = eig.values[second];
  report.theta_numeric = std::acos(std::clamp(report.cos_theta_numeric, -1.0, 1.0));
  report.cos_theta_asymptotic = cos_theta_asymptotic(g, eps);
  report.theta_asymptotic =
      std::acos(std::clamp(report.cos_theta_asymptotic, -1.0, 1.0));

  for (int k = second; k < static_cast<int>(eig.values.size()); ++k) {
    if (report.cos_theta_numeric - eig.values[k] <= kClusterTolerance) {
      report.cluster.push_back(eig.values[k]);
    } else {
      break;
    }
  }

  // Undo the similarity: f = D^{-1/2} g with D(x) = m(x) (the global scale
  // cancels in the normalization below).
  std::vector<double> f = eig.eigenvector(second);
  for (int v = 0; v < g.vertex_count; ++v) {
    f[v] /= std::sqrt(g.weighted_degree(v, eps));
  }
  double scale = vector_norm(f);
  for (double& x : f) x /= scale;
  report.vertex_eigenvector = std::move(f);
  return report;
}

ArcLift lift_to_arc(const BridgedGraph& g, double eps, double cos_theta,
                    const std::vector<double>& f) {
  if (static_cast<int>(f.size()) != g.vertex_count) {
    throw Error(errc::length_mismatch, "vertex vector size does not match");
  }
  Matrix w = build_transition_matrix(g, eps);
  std::vector<double> wf = multiply(w, f);
  double residual = 0.0;
  for (int v = 0; v < g.vertex_count; ++v) {
    double r = wf[v] - cos_theta * f[v];
    residual += r * r;
  }
  residual = std::sqrt(residual);
  double f_norm = vector_norm(f);
  if (residual > 1e-9 * f_norm) {
    throw Error(errc::eigen_residual_too_large,
                "vertex residual " + std::to_string(residual / f_norm) +
                    " exceeds 1e-9");
  }

  // g_w = sqrt(m) f turns a transition-matrix eigenvector into one of the
  // symmetrized form, which the spectral map lifts exactly.
  std::vector<double> gw(g.vertex_count);
  for (int v = 0; v < g.vertex_count; ++v) {
    gw[v] = f[v] * std::sqrt(g.weighted_degree(v, eps));
  }

  double theta_value = std::acos(std::clamp(cos_theta, -1.0, 1.0));
  WalkOperator walk(g, eps);

  ArcLift lift;
  for (int sign : {+1, -1}) {
    std::complex<double> phase = std::polar(1.0, sign * theta_value);
    std::vector<std::complex<double>> psi(g.arc_count());
    for (int a = 0; a < g.arc_count(); ++a) {
      double sp = std::sqrt(g.transition_prob(a, eps));
      double sp_rev = std::sqrt(g.transition_prob(g.inverse[a], eps));
      psi[a] = sp_rev * gw[g.arcs[a].terminal] - phase * sp * gw[g.arcs[a].origin];
    }
    double norm = complex_norm(psi);
    for (auto& z : psi) z /= norm;

    std::vector<std::complex<double>> upsi = walk.apply(psi);
    double r = 0.0;
    for (int a = 0; a < g.arc_count(); ++a) {
      r += std::norm(upsi[a] - phase * psi[a]);
    }
    ArcEigenpair& pair = sign > 0 ? lift.plus : lift.minus;
    pair.value = phase;
    pair.vector = std::move(psi);
    pair.residual = std::sqrt(r);
  }
  return lift;
}

std::vector<double> unit_arc_eigenvector(const BridgedGraph& g, double eps) {
  std::vector<double> psi(g.arc_count());
  for (int a = 0; a < g.arc_count(); ++a) psi[a] = std::sqrt(g.weight(a, eps));
  double norm = vector_norm(psi);
  for (double& x : psi) x /= norm;
  return psi;
}

std::vector<double> flat_arc_vector(const BridgedGraph& g) {
  std::vector<double> psi(g.arc_count(), 0.0);
  double value = 1.0 / std::sqrt(static_cast<double>(g.a1 + g.a2));
  for (int a = 0; a < g.a1 + g.a2; ++a) psi[a] = value;
  return psi;
}

std::vector<std::complex<double>> region_constant_arc_vector(
    const BridgedGraph& g, double theta_value, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +-1");
  double a1 = g.a1, a2 = g.a2;
  std::complex<double> phase = std::polar(1.0, sign * theta_value);
  std::complex<double> scale = (1.0 - phase) / (std::sqrt(2.0 * a1 * a2 * (a1 + a2)) *
                                                std::sin(theta_value));
  std::vector<std::complex<double>> psi(g.arc_count());
  for (int a = 0; a < g.arc_count(); ++a) {
    bool into_h1 = g.vertex_region(g.arcs[a].terminal) == Region::h1;
    psi[a] = scale * (into_h1 ? -a2 : a1);
  }
  return psi;
}

OverlapReport overlaps(const BridgedGraph& g, double eps) {
  ThetaReport report = theta(g, eps);
  if (!report.simple()) {
    throw Error(errc::degenerate_top_eigenvalue,
                "second eigenvalue is a cluster of " +
                    std::to_string(report.cluster.size()));
  }
  ArcLift lift = lift_to_arc(g, eps, report.cos_theta_numeric,
                             report.vertex_eigenvector);
  std::vector<double> unit = unit_arc_eigenvector(g, eps);
  WalkState psi0 = WalkOperator(g, eps).initial_state();

  OverlapReport out;
  double a1 = g.a1, a2 = g.a2;
  out.unit_closed = std::sqrt(a1 / (a1 + a2));
  out.theta_closed = std::sqrt(a2 / (2.0 * (a1 + a2)));

  for (int a = 0; a < g.arc_count(); ++a) {
    out.unit_numeric += unit[a] * psi0.amplitudes[a].real();
  }
  out.unit_numeric = std::abs(out.unit_numeric);

  std::complex<double> ip_plus = 0.0, ip_minus = 0.0;
  for (int a = 0; a < g.arc_count(); ++a) {
    std::complex<double> x = psi0.amplitudes[a];
    ip_plus += std::conj(lift.plus.vector[a]) * x;
    ip_minus += std::conj(lift.minus.vector[a]) * x;
  }
  out.theta_plus_numeric = std::abs(ip_plus);
  out.theta_minus_numeric = std::abs(ip_minus);
  out.sum_squares = out.unit_numeric * out.unit_numeric +
                    out.theta_plus_numeric * out.theta_plus_numeric +
                    out.theta_minus_numeric * out.theta_minus_numeric;
  return out;
}

Matrix dense_shift_matrix(const BridgedGraph& g) {
  Matrix s(g.arc_count(), g.arc_count());
  for (int a = 0; a < g.arc_count(); ++a) s(a, g.inverse[a]) = 1.0;
  return s;
}

Matrix dense_boundary_matrix(const BridgedGraph& g, double eps) {
  Matrix d(g.vertex_count, g.arc_count());
  for (int a = 0; a < g.arc_count(); ++a) {
    d(g.arcs[a].terminal, a) = std::sqrt(g.transition_prob(g.inverse[a], eps));
  }
  return d;
}

Matrix dense_evolution_matrix(const BridgedGraph& g, double eps) {
  const int n = g.arc_count();
  Matrix d = dense_boundary_matrix(g, eps);
  Matrix reflection = multiply(transpose(d), d);  // d^T d
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      reflection(i, j) = 2.0 * reflection(i, j) - (i == j ? 1.0 : 0.0);
    }
  }
  // Left-multiplying by the arc reversal permutes rows.
  Matrix u(n, n);
  for (int b = 0; b < n; ++b) {
    for (int a = 0; a < n; ++a) u(b, a) = reflection(g.inverse[b], a);
  }
  return u;
}

}  // namespace bridgewalk
