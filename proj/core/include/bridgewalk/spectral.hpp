#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "bridgewalk/graph.hpp"
#include "bridgewalk/matrix.hpp"

namespace bridgewalk {

// Absolute tolerance used to cluster eigenvalues around the second-largest
// one: far above the eigensolver's 1e-12 accuracy, far below every genuine
// spectral gap exercised by the test corpus.
inline constexpr double kClusterTolerance = 1e-9;

// Vertex-side transition matrix: W[x][y] = p_eps(arc x->y), rows sum to 1.
Matrix build_transition_matrix(const BridgedGraph& g, double eps);

// Symmetric similar form w(x,y)/sqrt(m(x) m(y)); shares W's spectrum.
Matrix build_symmetrized_matrix(const BridgedGraph& g, double eps);

// First-order split W(eps) = W0 + eps*W1 + O(eps^2).  W0 is the disconnected
// walk; W1 moves mass from boundary vertices onto the bridge.
std::pair<Matrix, Matrix> split_perturbation(const BridgedGraph& g);

// Restriction of the first-order term to the span of the two subgraph
// indicator vectors (projected by the stationary distributions); its nonzero
// eigenvalue has the closed form -(1/a1 + 1/a2).
struct ReducedPerturbation {
  double lambda1 = 0.0;        // computed numerically from the 2x2 action
  double lambda1_closed = 0.0; // -(1/a1 + 1/a2)
  double action[2][2] = {};    // on the basis {1_V1, 1_V2}
  double eigvec[2] = {};       // eigenvector of lambda1 in that basis
};
ReducedPerturbation reduced_eigenvalue(const BridgedGraph& g);

// Full symmetrized vertex spectrum plus the rotation angle: cos(theta) is the
// largest eigenvalue strictly below 1 - 1e-12.  Throws Error
// (degenerate_top_eigenvalue) when eigenvalue 1 is not simple (eps = 0).
struct ThetaReport {
  double cos_theta_numeric = 0.0;
  double theta_numeric = 0.0;
  double cos_theta_asymptotic = 0.0;  // 1 - (1/a1 + 1/a2) eps
  double theta_asymptotic = 0.0;
  std::vector<double> eigenvalues;          // full spectrum, descending
  std::vector<double> cluster;              // eigenvalues within kClusterTolerance of cos_theta_numeric
  std::vector<double> vertex_eigenvector;   // unit W(eps)-eigenvector f for cos_theta_numeric

  bool simple() const { return cluster.size() == 1; }
};
ThetaReport theta(const BridgedGraph& g, double eps);

double cos_theta_asymptotic(const BridgedGraph& g, double eps);

struct ArcEigenpair {
  std::complex<double> value;
  std::vector<std::complex<double>> vector;  // unit norm
  double residual = 0.0;                     // l2 norm of U psi - value psi
};

struct ArcLift {
  ArcEigenpair plus;   // exp(+i theta)
  ArcEigenpair minus;  // exp(-i theta)
};

// Exact spectral-mapping lift of a vertex eigenpair (cos_theta, f) of W(eps)
// to the arc eigenpairs for exp(+-i theta):
//   psi(a) = sqrt(p(rev a)) g(terminal(a)) - e^{i theta} sqrt(p(a)) g(origin(a))
// with g = sqrt(m) f.  Throws Error(eigen_residual_too_large) when
// |W f - cos_theta f| > 1e-9 |f|, so garbage input cannot silently lift.
ArcLift lift_to_arc(const BridgedGraph& g, double eps, double cos_theta,
                    const std::vector<double>& f);

// Exact eigenvalue-1 arc eigenvector psi(a) = sqrt(w(a)), unit-normalized.
std::vector<double> unit_arc_eigenvector(const BridgedGraph& g, double eps);

// Flat companion: 1/sqrt(a1+a2) on subgraph arcs, 0 on the bridge pair.
std::vector<double> flat_arc_vector(const BridgedGraph& g);

// Closed-form region-constant approximation of the exp(+-i theta) arc
// eigenvector: proportional to -a2 on arcs ending in V1 and +a1 on arcs
// ending in V2 (bridge arcs classified by terminal), scaled by
// (1 - e^{+-i theta}) / (sqrt(2 a1 a2 (a1+a2)) sin theta).  Not normalized.
std::vector<std::complex<double>> region_constant_arc_vector(
    const BridgedGraph& g, double theta_value, int sign);

// Initial-state overlaps of the three slow arc eigenvectors against their
// closed forms sqrt(a1/(a1+a2)) and sqrt(a2/(2(a1+a2))).
struct OverlapReport {
  double unit_numeric = 0.0;
  double unit_closed = 0.0;
  double theta_plus_numeric = 0.0;
  double theta_minus_numeric = 0.0;
  double theta_closed = 0.0;
  double sum_squares = 0.0;  // over the three numeric overlaps
};
OverlapReport overlaps(const BridgedGraph& g, double eps);

// Dense arc-side operators, assembled entrywise; used to cross-check the
// matrix-free engine and nothing else.
Matrix dense_shift_matrix(const BridgedGraph& g);
Matrix dense_boundary_matrix(const BridgedGraph& g, double eps);   // |V| x |A|
Matrix dense_evolution_matrix(const BridgedGraph& g, double eps);  // S (2 d^T d - I)

}  // namespace bridgewalk
