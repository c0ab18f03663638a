#include "bridgewalk/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace bridgewalk {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
  Matrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

std::vector<double> multiply(const Matrix& a, const std::vector<double>& v) {
  if (a.cols() != static_cast<int>(v.size())) {
    throw std::invalid_argument("matrix-vector shape mismatch");
  }
  std::vector<double> out(a.rows(), 0.0);
  for (int i = 0; i < a.rows(); ++i) {
    double acc = 0.0;
    for (int j = 0; j < a.cols(); ++j) acc += a(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

Matrix transpose(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

Matrix add_scaled(const Matrix& a, double s, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("matrix shape mismatch");
  }
  Matrix out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + s * b(i, j);
  return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("matrix shape mismatch");
  }
  double worst = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  return worst;
}

double max_abs(const Matrix& a) {
  double worst = 0.0;
  for (double x : a.data()) worst = std::max(worst, std::abs(x));
  return worst;
}

double off_diagonal_norm(const Matrix& a) {
  double sum = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j) sum += a(i, j) * a(i, j);
  return std::sqrt(sum);
}

std::vector<double> EigenDecomposition::eigenvector(int k) const {
  std::vector<double> v(vectors.rows());
  for (int i = 0; i < vectors.rows(); ++i) v[i] = vectors(i, k);
  return v;
}

EigenDecomposition jacobi_eigendecompose(Matrix a, double off_tolerance,
                                         int max_sweeps) {
  if (a.rows() != a.cols()) throw std::invalid_argument("matrix must be square");
  const int n = a.rows();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(a(i, j) - a(j, i)) > 1e-12) {
        throw std::invalid_argument("matrix must be symmetric");
      }
    }
  }

  Matrix v = Matrix::identity(n);
  int sweeps = 0;
  double off = off_diagonal_norm(a);
  while (off > off_tolerance) {
    if (sweeps >= max_sweeps) {
      throw Error(errc::no_convergence,
                  "off-diagonal norm " + std::to_string(off) + " after " +
                      std::to_string(sweeps) + " sweeps");
    }
    // Rotating away only entries above a shrinking threshold keeps each sweep
    // effective on the dominant couplings first.
    double threshold = off / (n * std::sqrt(2.0));
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = a(p, q);
        if (std::abs(apq) <= threshold || apq == 0.0) continue;
        double diff = a(q, q) - a(p, p);
        // tan of the rotation that zeroes a(p,q), smaller root for stability.
        double t;
        if (std::abs(apq) < std::abs(diff) * 1e-36) {
          t = apq / diff;
        } else {
          double phi = diff / (2.0 * apq);
          t = 1.0 / (std::abs(phi) + std::sqrt(phi * phi + 1.0));
          if (phi < 0.0) t = -t;
        }
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        double tau = s / (1.0 + c);

        double app = a(p, p), aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (int i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          double aip = a(i, p), aiq = a(i, q);
          a(i, p) = aip - s * (aiq + tau * aip);
          a(p, i) = a(i, p);
          a(i, q) = aiq + s * (aip - tau * aiq);
          a(q, i) = a(i, q);
        }
        for (int i = 0; i < n; ++i) {
          double vip = v(i, p), viq = v(i, q);
          v(i, p) = vip - s * (viq + tau * vip);
          v(i, q) = viq + s * (vip - tau * viq);
        }
      }
    }
    ++sweeps;
    off = off_diagonal_norm(a);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&a](int i, int j) { return a(i, i) > a(j, j); });

  EigenDecomposition result;
  result.sweeps = sweeps;
  result.values.resize(n);
  result.vectors = Matrix(n, n);
  for (int k = 0; k < n; ++k) {
    result.values[k] = a(order[k], order[k]);
    for (int i = 0; i < n; ++i) result.vectors(i, k) = v(i, order[k]);
  }
  return result;
}

}  // namespace bridgewalk
