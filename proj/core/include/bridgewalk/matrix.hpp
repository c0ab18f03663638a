#pragma once

#include <cstddef>
#include <vector>

#include "bridgewalk/error.hpp"

namespace bridgewalk {

// Dense row-major real matrix, sized at construction.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols),
        data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill) {}

  static Matrix identity(int n);

  double& operator()(int r, int c) {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }
  double operator()(int r, int c) const {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const std::vector<double>& data() const { return data_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

Matrix multiply(const Matrix& a, const Matrix& b);
std::vector<double> multiply(const Matrix& a, const std::vector<double>& v);
Matrix transpose(const Matrix& a);
Matrix add_scaled(const Matrix& a, double s, const Matrix& b);  // a + s*b
double max_abs_diff(const Matrix& a, const Matrix& b);
double max_abs(const Matrix& a);
double off_diagonal_norm(const Matrix& a);  // Frobenius norm off the diagonal

// Eigen-decomposition of a real symmetric matrix.
struct EigenDecomposition {
  std::vector<double> values;  // descending
  Matrix vectors;              // column k pairs with values[k]; orthonormal
  int sweeps = 0;              // full cyclic sweeps spent

  std::vector<double> eigenvector(int k) const;
};

// Cyclic Jacobi rotations with a per-sweep rotation threshold.  Converged
// when the off-diagonal Frobenius norm drops below off_tolerance; throws
// Error(no_convergence) after max_sweeps sweeps.  Input must be symmetric
// (checked to 1e-12); callers pass structurally symmetric matrices.
EigenDecomposition jacobi_eigendecompose(Matrix a, double off_tolerance = 1e-12,
                                         int max_sweeps = 100);

}  // namespace bridgewalk
