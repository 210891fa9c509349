#pragma once

#include <Eigen/Core>
#include <vector>

#include "mellg/types.hpp"

namespace mellg {

struct Triplet {
  int row;
  int col;
  double value;
};

/// Square CSR matrix with sorted, duplicate-free column indices per row.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  explicit SparseMatrix(int n) : n_(n), row_ptr_(n + 1, 0) {}

  /// Builds from an unordered triplet list; duplicates are summed.
  static SparseMatrix from_triplets(int n, std::vector<Triplet> triplets);

  int rows() const { return n_; }
  const std::vector<int>& row_ptr() const { return row_ptr_; }
  const std::vector<int>& cols() const { return cols_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  double coeff(int i, int j) const;

  Eigen::VectorXd operator*(const Eigen::VectorXd& x) const;
  void multiply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const;

  Eigen::VectorXd diagonal() const;

  /// Row/column elimination for homogeneous Dirichlet conditions:
  /// constrained rows and columns are zeroed and the diagonal set to 1.
  void eliminate(const std::vector<char>& constrained);

  SparseMatrix scaled_add(double a, const SparseMatrix& other, double b) const;

  Eigen::MatrixXd dense() const;

 private:
  int n_ = 0;
  std::vector<int> row_ptr_;
  std::vector<int> cols_;
  std::vector<double> values_;
};

}  // namespace mellg
