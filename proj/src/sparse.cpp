#include "mellg/sparse.hpp"

#include <algorithm>

namespace mellg {

SparseMatrix SparseMatrix::from_triplets(int n, std::vector<Triplet> t) {
  std::sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  SparseMatrix m(n);
  m.cols_.reserve(t.size());
  m.values_.reserve(t.size());
  std::vector<int> count(n, 0);

  std::size_t p = 0;
  while (p < t.size()) {
    int r = t[p].row;
    int c = t[p].col;
    double v = 0;
    while (p < t.size() && t[p].row == r && t[p].col == c) v += t[p++].value;
    m.cols_.push_back(c);
    m.values_.push_back(v);
    ++count[r];
  }
  for (int i = 0; i < n; ++i) m.row_ptr_[i + 1] = m.row_ptr_[i] + count[i];
  return m;
}

double SparseMatrix::coeff(int i, int j) const {
  for (int p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
    if (cols_[p] == j) return values_[p];
  return 0.0;
}

void SparseMatrix::multiply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
  y.resize(n_);
  for (int i = 0; i < n_; ++i) {
    double acc = 0;
    for (int p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) acc += values_[p] * x[cols_[p]];
    y[i] = acc;
  }
}

Eigen::VectorXd SparseMatrix::operator*(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y;
  multiply(x, y);
  return y;
}

Eigen::VectorXd SparseMatrix::diagonal() const {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(n_);
  for (int i = 0; i < n_; ++i) d[i] = coeff(i, i);
  return d;
}

void SparseMatrix::eliminate(const std::vector<char>& constrained) {
  for (int i = 0; i < n_; ++i) {
    for (int p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
      int j = cols_[p];
      if (constrained[i] || constrained[j]) values_[p] = (i == j) ? 1.0 : 0.0;
    }
  }
}

SparseMatrix SparseMatrix::scaled_add(double a, const SparseMatrix& other, double b) const {
  std::vector<Triplet> t;
  t.reserve(values_.size() + other.values_.size());
  for (int i = 0; i < n_; ++i)
    for (int p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
      t.push_back({i, cols_[p], a * values_[p]});
  for (int i = 0; i < other.n_; ++i)
    for (int p = other.row_ptr_[i]; p < other.row_ptr_[i + 1]; ++p)
      t.push_back({i, other.cols_[p], b * other.values_[p]});
  return from_triplets(n_, std::move(t));
}

Eigen::MatrixXd SparseMatrix::dense() const {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) d(i, cols_[p]) = values_[p];
  return d;
}

}  // namespace mellg
