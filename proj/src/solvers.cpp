#include "mellg/solvers.hpp"

#include <cmath>
#include <cstdio>

namespace mellg {

Preconditioner Preconditioner::jacobi(const SparseMatrix& a) {
  Preconditioner p;
  p.mode_ = Mode::diag;
  Eigen::VectorXd d = a.diagonal();
  p.inv_diag_.resize(d.size());
  for (int i = 0; i < d.size(); ++i) p.inv_diag_[i] = (d[i] != 0.0) ? 1.0 / d[i] : 1.0;
  return p;
}

Preconditioner Preconditioner::identity(int n) {
  Preconditioner p;
  p.mode_ = Mode::diag;
  p.inv_diag_ = Eigen::VectorXd::Ones(n);
  return p;
}

Preconditioner Preconditioner::ilu0(const SparseMatrix& a) {
  const int n = a.rows();
  Preconditioner p;
  p.lu_ = a;
  p.diag_ptr_.assign(n, -1);

  const auto& rp = p.lu_.row_ptr();
  const auto& cols = p.lu_.cols();
  auto& val = p.lu_.values();

  for (int i = 0; i < n; ++i)
    for (int q = rp[i]; q < rp[i + 1]; ++q)
      if (cols[q] == i) p.diag_ptr_[i] = q;

  bool ok = true;
  for (int i = 0; i < n && ok; ++i) {
    if (p.diag_ptr_[i] < 0) {
      ok = false;
      break;
    }
    for (int q = rp[i]; q < rp[i + 1]; ++q) {
      const int j = cols[q];
      if (j >= i) break;
      const double dj = val[p.diag_ptr_[j]];
      if (dj == 0.0) {
        ok = false;
        break;
      }
      const double lij = val[q] / dj;
      val[q] = lij;
      // row_i -= lij * U-part of row_j, restricted to row_i's pattern
      int pj = p.diag_ptr_[j] + 1;
      int pi = q + 1;
      while (pj < rp[j + 1] && pi < rp[i + 1]) {
        if (cols[pj] == cols[pi]) {
          val[pi] -= lij * val[pj];
          ++pj;
          ++pi;
        } else if (cols[pj] < cols[pi]) {
          ++pj;
        } else {
          ++pi;
        }
      }
    }
    if (ok && val[p.diag_ptr_[i]] == 0.0) ok = false;
  }

  if (!ok) {
    std::fprintf(stderr, "mellg: warning: ILU(0) hit a zero pivot, using Jacobi instead\n");
    return jacobi(a);
  }
  p.mode_ = Mode::ilu;
  return p;
}

void Preconditioner::apply(const Eigen::VectorXd& r, Eigen::VectorXd& z) const {
  if (mode_ == Mode::diag) {
    z = inv_diag_.cwiseProduct(r);
    return;
  }
  const int n = lu_.rows();
  const auto& rp = lu_.row_ptr();
  const auto& cols = lu_.cols();
  const auto& val = lu_.values();
  z.resize(n);
  // L z = r, unit lower triangular
  for (int i = 0; i < n; ++i) {
    double acc = r[i];
    for (int q = rp[i]; q < diag_ptr_[i]; ++q) acc -= val[q] * z[cols[q]];
    z[i] = acc;
  }
  // U z = z
  for (int i = n - 1; i >= 0; --i) {
    double acc = z[i];
    for (int q = diag_ptr_[i] + 1; q < rp[i + 1]; ++q) acc -= val[q] * z[cols[q]];
    z[i] = acc / val[diag_ptr_[i]];
  }
}

SolveResult cg_solve(const SparseMatrix& a, const Eigen::VectorXd& b,
                     const Eigen::VectorXd& x0, double tol, int maxit,
                     const std::function<void(const Eigen::VectorXd&)>& observer) {
  SolveResult res;
  const int n = a.rows();
  if (b.norm() == 0.0) {
    res.x = Eigen::VectorXd::Zero(n);
    return res;
  }
  Preconditioner prec = Preconditioner::jacobi(a);

  Eigen::VectorXd zb;
  prec.apply(b, zb);
  const double norm_b = std::sqrt(b.dot(zb));

  res.x = (x0.size() == n) ? x0 : Eigen::VectorXd::Zero(n);
  Eigen::VectorXd r = b - a * res.x;
  Eigen::VectorXd z;
  prec.apply(r, z);
  double rz = r.dot(z);
  double rnorm = std::sqrt(std::max(0.0, rz));
  res.residual = rnorm / norm_b;
  if (res.residual <= tol) return res;

  Eigen::VectorXd p = z, ap;
  for (int it = 0; it < maxit; ++it) {
    a.multiply(p, ap);
    const double pap = p.dot(ap);
    if (pap <= 0.0)
      throw SolveError("cg: matrix is not positive definite", res.residual, res.history);
    const double alpha = rz / pap;
    res.x += alpha * p;
    r -= alpha * ap;
    prec.apply(r, z);
    const double rz_new = r.dot(z);
    rnorm = std::sqrt(std::max(0.0, rz_new));
    res.iterations = it + 1;
    res.residual = rnorm / norm_b;
    res.history.push_back(res.residual);
    if (observer) observer(res.x);
    if (res.residual <= tol) return res;
    p = z + (rz_new / rz) * p;
    rz = rz_new;
  }
  throw SolveError("cg: no convergence in " + std::to_string(maxit) +
                       " iterations, residual " + std::to_string(res.residual),
                   res.residual, res.history);
}

SolveResult gmres_solve(const SparseMatrix& a, const Eigen::VectorXd& b,
                        const Eigen::VectorXd& x0, double tol, int restart, int maxit,
                        const Preconditioner* precond) {
  SolveResult res;
  const int n = a.rows();
  if (b.norm() == 0.0) {
    res.x = Eigen::VectorXd::Zero(n);
    return res;
  }
  Preconditioner owned = precond ? Preconditioner::identity(0) : Preconditioner::ilu0(a);
  const Preconditioner& prec = precond ? *precond : owned;

  Eigen::VectorXd zb;
  prec.apply(b, zb);
  const double norm_b = zb.norm();
  if (norm_b == 0.0)
    throw SolveError("gmres: preconditioner annihilated the right-hand side", 1.0);

  res.x = (x0.size() == n) ? x0 : Eigen::VectorXd::Zero(n);
  const int m = std::max(1, restart);
  std::vector<Eigen::VectorXd> v(m + 1);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m + 1, m);
  Eigen::VectorXd cs(m), sn(m), g(m + 1);

  int total_it = 0;
  while (true) {
    Eigen::VectorXd r;
    prec.apply(b - a * res.x, r);
    double beta = r.norm();
    res.residual = beta / norm_b;
    if (res.residual <= tol) return res;
    if (total_it >= maxit) break;

    v[0] = r / beta;
    g.setZero();
    g[0] = beta;
    int j = 0;
    bool happy = false;
    for (; j < m && total_it < maxit; ++j, ++total_it) {
      Eigen::VectorXd w;
      prec.apply(a * v[j], w);
      for (int i = 0; i <= j; ++i) {  // modified Gram-Schmidt
        h(i, j) = w.dot(v[i]);
        w -= h(i, j) * v[i];
      }
      h(j + 1, j) = w.norm();

      for (int i = 0; i < j; ++i) {  // apply stored Givens rotations
        const double t = cs[i] * h(i, j) + sn[i] * h(i + 1, j);
        h(i + 1, j) = -sn[i] * h(i, j) + cs[i] * h(i + 1, j);
        h(i, j) = t;
      }
      const double denom = std::hypot(h(j, j), h(j + 1, j));
      if (denom == 0.0)
        throw SolveError("gmres: breakdown (zero Hessenberg column)", res.residual,
                         res.history);
      cs[j] = h(j, j) / denom;
      sn[j] = h(j + 1, j) / denom;
      h(j, j) = denom;
      g[j + 1] = -sn[j] * g[j];
      g[j] *= cs[j];

      res.iterations = total_it + 1;
      res.residual = std::abs(g[j + 1]) / norm_b;
      res.history.push_back(res.residual);

      if (h(j + 1, j) == 0.0) {  // exact solution inside the Krylov space
        happy = true;
        ++j;
        ++total_it;
        break;
      }
      v[j + 1] = w / h(j + 1, j);
      if (res.residual <= tol) {
        ++j;
        ++total_it;
        break;
      }
    }

    // update x from the j-dimensional least-squares solution
    Eigen::VectorXd y(j);
    for (int i = j - 1; i >= 0; --i) {
      double acc = g[i];
      for (int l = i + 1; l < j; ++l) acc -= h(i, l) * y[l];
      y[i] = acc / h(i, i);
    }
    for (int i = 0; i < j; ++i) res.x += y[i] * v[i];
    if (happy && res.residual <= tol) return res;
  }
  throw SolveError("gmres: no convergence in " + std::to_string(maxit) +
                       " iterations, residual " + std::to_string(res.residual),
                   res.residual, res.history);
}

}  // namespace mellg
