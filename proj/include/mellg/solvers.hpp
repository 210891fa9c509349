#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "mellg/sparse.hpp"
#include "mellg/types.hpp"

namespace mellg {

struct SolveResult {
  Eigen::VectorXd x;
  int iterations = 0;
  double residual = 0;                  // final relative (preconditioned) residual
  std::vector<double> history;          // one entry per iteration
};

/// Either ILU(0) factors or a diagonal; applied as z = M^{-1} r.
class Preconditioner {
 public:
  /// ILU(0) on the sparsity pattern of A; falls back to Jacobi with a
  /// warning on stderr if a zero pivot shows up.
  static Preconditioner ilu0(const SparseMatrix& a);
  static Preconditioner jacobi(const SparseMatrix& a);
  static Preconditioner identity(int n);

  void apply(const Eigen::VectorXd& r, Eigen::VectorXd& z) const;
  bool is_ilu() const { return mode_ == Mode::ilu; }

 private:
  enum class Mode { ilu, diag };
  Mode mode_ = Mode::diag;
  SparseMatrix lu_;
  std::vector<int> diag_ptr_;
  Eigen::VectorXd inv_diag_;
};

/// Jacobi-preconditioned conjugate gradients for SPD systems. Converges
/// when the preconditioned residual norm drops below tol relative to the
/// right-hand side; throws SolveError past maxit. `observer`, when set,
/// receives the iterate after every update (test hook).
SolveResult cg_solve(const SparseMatrix& a, const Eigen::VectorXd& b,
                     const Eigen::VectorXd& x0, double tol, int maxit,
                     const std::function<void(const Eigen::VectorXd&)>& observer = {});

/// Restarted GMRES, left-preconditioned. With no preconditioner given,
/// builds ILU(0) on `a`. A warm start equal to the solution returns with
/// zero iterations. Throws SolveError with the residual history on
/// breakdown or past maxit.
SolveResult gmres_solve(const SparseMatrix& a, const Eigen::VectorXd& b,
                        const Eigen::VectorXd& x0, double tol, int restart, int maxit,
                        const Preconditioner* precond = nullptr);

}  // namespace mellg
