#pragma once

#include <Eigen/Core>
#include <vector>

#include "mellg/sparse.hpp"
#include "mellg/types.hpp"

namespace mellg {

/// Orthonormal tangent pair per node, both orthogonal to the nodal
/// magnetisation. Construction is deterministic: the seed axis is the
/// coordinate axis least aligned with m (lowest index on ties).
struct TangentBasis {
  std::vector<Vec3> t1;
  std::vector<Vec3> t2;
  int size() const { return static_cast<int>(t1.size()); }
};

TangentBasis tangent_basis(const NodalField& m);

/// Null-space reduction of a 3x3-node-block system to the tangent planes:
/// A_red = T^t A T (2N x 2N) and rhs_red = T^t rhs, with T the
/// block-diagonal matrix of tangent pairs.
struct ReducedSystem {
  SparseMatrix matrix;
  Eigen::VectorXd rhs;
};

ReducedSystem nullspace_reduce(const SparseMatrix& a, const Eigen::VectorXd& rhs,
                               const TangentBasis& basis);

/// Expands reduced coefficients back to a nodal field, v = T x; the
/// result is nodewise tangent by construction.
NodalField nullspace_expand(const Eigen::VectorXd& x, const TangentBasis& basis);

/// T^t f: projection of a nodal field onto the reduced coordinates.
Eigen::VectorXd nullspace_restrict(const NodalField& f, const TangentBasis& basis);

}  // namespace mellg
