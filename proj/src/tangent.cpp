#include "mellg/tangent.hpp"

#include <cmath>

namespace mellg {

TangentBasis tangent_basis(const NodalField& m) {
  const int n = node_count(m);
  TangentBasis basis;
  basis.t1.resize(n);
  basis.t2.resize(n);
  for (int z = 0; z < n; ++z) {
    const Vec3 mz = node(m, z);
    const double len = mz.norm();
    if (!(len > 0))
      throw InvalidInput("tangent_basis: zero magnetisation at node " + std::to_string(z));
    const Vec3 mh = mz / len;

    int axis = 0;
    double best = std::abs(mh[0]);
    for (int c = 1; c < 3; ++c)
      if (std::abs(mh[c]) < best) {
        best = std::abs(mh[c]);
        axis = c;
      }
    Vec3 e = Vec3::Zero();
    e[axis] = 1.0;

    Vec3 t1 = e - e.dot(mh) * mh;
    t1.normalize();
    basis.t1[z] = t1;
    basis.t2[z] = mh.cross(t1);
  }
  return basis;
}

ReducedSystem nullspace_reduce(const SparseMatrix& a, const Eigen::VectorXd& rhs,
                               const TangentBasis& basis) {
  const int n = basis.size();
  if (a.rows() != 3 * n)
    throw InvalidInput("nullspace_reduce: matrix is not 3x3-node-blocked");

  const auto& rp = a.row_ptr();
  const auto& cols = a.cols();
  const auto& val = a.values();

  std::vector<Triplet> t;
  t.reserve(val.size() / 2);

  std::vector<Mat3> blocks;
  std::vector<int> block_cols;
  for (int z = 0; z < n; ++z) {
    blocks.clear();
    block_cols.clear();
    // gather the 3x3 blocks of node-row z; CSR columns are sorted, so
    // blocks arrive in increasing column-node order
    for (int rc = 0; rc < 3; ++rc) {
      const int row = 3 * z + rc;
      for (int p = rp[row]; p < rp[row + 1]; ++p) {
        const int zc = cols[p] / 3;
        const int cc = cols[p] % 3;
        int slot = -1;
        for (int s = static_cast<int>(block_cols.size()) - 1; s >= 0; --s)
          if (block_cols[s] == zc) {
            slot = s;
            break;
          }
        if (slot < 0) {
          // keep block_cols sorted by insertion position
          slot = 0;
          while (slot < static_cast<int>(block_cols.size()) && block_cols[slot] < zc) ++slot;
          block_cols.insert(block_cols.begin() + slot, zc);
          blocks.insert(blocks.begin() + slot, Mat3::Zero());
        }
        blocks[slot](rc, cc) = val[p];
      }
    }

    Eigen::Matrix<double, 3, 2> tz;
    tz.col(0) = basis.t1[z];
    tz.col(1) = basis.t2[z];
    for (std::size_t s = 0; s < blocks.size(); ++s) {
      const int zc = block_cols[s];
      Eigen::Matrix<double, 3, 2> tc;
      tc.col(0) = basis.t1[zc];
      tc.col(1) = basis.t2[zc];
      const Eigen::Matrix2d red = tz.transpose() * blocks[s] * tc;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) t.push_back({2 * z + i, 2 * zc + j, red(i, j)});
    }
  }

  ReducedSystem sys;
  sys.matrix = SparseMatrix::from_triplets(2 * n, std::move(t));
  sys.rhs = nullspace_restrict(rhs, basis);
  return sys;
}

NodalField nullspace_expand(const Eigen::VectorXd& x, const TangentBasis& basis) {
  const int n = basis.size();
  NodalField v = NodalField::Zero(3 * n);
  for (int z = 0; z < n; ++z)
    node(v, z) = x[2 * z] * basis.t1[z] + x[2 * z + 1] * basis.t2[z];
  return v;
}

Eigen::VectorXd nullspace_restrict(const NodalField& f, const TangentBasis& basis) {
  const int n = basis.size();
  Eigen::VectorXd x(2 * n);
  for (int z = 0; z < n; ++z) {
    const Vec3 fz = node(f, z);
    x[2 * z] = basis.t1[z].dot(fz);
    x[2 * z + 1] = basis.t2[z].dot(fz);
  }
  return x;
}

}  // namespace mellg
