#include "mellg/fem.hpp"

#include <cmath>

namespace mellg {

NodalField nodal_interpolate(const Mesh& mesh, const VecFieldFn& fn) {
  NodalField f = NodalField::Zero(3 * mesh.node_count());
  if (!fn) return f;
  for (int z = 0; z < mesh.node_count(); ++z) node(f, z) = fn(mesh.nodes[z]);
  return f;
}

NodalField hot_field(const Mesh& mesh, std::uint64_t seed) {
  Rng rng(seed);
  NodalField f = NodalField::Zero(3 * mesh.node_count());
  for (int z = 0; z < mesh.node_count(); ++z) {
    Vec3 v = rng.cube_vec();
    while (v.norm() < 1e-6) v = rng.cube_vec();
    node(f, z) = v / v.norm();
  }
  return f;
}

NodalField nodal_project(const NodalField& f) {
  NodalField p = f;
  for (int z = 0; z < node_count(f); ++z) {
    double len = node(f, z).norm();
    if (len < 1.0 - 1e-12)
      throw ConstraintViolation(
          z, "nodal_project: |m| = " + std::to_string(len) + " < 1 at node " +
                 std::to_string(z));
    node(p, z) /= len;
  }
  return p;
}

NodalField normalize_nodal(const NodalField& f) {
  NodalField p = f;
  for (int z = 0; z < node_count(f); ++z) {
    double len = node(f, z).norm();
    if (!(len > 0))
      throw InvalidInput("normalize_nodal: zero vector at node " + std::to_string(z));
    node(p, z) /= len;
  }
  return p;
}

Eigen::VectorXd lumped_mass(const Mesh& mesh) {
  Eigen::VectorXd w3(3 * mesh.node_count());
  for (int z = 0; z < mesh.node_count(); ++z)
    w3.segment<3>(3 * z).setConstant(mesh.lumped_weight[z]);
  return w3;
}

SparseMatrix assemble_vector_laplacian(const Mesh& mesh) {
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(mesh.tet_count()) * 48);
  for (int k = 0; k < mesh.tet_count(); ++k) {
    const auto& tet = mesh.tets[k];
    const double vol = mesh.tet_volume[k];
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        double v = vol * mesh.tet_grad[k][a].dot(mesh.tet_grad[k][b]);
        for (int c = 0; c < 3; ++c) t.push_back({3 * tet[a] + c, 3 * tet[b] + c, v});
      }
  }
  return SparseMatrix::from_triplets(3 * mesh.node_count(), std::move(t));
}

SparseMatrix assemble_consistent_mass(const Mesh& mesh) {
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(mesh.tet_count()) * 48);
  for (int k = 0; k < mesh.tet_count(); ++k) {
    const auto& tet = mesh.tets[k];
    const double vol = mesh.tet_volume[k];
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        double v = vol * (a == b ? 0.1 : 0.05);
        for (int c = 0; c < 3; ++c) t.push_back({3 * tet[a] + c, 3 * tet[b] + c, v});
      }
  }
  return SparseMatrix::from_triplets(3 * mesh.node_count(), std::move(t));
}

SparseMatrix assemble_elastic_stiffness(const Mesh& mesh, const Tensor4d& C,
                                        const DirichletMask& mask) {
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(mesh.tet_count()) * 144);
  for (int k = 0; k < mesh.tet_count(); ++k) {
    const auto& tet = mesh.tets[k];
    const double vol = mesh.tet_volume[k];
    // eps(phi_b e_d) = sym(e_d (x) g_b); with C fully symmetric the
    // element entry is |K| (C : sym(e_d (x) g_b)) applied to g_a, row c.
    for (int b = 0; b < 4; ++b) {
      const Vec3 gb = mesh.tet_grad[k][b];
      for (int d = 0; d < 3; ++d) {
        Mat3 eps = Mat3::Zero();
        eps.row(d) += 0.5 * gb.transpose();
        eps.col(d) += 0.5 * gb;
        const Mat3 sig = contract(C, eps);
        for (int a = 0; a < 4; ++a) {
          const Vec3 rows = sig * mesh.tet_grad[k][a];
          for (int c = 0; c < 3; ++c)
            t.push_back({3 * tet[a] + c, 3 * tet[b] + d, vol * rows[c]});
        }
      }
    }
  }
  auto m = SparseMatrix::from_triplets(3 * mesh.node_count(), std::move(t));
  if (!mask.empty()) {
    std::vector<char> dof_mask(3 * mesh.node_count(), 0);
    for (int z = 0; z < mesh.node_count(); ++z)
      if (mask[z]) dof_mask[3 * z] = dof_mask[3 * z + 1] = dof_mask[3 * z + 2] = 1;
    m.eliminate(dof_mask);
  }
  return m;
}

Eigen::VectorXd assemble_loads(const Mesh& mesh, const VecFieldFn& f, const VecFieldFn& g) {
  Eigen::VectorXd load = Eigen::VectorXd::Zero(3 * mesh.node_count());
  if (f) {
    for (int k = 0; k < mesh.tet_count(); ++k) {
      const auto& tet = mesh.tets[k];
      Vec3 centroid = Vec3::Zero();
      for (int a = 0; a < 4; ++a) centroid += mesh.nodes[tet[a]];
      const Vec3 fk = f(centroid / 4.0) * (mesh.tet_volume[k] / 4.0);
      for (int a = 0; a < 4; ++a) load.segment<3>(3 * tet[a]) += fk;
    }
  }
  if (g) {
    for (const auto& bf : mesh.boundary_faces) {
      if (bf.region != Region::neumann) continue;
      const Vec3 centroid =
          (mesh.nodes[bf.nodes[0]] + mesh.nodes[bf.nodes[1]] + mesh.nodes[bf.nodes[2]]) / 3.0;
      const Vec3 gf = g(centroid) * (bf.area / 3.0);
      for (int z : bf.nodes) load.segment<3>(3 * z) += gf;
    }
  }
  return load;
}

Eigen::VectorXd applied_field_load(const Mesh& mesh, const VecFieldFn& h_ext) {
  Eigen::VectorXd load = Eigen::VectorXd::Zero(3 * mesh.node_count());
  if (!h_ext) return load;
  for (int k = 0; k < mesh.tet_count(); ++k) {
    const auto& tet = mesh.tets[k];
    Vec3 centroid = Vec3::Zero();
    for (int a = 0; a < 4; ++a) centroid += mesh.nodes[tet[a]];
    const Vec3 hk = h_ext(centroid / 4.0) * (mesh.tet_volume[k] / 4.0);
    for (int a = 0; a < 4; ++a) load.segment<3>(3 * tet[a]) += hk;
  }
  return load;
}

Eigen::VectorXd magnetostrain_load(const Mesh& mesh, const Tensor4d& C, const Tensor4d& Z,
                                   const NodalField& w) {
  Eigen::VectorXd load = Eigen::VectorXd::Zero(3 * mesh.node_count());
  std::vector<Mat3> eps_m(mesh.node_count());
  for (int z = 0; z < mesh.node_count(); ++z) eps_m[z] = magnetostrain(Z, node(w, z));

  for (int k = 0; k < mesh.tet_count(); ++k) {
    const auto& tet = mesh.tets[k];
    Mat3 avg = Mat3::Zero();
    for (int a = 0; a < 4; ++a) avg += eps_m[tet[a]];
    const Mat3 sig = contract(C, Mat3(avg / 4.0)) * mesh.tet_volume[k];
    for (int a = 0; a < 4; ++a)
      load.segment<3>(3 * tet[a]) += sig * mesh.tet_grad[k][a];
  }
  return load;
}

Eigen::VectorXd elastic_field_load(const Mesh& mesh, const Tensor4d& C, const Tensor4d& Z,
                                   double kappa, const NodalField& u,
                                   const NodalField& m_proj) {
  Eigen::VectorXd load = Eigen::VectorXd::Zero(3 * mesh.node_count());
  const Tensor4d Zt = transpose(Z);
  std::vector<Mat3> eps_m(mesh.node_count());
  for (int z = 0; z < mesh.node_count(); ++z) eps_m[z] = magnetostrain(Z, node(m_proj, z));
  const std::vector<Mat3> eps_u = element_strains(mesh, u);

  for (int k = 0; k < mesh.tet_count(); ++k) {
    const auto& tet = mesh.tets[k];
    const double wq = mesh.tet_volume[k] / 4.0;
    for (int a = 0; a < 4; ++a) {
      const int z = tet[a];
      const Mat3 sig = contract(C, Mat3(eps_u[k] - eps_m[z]));
      const Vec3 hm = 2.0 * kappa * (contract(Zt, sig) * node(m_proj, z));
      load.segment<3>(3 * z) += wq * hm;
    }
  }
  return load;
}

Eigen::VectorXd llg_rhs(const Mesh& mesh, const SparseMatrix& laplacian, const NodalField& m,
                        const NodalField& u, const Tensor4d& C, const Tensor4d& Z,
                        double kappa, const VecFieldFn& h_ext) {
  const NodalField m_proj = nodal_project(m);
  Eigen::VectorXd rhs = -(laplacian * m);
  rhs += elastic_field_load(mesh, C, Z, kappa, u, m_proj);
  if (h_ext) rhs += applied_field_load(mesh, h_ext);
  return rhs;
}

std::vector<Mat3> element_strains(const Mesh& mesh, const NodalField& u) {
  std::vector<Mat3> eps(mesh.tet_count());
  for (int k = 0; k < mesh.tet_count(); ++k) {
    const auto& tet = mesh.tets[k];
    Mat3 grad = Mat3::Zero();  // grad u, rows = components
    for (int a = 0; a < 4; ++a) grad += node(u, tet[a]) * mesh.tet_grad[k][a].transpose();
    eps[k] = 0.5 * (grad + grad.transpose());
  }
  return eps;
}

double l2_norm(const SparseMatrix& mass, const NodalField& f) {
  return std::sqrt(std::max(0.0, f.dot(mass * f)));
}

double h1_seminorm(const SparseMatrix& laplacian, const NodalField& f) {
  return std::sqrt(std::max(0.0, f.dot(laplacian * f)));
}

double lumped_norm(const Eigen::VectorXd& w3, const NodalField& f) {
  return std::sqrt(f.dot(w3.cwiseProduct(f)));
}

double constraint_l1(const Mesh& mesh, const NodalField& m) {
  double acc = 0;
  for (int z = 0; z < mesh.node_count(); ++z)
    acc += mesh.lumped_weight[z] * std::abs(node(m, z).squaredNorm() - 1.0);
  return acc;
}

}  // namespace mellg
