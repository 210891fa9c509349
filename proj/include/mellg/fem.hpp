#pragma once

#include <functional>
#include <vector>

#include "mellg/mesh.hpp"
#include "mellg/sparse.hpp"
#include "mellg/tensor4.hpp"
#include "mellg/types.hpp"

namespace mellg {

using DirichletMask = std::vector<char>;

NodalField nodal_interpolate(const Mesh& mesh, const VecFieldFn& fn);

/// 'Hot' state: per node a vector drawn uniformly from [-1,1]^3,
/// redrawn while shorter than 1e-6, then normalised. Seeded LCG, so the
/// field is reproducible bit for bit.
NodalField hot_field(const Mesh& mesh, std::uint64_t seed);

/// Nodewise normalisation for fields known to satisfy |f(z)| >= 1
/// (tangent-plane iterates). Throws ConstraintViolation naming the first
/// offending node if |f(z)| < 1 - 1e-12.
NodalField nodal_project(const NodalField& f);

/// Unconditional nodewise normalisation used for initial data; only a
/// zero vector is rejected.
NodalField normalize_nodal(const NodalField& f);

/// Diagonal of the mass-lumped L2 product: w_z repeated per component.
Eigen::VectorXd lumped_mass(const Mesh& mesh);

/// Componentwise P1 stiffness (vector Laplacian), 3N x 3N.
SparseMatrix assemble_vector_laplacian(const Mesh& mesh);

/// Consistent P1 mass matrix, 3N x 3N.
SparseMatrix assemble_consistent_mass(const Mesh& mesh);

/// Linear-elastic stiffness <C:eps(phi), eps(psi)>; Dirichlet rows and
/// columns eliminated when `mask` is non-empty.
SparseMatrix assemble_elastic_stiffness(const Mesh& mesh, const Tensor4d& C,
                                        const DirichletMask& mask);

/// Load vector <f, psi> + <g, psi>_{Gamma_N}; f sampled per element
/// centroid, g per Neumann face centroid, both integrated exactly for
/// elementwise/facewise constant data.
Eigen::VectorXd assemble_loads(const Mesh& mesh, const VecFieldFn& f, const VecFieldFn& g);

/// Applied-field load <h_ext, phi>, exact for elementwise constant data.
Eigen::VectorXd applied_field_load(const Mesh& mesh, const VecFieldFn& h_ext);

/// Magnetostrain load <C : eps_m(w), eps(psi)> with eps_m taken from the
/// nodal values of w.
Eigen::VectorXd magnetostrain_load(const Mesh& mesh, const Tensor4d& C, const Tensor4d& Z,
                                   const NodalField& w);

/// Magnetoelastic field load <h_m[u, m_proj], phi>: the strain eps(u) is
/// elementwise constant, everything magnetisation-dependent is evaluated
/// at the nodes, and each element contributes |K|/4 per vertex.
Eigen::VectorXd elastic_field_load(const Mesh& mesh, const Tensor4d& C, const Tensor4d& Z,
                                   double kappa, const NodalField& u,
                                   const NodalField& m_proj);

/// Right-hand side of the tangent-plane step:
/// -<grad m, grad phi> + <h_m[u, Pi m], phi> + <h_ext, phi>.
Eigen::VectorXd llg_rhs(const Mesh& mesh, const SparseMatrix& laplacian, const NodalField& m,
                        const NodalField& u, const Tensor4d& C, const Tensor4d& Z,
                        double kappa, const VecFieldFn& h_ext);

/// Elementwise symmetric gradient of a P1 displacement field.
std::vector<Mat3> element_strains(const Mesh& mesh, const NodalField& u);

double l2_norm(const SparseMatrix& mass, const NodalField& f);
double h1_seminorm(const SparseMatrix& laplacian, const NodalField& f);
double lumped_norm(const Eigen::VectorXd& w3, const NodalField& f);

/// || I_h[|m|^2] - 1 ||_{L^1} under lumped quadrature: sum_z w_z ||m(z)|^2 - 1|.
double constraint_l1(const Mesh& mesh, const NodalField& m);

}  // namespace mellg
