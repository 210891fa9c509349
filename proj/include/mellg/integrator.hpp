#pragma once

#include <optional>
#include <vector>

#include "mellg/fem.hpp"
#include "mellg/material.hpp"
#include "mellg/mesh.hpp"
#include "mellg/reports.hpp"
#include "mellg/solvers.hpp"
#include "mellg/sparse.hpp"
#include "mellg/tangent.hpp"

namespace mellg {

/// Matrices and load vectors that do not change along the time loop.
struct Assemblies {
  SparseMatrix laplacian;       // componentwise P1 stiffness
  SparseMatrix mass;            // consistent mass, unconstrained
  SparseMatrix elastic_system;  // M + dt^2 <C:eps,eps>, Dirichlet-eliminated
  Eigen::VectorXd lumped;       // w_z per component
  Eigen::VectorXd load_f;
  Eigen::VectorXd load_g;
  Eigen::VectorXd load_hext;
  DirichletMask dirichlet;          // per node
  std::vector<char> dirichlet_dof;  // per scalar dof
};

Assemblies build_assemblies(const Mesh& mesh, const Params& params);

struct State {
  int step = 0;
  double t = 0;
  NodalField m;
  NodalField u;      // zero on Dirichlet nodes
  NodalField udot;   // d_t u; the initial velocity at step 0
  NodalField v_prev; // warm start for the tangent solve
  Eigen::VectorXd s; // per node: dt^2 sum of |v|^2 over past steps
};

/// m0 is interpolated then normalised nodewise (unit at every node);
/// u0 is interpolated and zeroed on Dirichlet nodes; udot0 interpolated.
State init_state(const Mesh& mesh, const VecFieldFn& m0, const VecFieldFn& u0,
                 const VecFieldFn& udot0, const DirichletMask& dirichlet);

/// Same, from an already sampled nodal magnetisation (hot states);
/// displacement and velocity start from zero.
State init_state_from_field(const Mesh& mesh, const NodalField& m0);

struct StepReport {
  int step = 0;
  double t = 0;  // time after the step
  NodalField v;
  int llg_iterations = 0;
  int elastic_iterations = 0;
  double wall_ms = 0;
  double max_tangency = 0;             // max_z |m(z) . v(z)| before the update
  double constraint_identity_err = 0;  // max_z | |m|^2 - 1 - s |
  double constraint_l1 = 0;
  double nodal_max = 0;
  Vec3 avg_m = Vec3::Zero();
  Vec3 avg_u = Vec3::Zero();
  EnergyBreakdown energy;  // after the step
  EnergyLawReport law;
  std::optional<EnergyBreakdown> hat_energy;  // projected-m elastic energy
};

/// Tangent-plane solve: computes the update v in the discrete tangent
/// space of m via the null-space reduction, GMRES + ILU(0), warm-started
/// from the previous update.
NodalField llg_substep(const Mesh& mesh, const Params& params, const Assemblies& assem,
                       const State& state, int* iterations = nullptr,
                       std::optional<Preconditioner>* frozen_ilu = nullptr);

/// m + dt v; nodewise |m_new|^2 = |m|^2 + dt^2 |v|^2 for tangent v.
NodalField magnetisation_update(const NodalField& m, const NodalField& v, double dt);

/// Implicit elastodynamics step: solves
/// (M + dt^2 K_C) u_new = dt^2 (magnetostrain + body + traction loads)
///                        + M (u + dt udot)
/// with Jacobi CG, then udot_new = (u_new - u)/dt.
std::pair<NodalField, NodalField> elastic_substep(const Mesh& mesh, const Params& params,
                                                  const Assemblies& assem,
                                                  const State& state,
                                                  const NodalField& m_new,
                                                  int* iterations = nullptr);

struct RunResult {
  State final_state;
  EnergyBreakdown initial_energy;
  double initial_l1 = 0;
  double initial_nodal_max = 0;
  Vec3 initial_avg_m = Vec3::Zero();
  Vec3 initial_avg_u = Vec3::Zero();
  std::vector<StepReport> steps;
};

using StepCallback = std::function<void(const State&, const StepReport&)>;

/// The full decoupled loop: ceil(T_final/dt) steps of
/// (tangent solve, explicit magnetisation update, implicit elastic
/// solve), with per-step diagnostics. Any substep failure is rethrown
/// with the step index attached.
RunResult run(const Mesh& mesh, const Params& params, State state,
              const StepCallback& on_step = {});

}  // namespace mellg
