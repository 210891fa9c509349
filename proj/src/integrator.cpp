#include "mellg/integrator.hpp"

#include <chrono>
#include <cmath>

#include "mellg/diagnostics.hpp"

namespace mellg {

Assemblies build_assemblies(const Mesh& mesh, const Params& params) {
  Assemblies a;
  a.laplacian = assemble_vector_laplacian(mesh);
  a.mass = assemble_consistent_mass(mesh);
  a.lumped = lumped_mass(mesh);
  a.dirichlet = mesh.dirichlet_node_mask();
  a.dirichlet_dof.assign(3 * mesh.node_count(), 0);
  for (int z = 0; z < mesh.node_count(); ++z)
    if (a.dirichlet[z])
      a.dirichlet_dof[3 * z] = a.dirichlet_dof[3 * z + 1] = a.dirichlet_dof[3 * z + 2] = 1;

  SparseMatrix stiffness = assemble_elastic_stiffness(mesh, params.C, {});
  a.elastic_system = a.mass.scaled_add(1.0, stiffness, params.dt * params.dt);
  a.elastic_system.eliminate(a.dirichlet_dof);

  a.load_f = assemble_loads(mesh, params.f, {});
  a.load_g = assemble_loads(mesh, {}, params.g);
  a.load_hext = applied_field_load(mesh, params.h_ext);
  return a;
}

State init_state(const Mesh& mesh, const VecFieldFn& m0, const VecFieldFn& u0,
                 const VecFieldFn& udot0, const DirichletMask& dirichlet) {
  if (!m0) throw InvalidInput("init_state: initial magnetisation is required");
  State st;
  st.m = normalize_nodal(nodal_interpolate(mesh, m0));
  st.u = nodal_interpolate(mesh, u0);
  for (int z = 0; z < mesh.node_count(); ++z)
    if (!dirichlet.empty() && dirichlet[z]) node(st.u, z).setZero();
  st.udot = nodal_interpolate(mesh, udot0);
  st.v_prev = NodalField::Zero(3 * mesh.node_count());
  st.s = Eigen::VectorXd::Zero(mesh.node_count());
  return st;
}

State init_state_from_field(const Mesh& mesh, const NodalField& m0) {
  State st;
  st.m = normalize_nodal(m0);
  st.u = NodalField::Zero(3 * mesh.node_count());
  st.udot = NodalField::Zero(3 * mesh.node_count());
  st.v_prev = NodalField::Zero(3 * mesh.node_count());
  st.s = Eigen::VectorXd::Zero(mesh.node_count());
  return st;
}

namespace {

// alpha <.,.>_h + <m x ., .>_h + theta dt <grad ., grad .> : the lumped
// terms are a diagonal 3x3 block w_z (alpha I + [m(z)]_x) per node.
SparseMatrix llg_matrix(const Mesh& mesh, const SparseMatrix& laplacian,
                        const NodalField& m, double alpha, double theta_dt) {
  std::vector<Triplet> t;
  t.reserve(laplacian.values().size() + 9 * mesh.node_count());
  const auto& rp = laplacian.row_ptr();
  const auto& cols = laplacian.cols();
  const auto& val = laplacian.values();
  for (int i = 0; i < laplacian.rows(); ++i)
    for (int p = rp[i]; p < rp[i + 1]; ++p)
      t.push_back({i, cols[p], theta_dt * val[p]});
  for (int z = 0; z < mesh.node_count(); ++z) {
    const double w = mesh.lumped_weight[z];
    const Mat3 block = w * (alpha * Mat3::Identity() + skew(node(m, z)));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (block(i, j) != 0.0) t.push_back({3 * z + i, 3 * z + j, block(i, j)});
  }
  return SparseMatrix::from_triplets(laplacian.rows(), std::move(t));
}

}  // namespace

NodalField llg_substep(const Mesh& mesh, const Params& params, const Assemblies& assem,
                       const State& state, int* iterations,
                       std::optional<Preconditioner>* frozen_ilu) {
  Eigen::VectorXd rhs = -(assem.laplacian * state.m);
  rhs += elastic_field_load(mesh, params.C, params.Z, params.kappa, state.u,
                            nodal_project(state.m));
  rhs += assem.load_hext;

  const SparseMatrix a =
      llg_matrix(mesh, assem.laplacian, state.m, params.alpha, params.theta * params.dt);
  const TangentBasis basis = tangent_basis(state.m);
  ReducedSystem sys = nullspace_reduce(a, rhs, basis);
  const Eigen::VectorXd x0 = nullspace_restrict(state.v_prev, basis);

  const Preconditioner* prec = nullptr;
  Preconditioner local = Preconditioner::identity(0);
  if (frozen_ilu) {
    if (!frozen_ilu->has_value()) *frozen_ilu = Preconditioner::ilu0(sys.matrix);
    prec = &frozen_ilu->value();
  } else {
    local = Preconditioner::ilu0(sys.matrix);
    prec = &local;
  }

  SolveResult sol = gmres_solve(sys.matrix, sys.rhs, x0, params.gmres_tol,
                                params.gmres_restart, params.max_iterations, prec);
  if (iterations) *iterations = sol.iterations;
  return nullspace_expand(sol.x, basis);
}

NodalField magnetisation_update(const NodalField& m, const NodalField& v, double dt) {
  return m + dt * v;
}

std::pair<NodalField, NodalField> elastic_substep(const Mesh& mesh, const Params& params,
                                                  const Assemblies& assem,
                                                  const State& state,
                                                  const NodalField& m_new,
                                                  int* iterations) {
  const double dt = params.dt;
  Eigen::VectorXd rhs =
      magnetostrain_load(mesh, params.C, params.Z, nodal_project(m_new));
  rhs += assem.load_f + assem.load_g;
  rhs *= dt * dt;
  rhs += assem.mass * (state.u + dt * state.udot);
  for (int i = 0; i < rhs.size(); ++i)
    if (assem.dirichlet_dof[i]) rhs[i] = 0.0;

  SolveResult sol =
      cg_solve(assem.elastic_system, rhs, state.u, params.cg_tol, params.max_iterations);
  if (iterations) *iterations = sol.iterations;
  NodalField udot_new = (sol.x - state.u) / dt;
  return {std::move(sol.x), std::move(udot_new)};
}

RunResult run(const Mesh& mesh, const Params& params, State state,
              const StepCallback& on_step) {
  if (!(params.dt > 0)) throw InvalidInput("run: time-step size must be positive");
  if (!(params.dt < params.T_final))
    throw InvalidInput("run: need dt < T_final (at least one step)");
  const bool theta_ok = params.theta > 0.5 && params.theta <= 1.0;
  if (!theta_ok) {
    if (!(params.unsafe_theta && params.theta >= 0.0 && params.theta <= 0.5))
      throw InvalidInput(
          "run: theta must lie in (1/2, 1]; values in [0, 1/2] need unsafe_theta");
  }
  bool any_dirichlet = false;
  for (const auto& bf : mesh.boundary_faces)
    if (bf.region == Region::dirichlet) any_dirichlet = true;
  if (!any_dirichlet) throw InvalidInput("run: mesh has no Dirichlet boundary");

  const Assemblies assem = build_assemblies(mesh, params);
  std::optional<Preconditioner> frozen;
  std::optional<Preconditioner>* frozen_ptr = params.freeze_ilu ? &frozen : nullptr;

  RunResult result;
  result.initial_energy = energy(mesh, params, assem, state);
  {
    const ConstraintMetrics c0 = constraint_metrics(mesh, state);
    result.initial_l1 = c0.l1_violation;
    result.initial_nodal_max = c0.nodal_max;
    const Averages a0 = averages(mesh, state);
    result.initial_avg_m = a0.m;
    result.initial_avg_u = a0.u;
  }

  const int n_steps = static_cast<int>(std::ceil(params.T_final / params.dt - 1e-12));
  result.steps.reserve(n_steps);

  for (int i = 0; i < n_steps; ++i) {
    const auto t_start = std::chrono::steady_clock::now();
    StepReport rep;
    rep.step = i;
    try {
      const State before = state;

      rep.v = llg_substep(mesh, params, assem, state, &rep.llg_iterations, frozen_ptr);
      for (int z = 0; z < mesh.node_count(); ++z)
        rep.max_tangency =
            std::max(rep.max_tangency, std::abs(node(state.m, z).dot(node(rep.v, z))));

      state.m = magnetisation_update(state.m, rep.v, params.dt);
      for (int z = 0; z < mesh.node_count(); ++z)
        state.s[z] += params.dt * params.dt * node(rep.v, z).squaredNorm();

      auto [u_new, udot_new] =
          elastic_substep(mesh, params, assem, before, state.m, &rep.elastic_iterations);
      state.u = std::move(u_new);
      state.udot = std::move(udot_new);
      state.v_prev = rep.v;
      ++state.step;
      state.t += params.dt;
      rep.t = state.t;

      for (int z = 0; z < mesh.node_count(); ++z)
        rep.constraint_identity_err =
            std::max(rep.constraint_identity_err,
                     std::abs(node(state.m, z).squaredNorm() - 1.0 - state.s[z]));

      rep.energy = energy(mesh, params, assem, state);
      rep.law = energy_law_residual(mesh, params, assem, before, state, rep.v);
      const ConstraintMetrics cm = constraint_metrics(mesh, state);
      rep.constraint_l1 = cm.l1_violation;
      rep.nodal_max = cm.nodal_max;
      const Averages av = averages(mesh, state);
      rep.avg_m = av.m;
      rep.avg_u = av.u;
      if (params.hat_energy) rep.hat_energy = energy(mesh, params, assem, state, true);
    } catch (const std::exception& e) {
      throw std::runtime_error("step " + std::to_string(i) + ": " + e.what());
    }
    rep.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t_start)
                      .count();
    if (on_step) on_step(state, rep);
    result.steps.push_back(std::move(rep));
  }
  result.final_state = std::move(state);
  return result;
}

}  // namespace mellg
