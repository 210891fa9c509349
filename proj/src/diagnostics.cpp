#include "mellg/diagnostics.hpp"

#include <cmath>

namespace mellg {

namespace {

std::vector<Mat3> nodal_magnetostrain(const Tensor4d& Z, const NodalField& f) {
  std::vector<Mat3> em(node_count(f));
  for (int z = 0; z < node_count(f); ++z) em[z] = magnetostrain(Z, node(f, z));
  return em;
}

// <C : a, b> under the per-element nodal rule: each tetrahedron
// contributes |K|/4 per vertex, with field value
//   (a_elem[K] if given) + (a_nodal[z] if given)
// and likewise for b. Elementwise parts are the constant strains eps(u);
// nodal parts are the magnetostrain-type matrices.
double q_product(const Mesh& mesh, const Tensor4d& C, const std::vector<Mat3>* a_elem,
                 const std::vector<Mat3>* a_nodal, const std::vector<Mat3>* b_elem,
                 const std::vector<Mat3>* b_nodal) {
  std::vector<Mat3> cb_nodal;
  if (b_nodal) {
    cb_nodal.resize(b_nodal->size());
    for (std::size_t z = 0; z < b_nodal->size(); ++z)
      cb_nodal[z] = contract(C, (*b_nodal)[z]);
  }
  double acc = 0;
  for (int k = 0; k < mesh.tet_count(); ++k) {
    const auto& tet = mesh.tets[k];
    const double wq = mesh.tet_volume[k] / 4.0;
    const Mat3 cbe = b_elem ? contract(C, (*b_elem)[k]) : Mat3::Zero();
    const Mat3 ae = a_elem ? (*a_elem)[k] : Mat3::Zero();
    for (int a = 0; a < 4; ++a) {
      const int z = tet[a];
      Mat3 av = ae;
      if (a_nodal) av += (*a_nodal)[z];
      Mat3 cbv = cbe;
      if (b_nodal) cbv += cb_nodal[z];
      acc += wq * av.cwiseProduct(cbv).sum();
    }
  }
  return acc;
}

std::vector<Mat3> negate(std::vector<Mat3> v) {
  for (auto& m : v) m = -m;
  return v;
}

}  // namespace

EnergyBreakdown energy(const Mesh& mesh, const Params& params, const Assemblies& assem,
                       const State& state, bool project_m) {
  EnergyBreakdown e;
  e.exchange = 0.5 * state.m.dot(assem.laplacian * state.m);
  e.zeeman = -assem.load_hext.dot(state.m);

  const NodalField& m_el = project_m ? nodal_project(state.m) : state.m;
  const std::vector<Mat3> eps_u = element_strains(mesh, state.u);
  const std::vector<Mat3> neg_em = negate(nodal_magnetostrain(params.Z, m_el));
  e.elastic = 0.5 * params.kappa *
              q_product(mesh, params.C, &eps_u, &neg_em, &eps_u, &neg_em);

  e.work = -params.kappa * (assem.load_f.dot(state.u) + assem.load_g.dot(state.u));
  e.kinetic = 0.5 * params.kappa * state.udot.dot(assem.mass * state.udot);
  return e;
}

EnergyLawReport energy_law_residual(const Mesh& mesh, const Params& params,
                                    const Assemblies& assem, const State& before,
                                    const State& after, const NodalField& v) {
  EnergyLawReport r;
  const double dt = params.dt;
  const double kap = params.kappa;
  const Tensor4d& C = params.C;
  const Tensor4d& Z = params.Z;

  const EnergyBreakdown e0 = energy(mesh, params, assem, before);
  const EnergyBreakdown e1 = energy(mesh, params, assem, after);
  r.lhs = e1.total() - e0.total();

  r.alpha_term = params.alpha * dt * v.dot(assem.lumped.cwiseProduct(v));
  r.D1 = dt * dt * (params.theta - 0.5) * v.dot(assem.laplacian * v);

  const NodalField dudot = after.udot - before.udot;
  r.D2 = 0.5 * kap * dudot.dot(assem.mass * dudot);

  const std::vector<Mat3> s0 = element_strains(mesh, before.u);
  const std::vector<Mat3> s1 = element_strains(mesh, after.u);
  const std::vector<Mat3> em0 = nodal_magnetostrain(Z, before.m);
  const std::vector<Mat3> em1 = nodal_magnetostrain(Z, after.m);

  std::vector<Mat3> ds(mesh.tet_count());
  for (int k = 0; k < mesh.tet_count(); ++k) ds[k] = s1[k] - s0[k];
  std::vector<Mat3> neg_dem(mesh.node_count());
  for (int z = 0; z < mesh.node_count(); ++z) neg_dem[z] = em0[z] - em1[z];
  r.D3 = 0.5 * kap * q_product(mesh, C, &ds, &neg_dem, &ds, &neg_dem);

  // E terms: linearisation, decoupling, and the two nodal-projection
  // corrections in the coupling.
  const std::vector<Mat3> neg_em1 = negate(em1);
  const std::vector<Mat3> em_v = nodal_magnetostrain(Z, v);
  r.E1 = kap * dt * dt * q_product(mesh, C, &s1, &neg_em1, nullptr, &em_v);

  std::vector<Mat3> z_mv(mesh.node_count());
  for (int z = 0; z < mesh.node_count(); ++z)
    z_mv[z] = contract(Z, Mat3(node(before.m, z) * node(v, z).transpose()));
  r.E2 = 2.0 * kap * dt * q_product(mesh, C, &ds, &neg_dem, nullptr, &z_mv);

  const NodalField proj_m0 = nodal_project(before.m);
  std::vector<Mat3> z_dmv(mesh.node_count());
  for (int z = 0; z < mesh.node_count(); ++z) {
    const Vec3 dm = node(before.m, z) - node(proj_m0, z);
    z_dmv[z] = contract(Z, Mat3(dm * node(v, z).transpose()));
  }
  const std::vector<Mat3> neg_em0 = negate(em0);
  r.E3 = 2.0 * kap * dt * q_product(mesh, C, &s0, &neg_em0, nullptr, &z_dmv);

  const NodalField proj_m1 = nodal_project(after.m);
  const std::vector<Mat3> em1p = nodal_magnetostrain(Z, proj_m1);
  std::vector<Mat3> dem_proj(mesh.node_count());
  for (int z = 0; z < mesh.node_count(); ++z) dem_proj[z] = em1[z] - em1p[z];
  r.E4 = kap * q_product(mesh, C, nullptr, &dem_proj, &ds, nullptr);

  r.residual = r.lhs + r.alpha_term + r.D_total() + r.E_total();
  return r;
}

ConstraintMetrics constraint_metrics(const Mesh& mesh, const State& state) {
  ConstraintMetrics c;
  for (int z = 0; z < mesh.node_count(); ++z) {
    const double n2 = node(state.m, z).squaredNorm();
    c.l1_violation += mesh.lumped_weight[z] * (n2 - 1.0);
    c.nodal_max = std::max(c.nodal_max, std::sqrt(n2));
  }
  return c;
}

Averages averages(const Mesh& mesh, const State& state) {
  Averages a;
  for (int z = 0; z < mesh.node_count(); ++z) {
    a.m += mesh.lumped_weight[z] * node(state.m, z);
    a.u += mesh.lumped_weight[z] * node(state.u, z);
  }
  a.m /= mesh.total_volume;
  a.u /= mesh.total_volume;
  return a;
}

}  // namespace mellg
