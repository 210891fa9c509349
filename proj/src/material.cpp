#include "mellg/material.hpp"

#include <cmath>

namespace mellg {

PhysicalParams fecosib() {
  PhysicalParams p;
  p.A = 1.5e-11;
  p.alpha = 0.005;
  p.gamma = 1.761e11;
  p.mu0 = 1.25663706e-6;
  p.Ms = 1.5e6;
  p.lambda100 = 30e-6;
  p.lambda111 = 30e-6;
  p.rho = 7900;
  p.mu_lame = 54e9;
  p.lambda_lame = 172e9;
  p.g_grav = 9.81;
  return p;
}

Vec3 Nondimensional::scale_volume_force(const Vec3& F_si) const {
  return F_si * (ell_ex / stress_scale);
}

Vec3 Nondimensional::scale_traction(const Vec3& G_si) const { return G_si / stress_scale; }

Vec3 Nondimensional::scale_applied_field(const Vec3& H_si) const { return H_si / Ms; }

Nondimensional nondimensionalise(const PhysicalParams& p) {
  p.validate();
  Nondimensional n;
  n.ell_ex = std::sqrt(2.0 * p.A / (p.mu0 * p.Ms * p.Ms));
  n.kappa = p.rho * n.ell_ex * n.ell_ex * p.gamma * p.gamma * p.mu0;
  n.time_scale = 1.0 / (p.gamma * p.mu0 * p.Ms);
  n.stress_scale = n.kappa * p.mu0 * p.Ms * p.Ms;
  n.Ms = p.Ms;
  n.mu = p.mu_lame / n.stress_scale;
  n.lambda = p.lambda_lame / n.stress_scale;
  n.C = isotropic_stiffness(n.mu, n.lambda);
  n.Z = isotropic_magnetostriction(p.lambda100);
  return n;
}

}  // namespace mellg
