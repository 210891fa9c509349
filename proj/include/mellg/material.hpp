#pragma once

#include "mellg/tensor4.hpp"
#include "mellg/types.hpp"

namespace mellg {

/// SI material data for an isotropic magnetoelastic ferromagnet.
struct PhysicalParams {
  double A = 0;            // exchange constant, J/m
  double alpha = 0;        // Gilbert damping, dimensionless
  double gamma = 0;        // gyromagnetic ratio, rad/(s T)
  double mu0 = 0;          // vacuum permeability, N/A^2
  double Ms = 0;           // saturation magnetisation, A/m
  double lambda100 = 0;    // saturation magnetostrain, dimensionless
  double lambda111 = 0;    // cubic magnetostrain constant (== lambda100 if isotropic)
  double rho = 0;          // mass density, kg/m^3
  double mu_lame = 0;      // shear modulus, Pa
  double lambda_lame = 0;  // first Lame parameter, Pa
  double g_grav = 0;       // gravitational acceleration, m/s^2

  void validate() const {
    if (!(A > 0) || !(mu0 > 0) || !(Ms > 0) || !(rho > 0))
      throw InvalidInput("PhysicalParams: A, mu0, Ms, rho must be positive");
  }
};

// FeCoSiB estimates. The shear modulus is 54 GPa and the first Lame
// parameter 172 GPa; assigning them the other way round does not
// reproduce the accepted dimensionless stiffness of this material.
PhysicalParams fecosib();

/// Dimensionless problem data consumed by the integrator.
struct Params {
  double alpha = 0.005;
  double theta = 1.0;
  double dt = 0;       // time-step size
  double T_final = 0;  // final time
  double kappa = 1.0;  // magnetoelastic coupling parameter
  Tensor4d C;          // stiffness (fully symmetric)
  Tensor4d Z;          // magnetostriction (minorly symmetric)
  VecFieldFn f;        // volume force; empty = zero
  VecFieldFn g;        // traction on Neumann faces; empty = zero
  VecFieldFn h_ext;    // applied field; empty = zero

  double cg_tol = 1e-10;
  double gmres_tol = 1e-10;
  int gmres_restart = 50;
  int max_iterations = 10000;
  bool unsafe_theta = false;  // permit theta <= 1/2
  bool freeze_ilu = false;    // reuse the first step's ILU factors
  bool hat_energy = false;    // report projected-magnetisation energy too

  // seconds per dimensionless time unit; 0 when the setup is already
  // dimensionless
  double time_scale = 0;
};

struct Nondimensional {
  double ell_ex = 0;      // exchange length, m
  double kappa = 0;       // rho ell_ex^2 gamma^2 mu0
  double time_scale = 0;  // 1/(gamma mu0 Ms), s
  double stress_scale = 0;  // kappa mu0 Ms^2, Pa: divide stresses/stiffness by this
  double Ms = 0;            // saturation magnetisation, A/m (field scale)
  double mu = 0;            // dimensionless Lame constants
  double lambda = 0;
  Tensor4d C;
  Tensor4d Z;  // isotropic, from lambda100

  Vec3 scale_volume_force(const Vec3& F_si) const;   // N/m^3 -> dimensionless
  Vec3 scale_traction(const Vec3& G_si) const;       // N/m^2 -> dimensionless
  Vec3 scale_applied_field(const Vec3& H_si) const;  // A/m -> dimensionless
};

/// Rescales the SI data to the dimensionless setting: lengths by the
/// exchange length, time by 1/(gamma mu0 Ms), stresses by kappa mu0 Ms^2.
Nondimensional nondimensionalise(const PhysicalParams& p);

}  // namespace mellg
