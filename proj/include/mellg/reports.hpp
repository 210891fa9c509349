#pragma once

namespace mellg {

/// Energy split at one time level. Elastic, work and kinetic parts carry
/// the coupling parameter kappa, matching the dimensionless free energy;
/// with kappa = 1 the weights disappear.
struct EnergyBreakdown {
  double exchange = 0;  // |grad m|^2 / 2
  double zeeman = 0;    // -<h_ext, m>
  double elastic = 0;   // kappa/2 ||eps(u) - eps_m(m)||_C^2
  double work = 0;      // -kappa (<f,u> + <g,u>_N)
  double kinetic = 0;   // kappa/2 ||d_t u||^2

  double potential() const { return exchange + zeeman + elastic + work; }
  double total() const { return potential() + kinetic; }
};

/// Per-step balance of the discrete energy identity. The change of
/// total-plus-kinetic energy across a step equals
/// -(alpha_term + D + E); `residual` is the defect of that identity and
/// sits at solver precision.
struct EnergyLawReport {
  double lhs = 0;         // energy difference across the step
  double alpha_term = 0;  // alpha k ||v||_h^2
  double D1 = 0;          // k^2 (theta - 1/2) ||grad v||^2
  double D2 = 0;          // kappa/2 ||d_t u^{i+1} - d_t u^i||^2
  double D3 = 0;          // kappa/2 || [eps-eps_m]^{i+1} - [eps-eps_m]^i ||_C^2
  double E1 = 0;          // linearisation
  double E2 = 0;          // decoupling
  double E3 = 0;          // projection in the elastic field
  double E4 = 0;          // projection in the magnetostrain load
  double residual = 0;

  double D_total() const { return D1 + D2 + D3; }
  double E_total() const { return E1 + E2 + E3 + E4; }
};

}  // namespace mellg
