#pragma once

#include "mellg/integrator.hpp"
#include "mellg/reports.hpp"

namespace mellg {

/// Energies at the state's time level, evaluated with the assembly
/// quadrature (exact P1 integrals for exchange/Zeeman/work/kinetic,
/// per-element nodal rule for the magnetostrain coupling). Set
/// `project_m` to evaluate the elastic part with the nodal projection of
/// m (the hat-energy variant).
EnergyBreakdown energy(const Mesh& mesh, const Params& params, const Assemblies& assem,
                       const State& state, bool project_m = false);

/// Term-by-term discrete energy balance between two consecutive states;
/// `v` is the tangent update that produced `after`.
EnergyLawReport energy_law_residual(const Mesh& mesh, const Params& params,
                                    const Assemblies& assem, const State& before,
                                    const State& after, const NodalField& v);

struct ConstraintMetrics {
  double l1_violation = 0;  // sum_z w_z (|m(z)|^2 - 1)
  double nodal_max = 0;     // max_z |m(z)|
};

ConstraintMetrics constraint_metrics(const Mesh& mesh, const State& state);

struct Averages {
  Vec3 m = Vec3::Zero();
  Vec3 u = Vec3::Zero();
};

/// Volume averages (1/|O|) int m, (1/|O|) int u, exact for P1 fields.
Averages averages(const Mesh& mesh, const State& state);

}  // namespace mellg
