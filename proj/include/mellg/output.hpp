#pragma once

#include <string>

#include "mellg/integrator.hpp"
#include "mellg/mesh.hpp"

namespace mellg {

inline constexpr const char* kCsvHeader =
    "t,x_mag_avg,y_mag_avg,z_mag_avg,x_disp_avg,y_disp_avg,z_disp_avg,totalenergy,"
    "kinetic,exchange,elastic,zeeman,work,constraint_l1,nodal_max,energy_residual";

/// One CSV per run: header above, a t = 0 row, then one row per step.
/// The time column is in seconds when `time_scale` is nonzero.
void write_csv(const std::string& path, const RunResult& result, double time_scale);

/// Legacy ASCII VTK unstructured grid with point-data vectors
/// `magnetisation`, `displacement` and scalar `m_norm`.
void write_vtk(const std::string& path, const Mesh& mesh, const NodalField& m,
               const NodalField& u);

}  // namespace mellg
