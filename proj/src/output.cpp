#include "mellg/output.hpp"

#include <cstdio>
#include <stdexcept>

namespace mellg {

namespace {

void row(std::FILE* f, double t, const Vec3& mavg, const Vec3& uavg,
         const EnergyBreakdown& e, double l1, double nmax, double residual) {
  std::fprintf(f,
               "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
               "%.17g,%.17g,%.17g,%.17g\n",
               t, mavg.x(), mavg.y(), mavg.z(), uavg.x(), uavg.y(), uavg.z(), e.total(),
               e.kinetic, e.exchange, e.elastic, e.zeeman, e.work, l1, nmax, residual);
}

}  // namespace

void write_csv(const std::string& path, const RunResult& result, double time_scale) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("csv: cannot write " + path);
  const double ts = time_scale > 0 ? time_scale : 1.0;

  std::fprintf(f, "%s\n", kCsvHeader);
  row(f, 0.0, result.initial_avg_m, result.initial_avg_u, result.initial_energy,
      result.initial_l1, result.initial_nodal_max, 0.0);
  for (const StepReport& s : result.steps)
    row(f, s.t * ts, s.avg_m, s.avg_u, s.energy, s.constraint_l1, s.nodal_max,
        s.law.residual);

  if (std::fclose(f) != 0) throw std::runtime_error("csv: write failed for " + path);
}

void write_vtk(const std::string& path, const Mesh& mesh, const NodalField& m,
               const NodalField& u) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("vtk: cannot write " + path);

  std::fprintf(f, "# vtk DataFile Version 3.0\nmellg snapshot\nASCII\n");
  std::fprintf(f, "DATASET UNSTRUCTURED_GRID\n");
  std::fprintf(f, "POINTS %d double\n", mesh.node_count());
  for (const Vec3& p : mesh.nodes)
    std::fprintf(f, "%.17g %.17g %.17g\n", p.x(), p.y(), p.z());

  std::fprintf(f, "CELLS %d %d\n", mesh.tet_count(), 5 * mesh.tet_count());
  for (const auto& tet : mesh.tets)
    std::fprintf(f, "4 %d %d %d %d\n", tet[0], tet[1], tet[2], tet[3]);
  std::fprintf(f, "CELL_TYPES %d\n", mesh.tet_count());
  for (int k = 0; k < mesh.tet_count(); ++k) std::fprintf(f, "10\n");

  std::fprintf(f, "POINT_DATA %d\n", mesh.node_count());
  std::fprintf(f, "VECTORS magnetisation double\n");
  for (int z = 0; z < mesh.node_count(); ++z) {
    const Vec3 v = node(m, z);
    std::fprintf(f, "%.17g %.17g %.17g\n", v.x(), v.y(), v.z());
  }
  std::fprintf(f, "VECTORS displacement double\n");
  for (int z = 0; z < mesh.node_count(); ++z) {
    const Vec3 v = node(u, z);
    std::fprintf(f, "%.17g %.17g %.17g\n", v.x(), v.y(), v.z());
  }
  std::fprintf(f, "SCALARS m_norm double\nLOOKUP_TABLE default\n");
  for (int z = 0; z < mesh.node_count(); ++z)
    std::fprintf(f, "%.17g\n", node(m, z).norm());

  if (std::fclose(f) != 0) throw std::runtime_error("vtk: write failed for " + path);
}

}  // namespace mellg
