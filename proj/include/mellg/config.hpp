#pragma once

#include <array>
#include <string>
#include <vector>

#include "mellg/integrator.hpp"
#include "mellg/material.hpp"
#include "mellg/mesh.hpp"
#include "mellg/types.hpp"

namespace mellg {

/// Declarative run description: plain data, INI round-trippable.
/// Exactly one of the physical/dimensionless material blocks is active.
struct RunConfig {
  // [mesh]
  std::string mesh_kind = "box";  // box | msh
  Vec3 box_lengths = Vec3(1, 1, 1);
  std::array<int, 3> box_divisions{1, 1, 1};
  std::string dirichlet_planes = "xmin";  // comma list of {x,y,z}{min,max}
  std::string neumann_planes = "rest";    // "rest" = every non-Dirichlet face
  std::string traction_plane = "";        // restrict g to one box plane; "" = all Neumann
  std::string msh_path = "";
  std::vector<int> msh_dirichlet_tags;
  std::vector<int> msh_neumann_tags;

  // [material]
  std::string material_block = "physical";  // physical | dimensionless
  PhysicalParams physical = fecosib();
  double dim_alpha = 0.005;
  double dim_kappa = 1.0;
  double dim_mu = 6.89;
  double dim_lambda = 21.96;
  double dim_lambda100 = 0.0;
  double dim_lambda111 = 0.0;

  // [run]  (dt/t_final dimensionless; *_seconds converted via the
  //         physical time scale; exactly one of each pair nonzero)
  double theta = 1.0;
  double dt = 0;
  double dt_seconds = 0;
  double t_final = 0;
  double t_final_seconds = 0;
  Vec3 h_ext = Vec3::Zero();   // dimensionless
  Vec3 f = Vec3::Zero();       // dimensionless volume force
  Vec3 traction = Vec3::Zero();  // dimensionless, on Neumann faces
  bool gravity = false;          // add scaled gravity (physical block only)

  // [initial]
  std::string initial = "uniform";  // uniform | perturbed | hot | sinusoidal
  Vec3 initial_m = Vec3(1, 0, 0);
  unsigned long long seed = 1;

  // [solver]
  double cg_tol = 1e-10;
  double gmres_tol = 1e-10;
  int gmres_restart = 50;
  int max_iterations = 10000;

  // [output]
  std::string out_dir = "out";
  std::string csv = "run.csv";
  int snapshot_stride = 0;  // 0 = no VTK snapshots

  // [flags]
  bool unsafe_theta = false;
  bool hat_energy = false;
  bool freeze_ilu = false;

  bool operator==(const RunConfig& o) const;
  bool operator!=(const RunConfig& o) const { return !(*this == o); }
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);
std::string serialise_config(const RunConfig& cfg);

/// Applies "section.key=value" overrides on top of a config.
void apply_override(RunConfig& cfg, const std::string& assignment);

/// Everything needed to start the time loop.
struct Problem {
  Mesh mesh;
  Params params;
  State state;
};

Problem build_problem(const RunConfig& cfg);

}  // namespace mellg
