#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "mellg/cli.hpp"
#include "mellg/config.hpp"
#include "mellg/output.hpp"
#include "mellg/presets.hpp"

using namespace mellg;

namespace {

RunConfig small_decay_config() {
  RunConfig c;
  c.mesh_kind = "box";
  c.box_lengths = Vec3(6, 6, 6);
  c.box_divisions = {2, 2, 2};
  c.dirichlet_planes = "xmin";
  c.material_block = "dimensionless";
  c.dim_alpha = 0.05;
  c.dim_mu = 6.89;
  c.dim_lambda = 21.96;
  c.dim_lambda100 = 0;  // zero coupling
  c.dim_lambda111 = 0;
  c.theta = 0.7;
  c.dt = 1e-3;
  c.t_final = 3e-3;
  c.initial = "hot";
  c.seed = 12;
  c.out_dir = "/tmp/mellg_out";
  c.csv = "decay.csv";
  return c;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config round trip is the identity") {
  RunConfig c = small_decay_config();
  c.mesh_kind = "msh";
  c.msh_path = "/some/mesh.msh";
  c.msh_dirichlet_tags = {1, 4};
  c.msh_neumann_tags = {2};
  c.h_ext = Vec3(0, 5e-4, 0);
  c.traction = Vec3(0, 1.28e-9, 0);
  c.traction_plane = "xmax";
  c.gravity = false;
  c.snapshot_stride = 7;
  c.freeze_ilu = true;
  c.theta = 0.50000005;

  const std::string text = serialise_config(c);
  const RunConfig back = parse_config_text(text);
  CHECK(back == c);
  CHECK(serialise_config(back) == text);

  // comments and blank lines are tolerated
  const RunConfig commented =
      parse_config_text("# leading comment\n\n" + text + "\n# trailing\n");
  CHECK(commented == c);
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_config_text("[mesh]\nbogus_key = 1\n"), ParseError);
  CHECK_THROWS_AS(parse_config_text("[nosuch]\nx = 1\n"), ParseError);
  CHECK_THROWS_AS(parse_config_text("key_outside = 1\n"), ParseError);
  CHECK_THROWS_AS(parse_config_text("[run]\ntheta 0.7\n"), ParseError);
  CHECK_THROWS_AS(parse_config_file("/tmp/definitely_missing.ini"), ParseError);

  RunConfig c = small_decay_config();
  apply_override(c, "run.theta=0.9");
  CHECK(c.theta == 0.9);
  CHECK_THROWS_AS(apply_override(c, "nonsense"), ParseError);
  CHECK_THROWS_AS(apply_override(c, "run.bogus=1"), ParseError);
}

TEST_CASE("build_problem validates the run block") {
  RunConfig c = small_decay_config();
  c.dt_seconds = 1e-12;  // both dt and dt_seconds set
  CHECK_THROWS_AS(build_problem(c), InvalidInput);

  RunConfig d = small_decay_config();
  d.dt = 0;
  d.dt_seconds = 1e-12;  // seconds without a physical block
  CHECK_THROWS_AS(build_problem(d), InvalidInput);

  RunConfig e = small_decay_config();
  e.gravity = true;
  CHECK_THROWS_AS(build_problem(e), InvalidInput);

  RunConfig f = small_decay_config();
  f.material_block = "alchemical";
  CHECK_THROWS_AS(build_problem(f), InvalidInput);

  RunConfig g = small_decay_config();
  g.initial = "tepid";
  CHECK_THROWS_AS(build_problem(g), InvalidInput);
}

TEST_CASE("csv output shape and decay") {
  std::filesystem::remove_all("/tmp/mellg_out");
  const RunConfig c = small_decay_config();
  const RunResult r = execute_config(c);
  CHECK(r.steps.size() == 3);

  const std::string text = slurp("/tmp/mellg_out/decay.csv");
  std::istringstream in(text);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == kCsvHeader);

  int rows = 0;
  double prev_total = 1e300;
  bool monotone = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++rows;
    // totalenergy is the 8th column
    std::istringstream ls(line);
    std::string field;
    double total = 0;
    for (int c2 = 0; c2 < 8; ++c2) {
      REQUIRE(std::getline(ls, field, ','));
      if (c2 == 7) total = std::stod(field);
    }
    monotone &= total <= prev_total + 1e-12;
    prev_total = total;
  }
  CHECK(rows == 4);  // t = 0 plus three steps
  CHECK(monotone);   // zero-coupling decay
}

TEST_CASE("csv output is byte identical across runs") {
  RunConfig c = small_decay_config();
  c.csv = "a.csv";
  execute_config(c);
  const std::string first = slurp("/tmp/mellg_out/a.csv");
  c.csv = "b.csv";
  execute_config(c);
  CHECK(first == slurp("/tmp/mellg_out/b.csv"));
}

TEST_CASE("vtk snapshot of the single-cell cube") {
  const Mesh mesh = box_mesh(Vec3(1, 1, 1), {1, 1, 1},
                             [](const Vec3& c) { return std::abs(c.x()) < 1e-9; },
                             [](const Vec3&) { return true; });
  const NodalField m =
      nodal_interpolate(mesh, [](const Vec3&) { return Vec3(1, 0, 0); });
  const NodalField u = NodalField::Zero(3 * mesh.node_count());
  write_vtk("/tmp/mellg_snapshot.vtk", mesh, m, u);
  const std::string text = slurp("/tmp/mellg_snapshot.vtk");
  CHECK(text.find("DATASET UNSTRUCTURED_GRID") != std::string::npos);
  CHECK(text.find("POINTS 8 double") != std::string::npos);
  CHECK(text.find("CELLS 6 30") != std::string::npos);
  CHECK(text.find("CELL_TYPES 6") != std::string::npos);
  CHECK(text.find("VECTORS magnetisation double") != std::string::npos);
  CHECK(text.find("VECTORS displacement double") != std::string::npos);
  CHECK(text.find("SCALARS m_norm double") != std::string::npos);

  // all six cells are VTK tetrahedra (type 10)
  const auto pos = text.find("CELL_TYPES 6");
  std::istringstream tail(text.substr(pos));
  std::string line;
  std::getline(tail, line);
  int tens = 0;
  while (std::getline(tail, line) && !line.empty() && line[0] == '1')
    if (line == "10") ++tens;
  CHECK(tens == 6);
}

TEST_CASE("snapshots are written at the configured stride") {
  std::filesystem::remove_all("/tmp/mellg_out_snap");
  RunConfig c = small_decay_config();
  c.out_dir = "/tmp/mellg_out_snap";
  c.snapshot_stride = 2;
  execute_config(c);  // 3 steps: files at 0 and 2
  CHECK(std::filesystem::exists("/tmp/mellg_out_snap/decay_0000.vtk"));
  CHECK(std::filesystem::exists("/tmp/mellg_out_snap/decay_0002.vtk"));
  CHECK(!std::filesystem::exists("/tmp/mellg_out_snap/decay_0003.vtk"));
}

TEST_CASE("cli entry point") {
  {
    const char* argv[] = {"mellg", "run", "/tmp/missing_config.ini"};
    CHECK(cli_main(3, argv) != 0);
  }
  {
    const char* argv[] = {"mellg", "preset", "no_such_preset"};
    CHECK(cli_main(3, argv) != 0);
  }
  {
    RunConfig c = small_decay_config();
    c.out_dir = "/tmp/mellg_cli_out";
    std::ofstream("/tmp/mellg_cli.ini") << serialise_config(c);
    const char* argv[] = {"mellg", "run", "/tmp/mellg_cli.ini"};
    CHECK(cli_main(3, argv) == 0);
    CHECK(std::filesystem::exists("/tmp/mellg_cli_out/decay.csv"));
  }
  {
    const Mesh mesh = box_mesh(Vec3(1, 1, 1), {1, 1, 1},
                               [](const Vec3& c) { return std::abs(c.x()) < 1e-9; },
                               [](const Vec3&) { return true; });
    write_msh(mesh, "/tmp/mellg_cli_mesh.msh");
    const char* argv[] = {"mellg", "mesh-info", "/tmp/mellg_cli_mesh.msh"};
    CHECK(cli_main(3, argv) == 0);
  }
}

TEST_CASE("run_preset applies overrides, honours MELLG_THREADS, checks invariants") {
  std::filesystem::remove_all("/tmp/mellg_preset_out");
  setenv("MELLG_THREADS", "2", 1);
  run_preset("constraint_sweep", "/tmp/mellg_preset_out",
             {"run.t_final_seconds=0", "run.t_final=0.02"});
  unsetenv("MELLG_THREADS");

  int csvs = 0;
  for (const auto& entry :
       std::filesystem::directory_iterator("/tmp/mellg_preset_out"))
    if (entry.path().extension() == ".csv") ++csvs;
  CHECK(csvs == 4);

  // every member CSV carries the exact header
  for (const auto& entry :
       std::filesystem::directory_iterator("/tmp/mellg_preset_out")) {
    std::ifstream in(entry.path());
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == kCsvHeader);
  }
}

TEST_CASE("presets instantiate with the documented members") {
  CHECK(make_preset("applied_field").size() == 5);
  CHECK(make_preset("traction").size() == 5);
  CHECK(make_preset("nutation").size() == 4);
  CHECK(make_preset("theta_sweep").size() == 7);
  CHECK(make_preset("constraint_sweep").size() == 4);
  CHECK(make_preset("cfl_robustness").size() == 16);
  CHECK_THROWS_AS(make_preset("bogus"), InvalidInput);

  const auto thetas = make_preset("theta_sweep");
  CHECK(thetas[0].config.theta == 0.50000005);
  CHECK(thetas[6].config.theta == 1.0);
  for (const auto& m : thetas) CHECK(m.config.initial == "hot");

  const auto fields = make_preset("applied_field");
  CHECK(fields[0].config.h_ext.y() == 0.0);
  CHECK(fields[4].config.h_ext.y() == 7e-4);
  for (const auto& m : fields) {
    CHECK(m.config.gravity);
    CHECK(m.config.box_divisions == std::array<int, 3>{22, 7, 7});
  }
}
