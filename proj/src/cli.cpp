#include "mellg/cli.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mellg/diagnostics.hpp"
#include "mellg/output.hpp"
#include "mellg/presets.hpp"

namespace mellg {

namespace {

Tensor4d random_minor_tensor(Rng& rng) {
  Tensor4d z(Sym::minor);
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j)
      for (int l = 0; l < 3; ++l)
        for (int m = l; m < 3; ++m) {
          const double v = rng.uniform(-1, 1);
          z(i, j, l, m) = z(j, i, l, m) = z(i, j, m, l) = z(j, i, m, l) = v;
        }
  return z;
}

Mat3 random_symmetric(Rng& rng) {
  Mat3 s;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) s(i, j) = s(j, i) = rng.uniform(-1, 1);
  return s;
}

bool report(const char* what, bool ok) {
  std::printf("[%s] %s\n", ok ? "ok" : "FAIL", what);
  return ok;
}

int verify() {
  bool all = true;
  Rng rng(7);

  {  // transpose/contraction identity for minorly symmetric tensors
    double worst = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const Tensor4d z = random_minor_tensor(rng);
      const Mat3 sig = random_symmetric(rng);
      const Vec3 m = rng.cube_vec(), w = rng.cube_vec();
      const Mat3 zt_sig = contract(transpose(z), sig);
      const double a = (zt_sig * w).dot(m);
      const double b = (zt_sig * m).dot(w);
      const double c = sig.cwiseProduct(contract(z, Mat3(m * w.transpose()))).sum();
      const double scale = std::max({1.0, std::abs(a), std::abs(b), std::abs(c)});
      worst = std::max({worst, std::abs(a - b) / scale, std::abs(a - c) / scale});
    }
    all &= report("tensor transpose-contraction identity", worst < 1e-12);
  }

  Mesh mesh = box_mesh(Vec3(6, 6, 6), {3, 3, 3},
                       [](const Vec3& x) { return x.x() < 1e-9; }, {});

  {  // lumped vs consistent product bounds
    const SparseMatrix mass = assemble_consistent_mass(mesh);
    const Eigen::VectorXd w3 = lumped_mass(mesh);
    bool ok = true;
    for (int trial = 0; trial < 200; ++trial) {
      NodalField f(3 * mesh.node_count());
      for (int i = 0; i < f.size(); ++i) f[i] = rng.uniform(-1, 1);
      const double consistent = f.dot(mass * f);
      const double lumped = f.dot(w3.cwiseProduct(f));
      ok &= consistent <= lumped * (1 + 1e-12) && lumped <= 5 * consistent * (1 + 1e-12);
    }
    all &= report("mass-lumped norm equivalence", ok);
  }

  {  // pure exchange relaxation: identities and monotone decay
    Params p;
    p.alpha = 0.01;
    p.theta = 0.7;
    p.dt = 1e-3;
    p.T_final = 15e-3;
    p.C = isotropic_stiffness(1.0, 1.0);
    p.Z = Tensor4d(Sym::minor);
    State st = init_state_from_field(mesh, hot_field(mesh, 11));
    RunResult r = run(mesh, p, std::move(st));
    bool mono = true, ident = true, tang = true, law = true;
    double prev = r.initial_energy.exchange;
    for (const auto& s : r.steps) {
      mono &= s.energy.exchange <= prev + 1e-10;
      prev = s.energy.exchange;
      ident &= s.constraint_identity_err <= 1e-12;
      tang &= s.max_tangency <= 1e-10;
      law &= std::abs(s.law.residual) <= 1e-10;
    }
    all &= report("zero-coupling exchange decay monotone", mono);
    all &= report("nodal constraint identity", ident);
    all &= report("tangent-space updates", tang);
    all &= report("zero-coupling energy law residual", law);
  }

  {  // coupled run: discrete energy law at solver precision
    RunConfig cfg = make_preset("theta_sweep")[2].config;
    cfg.t_final_seconds = 0;
    cfg.t_final = 10 * 3.3194067939900003e-4;
    Problem pr = build_problem(cfg);
    RunResult r = run(pr.mesh, pr.params, std::move(pr.state));
    bool law = true;
    for (const auto& s : r.steps)
      law &= std::abs(s.law.residual) <= 1e-8 * std::max(1.0, std::abs(s.law.E_total()));
    all &= report("coupled discrete energy law", law);
  }

  return all ? 0 : 1;
}

int mesh_info(const std::string& path, const std::vector<int>& dir_tags,
              const std::vector<int>& neu_tags) {
  std::map<int, Region> tags;
  for (int t : dir_tags) tags[t] = Region::dirichlet;
  for (int t : neu_tags) tags[t] = Region::neumann;
  const Mesh mesh = read_msh(path, tags);

  int n_dir = 0, n_neu = 0, n_other = 0;
  double a_dir = 0, a_neu = 0;
  for (const auto& bf : mesh.boundary_faces) {
    if (bf.region == Region::dirichlet) {
      ++n_dir;
      a_dir += bf.area;
    } else if (bf.region == Region::neumann) {
      ++n_neu;
      a_neu += bf.area;
    } else {
      ++n_other;
    }
  }
  std::printf("nodes:            %d\n", mesh.node_count());
  std::printf("tetrahedra:       %d\n", mesh.tet_count());
  std::printf("volume:           %.12g\n", mesh.total_volume);
  std::printf("boundary faces:   %zu\n", mesh.boundary_faces.size());
  std::printf("  dirichlet:      %d (area %.12g)\n", n_dir, a_dir);
  std::printf("  neumann:        %d (area %.12g)\n", n_neu, a_neu);
  std::printf("  other:          %d\n", n_other);
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Finite-element integrator for magnetisation dynamics with "
               "magnetoelastic coupling"};
  app.require_subcommand(1);

  std::string config_path, out_dir, msh_path;
  std::string preset_name;
  std::vector<std::string> overrides;
  std::vector<int> dir_tags, neu_tags;

  CLI::App* cmd_run = app.add_subcommand("run", "Run a config file");
  cmd_run->add_option("config", config_path, "INI config path")->required();
  cmd_run->add_option("--out", out_dir, "override the output directory");

  CLI::App* cmd_preset = app.add_subcommand("preset", "Run a built-in experiment family");
  cmd_preset->add_option("name", preset_name, "preset name")->required();
  cmd_preset->add_option("--out", out_dir, "output directory");
  cmd_preset->add_option("overrides", overrides, "section.key=value overrides");

  CLI::App* cmd_verify =
      app.add_subcommand("verify", "Run the invariant suite on a built-in cube");

  CLI::App* cmd_info = app.add_subcommand("mesh-info", "Print counts and volumes of a mesh");
  cmd_info->add_option("path", msh_path, "MSH 2.2 file")->required();
  cmd_info->add_option("--dirichlet-tags", dir_tags, "physical tags read as Dirichlet");
  cmd_info->add_option("--neumann-tags", neu_tags, "physical tags read as Neumann");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (cmd_run->parsed()) {
      RunConfig cfg = parse_config_file(config_path);
      if (!out_dir.empty()) cfg.out_dir = out_dir;
      const RunResult r = execute_config(cfg);
      std::printf("completed %zu steps; wrote %s/%s\n", r.steps.size(), cfg.out_dir.c_str(),
                  cfg.csv.c_str());
      return 0;
    }
    if (cmd_preset->parsed()) {
      run_preset(preset_name, out_dir, overrides);
      std::printf("preset %s completed\n", preset_name.c_str());
      return 0;
    }
    if (cmd_verify->parsed()) return verify();
    if (cmd_info->parsed()) return mesh_info(msh_path, dir_tags, neu_tags);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}

}  // namespace mellg
