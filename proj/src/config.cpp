#include "mellg/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mellg {

namespace {

bool veq(const Vec3& a, const Vec3& b) {
  return a.x() == b.x() && a.y() == b.y() && a.z() == b.z();
}

}  // namespace

bool RunConfig::operator==(const RunConfig& o) const {
  return mesh_kind == o.mesh_kind && veq(box_lengths, o.box_lengths) &&
         box_divisions == o.box_divisions && dirichlet_planes == o.dirichlet_planes &&
         neumann_planes == o.neumann_planes && traction_plane == o.traction_plane &&
         msh_path == o.msh_path && msh_dirichlet_tags == o.msh_dirichlet_tags &&
         msh_neumann_tags == o.msh_neumann_tags && material_block == o.material_block &&
         physical.A == o.physical.A && physical.alpha == o.physical.alpha &&
         physical.gamma == o.physical.gamma && physical.mu0 == o.physical.mu0 &&
         physical.Ms == o.physical.Ms && physical.lambda100 == o.physical.lambda100 &&
         physical.lambda111 == o.physical.lambda111 && physical.rho == o.physical.rho &&
         physical.mu_lame == o.physical.mu_lame &&
         physical.lambda_lame == o.physical.lambda_lame &&
         physical.g_grav == o.physical.g_grav && dim_alpha == o.dim_alpha &&
         dim_kappa == o.dim_kappa && dim_mu == o.dim_mu && dim_lambda == o.dim_lambda &&
         dim_lambda100 == o.dim_lambda100 && dim_lambda111 == o.dim_lambda111 &&
         theta == o.theta && dt == o.dt && dt_seconds == o.dt_seconds &&
         t_final == o.t_final && t_final_seconds == o.t_final_seconds &&
         veq(h_ext, o.h_ext) && veq(f, o.f) && veq(traction, o.traction) &&
         gravity == o.gravity && initial == o.initial && veq(initial_m, o.initial_m) &&
         seed == o.seed && cg_tol == o.cg_tol && gmres_tol == o.gmres_tol &&
         gmres_restart == o.gmres_restart && max_iterations == o.max_iterations &&
         out_dir == o.out_dir && csv == o.csv && snapshot_stride == o.snapshot_stride &&
         unsafe_theta == o.unsafe_theta && hat_energy == o.hat_energy &&
         freeze_ilu == o.freeze_ilu;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  std::size_t b = s.find_last_not_of(" \t");
  return (a == std::string::npos) ? "" : s.substr(a, b - a + 1);
}

double to_double(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return d;
  } catch (...) {
    throw ParseError("config: bad number '" + v + "' for " + key);
  }
}

int to_int(const std::string& v, const std::string& key) {
  try {
    return std::stoi(v);
  } catch (...) {
    throw ParseError("config: bad integer '" + v + "' for " + key);
  }
}

bool to_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ParseError("config: bad boolean '" + v + "' for " + key);
}

Vec3 to_vec3(const std::string& v, const std::string& key) {
  std::istringstream is(v);
  Vec3 r;
  if (!(is >> r.x() >> r.y() >> r.z()))
    throw ParseError("config: bad vector '" + v + "' for " + key);
  return r;
}

std::array<int, 3> to_int3(const std::string& v, const std::string& key) {
  std::istringstream is(v);
  std::array<int, 3> r;
  if (!(is >> r[0] >> r[1] >> r[2]))
    throw ParseError("config: bad triple '" + v + "' for " + key);
  return r;
}

std::vector<int> to_ints(const std::string& v) {
  std::istringstream is(v);
  std::vector<int> r;
  int x;
  while (is >> x) r.push_back(x);
  return r;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(const Vec3& v) { return fmt(v.x()) + " " + fmt(v.y()) + " " + fmt(v.z()); }

void set_key(RunConfig& c, const std::string& sec, const std::string& key,
             const std::string& val) {
  const std::string full = sec + "." + key;
  if (sec == "mesh") {
    if (key == "kind") c.mesh_kind = val;
    else if (key == "lengths") c.box_lengths = to_vec3(val, full);
    else if (key == "divisions") c.box_divisions = to_int3(val, full);
    else if (key == "dirichlet") c.dirichlet_planes = val;
    else if (key == "neumann") c.neumann_planes = val;
    else if (key == "traction_plane") c.traction_plane = val;
    else if (key == "msh_path") c.msh_path = val;
    else if (key == "msh_dirichlet_tags") c.msh_dirichlet_tags = to_ints(val);
    else if (key == "msh_neumann_tags") c.msh_neumann_tags = to_ints(val);
    else throw ParseError("config: unknown key " + full);
  } else if (sec == "material") {
    if (key == "block") c.material_block = val;
    else if (key == "A") c.physical.A = to_double(val, full);
    else if (key == "alpha") c.physical.alpha = to_double(val, full);
    else if (key == "gamma") c.physical.gamma = to_double(val, full);
    else if (key == "mu0") c.physical.mu0 = to_double(val, full);
    else if (key == "Ms") c.physical.Ms = to_double(val, full);
    else if (key == "lambda100") c.physical.lambda100 = to_double(val, full);
    else if (key == "lambda111") c.physical.lambda111 = to_double(val, full);
    else if (key == "rho") c.physical.rho = to_double(val, full);
    else if (key == "mu") c.physical.mu_lame = to_double(val, full);
    else if (key == "lambda") c.physical.lambda_lame = to_double(val, full);
    else if (key == "g_grav") c.physical.g_grav = to_double(val, full);
    else if (key == "dim_alpha") c.dim_alpha = to_double(val, full);
    else if (key == "dim_kappa") c.dim_kappa = to_double(val, full);
    else if (key == "dim_mu") c.dim_mu = to_double(val, full);
    else if (key == "dim_lambda") c.dim_lambda = to_double(val, full);
    else if (key == "dim_lambda100") c.dim_lambda100 = to_double(val, full);
    else if (key == "dim_lambda111") c.dim_lambda111 = to_double(val, full);
    else throw ParseError("config: unknown key " + full);
  } else if (sec == "run") {
    if (key == "theta") c.theta = to_double(val, full);
    else if (key == "dt") c.dt = to_double(val, full);
    else if (key == "dt_seconds") c.dt_seconds = to_double(val, full);
    else if (key == "t_final") c.t_final = to_double(val, full);
    else if (key == "t_final_seconds") c.t_final_seconds = to_double(val, full);
    else if (key == "h_ext") c.h_ext = to_vec3(val, full);
    else if (key == "f") c.f = to_vec3(val, full);
    else if (key == "traction") c.traction = to_vec3(val, full);
    else if (key == "gravity") c.gravity = to_bool(val, full);
    else throw ParseError("config: unknown key " + full);
  } else if (sec == "initial") {
    if (key == "kind") c.initial = val;
    else if (key == "m") c.initial_m = to_vec3(val, full);
    else if (key == "seed") c.seed = std::stoull(val);
    else throw ParseError("config: unknown key " + full);
  } else if (sec == "solver") {
    if (key == "cg_tol") c.cg_tol = to_double(val, full);
    else if (key == "gmres_tol") c.gmres_tol = to_double(val, full);
    else if (key == "gmres_restart") c.gmres_restart = to_int(val, full);
    else if (key == "max_iterations") c.max_iterations = to_int(val, full);
    else throw ParseError("config: unknown key " + full);
  } else if (sec == "output") {
    if (key == "dir") c.out_dir = val;
    else if (key == "csv") c.csv = val;
    else if (key == "snapshot_stride") c.snapshot_stride = to_int(val, full);
    else throw ParseError("config: unknown key " + full);
  } else if (sec == "flags") {
    if (key == "unsafe_theta") c.unsafe_theta = to_bool(val, full);
    else if (key == "hat_energy") c.hat_energy = to_bool(val, full);
    else if (key == "freeze_ilu") c.freeze_ilu = to_bool(val, full);
    else throw ParseError("config: unknown key " + full);
  } else {
    throw ParseError("config: unknown section [" + sec + "]");
  }
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ParseError("config: malformed section header at line " +
                         std::to_string(line_no));
      section = line.substr(1, line.size() - 2);
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("config: expected 'key = value' at line " + std::to_string(line_no));
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (section.empty())
      throw ParseError("config: key outside a section at line " + std::to_string(line_no));
    set_key(cfg, section, key, val);
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string serialise_config(const RunConfig& c) {
  std::ostringstream o;
  o << "[mesh]\n";
  o << "kind = " << c.mesh_kind << "\n";
  o << "lengths = " << fmt(c.box_lengths) << "\n";
  o << "divisions = " << c.box_divisions[0] << " " << c.box_divisions[1] << " "
    << c.box_divisions[2] << "\n";
  o << "dirichlet = " << c.dirichlet_planes << "\n";
  o << "neumann = " << c.neumann_planes << "\n";
  o << "traction_plane = " << c.traction_plane << "\n";
  o << "msh_path = " << c.msh_path << "\n";
  o << "msh_dirichlet_tags =";
  for (int t : c.msh_dirichlet_tags) o << " " << t;
  o << "\nmsh_neumann_tags =";
  for (int t : c.msh_neumann_tags) o << " " << t;
  o << "\n\n[material]\n";
  o << "block = " << c.material_block << "\n";
  o << "A = " << fmt(c.physical.A) << "\n";
  o << "alpha = " << fmt(c.physical.alpha) << "\n";
  o << "gamma = " << fmt(c.physical.gamma) << "\n";
  o << "mu0 = " << fmt(c.physical.mu0) << "\n";
  o << "Ms = " << fmt(c.physical.Ms) << "\n";
  o << "lambda100 = " << fmt(c.physical.lambda100) << "\n";
  o << "lambda111 = " << fmt(c.physical.lambda111) << "\n";
  o << "rho = " << fmt(c.physical.rho) << "\n";
  o << "mu = " << fmt(c.physical.mu_lame) << "\n";
  o << "lambda = " << fmt(c.physical.lambda_lame) << "\n";
  o << "g_grav = " << fmt(c.physical.g_grav) << "\n";
  o << "dim_alpha = " << fmt(c.dim_alpha) << "\n";
  o << "dim_kappa = " << fmt(c.dim_kappa) << "\n";
  o << "dim_mu = " << fmt(c.dim_mu) << "\n";
  o << "dim_lambda = " << fmt(c.dim_lambda) << "\n";
  o << "dim_lambda100 = " << fmt(c.dim_lambda100) << "\n";
  o << "dim_lambda111 = " << fmt(c.dim_lambda111) << "\n";
  o << "\n[run]\n";
  o << "theta = " << fmt(c.theta) << "\n";
  o << "dt = " << fmt(c.dt) << "\n";
  o << "dt_seconds = " << fmt(c.dt_seconds) << "\n";
  o << "t_final = " << fmt(c.t_final) << "\n";
  o << "t_final_seconds = " << fmt(c.t_final_seconds) << "\n";
  o << "h_ext = " << fmt(c.h_ext) << "\n";
  o << "f = " << fmt(c.f) << "\n";
  o << "traction = " << fmt(c.traction) << "\n";
  o << "gravity = " << (c.gravity ? "true" : "false") << "\n";
  o << "\n[initial]\n";
  o << "kind = " << c.initial << "\n";
  o << "m = " << fmt(c.initial_m) << "\n";
  o << "seed = " << c.seed << "\n";
  o << "\n[solver]\n";
  o << "cg_tol = " << fmt(c.cg_tol) << "\n";
  o << "gmres_tol = " << fmt(c.gmres_tol) << "\n";
  o << "gmres_restart = " << c.gmres_restart << "\n";
  o << "max_iterations = " << c.max_iterations << "\n";
  o << "\n[output]\n";
  o << "dir = " << c.out_dir << "\n";
  o << "csv = " << c.csv << "\n";
  o << "snapshot_stride = " << c.snapshot_stride << "\n";
  o << "\n[flags]\n";
  o << "unsafe_theta = " << (c.unsafe_theta ? "true" : "false") << "\n";
  o << "hat_energy = " << (c.hat_energy ? "true" : "false") << "\n";
  o << "freeze_ilu = " << (c.freeze_ilu ? "true" : "false") << "\n";
  return o.str();
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ParseError("override: expected section.key=value, got '" + assignment + "'");
  const std::string lhs = trim(assignment.substr(0, eq));
  const std::string val = trim(assignment.substr(eq + 1));
  auto dot = lhs.find('.');
  if (dot == std::string::npos)
    throw ParseError("override: expected section.key=value, got '" + assignment + "'");
  set_key(cfg, lhs.substr(0, dot), lhs.substr(dot + 1), val);
}

namespace {

FacePredicate plane_predicate(const std::string& names, const Vec3& lengths) {
  if (names.empty() || names == "none") return {};
  if (names == "rest") return [](const Vec3&) { return true; };
  std::vector<std::pair<int, double>> planes;  // axis, coordinate
  std::stringstream ss(names);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    if (item.size() != 4) throw InvalidInput("mesh: bad plane name '" + item + "'");
    int axis = item[0] == 'x' ? 0 : item[0] == 'y' ? 1 : item[0] == 'z' ? 2 : -1;
    if (axis < 0) throw InvalidInput("mesh: bad plane name '" + item + "'");
    double coord = (item.substr(1) == "min") ? 0.0
                   : (item.substr(1) == "max")
                       ? lengths[axis]
                       : throw InvalidInput("mesh: bad plane name '" + item + "'");
    planes.emplace_back(axis, coord);
  }
  const double tol = 1e-9 * std::max({lengths[0], lengths[1], lengths[2]});
  return [planes, tol](const Vec3& x) {
    for (const auto& [axis, coord] : planes)
      if (std::abs(x[axis] - coord) < tol) return true;
    return false;
  };
}

}  // namespace

Problem build_problem(const RunConfig& cfg) {
  Problem pr;

  if (cfg.mesh_kind == "box") {
    pr.mesh = box_mesh(cfg.box_lengths, cfg.box_divisions,
                       plane_predicate(cfg.dirichlet_planes, cfg.box_lengths),
                       plane_predicate(cfg.neumann_planes, cfg.box_lengths));
  } else if (cfg.mesh_kind == "msh") {
    std::map<int, Region> tags;
    for (int t : cfg.msh_dirichlet_tags) tags[t] = Region::dirichlet;
    for (int t : cfg.msh_neumann_tags) tags[t] = Region::neumann;
    pr.mesh = read_msh(cfg.msh_path, tags);
  } else {
    throw InvalidInput("config: mesh.kind must be box or msh");
  }

  Params& p = pr.params;
  Vec3 f_total = cfg.f;
  if (cfg.material_block == "physical") {
    const Nondimensional n = nondimensionalise(cfg.physical);
    p.alpha = cfg.physical.alpha;
    p.kappa = n.kappa;
    p.C = n.C;
    const double l100 = cfg.physical.lambda100;
    const double l111 = cfg.physical.lambda111;
    p.Z = (l100 == l111)
              ? isotropic_magnetostriction(l100)
              : cubic_magnetostriction(l100, l111,
                                       {Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)});
    p.time_scale = n.time_scale;
    if (cfg.gravity)
      f_total += n.scale_volume_force(Vec3(0, 0, -cfg.physical.rho * cfg.physical.g_grav));
  } else if (cfg.material_block == "dimensionless") {
    p.alpha = cfg.dim_alpha;
    p.kappa = cfg.dim_kappa;
    p.C = isotropic_stiffness(cfg.dim_mu, cfg.dim_lambda);
    if (cfg.dim_lambda100 == 0.0 && cfg.dim_lambda111 == 0.0)
      p.Z = Tensor4d(Sym::minor);
    else if (cfg.dim_lambda100 == cfg.dim_lambda111)
      p.Z = isotropic_magnetostriction(cfg.dim_lambda100);
    else
      p.Z = cubic_magnetostriction(cfg.dim_lambda100, cfg.dim_lambda111,
                                   {Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)});
    p.time_scale = 0;
    if (cfg.gravity)
      throw InvalidInput("config: gravity=true needs the physical material block");
  } else {
    throw InvalidInput("config: material.block must be physical or dimensionless");
  }

  p.theta = cfg.theta;
  if ((cfg.dt != 0) == (cfg.dt_seconds != 0))
    throw InvalidInput("config: set exactly one of run.dt / run.dt_seconds");
  if ((cfg.t_final != 0) == (cfg.t_final_seconds != 0))
    throw InvalidInput("config: set exactly one of run.t_final / run.t_final_seconds");
  if ((cfg.dt_seconds != 0 || cfg.t_final_seconds != 0) && p.time_scale == 0)
    throw InvalidInput("config: *_seconds values need the physical material block");
  p.dt = cfg.dt != 0 ? cfg.dt : cfg.dt_seconds / p.time_scale;
  p.T_final = cfg.t_final != 0 ? cfg.t_final : cfg.t_final_seconds / p.time_scale;
  if (!(p.dt > 0) || !(p.T_final > 0))
    throw InvalidInput("config: dt and t_final must be positive");

  if (!f_total.isZero(0.0)) p.f = [f_total](const Vec3&) { return f_total; };
  if (!cfg.h_ext.isZero(0.0)) {
    const Vec3 h = cfg.h_ext;
    p.h_ext = [h](const Vec3&) { return h; };
  }
  if (!cfg.traction.isZero(0.0)) {
    const Vec3 g = cfg.traction;
    if (cfg.mesh_kind == "box" && !cfg.traction_plane.empty()) {
      FacePredicate on_plane = plane_predicate(cfg.traction_plane, cfg.box_lengths);
      p.g = [g, on_plane](const Vec3& x) { return on_plane(x) ? g : Vec3::Zero(); };
    } else {
      p.g = [g](const Vec3&) { return g; };
    }
  }

  p.cg_tol = cfg.cg_tol;
  p.gmres_tol = cfg.gmres_tol;
  p.gmres_restart = cfg.gmres_restart;
  p.max_iterations = cfg.max_iterations;
  p.unsafe_theta = cfg.unsafe_theta;
  p.hat_energy = cfg.hat_energy;
  p.freeze_ilu = cfg.freeze_ilu;

  const DirichletMask mask = pr.mesh.dirichlet_node_mask();
  if (cfg.initial == "hot") {
    pr.state = init_state_from_field(pr.mesh, hot_field(pr.mesh, cfg.seed));
  } else {
    VecFieldFn m0;
    if (cfg.initial == "uniform") {
      const Vec3 m = cfg.initial_m;
      m0 = [m](const Vec3&) { return m; };
    } else if (cfg.initial == "perturbed") {
      m0 = [](const Vec3&) { return Vec3(0.9, 0.2, 0); };
    } else if (cfg.initial == "sinusoidal") {
      m0 = [](const Vec3& x) -> Vec3 {
        const double w = x.x() + x.y() + x.z();
        return Vec3(2.0, std::sin(w), std::cos(w)) / std::sqrt(5.0);
      };
    } else {
      throw InvalidInput("config: unknown initial.kind '" + cfg.initial + "'");
    }
    pr.state = init_state(pr.mesh, m0, {}, {}, mask);
  }
  return pr;
}

}  // namespace mellg
