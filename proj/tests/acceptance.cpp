// Acceptance suite: one criterion per block, one pass/fail line each.
// Exit code = number of failed criteria.

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "mellg/diagnostics.hpp"
#include "mellg/integrator.hpp"
#include "mellg/material.hpp"
#include "mellg/presets.hpp"
#include "mellg/solvers.hpp"
#include "mellg/tangent.hpp"

using namespace mellg;

namespace {

int failures = 0;
double tangency_worst = 0;  // collected across the criterion 1-3 runs

void report(int id, const char* label, bool ok, const std::string& detail,
            double seconds) {
  std::printf("[%s] criterion %2d: %s (%s, %.1fs)\n", ok ? "PASS" : "FAIL", id, label,
              detail.c_str(), seconds);
  if (!ok) ++failures;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

RunConfig zero_coupling_cube(double theta) {
  RunConfig c;
  c.mesh_kind = "box";
  c.box_lengths = Vec3(6, 6, 6);
  c.box_divisions = {4, 4, 4};
  c.dirichlet_planes = "xmin";
  c.material_block = "dimensionless";
  c.dim_alpha = 0.001;
  c.dim_mu = 6.89;
  c.dim_lambda = 21.96;
  c.dim_lambda100 = 0;
  c.dim_lambda111 = 0;
  c.theta = theta;
  c.dt = 3.32e-4;
  c.t_final = 200 * 3.32e-4;
  c.initial = "hot";
  c.seed = 1;
  return c;
}

RunResult run_quiet(RunConfig cfg) {
  Problem pr = build_problem(cfg);
  RunResult r = run(pr.mesh, pr.params, std::move(pr.state));
  for (const auto& s : r.steps) tangency_worst = std::max(tangency_worst, s.max_tangency);
  return r;
}

bool finite_energy(const RunResult& r) {
  for (const auto& s : r.steps)
    if (!std::isfinite(s.energy.total()) || !std::isfinite(s.constraint_l1) ||
        !std::isfinite(s.nodal_max))
      return false;
  return true;
}

}  // namespace

int main() {
  // 1: per-step discrete energy law on the bar experiment, 50 steps
  try {
    Timer t;
    RunConfig cfg = make_preset("applied_field")[3].config;  // h_ext = 5e-4
    cfg.t_final_seconds = 1e-10;                             // 50 steps of 2 ps
    const RunResult r = run_quiet(cfg);
    double worst = 0;
    for (const auto& s : r.steps)
      worst = std::max(worst, std::abs(s.law.residual) /
                                  std::max(1.0, std::abs(s.law.E_total())));
    report(1, "discrete energy law on the bar run", r.steps.size() == 50 && worst <= 1e-8,
           "max residual ratio " + num(worst), t.seconds());
  } catch (const std::exception& e) {
    report(1, "discrete energy law on the bar run", false, e.what(), 0);
  }

  // 2: nodal constraint identity, 100 steps of the hot-magnet cube
  try {
    Timer t;
    RunConfig cfg = make_preset("theta_sweep")[0].config;
    cfg.t_final_seconds = 100e-15;  // 100 steps of 1 fs
    const RunResult r = run_quiet(cfg);
    double worst = 0;
    for (const auto& s : r.steps) worst = std::max(worst, s.constraint_identity_err);
    report(2, "nodal constraint identity |m|^2 = 1 + s",
           r.steps.size() == 100 && worst <= 1e-12,
           "max defect " + num(worst), t.seconds());
  } catch (const std::exception& e) {
    report(2, "nodal constraint identity |m|^2 = 1 + s", false, e.what(), 0);
  }

  // 3: constraint violation decays linearly in the step size
  try {
    Timer t;
    std::vector<double> ks{4e-3, 2e-3, 1e-3, 5e-4}, l1s;
    for (double k : ks) {
      RunConfig cfg = make_preset("constraint_sweep")[0].config;
      cfg.dt = k;
      cfg.t_final_seconds = 0;
      cfg.t_final = 0.4;  // fixed T across the sweep
      l1s.push_back(run_quiet(cfg).steps.back().constraint_l1);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = static_cast<int>(ks.size());
    for (int i = 0; i < n; ++i) {
      const double x = std::log(ks[i]), y = std::log(l1s[i]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    report(3, "L1 constraint violation ~ k", slope >= 0.8 && slope <= 1.2,
           "log-log slope " + num(slope), t.seconds());
  } catch (const std::exception& e) {
    report(3, "L1 constraint violation ~ k", false, e.what(), 0);
  }

  // 4: tangency of every update in the criterion 1-3 runs
  report(4, "nodewise tangency m . v = 0", tangency_worst <= 1e-10,
         "max |m.v| " + num(tangency_worst), 0.0);

  // 5: mass-lumped norm equivalence on a random box mesh
  try {
    Timer t;
    Rng rng(2024);
    const Vec3 lengths(rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0),
                       rng.uniform(0.5, 2.0));
    const std::array<int, 3> divs{2 + static_cast<int>(rng.uniform01() * 3),
                                  2 + static_cast<int>(rng.uniform01() * 3),
                                  2 + static_cast<int>(rng.uniform01() * 3)};
    const Mesh mesh =
        box_mesh(lengths, divs, [](const Vec3& c) { return std::abs(c.x()) < 1e-9; },
                 [](const Vec3&) { return true; });
    const SparseMatrix mass = assemble_consistent_mass(mesh);
    const Eigen::VectorXd w3 = lumped_mass(mesh);
    bool ok = true;
    for (int trial = 0; trial < 1000; ++trial) {
      NodalField f(3 * mesh.node_count());
      for (int i = 0; i < f.size(); ++i) f[i] = rng.uniform(-1, 1);
      const double plain = std::sqrt(f.dot(mass * f));
      const double lumped = std::sqrt(f.dot(w3.cwiseProduct(f)));
      ok &= plain <= lumped * (1 + 1e-12);
      ok &= lumped <= std::sqrt(5.0) * plain * (1 + 1e-12);
    }
    report(5, "norm equivalence ||.|| <= ||.||_h <= sqrt(5)||.||", ok,
           "1000 random fields", t.seconds());
  } catch (const std::exception& e) {
    report(5, "norm equivalence ||.|| <= ||.||_h <= sqrt(5)||.||", false, e.what(), 0);
  }

  // 6: transpose-contraction identity against an index-sum oracle
  try {
    Timer t;
    Rng rng(7);
    double worst = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      Tensor4d z(Sym::minor);
      for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j)
          for (int l = 0; l < 3; ++l)
            for (int m = l; m < 3; ++m) {
              const double v = rng.uniform(-1, 1);
              z(i, j, l, m) = z(j, i, l, m) = z(i, j, m, l) = z(j, i, m, l) = v;
            }
      Mat3 sig;
      for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) sig(i, j) = sig(j, i) = rng.uniform(-1, 1);
      const Vec3 m = rng.cube_vec(), w = rng.cube_vec();

      const Mat3 zts = contract(transpose(z), sig);
      const double a_lib = (zts * w).dot(m);
      const double b_lib = (zts * m).dot(w);
      const double c_lib = sig.cwiseProduct(contract(z, Mat3(m * w.transpose()))).sum();

      // oracle: raw quadruple sums
      double a_ref = 0, c_ref = 0;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          for (int l = 0; l < 3; ++l)
            for (int mm = 0; mm < 3; ++mm) {
              a_ref += z(l, mm, j, i) * sig(l, mm) * w[j] * m[i];
              c_ref += sig(i, j) * z(i, j, l, mm) * m[l] * w[mm];
            }
      const double scale =
          std::max({1.0, std::abs(a_ref), std::abs(c_ref), std::abs(a_lib)});
      for (double d : {a_lib - a_ref, b_lib - a_ref, c_lib - c_ref, a_lib - c_lib})
        worst = std::max(worst, std::abs(d) / scale);
    }
    report(6, "tensor identity (Z^t:sigma) pairing", worst <= 1e-12,
           "max relative defect " + num(worst), t.seconds());
  } catch (const std::exception& e) {
    report(6, "tensor identity (Z^t:sigma) pairing", false, e.what(), 0);
  }

  // 7: exchange length of the tabulated material
  try {
    Timer t;
    const Nondimensional n = nondimensionalise(fecosib());
    const double rel = std::abs(n.ell_ex - 3e-9) / 3e-9;
    report(7, "exchange length near 3 nm", rel <= 0.10,
           "l_ex = " + num(n.ell_ex * 1e9) + " nm", t.seconds());
  } catch (const std::exception& e) {
    report(7, "exchange length near 3 nm", false, e.what(), 0);
  }

  // 8: larger theta dissipates more energy
  try {
    Timer t;
    std::vector<double> finals;
    for (double theta : {0.6, 0.8, 1.0})
      finals.push_back(run_quiet(zero_coupling_cube(theta)).steps.back().energy.total());
    const bool ok = finals[0] > finals[1] && finals[1] > finals[2];
    char buf[128];
    std::snprintf(buf, sizeof buf, "E(0.6)=%.6g E(0.8)=%.6g E(1.0)=%.6g", finals[0],
                  finals[1], finals[2]);
    report(8, "energy loss increases with theta", ok, buf, t.seconds());
  } catch (const std::exception& e) {
    report(8, "energy loss increases with theta", false, e.what(), 0);
  }

  // 9: zero-coupling exchange energy never increases
  try {
    Timer t;
    const RunResult r = run_quiet(zero_coupling_cube(0.7));
    bool ok = true;
    double prev = r.initial_energy.exchange;
    for (const auto& s : r.steps) {
      ok &= s.energy.exchange <= prev + 1e-10;
      prev = s.energy.exchange;
    }
    report(9, "zero-coupling exchange decay", ok,
           std::to_string(r.steps.size()) + " steps", t.seconds());
  } catch (const std::exception& e) {
    report(9, "zero-coupling exchange decay", false, e.what(), 0);
  }

  // 10: stronger applied fields rotate the magnetisation further
  try {
    Timer t;
    const auto members = make_preset("applied_field");
    std::vector<double> my;
    for (int i = 1; i <= 4; ++i)  // h_ext in {1,3,5,7}e-4
      my.push_back(run_quiet(members[i].config).steps.back().avg_m.y());
    bool ok = true;
    for (std::size_t i = 1; i < my.size(); ++i) ok &= my[i] > my[i - 1];
    char buf[160];
    std::snprintf(buf, sizeof buf, "final <m_y> = %.4g %.4g %.4g %.4g", my[0], my[1],
                  my[2], my[3]);
    report(10, "direct magnetostriction ordering", ok, buf, t.seconds());
  } catch (const std::exception& e) {
    report(10, "direct magnetostriction ordering", false, e.what(), 0);
  }

  // 11: initial exchange energy of the sinusoidal state
  try {
    Timer t;
    RunConfig cfg;
    cfg.box_lengths = Vec3(6, 6, 6);
    cfg.box_divisions = {23, 23, 23};  // h ~ 0.45
    cfg.dirichlet_planes = "xmin";
    cfg.material_block = "dimensionless";
    cfg.dim_mu = 6.89;
    cfg.dim_lambda = 21.96;
    cfg.initial = "sinusoidal";
    cfg.dt = 1e-3;
    cfg.t_final = 1e-2;
    Problem pr = build_problem(cfg);
    const Assemblies assem = build_assemblies(pr.mesh, pr.params);
    const EnergyBreakdown e = energy(pr.mesh, pr.params, assem, pr.state);
    const double rel = std::abs(e.exchange - 64.8) / 64.8;
    report(11, "initial exchange energy near 64.8", rel <= 0.05,
           "exchange = " + num(e.exchange), t.seconds());
  } catch (const std::exception& e) {
    report(11, "initial exchange energy near 64.8", false, e.what(), 0);
  }

  // 12: stability across the (h, k) sweep, 50 steps each
  try {
    Timer t;
    bool ok = true;
    std::string note;
    for (int div : {7, 10, 12}) {
      for (double k : {0.01, 0.005, 0.0025, 0.00125}) {
        RunConfig cfg = make_preset("cfl_robustness")[0].config;
        cfg.box_divisions = {div, div, div};
        cfg.dt = k;
        cfg.t_final = 50 * k;
        const RunResult r = run_quiet(cfg);
        const double cap = 1.1 * std::abs(r.initial_energy.total());
        bool this_ok = finite_energy(r);
        for (const auto& s : r.steps) this_ok &= std::abs(s.energy.total()) <= cap;
        if (!this_ok)
          note += " div=" + std::to_string(div) + ",k=" + std::to_string(k);
        ok &= this_ok;
      }
    }
    report(12, "bounded energy over the (h,k) sweep", ok,
           ok ? "12 runs, 50 steps each" : ("violations:" + note), t.seconds());
  } catch (const std::exception& e) {
    report(12, "bounded energy over the (h,k) sweep", false, e.what(), 0);
  }

  // 13: solver and reduction oracles against dense linear algebra
  try {
    Timer t;
    Rng rng(99);
    bool ok = true;
    for (int trial = 0; trial < 50; ++trial) {
      const int n = 30;
      Eigen::MatrixXd g(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = rng.uniform(-1, 1);
      const Eigen::MatrixXd spd = g.transpose() * g + Eigen::MatrixXd::Identity(n, n);
      Eigen::MatrixXd nonsym = 0.5 * g;
      for (int i = 0; i < n; ++i) nonsym(i, i) = 4.0 + rng.uniform01();
      Eigen::VectorXd b(n);
      for (int i = 0; i < n; ++i) b[i] = rng.uniform(-1, 1);

      std::vector<Triplet> ts, tn;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          ts.push_back({i, j, spd(i, j)});
          tn.push_back({i, j, nonsym(i, j)});
        }
      const SparseMatrix a_spd = SparseMatrix::from_triplets(n, std::move(ts));
      const SparseMatrix a_gen = SparseMatrix::from_triplets(n, std::move(tn));

      const Eigen::VectorXd x_spd = spd.fullPivLu().solve(b);
      const Eigen::VectorXd x_gen = nonsym.fullPivLu().solve(b);
      ok &= (cg_solve(a_spd, b, {}, 1e-12, 1000).x - x_spd).norm() <=
            1e-8 * x_spd.norm();
      ok &= (gmres_solve(a_gen, b, {}, 1e-12, 30, 1000).x - x_gen).norm() <=
            1e-8 * x_gen.norm();
    }

    // reduction against a dense T^t A T
    const int nodes = 12;
    Eigen::MatrixXd ad(3 * nodes, 3 * nodes);
    for (int i = 0; i < ad.rows(); ++i)
      for (int j = 0; j < ad.cols(); ++j) ad(i, j) = rng.uniform(-1, 1);
    std::vector<Triplet> ta;
    for (int i = 0; i < ad.rows(); ++i)
      for (int j = 0; j < ad.cols(); ++j) ta.push_back({i, j, ad(i, j)});
    const SparseMatrix a = SparseMatrix::from_triplets(3 * nodes, std::move(ta));
    NodalField m(3 * nodes);
    for (int z = 0; z < nodes; ++z) node(m, z) = rng.cube_vec().normalized() * 1.2;
    Eigen::VectorXd rhs(3 * nodes);
    for (int i = 0; i < rhs.size(); ++i) rhs[i] = rng.uniform(-1, 1);
    const TangentBasis basis = tangent_basis(m);
    const ReducedSystem sys = nullspace_reduce(a, rhs, basis);
    Eigen::MatrixXd t_dense = Eigen::MatrixXd::Zero(3 * nodes, 2 * nodes);
    for (int z = 0; z < nodes; ++z) {
      t_dense.block<3, 1>(3 * z, 2 * z) = basis.t1[z];
      t_dense.block<3, 1>(3 * z, 2 * z + 1) = basis.t2[z];
    }
    const Eigen::MatrixXd want = t_dense.transpose() * ad * t_dense;
    ok &= (sys.matrix.dense() - want).norm() <= 1e-12 * want.norm();
    ok &= (sys.rhs - t_dense.transpose() * rhs).norm() <= 1e-12 * rhs.norm();

    report(13, "solver and reduction oracles", ok, "50 systems + dense T^tAT",
           t.seconds());
  } catch (const std::exception& e) {
    report(13, "solver and reduction oracles", false, e.what(), 0);
  }

  std::printf("%s: %d of 13 criteria failed\n", failures == 0 ? "SUCCESS" : "FAILURE",
              failures);
  return failures;
}
