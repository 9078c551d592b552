// Runs the full acceptance suite and prints one verdict line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "vasclab/cli/config.hpp"
#include "vasclab/cli/experiments.hpp"
#include "vasclab/cli/initial_data.hpp"
#include "vasclab/diagnostics/conservation.hpp"
#include "vasclab/model/entropy.hpp"
#include "vasclab/model/flux.hpp"
#include "vasclab/parabolic/monitor.hpp"
#include "vasclab/random.hpp"
#include "vasclab/solver/solver.hpp"
#include "vasclab/spectral/block_decay.hpp"
#include "vasclab/spectral/compensator.hpp"
#include "vasclab/spectral/green.hpp"
#include "vasclab/spectral/sk.hpp"

using namespace vasclab;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << (detail.tellp() > 0 ? "; " : "") << what << (ok ? "" : " [FAIL]");
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

const cli::CriterionResult* find(const cli::ExperimentOutcome& o, const std::string& name) {
  for (const auto& c : o.criteria)
    if (c.name == name) return &c;
  return nullptr;
}

void require_criterion(Verdict& v, const cli::ExperimentOutcome& o, const std::string& name) {
  if (!o.error_kind.empty()) {
    v.require(false, name + ": " + o.error_kind + " " + o.error_message);
    return;
  }
  const auto* c = find(o, name);
  if (!c) {
    v.require(false, name + " missing");
    return;
  }
  v.require(c->pass, name + "=" + fmt(c->value) + " vs " + fmt(c->threshold));
}

// Runs monitored during the suite, checked again by the phi-bound criterion.
struct MonitoredRun {
  std::string name;
  int dim;
  model::ModelParams params;
  solver::RunRecord record;
};
std::vector<MonitoredRun> g_runs;
bool g_nonlinear_bounds_ok = false;

double max_abs(const model::FieldState& s) {
  double m = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    m = std::max({m, std::abs(s.rho[i]), std::abs(s.phi[i])});
    for (const auto& c : s.v) m = std::max(m, std::abs(c[i]));
  }
  return m;
}

void equilibrium(Verdict& v) {
  model::ModelParams p;
  for (auto g : {model::GridSpec::line(256, 256.0), model::GridSpec::square(32, 32, 32.0, 32.0)}) {
    solver::Solver s(p, g);
    auto st = model::FieldState::zeros(g);
    const double dt = s.cfl_dt(st);
    for (int k = 0; k < 1000; ++k) s.coupled_step(st, dt);
    const double drift = max_abs(st) / std::max({p.rho_bar, p.phi_bar(), 1.0});
    v.require(drift <= 1e-12, "n=" + std::to_string(g.dim) + " drift=" + fmt(drift));
  }
}

void mass(Verdict& v) {
  model::ModelParams p;
  struct Case {
    model::GridSpec grid;
    double t_final;
  };
  for (const auto& c : {Case{model::GridSpec::line(1024, 2048.0), 500.0}, Case{model::GridSpec::square(64, 64, 128.0, 128.0), 150.0}}) {
    cli::InitialDataSpec init;
    init.preset = "band_limited";
    const auto u0 = cli::make_initial_state(init, c.grid, p, 2, 11);
    solver::SolverConfig sc;
    sc.t_final = c.t_final;
    const auto rec = solver::run(u0, p, sc);
    const auto cons = diagnostics::monitor_conservation(rec, p);
    const double tol = 1e-12 * std::max(1.0, rec.steps / 1000.0);
    v.require(rec.termination == solver::Termination::completed && cons.max_mass_drift <= tol,
              "n=" + std::to_string(c.grid.dim) + " drift=" + fmt(cons.max_mass_drift) + " over " +
                  std::to_string(rec.steps) + " steps");
    g_runs.push_back({"mass n=" + std::to_string(c.grid.dim), c.grid.dim, p, rec});
  }
}

void entropy(Verdict& v) {
  model::ModelParams p;
  p.mu = 0.0;
  const auto g = model::GridSpec::line(1024, 1024.0);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    cli::InitialDataSpec init;
    init.preset = "band_limited";
    const auto u0 = cli::make_initial_state(init, g, p, 2, seed);
    solver::SolverConfig sc;
    sc.t_final = 300.0;
    sc.track_step_entropy = true;
    const auto rec = solver::run(u0, p, sc);
    const auto cons = diagnostics::monitor_conservation(rec, p, 1e-10);
    v.require(rec.termination == solver::Termination::completed && cons.flagged_increments == 0,
              "seed " + std::to_string(seed) + ": max increment/E0=" + fmt(cons.max_entropy_increment) + " over " +
                  std::to_string(rec.steps) + " steps");
    g_runs.push_back({"entropy seed " + std::to_string(seed), 1, p, rec});
  }
}

void sk(Verdict& v) {
  model::ModelParams p;
  for (int n : {1, 2}) {
    const auto r = spectral::check_sk(spectral::build_symbols(p, n), 1000);
    v.require(r.holds && r.worst_margin > 0.1, "n=" + std::to_string(n) + " worst=" + fmt(r.worst_margin));
  }
}

void compensator(Verdict& v) {
  model::ModelParams p;
  for (int n : {1, 2}) {
    const auto s = spectral::build_symbols(p, n);
    const auto rep = spectral::find_compensator(s, spectral::default_eta_grid(s), 500);
    const double fresh = spectral::verify_compensator(s, rep, 500, 2024 + n);
    v.require(rep.min_margin > 0.0 && fresh >= rep.c_star - 1e-9,
              "n=" + std::to_string(n) + " eta=" + fmt(rep.eta) + " c=" + fmt(rep.c_star) + " fresh=" + fmt(fresh));
  }
  const auto raw = spectral::raw_symbols(1, 1.0, 1.0);
  const double m = spectral::compensator_margin(raw, spectral::sphere_directions(1, 2), 0.5);
  v.require(std::abs(m - 0.5) <= 1e-10, "hand case margin=" + fmt(m));
}

void blocks(Verdict& v) {
  model::ModelParams p;
  for (int n : {1, 2}) {
    const auto s = spectral::build_symbols(p, n);
    const auto rep = spectral::decompose_green(s, spectral::default_xi_cutoff(s));
    const auto res = spectral::measure_block_decay(rep, 2.0, std::vector<int>(n, 0));
    for (const auto& b : res)
      v.require(std::abs(b.fit.exponent - b.fit.reference) <= 0.1 && b.fit.r2 >= 0.98,
                "n=" + std::to_string(n) + " " + b.block_id + " " + fmt(b.fit.exponent) + "/" + fmt(b.fit.reference));
  }
}

cli::ExperimentConfig linear_config(int dim) {
  cli::ExperimentConfig c;
  c.experiment = cli::Experiment::linear_decay;
  c.grid = dim == 1 ? model::GridSpec::line(2048, 4096.0) : model::GridSpec::square(256, 256, 512.0, 512.0);
  c.blocks.dims = {};
  return c;
}

void linear(Verdict& v) {
  for (int n : {1, 2}) require_criterion(v, cli::evaluate_experiment(linear_config(n)), "linear_U_L2_n" + std::to_string(n));
}

void nonlinear(Verdict& v) {
  cli::ExperimentConfig c;
  c.experiment = cli::Experiment::nonlinear_decay;
  c.grid = model::GridSpec::line(2048, 4096.0);
  c.solver.t_final = 2000.0;
  c.initial.preset = "gaussian";
  c.initial.width = 16.0;
  c.initial.hs_norm = 0.02;
  c.fit.tolerance = 0.15;
  c.fit.min_r2 = 0.95;
  const auto o = cli::evaluate_experiment(c);
  require_criterion(v, o, "run_completed");
  require_criterion(v, o, "decay_U_L2");
  require_criterion(v, o, "decay_phi_L2");
  const auto* b = find(o, "phi_bounds");
  g_nonlinear_bounds_ok = b && b->pass;
}

void parabolic_oracle(Verdict& v) {
  cli::ExperimentConfig c;
  c.experiment = cli::Experiment::parabolic_verify;
  c.seed = 3;
  for (auto g : {model::GridSpec::line(256, 64.0), model::GridSpec::square(64, 64, 32.0, 32.0)}) {
    c.grid = g;
    const auto o = cli::evaluate_experiment(c);
    require_criterion(v, o, "duhamel_vs_spectral");
  }
}

void phi_bounds(Verdict& v) {
  for (const auto& run : g_runs) {
    const auto r = parabolic::monitor_phi_bounds(run.record.norms, run.params, run.dim, 2);
    v.require(r.ok(), run.name + " flagged " + std::to_string(r.l1_violations + r.grad_violations));
  }
  v.require(g_nonlinear_bounds_ok, "nonlinear decay run");
}

void structural(Verdict& v) {
  model::ModelParams p;
  std::mt19937_64 gen(99);
  double roundtrip = 0.0, asym = 0.0, min_eig = INFINITY;
  for (int k = 0; k < 2000; ++k) {
    Vec U(3);
    U << uniform(gen, -0.09, 0.09), uniform(gen, -0.09, 0.09), uniform(gen, -0.09, 0.09);
    const Vec W = model::to_entropy_vars(U, p);
    roundtrip = std::max(roundtrip, (model::from_entropy_vars(W, p) - U).lpNorm<Eigen::Infinity>());
    Vec vel(2);
    vel << U(1), U(2);
    const Mat H = model::entropy_hessian(p.rho_bar + U(0), vel, p.pressure);
    Eigen::SelfAdjointEigenSolver<Mat> es(H);
    min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
    for (int axis = 0; axis < 2; ++axis) {
      const Mat S = H * model::flux_jacobian(U, p, axis);
      asym = std::max(asym, (S - S.transpose()).cwiseAbs().maxCoeff());
    }
  }
  v.require(roundtrip <= 1e-12, "roundtrip=" + fmt(roundtrip));
  v.require(asym <= 1e-8, "symmetry=" + fmt(asym));
  v.require(min_eig > 0.0, "min Hessian eigenvalue=" + fmt(min_eig));

  const auto s = spectral::build_symbols(p, 2);
  double semi = 0.0;
  for (int k = 0; k < 50; ++k) {
    Vec xi(2);
    xi << uniform(gen, -2, 2), uniform(gen, -2, 2);
    const double t = uniform(gen, 0, 10), u = uniform(gen, 0, 10);
    const CMat d = spectral::green_symbol(s, xi, t + u) - spectral::green_symbol(s, xi, t) * spectral::green_symbol(s, xi, u);
    semi = std::max(semi, d.cwiseAbs().maxCoeff());
  }
  v.require(semi <= 1e-9, "semigroup=" + fmt(semi));

  const auto g = model::GridSpec::line(128, 64.0);
  cli::InitialDataSpec init;
  init.preset = "band_limited";
  const auto u0 = cli::make_initial_state(init, g, p, 2, 5);
  auto final_state = [&](double dt) {
    solver::SolverConfig sc;
    sc.fixed_dt = dt;
    sc.t_final = 4.0;
    return solver::run(u0, p, sc).snapshots.back();
  };
  const auto a = final_state(0.2), b = final_state(0.1), c = final_state(0.05);
  auto diff = [](const model::FieldState& x, const model::FieldState& y) {
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
      m = std::max({m, std::abs(x.rho[i] - y.rho[i]), std::abs(x.v[0][i] - y.v[0][i]), std::abs(x.phi[i] - y.phi[i])});
    return m;
  };
  const double order = std::log2(diff(a, b) / diff(b, c));
  v.require(std::abs(order - 2.0) <= 0.2, "Strang order=" + fmt(order));
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<void(Verdict&)> run;
  };
  const std::vector<Criterion> suite{
      {1, "equilibrium exactness", equilibrium},
      {2, "mass conservation", mass},
      {3, "entropy dissipation (mu = 0)", entropy},
      {4, "SK condition", sk},
      {5, "compensator certificate", compensator},
      {6, "linear Green block decay", blocks},
      {7, "linearized decay at desk scale", linear},
      {8, "nonlinear small-data decay", nonlinear},
      {9, "parabolic oracle equivalence", parabolic_oracle},
      {10, "phi bounds", phi_bounds},
      {11, "structural invariants", structural},
  };
  int failures = 0;
  for (const auto& c : suite) {
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!v.pass) ++failures;
    std::printf("[%s] %2d %s (%.1fs): %s\n", v.pass ? "PASS" : "FAIL", c.id, c.name, secs, v.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(suite.size()) - failures, suite.size());
  return failures == 0 ? 0 : 1;
}
