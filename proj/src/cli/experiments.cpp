#include "vasclab/cli/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <typeinfo>

#include <json.hpp>

#include "vasclab/cli/initial_data.hpp"
#include "vasclab/diagnostics/conservation.hpp"
#include "vasclab/diagnostics/fit.hpp"
#include "vasclab/diagnostics/norms.hpp"
#include "vasclab/diagnostics/series.hpp"
#include "vasclab/errors.hpp"
#include "vasclab/kernels/kernels.hpp"
#include "vasclab/parabolic/heat.hpp"
#include "vasclab/parabolic/monitor.hpp"
#include "vasclab/solver/solver.hpp"
#include "vasclab/spectral/block_decay.hpp"
#include "vasclab/spectral/compensator.hpp"
#include "vasclab/spectral/green.hpp"
#include "vasclab/spectral/propagator.hpp"
#include "vasclab/spectral/sk.hpp"
#include "vasclab/spectral/symbols.hpp"

namespace vasclab::cli {

bool ExperimentOutcome::all_pass() const {
  if (!error_kind.empty()) return false;
  return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.pass; });
}

namespace {

namespace fs = std::filesystem;

struct Context {
  const ExperimentConfig& config;
  ExperimentOutcome& out;
  const fs::path* dir;  // null: no artifacts

  void criterion(std::string name, bool pass, double value, double threshold, std::string detail = {}) {
    out.criteria.push_back({std::move(name), pass, value, threshold, std::move(detail)});
  }
  bool writing() const { return dir != nullptr; }
  fs::path file(const std::string& name) const { return *dir / name; }
};

std::ofstream open_csv(const fs::path& path) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path.string());
  f << std::setprecision(17);
  return f;
}

std::string dim_tag(int dim) { return "_n" + std::to_string(dim); }

// --- sk_check ---------------------------------------------------------------

void run_sk(Context& ctx) {
  const auto& cfg = ctx.config;
  std::ofstream csv;
  if (ctx.writing()) {
    csv = open_csv(ctx.file("sk_margins.csv"));
    csv << "dim,index,xi_1,xi_2,margin\n";
  }
  for (int dim : cfg.sk.dims) {
    const auto symbols = spectral::build_symbols(cfg.params, dim);
    const auto res = spectral::check_sk(symbols, cfg.sk.directions);
    ctx.criterion("sk_holds" + dim_tag(dim), res.holds && res.worst_margin > cfg.sk.min_margin, res.worst_margin,
                  cfg.sk.min_margin, std::to_string(res.directions) + " directions");
    ctx.out.metrics["sk_worst_margin" + dim_tag(dim)] = res.worst_margin;
    if (ctx.writing()) {
      const auto dirs = spectral::sphere_directions(dim, cfg.sk.directions);
      for (std::size_t i = 0; i < dirs.size(); ++i)
        csv << dim << ',' << i << ',' << dirs[i](0) << ',' << (dim == 2 ? dirs[i](1) : 0.0) << ','
            << spectral::sk_margin(symbols, dirs[i]) << '\n';
    }
  }
}

// --- compensator ------------------------------------------------------------

void run_compensator(Context& ctx) {
  const auto& cfg = ctx.config;
  std::ofstream csv;
  if (ctx.writing()) {
    csv = open_csv(ctx.file("compensator_scan.csv"));
    csv << "dim,eta,margin\n";
  }
  for (int dim : cfg.compensator.dims) {
    const auto symbols = spectral::build_symbols(cfg.params, dim);
    const auto grid = spectral::default_eta_grid(symbols, cfg.compensator.eta_count);
    const auto rep = spectral::find_compensator(symbols, grid, cfg.compensator.directions);
    const double fresh =
        spectral::verify_compensator(symbols, rep, cfg.compensator.verify_directions, cfg.seed + 1000003u * dim);
    const bool ok = rep.valid() && fresh > 0.0 && fresh >= rep.c_star - 1e-9 * std::max(1.0, rep.c_star);
    std::ostringstream d;
    d << "eta=" << rep.eta << " c=" << rep.c_star;
    ctx.criterion("compensator" + dim_tag(dim), ok, fresh, rep.c_star, d.str());
    ctx.out.metrics["compensator_eta" + dim_tag(dim)] = rep.eta;
    ctx.out.metrics["compensator_c" + dim_tag(dim)] = rep.c_star;
    ctx.out.metrics["compensator_fresh" + dim_tag(dim)] = fresh;
    if (ctx.writing())
      for (std::size_t i = 0; i < rep.eta_grid.size(); ++i)
        csv << dim << ',' << rep.eta_grid[i] << ',' << rep.grid_margins[i] << '\n';
  }
  // Two-by-two case with unit sound speed: the margin is 1/2 at eta = 1/2.
  const auto raw = spectral::raw_symbols(1, 1.0, cfg.params.alpha);
  const double hand = spectral::compensator_margin(raw, spectral::sphere_directions(1, 2), 0.5);
  ctx.criterion("compensator_hand_n1", std::abs(hand - 0.5) <= 1e-10, hand, 0.5, "P'=1, eta=0.5");
}

// --- linear_decay -----------------------------------------------------------

std::vector<double> geometric(double lo, double hi, int count) {
  std::vector<double> t(count);
  for (int i = 0; i < count; ++i) t[i] = lo * std::pow(hi / lo, count == 1 ? 0.0 : double(i) / (count - 1));
  return t;
}

void run_blocks(Context& ctx, std::vector<diagnostics::FitRecord>& fits) {
  const auto& cfg = ctx.config;
  const auto& b = cfg.blocks;
  for (int dim : b.dims) {
    const auto symbols = spectral::build_symbols(cfg.params, dim);
    const double cutoff = b.xi_cutoff > 0.0 ? b.xi_cutoff : spectral::default_xi_cutoff(symbols);
    spectral::FrequencyGrid fg;
    fg.domain_length = b.domain_length;
    fg.radial = b.radial;
    fg.angular = b.angular;
    const auto report = spectral::decompose_green(symbols, cutoff, fg);
    spectral::BlockDecayOptions opts;
    opts.times = geometric(b.t_min / cfg.params.alpha, b.t_max / cfg.params.alpha, b.samples);
    opts.gaussian_width = b.gaussian_width;
    opts.tolerance = b.tolerance;
    opts.min_r2 = b.min_r2;
    std::vector<int> beta(dim, 0);
    beta[0] = b.beta_x;
    const auto blocks = spectral::measure_block_decay(report, b.p, beta, opts);
    for (const auto& blk : blocks) {
      std::ostringstream d;
      d << blk.block_id << " exponent=" << blk.fit.exponent << " r2=" << blk.fit.r2;
      ctx.criterion("block_" + blk.block_id + dim_tag(dim), blk.fit.pass, blk.fit.exponent, blk.fit.reference,
                    d.str());
      fits.push_back({blk.block_id + dim_tag(dim), std::isinf(b.p) ? "Linf" : "L2", blk.fit});
    }
    if (ctx.writing()) spectral::write_block_decay_csv(ctx.file("block_decay" + dim_tag(dim) + ".csv"), blocks);
  }
}

std::map<std::string, double> state_norms(const model::FieldState& s, diagnostics::NormEvaluator& ev, int order) {
  const auto& g = s.grid;
  diagnostics::FieldGroup U{&s.rho};
  for (const auto& c : s.v) U.push_back(&c);
  diagnostics::FieldGroup V;
  for (const auto& c : s.v) V.push_back(&c);
  const std::string hs = "H" + std::to_string(order);
  return {
      {"U:L1", diagnostics::lp_norm(U, g, 1.0)},   {"U:L2", diagnostics::lp_norm(U, g, 2.0)},
      {"U:Linf", diagnostics::lp_norm(U, g, INFINITY)}, {"U:" + hs, ev.sobolev(U, order)},
      {"rho:L2", diagnostics::lp_norm(s.rho, g, 2.0)},  {"v:L2", diagnostics::lp_norm(V, g, 2.0)},
      {"phi:L2", diagnostics::lp_norm(s.phi, g, 2.0)},
  };
}

void run_linear_grid(Context& ctx, std::vector<diagnostics::FitRecord>& fits) {
  const auto& cfg = ctx.config;
  cfg.grid.validate();
  const int dim = cfg.grid.dim;
  const int order = cfg.solver.sobolev_order;
  const auto initial = make_initial_state(cfg.initial, cfg.grid, cfg.params, order, cfg.seed);
  spectral::LinearPropagator prop(cfg.params, cfg.grid);
  ctx.criterion("linear_stability" + dim_tag(dim), prop.spectral_abscissa() < 0.0, prop.spectral_abscissa(), 0.0,
                "largest nonzero mode eigenvalue real part");

  diagnostics::NormEvaluator ev(cfg.grid);
  diagnostics::NormSeries series;
  series.append(0.0, state_norms(initial, ev, order));
  const double T = cfg.linear.t_final;
  for (int i = 1; i <= cfg.linear.samples; ++i) {
    const double t = T * i / cfg.linear.samples;
    series.append(t, state_norms(prop.evolve(initial, t), ev, order));
  }
  diagnostics::FitOptions fo;
  fo.tolerance = cfg.fit.tolerance;
  fo.min_r2 = cfg.fit.min_r2;
  fo.mode = diagnostics::FitMode::lower_bound;
  const auto fit = diagnostics::fit_decay(series, "U", "L2", dim / 4.0, fo, cfg.fit.window_lo * T, cfg.fit.window_hi * T);
  std::ostringstream d;
  d << "exponent=" << fit.exponent << " r2=" << fit.r2 << " window=[" << fit.t_min << ',' << fit.t_max << ']';
  ctx.criterion("linear_U_L2" + dim_tag(dim), fit.pass, fit.exponent, fit.reference - fit.tolerance, d.str());
  ctx.out.metrics["linear_exponent" + dim_tag(dim)] = fit.exponent;
  fits.push_back({"U_linear" + dim_tag(dim), "L2", fit});
  if (ctx.writing()) series.write_csv(ctx.file("linear_norms.csv"));
}

void run_linear(Context& ctx) {
  std::vector<diagnostics::FitRecord> fits;
  if (!ctx.config.blocks.dims.empty()) run_blocks(ctx, fits);
  if (ctx.config.linear.enabled) run_linear_grid(ctx, fits);
  ctx.out.notes.push_back("block exponents use m = n");
  if (ctx.writing()) diagnostics::write_fit_report(ctx.file("fit_report.csv"), fits);
}

// --- parabolic_verify -------------------------------------------------------

double rel_l2(const std::vector<double>& a, const std::vector<double>& b, const model::GridSpec& g) {
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  const double nb = diagnostics::lp_norm(b, g, 2.0);
  return diagnostics::lp_norm(d, g, 2.0) / (nb > 0.0 ? nb : 1.0);
}

void run_parabolic(Context& ctx) {
  const auto& cfg = ctx.config;
  const auto& g = cfg.grid;
  g.validate();
  const auto& ps = cfg.parabolic;
  const auto spec = parabolic::HeatKernelSpec::from_params(cfg.params, g.dim);
  spec.validate();
  if (ps.steps < 2) throw ValidationError({"parabolic: steps must be >= 2"});

  std::mt19937_64 gen(cfg.seed);
  const auto rho0 = band_limited_field(g, cfg.initial.kmax_fraction, gen);
  const auto rho1 = band_limited_field(g, cfg.initial.kmax_fraction, gen);
  const auto phi0 = band_limited_field(g, cfg.initial.kmax_fraction, gen);
  const double T = ps.t_final, dt = T / ps.steps;
  auto rho_at = [&](double t) {
    std::vector<double> r(rho0.size());
    const double c = std::cos(ps.omega * t), s = std::sin(ps.omega * t);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = rho0[i] * c + rho1[i] * s;
    return r;
  };

  parabolic::RhoPath path;
  for (int i = 0; i <= ps.steps; ++i) {
    path.times.push_back(i * dt);
    path.fields.push_back(rho_at(i * dt));
  }
  parabolic::DuhamelOptions dopt;
  dopt.tolerance = ps.tolerance;
  const auto duh = parabolic::duhamel_phi(phi0, path, spec, g, path.times.back(), dopt);

  std::vector<double> phi = phi0, mid(rho0.size());
  for (int i = 0; i < ps.steps; ++i) {
    for (std::size_t k = 0; k < mid.size(); ++k) mid[k] = 0.5 * (path.fields[i][k] + path.fields[i + 1][k]);
    phi = parabolic::spectral_phi_step(phi, mid, spec, g, dt);
  }
  const double diff = rel_l2(duh.phi, phi, g);
  std::ostringstream d;
  d << "steps=" << ps.steps << " duhamel_error_estimate=" << duh.error_estimate;
  ctx.criterion("duhamel_vs_spectral", diff <= ps.tolerance, diff, ps.tolerance, d.str());
  ctx.out.metrics["duhamel_error_estimate"] = duh.error_estimate;

  // Spatially constant data: phi(T) = e^{-bT} phi0 + (a/b) rho (1 - e^{-bT}).
  {
    const double rc = 0.3, pc = -0.2;
    parabolic::RhoPath cpath;
    for (int i = 0; i <= ps.steps; ++i) {
      cpath.times.push_back(i * dt);
      cpath.fields.emplace_back(g.size(), rc);
    }
    const auto r = parabolic::duhamel_phi(std::vector<double>(g.size(), pc), cpath, spec, g, T, dopt);
    const double exact = std::exp(-spec.b * T) * pc + spec.a / spec.b * rc * -std::expm1(-spec.b * T);
    double err = 0.0;
    for (double x : r.phi) err = std::max(err, std::abs(x - exact));
    err /= std::abs(exact);
    ctx.criterion("duhamel_constant_oracle", err <= 1e-12, err, 1e-12, "closed form for constant data");
  }

  if (ctx.writing()) {
    auto csv = open_csv(ctx.file("parabolic_compare.csv"));
    csv << "cell,x" << (g.dim == 2 ? ",y" : "") << ",duhamel,spectral\n";
    for (std::size_t i = 0; i < phi.size(); ++i) {
      csv << i << ',' << g.center(0, int(i % g.nx()));
      if (g.dim == 2) csv << ',' << g.center(1, int(i / g.nx()));
      csv << ',' << duh.phi[i] << ',' << phi[i] << '\n';
    }
  }
}

// --- nonlinear_decay --------------------------------------------------------

void run_nonlinear(Context& ctx) {
  const auto& cfg = ctx.config;
  cfg.grid.validate();
  auto scfg = cfg.solver;
  if (cfg.params.mu == 0.0) scfg.track_step_entropy = true;
  scfg.validate();
  const int dim = cfg.grid.dim;
  const int s = scfg.sobolev_order;

  const auto initial = make_initial_state(cfg.initial, cfg.grid, cfg.params, s, cfg.seed);
  const auto rec = solver::run(initial, cfg.params, scfg);
  const bool completed = rec.termination == solver::Termination::completed;
  ctx.criterion("run_completed", completed, double(rec.steps), 0.0,
                solver::termination_name(rec.termination) + (rec.message.empty() ? "" : ": " + rec.message));
  ctx.out.metrics["steps"] = double(rec.steps);

  const auto cons = diagnostics::monitor_conservation(rec, cfg.params);
  const double mass_tol = 1e-12 * std::max(1.0, rec.steps / 1000.0);
  ctx.criterion("mass_conservation", cons.max_mass_drift <= mass_tol, cons.max_mass_drift, mass_tol,
                "relative to total mass");
  ctx.criterion("damping_sign", cons.dissipation_ok, cons.min_dissipation_ratio, 0.0, "-W2.g / |W2|^2");
  if (cons.entropy_checked)
    ctx.criterion("entropy_nonincreasing", cons.flagged_increments == 0, cons.max_entropy_increment, 1e-10,
                  std::to_string(cons.flagged_increments) + " flagged steps");

  std::vector<diagnostics::FitRecord> fits;
  diagnostics::FitOptions fo;
  fo.tolerance = cfg.fit.tolerance;
  fo.min_r2 = cfg.fit.min_r2;
  fo.mode = diagnostics::FitMode::lower_bound;
  const double T = rec.norms.times().back();
  for (const char* field : {"U", "phi"}) {
    try {
      const auto fit = diagnostics::fit_decay(rec.norms, field, "L2", dim / 4.0, fo, cfg.fit.window_lo * T,
                                              cfg.fit.window_hi * T);
      std::ostringstream d;
      d << "exponent=" << fit.exponent << " r2=" << fit.r2;
      ctx.criterion(std::string("decay_") + field + "_L2", fit.pass, fit.exponent, fit.reference - fit.tolerance,
                    d.str());
      ctx.out.metrics[std::string("exponent_") + field] = fit.exponent;
      fits.push_back({field, "L2", fit});
    } catch (const FitError& e) {
      if (completed) throw;
      ctx.criterion(std::string("decay_") + field + "_L2", false, 0.0, dim / 4.0 - fo.tolerance, e.what());
    }
  }

  const auto bounds = parabolic::monitor_phi_bounds(rec.norms, cfg.params, dim, s);
  std::ostringstream d;
  d << "l1 worst ratio " << bounds.worst_l1_ratio << ", grad worst ratio " << bounds.worst_grad_ratio;
  ctx.criterion("phi_bounds", bounds.ok(), double(bounds.l1_violations + bounds.grad_violations), 0.0, d.str());

  if (ctx.writing()) {
    rec.norms.write_csv(ctx.file("norms.csv"));
    diagnostics::write_fit_report(ctx.file("fit_report.csv"), fits);
    auto pb = open_csv(ctx.file("phi_bounds.csv"));
    pb << "time,phi_l1,l1_bound,grad_linf,grad_envelope\n";
    for (std::size_t i = 0; i < bounds.times.size(); ++i)
      pb << bounds.times[i] << ',' << bounds.phi_l1[i] << ',' << bounds.l1_bound[i] << ',' << bounds.grad_linf[i]
         << ',' << bounds.grad_envelope[i] << '\n';
    auto cs = open_csv(ctx.file("conservation.csv"));
    cs << "time,mass,entropy\n";
    for (std::size_t i = 0; i < rec.mass.size(); ++i)
      cs << rec.norms.times()[i] << ',' << rec.mass[i] << ',' << rec.entropy[i] << '\n';
    solver::write_field_csv(ctx.file("final_state.csv"), rec.snapshots.back());
  }
}

template <class E>
bool is(const std::exception& e) {
  return dynamic_cast<const E*>(&e) != nullptr;
}

std::string error_kind(const std::exception& e) {
  if (is<ValidationError>(e)) return "ValidationError";
  if (is<UnreliableFitError>(e)) return "UnreliableFitError";
  if (is<FitError>(e)) return "FitError";
  if (is<AccuracyError>(e)) return "AccuracyError";
  if (is<ProjectorError>(e)) return "ProjectorError";
  if (is<SearchFailure>(e)) return "SearchFailure";
  if (is<StepSizeError>(e)) return "StepSizeError";
  if (is<PositivityError>(e)) return "PositivityError";
  if (is<InversionError>(e)) return "InversionError";
  if (is<NumericalError>(e)) return "NumericalError";
  if (is<DomainError>(e)) return "DomainError";
  if (is<InputError>(e)) return "InputError";
  return "Error";
}

void execute(Context& ctx) {
  auto& out = ctx.out;
  out.experiment = ctx.config.experiment;
  try {
    ctx.config.params.validate();
    switch (ctx.config.experiment) {
      case Experiment::sk_check: run_sk(ctx); break;
      case Experiment::compensator: run_compensator(ctx); break;
      case Experiment::linear_decay: run_linear(ctx); break;
      case Experiment::parabolic_verify: run_parabolic(ctx); break;
      case Experiment::nonlinear_decay: run_nonlinear(ctx); break;
    }
    out.exit_code = out.all_pass() ? exit_pass : exit_criterion;
  } catch (const std::exception& e) {
    out.error_kind = error_kind(e);
    out.error_message = e.what();
    if (const auto* v = dynamic_cast<const ValidationError*>(&e)) out.violations = v->violations();
    const bool config_side = is<ValidationError>(e) || is<DomainError>(e) || is<InputError>(e);
    out.exit_code = config_side ? exit_config : exit_numerical;
  }
}

}  // namespace

ExperimentOutcome evaluate_experiment(const ExperimentConfig& config) {
  ExperimentOutcome out;
  Context ctx{config, out, nullptr};
  execute(ctx);
  return out;
}

std::string summary_json(const ExperimentConfig& config, const ExperimentOutcome& outcome) {
  nlohmann::ordered_json j;
  j["experiment"] = experiment_name(outcome.experiment);
  j["seed"] = config.seed;
  j["status"] = outcome.error_kind.empty() ? (outcome.all_pass() ? "pass" : "fail") : "error";
  j["exit_code"] = outcome.exit_code;
  j["simd_backend"] = std::string(kernels::backend_name(kernels::active().backend));
  auto& crit = j["criteria"] = nlohmann::ordered_json::array();
  for (const auto& c : outcome.criteria) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    e["value"] = c.value;
    e["threshold"] = c.threshold;
    e["detail"] = c.detail;
    crit.push_back(std::move(e));
  }
  j["metrics"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : outcome.metrics) j["metrics"][k] = v;
  j["notes"] = outcome.notes;
  if (!outcome.error_kind.empty()) {
    j["error"]["kind"] = outcome.error_kind;
    j["error"]["message"] = outcome.error_message;
    j["error"]["violations"] = outcome.violations;
  }
  return j.dump(2) + "\n";
}

ExperimentOutcome run_experiment(const ExperimentConfig& config, const fs::path& output_dir, bool quiet) {
  const fs::path dir = output_dir.empty() ? fs::path(config.output_dir) : output_dir;
  ExperimentOutcome out;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    out.experiment = config.experiment;
    out.error_kind = "InputError";
    out.error_message = "cannot create output directory " + dir.string() + ": " + ec.message();
    out.exit_code = exit_config;
  } else {
    std::ofstream(dir / "config.resolved.ini") << config.to_text();
    Context ctx{config, out, &dir};
    execute(ctx);
    std::ofstream(dir / "summary.json") << summary_json(config, out);
  }
  if (!quiet) {
    for (const auto& c : out.criteria)
      std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "  value=" << c.value << " threshold=" << c.threshold
                << (c.detail.empty() ? "" : "  (" + c.detail + ")") << '\n';
    if (!out.error_kind.empty()) std::cout << "ERROR " << out.error_kind << ": " << out.error_message << '\n';
  }
  return out;
}

}  // namespace vasclab::cli
