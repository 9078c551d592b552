#include "vasclab/solver/solver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>

#include "vasclab/errors.hpp"
#include "vasclab/kernels/kernels.hpp"
#include "vasclab/model/entropy.hpp"

namespace vasclab::solver {
namespace {

using Field = std::vector<double>;

// (1 - e^{-z}) / z
double relax_factor(double z) { return std::abs(z) < 1e-8 ? 1.0 - 0.5 * z : -std::expm1(-z) / z; }

// Periodic neighbour copies within each contiguous line of length len.
void shift_next(const double* x, double* out, std::size_t n, std::size_t len) {
  for (std::size_t l = 0; l < n; l += len) {
    std::copy(x + l + 1, x + l + len, out + l);
    out[l + len - 1] = x[l];
  }
}

void shift_prev(const double* x, double* out, std::size_t n, std::size_t len) {
  for (std::size_t l = 0; l < n; l += len) {
    out[l] = x[l + len - 1];
    std::copy(x + l, x + l + len - 1, out + l + 1);
  }
}

bool all_finite(const model::FieldState& s) {
  auto ok = [](const Field& f) {
    for (double x : f)
      if (!std::isfinite(x)) return false;
    return true;
  };
  if (!ok(s.rho) || !ok(s.phi)) return false;
  for (const auto& c : s.v)
    if (!ok(c)) return false;
  return true;
}

}  // namespace

std::string splitting_name(Splitting s) { return s == Splitting::lie ? "lie" : "strang"; }

std::string termination_name(Termination t) {
  switch (t) {
    case Termination::completed: return "completed";
    case Termination::positivity_violation: return "positivity_violation";
    case Termination::nan_detected: return "nan_detected";
  }
  return "unknown";
}

std::vector<std::string> SolverConfig::violations() const {
  std::vector<std::string> out;
  if (!(cfl > 0.0 && cfl < 1.0)) out.emplace_back("cfl must be in (0, 1)");
  if (!(t_final > 0.0) || !std::isfinite(t_final)) out.emplace_back("t_final must be > 0");
  if (output_stride < 1) out.emplace_back("output_stride must be >= 1");
  if (!(positivity_floor > 0.0)) out.emplace_back("positivity_floor must be > 0");
  if (!(fixed_dt >= 0.0)) out.emplace_back("fixed_dt must be >= 0");
  if (sobolev_order < 1) out.emplace_back("sobolev_order must be >= 1");
  if (!(smallness >= 0.0)) out.emplace_back("smallness must be >= 0");
  return out;
}

void SolverConfig::validate() const {
  auto v = violations();
  if (!v.empty()) throw ValidationError(std::move(v));
}

struct Solver::Workspace {
  explicit Workspace(const model::GridSpec& grid, const parabolic::HeatKernelSpec& heat)
      : norms(grid), phi(heat, grid) {
    const std::size_t n = grid.size();
    for (Field* f : {&rho_tot, &dp, &c, &f_rho, &f_vn, &f_vt, &speed, &u_rho, &u_vn, &u_vt, &n_f_rho, &n_f_vn,
                     &n_f_vt, &n_speed, &n_rho, &n_vn, &n_vt, &F_rho, &F_vn, &F_vt, &P_rho, &P_vn, &P_vt, &delta,
                     &zeros})
      f->assign(n, 0.0);
    grad.assign(static_cast<std::size_t>(grid.dim), Field(n, 0.0));
  }

  diagnostics::NormEvaluator norms;
  parabolic::PhiIntegrator phi;
  Field rho_tot, dp, c, f_rho, f_vn, f_vt, speed;
  Field u_rho, u_vn, u_vt;                        // line-ordered state (y sweeps)
  Field n_f_rho, n_f_vn, n_f_vt, n_speed, n_rho, n_vn, n_vt;  // right neighbours
  Field F_rho, F_vn, F_vt, P_rho, P_vn, P_vt;     // face fluxes and left-face copies
  Field delta, zeros;
  std::vector<Field> grad;
  model::FieldState stage1, stage2;
};

Solver::Solver(const model::ModelParams& params, const model::GridSpec& grid, const SolverConfig& config)
    : params_(params), grid_(grid), config_(config) {
  params_.validate();
  grid_.validate();
  config_.validate();
  ws_ = std::make_unique<Workspace>(grid_, parabolic::HeatKernelSpec::from_params(params_, grid_.dim));
}

Solver::~Solver() = default;

void Solver::check_positive(const model::FieldState& state, const char* where) const {
  const double floor = config_.positivity_floor;
  for (std::size_t i = 0; i < state.rho.size(); ++i) {
    const double r = state.rho[i] + params_.rho_bar;
    if (!(r >= floor))
      throw PositivityError(std::string(where) + ": total density " + std::to_string(r) + " below floor at cell " +
                            std::to_string(i) + ", t = " + std::to_string(state.time));
  }
}

double Solver::max_stable_dt(const model::FieldState& state) {
  const std::size_t n = state.size();
  double rate = 0.0;
  for (int d = 0; d < grid_.dim; ++d) {
    double smax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = state.rho[i] + params_.rho_bar;
      if (!(r > 0.0)) throw PositivityError("non-positive total density while computing the step size");
      const double s = std::abs(state.v[d][i]) / r + std::sqrt(params_.pressure.derivative(r));
      smax = std::max(smax, s);
    }
    rate += smax / grid_.spacing(d);
  }
  return rate > 0.0 ? 1.0 / rate : INFINITY;
}

void Solver::transport_rate_apply(const model::FieldState& from, model::FieldState& into, double dt) {
  Workspace& w = *ws_;
  const auto& K = kernels::active();
  const std::size_t n = from.size();
  const int dim = grid_.dim;
  const int nx = grid_.nx(), ny = grid_.ny();
  for (int axis = 0; axis < dim; ++axis) {
    const std::size_t len = static_cast<std::size_t>(axis == 0 ? nx : ny);
    const int other = 1 - axis;
    const double* rho;
    const double* vn;
    const double* vt = nullptr;
    if (axis == 0) {
      rho = from.rho.data();
      vn = from.v[0].data();
      if (dim == 2) vt = from.v[1].data();
    } else {
      // Gather so that y-lines are contiguous: position i * ny + j <- cell j * nx + i.
      for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
          const std::size_t p = static_cast<std::size_t>(i) * ny + j, cidx = static_cast<std::size_t>(j) * nx + i;
          w.u_rho[p] = from.rho[cidx];
          w.u_vn[p] = from.v[1][cidx];
          w.u_vt[p] = from.v[0][cidx];
        }
      rho = w.u_rho.data();
      vn = w.u_vn.data();
      vt = w.u_vt.data();
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double r = rho[i] + params_.rho_bar;
      w.rho_tot[i] = r;
      w.dp[i] = params_.pressure.increment(params_.rho_bar, rho[i]);
      w.c[i] = std::sqrt(params_.pressure.derivative(r));
    }
    K.euler_cell_flux(n, w.rho_tot.data(), vn, vt, w.dp.data(), w.c.data(), w.f_rho.data(), w.f_vn.data(),
                      vt ? w.f_vt.data() : nullptr, w.speed.data());
    shift_next(w.f_rho.data(), w.n_f_rho.data(), n, len);
    shift_next(w.f_vn.data(), w.n_f_vn.data(), n, len);
    shift_next(w.speed.data(), w.n_speed.data(), n, len);
    shift_next(rho, w.n_rho.data(), n, len);
    shift_next(vn, w.n_vn.data(), n, len);
    K.rusanov_face(n, w.f_rho.data(), w.n_f_rho.data(), rho, w.n_rho.data(), w.speed.data(), w.n_speed.data(),
                   w.F_rho.data());
    K.rusanov_face(n, w.f_vn.data(), w.n_f_vn.data(), vn, w.n_vn.data(), w.speed.data(), w.n_speed.data(),
                   w.F_vn.data());
    shift_prev(w.F_rho.data(), w.P_rho.data(), n, len);
    shift_prev(w.F_vn.data(), w.P_vn.data(), n, len);
    if (vt) {
      shift_next(w.f_vt.data(), w.n_f_vt.data(), n, len);
      shift_next(vt, w.n_vt.data(), n, len);
      K.rusanov_face(n, w.f_vt.data(), w.n_f_vt.data(), vt, w.n_vt.data(), w.speed.data(), w.n_speed.data(),
                     w.F_vt.data());
      shift_prev(w.F_vt.data(), w.P_vt.data(), n, len);
    }
    const double lambda = dt / grid_.spacing(axis);
    if (axis == 0) {
      K.flux_divergence(n, into.rho.data(), w.P_rho.data(), w.F_rho.data(), lambda);
      K.flux_divergence(n, into.v[0].data(), w.P_vn.data(), w.F_vn.data(), lambda);
      if (vt) K.flux_divergence(n, into.v[1].data(), w.P_vt.data(), w.F_vt.data(), lambda);
    } else {
      auto scatter_add = [&](Field& target, const Field& minus, const Field& plus) {
        std::fill(w.delta.begin(), w.delta.end(), 0.0);
        K.flux_divergence(n, w.delta.data(), minus.data(), plus.data(), lambda);
        for (int i = 0; i < nx; ++i)
          for (int j = 0; j < ny; ++j)
            target[static_cast<std::size_t>(j) * nx + i] += w.delta[static_cast<std::size_t>(i) * ny + j];
      };
      scatter_add(into.rho, w.P_rho, w.F_rho);
      scatter_add(into.v[1], w.P_vn, w.F_vn);
      scatter_add(into.v[other], w.P_vt, w.F_vt);
    }
  }
}

void Solver::source_half(model::FieldState& state, const std::vector<Field>& grad, double h) {
  Workspace& w = *ws_;
  const auto& K = kernels::active();
  const std::size_t n = state.size();
  for (std::size_t i = 0; i < n; ++i) w.rho_tot[i] = state.rho[i] + params_.rho_bar;
  const double z = params_.alpha * h;
  const double decay = std::exp(-z);
  const double gain = params_.mu * h * relax_factor(z);
  for (int d = 0; d < grid_.dim; ++d) {
    const double* g = grad.empty() ? w.zeros.data() : grad[d].data();
    K.relax_source(n, state.v[d].data(), w.rho_tot.data(), g, decay, gain);
  }
}

void Solver::hyperbolic_step(model::FieldState& state, const std::vector<Field>& grad_phi, double dt,
                             double cfl_limit) {
  if (!(dt >= 0.0)) throw StepSizeError("hyperbolic step needs dt >= 0");
  if (state.size() != grid_.size()) throw DomainError("state grid does not match solver grid");
  if (!grad_phi.empty() && grad_phi.size() != static_cast<std::size_t>(grid_.dim))
    throw DomainError("grad_phi needs one component per axis");
  check_positive(state, "hyperbolic step");
  Workspace& w = *ws_;
  source_half(state, grad_phi, 0.5 * dt);
  const double limit = cfl_limit * max_stable_dt(state);
  if (dt > limit * (1.0 + 1e-12))
    throw StepSizeError("dt = " + std::to_string(dt) + " exceeds the CFL limit " + std::to_string(limit));
  // SSP-RK2: U1 = U + dt L(U), U2 = U1 + dt L(U1), U <- (U + U2) / 2.
  w.stage1 = state;
  transport_rate_apply(state, w.stage1, dt);
  check_positive(w.stage1, "transport stage");
  w.stage2 = w.stage1;
  transport_rate_apply(w.stage1, w.stage2, dt);
  const auto& K = kernels::active();
  const std::size_t n = state.size();
  K.lincomb(n, 0.5, state.rho.data(), 0.5, w.stage2.rho.data(), state.rho.data());
  for (int d = 0; d < grid_.dim; ++d)
    K.lincomb(n, 0.5, state.v[d].data(), 0.5, w.stage2.v[d].data(), state.v[d].data());
  check_positive(state, "transport step");
  source_half(state, grad_phi, 0.5 * dt);
}

void Solver::parabolic_step(model::FieldState& state, double dt) { ws_->phi.step(state.phi, state.rho, dt); }

void Solver::grad_phi(const model::FieldState& state, std::vector<Field>& out) {
  out.resize(static_cast<std::size_t>(grid_.dim));
  for (int d = 0; d < grid_.dim; ++d) ws_->norms.gradient(state.phi, d, out[d]);
}

void Solver::coupled_step(model::FieldState& state, double dt) {
  Workspace& w = *ws_;
  if (config_.splitting == Splitting::strang) {
    parabolic_step(state, 0.5 * dt);
    grad_phi(state, w.grad);
    hyperbolic_step(state, w.grad, dt);
    parabolic_step(state, 0.5 * dt);
  } else {
    grad_phi(state, w.grad);
    hyperbolic_step(state, w.grad, dt);
    parabolic_step(state, dt);
  }
  state.time += dt;
}

void Solver::record(RunRecord& rec, const model::FieldState& s) {
  auto& ev = ws_->norms;
  const int order = config_.sobolev_order;
  const std::string hs = "H" + std::to_string(order);
  diagnostics::FieldGroup U{&s.rho};
  diagnostics::FieldGroup V;
  for (const auto& c : s.v) {
    U.push_back(&c);
    V.push_back(&c);
  }
  const model::EntropyVars W = model::entropy_variables(s, params_);
  diagnostics::FieldGroup Wg{&W.w1};
  diagnostics::FieldGroup W2;
  for (const auto& c : W.w2) {
    Wg.push_back(&c);
    W2.push_back(&c);
  }
  grad_phi(s, ws_->grad);
  diagnostics::FieldGroup G;
  for (const auto& c : ws_->grad) G.push_back(&c);

  std::map<std::string, double> v;
  v["U:L1"] = diagnostics::lp_norm(U, grid_, 1.0);
  v["U:L2"] = diagnostics::lp_norm(U, grid_, 2.0);
  v["U:Linf"] = diagnostics::lp_norm(U, grid_, INFINITY);
  v["U:" + hs] = ev.sobolev(U, order);
  v["rho:L1"] = diagnostics::lp_norm(s.rho, grid_, 1.0);
  v["rho:L2"] = diagnostics::lp_norm(s.rho, grid_, 2.0);
  v["rho:Linf"] = diagnostics::lp_norm(s.rho, grid_, INFINITY);
  v["v:L2"] = diagnostics::lp_norm(V, grid_, 2.0);
  v["phi:L1"] = diagnostics::lp_norm(s.phi, grid_, 1.0);
  v["phi:L2"] = diagnostics::lp_norm(s.phi, grid_, 2.0);
  v["phi:Linf"] = diagnostics::lp_norm(s.phi, grid_, INFINITY);
  v["phi:" + hs] = ev.sobolev(s.phi, order);
  v["phi:H" + std::to_string(order + 1)] = ev.sobolev(s.phi, order + 1);
  v["grad_phi:Linf"] = diagnostics::lp_norm(G, grid_, INFINITY);
  v["W:" + hs] = ev.sobolev(Wg, order);
  v["W2:" + hs] = ev.sobolev(W2, order);
  v["gradW:H" + std::to_string(order - 1)] = ev.gradient_sobolev(Wg, order - 1);
  rec.norms.append(s.time, v);

  double m = 0.0;
  for (double r : s.rho) m += r;
  rec.mass.push_back(m * grid_.cell_volume());
  rec.entropy.push_back(model::total_shifted_entropy(s, params_));
  if (config_.keep_snapshots) rec.snapshots.push_back(s);
}

RunRecord Solver::run(const model::FieldState& initial) {
  initial.validate(params_.rho_bar);
  if (initial.size() != grid_.size() || initial.dim() != grid_.dim)
    throw DomainError("initial state grid does not match solver grid");
  if (config_.smallness > 0.0) {
    diagnostics::FieldGroup U{&initial.rho};
    for (const auto& c : initial.v) U.push_back(&c);
    const double hs = ws_->norms.sobolev(U, config_.sobolev_order);
    if (hs > config_.smallness * params_.rho_bar)
      throw DomainError("initial perturbation H^" + std::to_string(config_.sobolev_order) + " norm " +
                        std::to_string(hs) + " exceeds the smallness threshold " +
                        std::to_string(config_.smallness * params_.rho_bar));
  }

  RunRecord rec;
  double m0 = 0.0;
  for (double r : initial.rho) m0 += r + params_.rho_bar;
  rec.total_mass = m0 * grid_.cell_volume();
  if (!config_.keep_snapshots) rec.snapshots.push_back(initial);
  record(rec, initial);
  if (config_.track_step_entropy) rec.step_entropy.push_back(rec.entropy.back());

  model::FieldState state = initial;
  model::FieldState trial;
  const double t_end = initial.time + config_.t_final;
  bool recorded_last = true;
  while (state.time < t_end * (1.0 - 1e-14) - 1e-300) {
    double dt = config_.fixed_dt > 0.0 ? config_.fixed_dt : cfl_dt(state);
    if (state.time + dt > t_end) dt = t_end - state.time;
    trial = state;
    try {
      coupled_step(trial, dt);
    } catch (const PositivityError& e) {
      rec.termination = Termination::positivity_violation;
      rec.message = e.what();
      break;
    }
    if (!all_finite(trial)) {
      rec.termination = Termination::nan_detected;
      rec.message = "non-finite values after step " + std::to_string(rec.steps + 1) + " at t = " +
                    std::to_string(trial.time);
      break;
    }
    if (state.time + dt >= t_end) trial.time = t_end;
    std::swap(state, trial);
    ++rec.steps;
    if (config_.track_step_entropy) rec.step_entropy.push_back(model::total_shifted_entropy(state, params_));
    recorded_last = false;
    if (rec.steps % config_.output_stride == 0) {
      record(rec, state);
      recorded_last = true;
    }
  }
  if (!recorded_last) record(rec, state);
  if (!config_.keep_snapshots) rec.snapshots.push_back(state);
  return rec;
}

model::FieldState hyperbolic_step(const model::FieldState& state, const std::vector<std::vector<double>>& grad_phi,
                                  const model::ModelParams& params, double dt, double cfl_limit) {
  Solver s(params, state.grid);
  model::FieldState out = state;
  s.hyperbolic_step(out, grad_phi, dt, cfl_limit);
  out.time += dt;
  return out;
}

model::FieldState coupled_step(const model::FieldState& state, const model::ModelParams& params,
                               const SolverConfig& config, double dt) {
  Solver s(params, state.grid, config);
  model::FieldState out = state;
  s.coupled_step(out, dt);
  return out;
}

RunRecord run(const model::FieldState& initial, const model::ModelParams& params, const SolverConfig& config) {
  Solver s(params, initial.grid, config);
  return s.run(initial);
}

void write_field_csv(const std::filesystem::path& path, const model::FieldState& state) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << std::setprecision(17);
  const int dim = state.dim();
  out << "cell,x" << (dim == 2 ? ",y" : "") << ",rho,v_1" << (dim == 2 ? ",v_2" : "") << ",phi\n";
  const int nx = state.grid.nx();
  for (std::size_t i = 0; i < state.size(); ++i) {
    const int ix = static_cast<int>(i % nx), iy = static_cast<int>(i / nx);
    out << i << ',' << state.grid.center(0, ix);
    if (dim == 2) out << ',' << state.grid.center(1, iy);
    out << ',' << state.rho[i];
    for (int d = 0; d < dim; ++d) out << ',' << state.v[d][i];
    out << ',' << state.phi[i] << '\n';
  }
}

}  // namespace vasclab::solver
