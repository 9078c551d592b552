#pragma once

#include <complex>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "vasclab/diagnostics/norms.hpp"
#include "vasclab/diagnostics/series.hpp"
#include "vasclab/model/grid.hpp"
#include "vasclab/model/params.hpp"
#include "vasclab/parabolic/heat.hpp"

namespace vasclab::solver {

enum class Splitting { lie, strang };
enum class Termination { completed, positivity_violation, nan_detected };

std::string splitting_name(Splitting s);
std::string termination_name(Termination t);

struct SolverConfig {
  double cfl = 0.45;
  double t_final = 1.0;
  Splitting splitting = Splitting::strang;
  int output_stride = 10;          // steps between diagnostic samples
  double positivity_floor = 1e-6;  // lower bound on rho + rho_bar
  double fixed_dt = 0.0;           // > 0 replaces the CFL step
  int sobolev_order = 2;
  double smallness = 0.05;         // |U_0|_{H^s} <= smallness * rho_bar; 0 disables
  bool keep_snapshots = false;     // otherwise only the first and last states
  bool track_step_entropy = false; // total shifted entropy after every step

  std::vector<std::string> violations() const;
  void validate() const;
};

struct RunRecord {
  std::vector<model::FieldState> snapshots;
  diagnostics::NormSeries norms;  // sampled every output_stride steps and at the end
  std::vector<double> mass;       // sum rho dV at the diagnostic samples
  std::vector<double> entropy;    // total shifted entropy at the diagnostic samples
  std::vector<double> step_entropy;  // entry 0 is the initial state
  double total_mass = 0.0;        // sum (rho_bar + rho_0) dV
  long steps = 0;
  Termination termination = Termination::completed;
  std::string message;
};

/// Time stepper for the perturbation system with reusable work buffers.
///
/// hyperbolic_step: exact source half-steps around an SSP-RK2 Rusanov
/// finite-volume transport step, with grad phi frozen. parabolic_step: exact
/// mode-wise phi update with rho frozen. coupled_step composes the two, Lie
/// (H then P) or Strang (P/2, H, P/2).
class Solver {
 public:
  Solver(const model::ModelParams& params, const model::GridSpec& grid, const SolverConfig& config = {});
  ~Solver();
  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;

  /// 1 / sum_d (max wave speed_d / dx_d): the Courant-number-one step.
  double max_stable_dt(const model::FieldState& state);
  double cfl_dt(const model::FieldState& state) { return config_.cfl * max_stable_dt(state); }

  /// Throws StepSizeError when dt > cfl_limit * max_stable_dt and
  /// PositivityError when rho + rho_bar drops below the floor.
  void hyperbolic_step(model::FieldState& state, const std::vector<std::vector<double>>& grad_phi, double dt,
                       double cfl_limit = 1.0);
  void parabolic_step(model::FieldState& state, double dt);
  void coupled_step(model::FieldState& state, double dt);

  void grad_phi(const model::FieldState& state, std::vector<std::vector<double>>& out);

  RunRecord run(const model::FieldState& initial);

  const SolverConfig& config() const { return config_; }
  const model::ModelParams& params() const { return params_; }

 private:
  struct Workspace;
  void source_half(model::FieldState& state, const std::vector<std::vector<double>>& grad, double h);
  void transport_rate_apply(const model::FieldState& from, model::FieldState& into, double dt);
  void check_positive(const model::FieldState& state, const char* where) const;
  void record(RunRecord& rec, const model::FieldState& state);

  model::ModelParams params_;
  model::GridSpec grid_;
  SolverConfig config_;
  std::unique_ptr<Workspace> ws_;
};

/// One-shot forms of the stepper operations.
model::FieldState hyperbolic_step(const model::FieldState& state, const std::vector<std::vector<double>>& grad_phi,
                                  const model::ModelParams& params, double dt, double cfl_limit = 1.0);
model::FieldState coupled_step(const model::FieldState& state, const model::ModelParams& params,
                               const SolverConfig& config, double dt);
RunRecord run(const model::FieldState& initial, const model::ModelParams& params, const SolverConfig& config);

/// Row per cell: cell, x[, y], rho, v_1[, v_2], phi (perturbations).
void write_field_csv(const std::filesystem::path& path, const model::FieldState& state);

}  // namespace vasclab::solver
