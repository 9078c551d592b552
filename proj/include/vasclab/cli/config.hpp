#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vasclab/model/grid.hpp"
#include "vasclab/model/params.hpp"
#include "vasclab/solver/solver.hpp"

namespace vasclab::cli {

enum class Experiment { sk_check, compensator, linear_decay, parabolic_verify, nonlinear_decay };

std::string experiment_name(Experiment e);

/// Initial-data synthesis for grid experiments.
struct InitialDataSpec {
  std::string preset = "gaussian";  // gaussian | band_limited | zero
  double hs_norm = 0.02;            // target |U_0|_{H^s} / rho_bar; 0 keeps the raw amplitude
  double amplitude = 0.01;          // peak density perturbation before rescaling
  double width = 16.0;              // Gaussian standard deviation
  double kmax_fraction = 0.25;      // band limit as a fraction of the Nyquist index
  double phi_scale = 0.0;           // phi_0 = phi_scale * (a/b) * rho_0
};

struct SkSettings {
  int directions = 1000;
  std::vector<int> dims{1, 2};
  double min_margin = 0.1;
};

struct CompensatorSettings {
  int directions = 500;
  int verify_directions = 500;
  int eta_count = 200;
  std::vector<int> dims{1, 2};
};

struct BlockSettings {
  std::vector<int> dims{1, 2};
  double p = 2.0;  // 2 or inf
  int beta_x = 0;  // derivative order along x
  int radial = 400;
  int angular = 64;
  double domain_length = 1.0e5;
  double t_min = 200.0;
  double t_max = 20000.0;
  int samples = 24;
  double xi_cutoff = 0.0;  // 0: half the branch-crossing radius
  double gaussian_width = 1.0;
  double tolerance = 0.1;
  double min_r2 = 0.98;
};

struct LinearSettings {
  bool enabled = true;
  double t_final = 2000.0;
  int samples = 64;
};

struct ParabolicSettings {
  double t_final = 1.0;
  int steps = 1000;
  double omega = 2.0;
  double tolerance = 1e-6;
};

struct FitSettings {
  double tolerance = 0.1;
  double min_r2 = 0.98;
  double window_lo = 0.1;  // fractions of the final time
  double window_hi = 0.8;
};

struct ExperimentConfig {
  Experiment experiment = Experiment::sk_check;
  std::uint64_t seed = 1;
  std::string output_dir = "output";
  model::ModelParams params;
  model::GridSpec grid;
  solver::SolverConfig solver;
  InitialDataSpec initial;
  SkSettings sk;
  CompensatorSettings compensator;
  BlockSettings blocks;
  LinearSettings linear;
  ParabolicSettings parabolic;
  FitSettings fit;

  /// Every key with its resolved value, in the same format parse_config reads.
  std::string to_text() const;
};

/// Parses the flat-section key = value format:
///
///   # comment
///   experiment = nonlinear_decay
///   seed = 7
///   [model]
///   alpha = 1.0
///
/// Unknown sections or keys, duplicates, malformed values, missing required
/// sections and invariant violations are all collected and reported together
/// in one ValidationError.
ExperimentConfig parse_config(const std::string& text);

ExperimentConfig load_config(const std::string& path);

}  // namespace vasclab::cli
