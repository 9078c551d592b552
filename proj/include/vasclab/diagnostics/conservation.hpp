#pragma once

#include <vector>

#include "vasclab/model/params.hpp"
#include "vasclab/solver/solver.hpp"

namespace vasclab::diagnostics {

struct ConservationReport {
  /// max_i |sum rho(t_i) - sum rho(0)| dV / sum (rho_bar + rho_0) dV.
  double max_mass_drift = 0.0;
  /// Entropy increments between consecutive steps (or samples when per-step
  /// entropy was not tracked), divided by the initial entropy.
  std::vector<double> entropy_increments;
  double max_entropy_increment = 0.0;
  int flagged_increments = 0;  // only counted when mu == 0
  bool entropy_checked = false;
  /// min over snapshot cells of -W_2 . g / |W_2|^2 (should be alpha (rho + rho_bar) > 0).
  double min_dissipation_ratio = 0.0;
  bool dissipation_ok = true;
};

/// Report-only check of mass, entropy and damping sign on a finished run.
ConservationReport monitor_conservation(const solver::RunRecord& run, const model::ModelParams& params,
                                        double entropy_tolerance = 1e-10);

}  // namespace vasclab::diagnostics
