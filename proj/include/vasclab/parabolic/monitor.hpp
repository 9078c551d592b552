#pragma once

#include <vector>

#include "vasclab/diagnostics/series.hpp"
#include "vasclab/model/params.hpp"

namespace vasclab::parabolic {

/// Checks of the chemoattractant against its a-priori bounds:
///   |phi(t)|_1 <= e^{-bt} |phi_0|_1 + (a/b) sup_{tau<=t} |rho(tau)|_1,
///   |grad phi(t)|_inf <= C0 e^{-bt} |phi_0|_{H^{s+1}}
///                        + n a sup_{tau<=t} |rho(tau)|_inf erf(sqrt(bt)) / sqrt(bD),
/// with C0 = |grad phi_0|_inf / |phi_0|_{H^{s+1}} fitted at t = 0.
struct PhiBoundsReport {
  std::vector<double> times;
  std::vector<double> phi_l1;
  std::vector<double> l1_bound;
  std::vector<double> grad_linf;
  std::vector<double> grad_envelope;
  double c0 = 0.0;
  int l1_violations = 0;
  int grad_violations = 0;
  double worst_l1_ratio = 0.0;    // max phi_l1 / l1_bound
  double worst_grad_ratio = 0.0;  // max grad_linf / grad_envelope
  bool ok() const { return l1_violations == 0 && grad_violations == 0; }
};

/// Reads "phi:L1", "rho:L1", "rho:Linf", "grad_phi:Linf" and "phi:H(s+1)"
/// from the series. A sample is flagged when it exceeds its bound by more than
/// rel_tol relative plus abs_tol. Throws InputError for missing components.
PhiBoundsReport monitor_phi_bounds(const diagnostics::NormSeries& series, const model::ModelParams& params, int dim,
                                   int s, double rel_tol = 1e-6, double abs_tol = 1e-14);

}  // namespace vasclab::parabolic
