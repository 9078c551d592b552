#pragma once

#include <span>
#include <string>
#include <vector>

#include "vasclab/fft/periodic_fft.hpp"
#include "vasclab/model/grid.hpp"
#include "vasclab/model/params.hpp"

namespace vasclab::parabolic {

/// Constants of phi_t = D lap phi + a rho - b phi in n dimensions.
struct HeatKernelSpec {
  double D = 1.0;
  double b = 1.0;
  int n = 1;
  double a = 1.0;

  static HeatKernelSpec from_params(const model::ModelParams& params, int n);
  std::vector<std::string> violations() const;
  void validate() const;
};

/// Gamma(x, t) = exp(-|x|^2 / (4 D t)) / (4 pi D t)^{n/2}; DomainError for t <= 0.
double heat_kernel(std::span<const double> x, double t, const HeatKernelSpec& spec);

/// Exact mode-wise step with rho frozen over the step:
///   phi_hat <- e^{-lambda dt} phi_hat + a rho_hat (1 - e^{-lambda dt}) / lambda,  lambda = D|k|^2 + b.
std::vector<double> spectral_phi_step(const std::vector<double>& phi, const std::vector<double>& rho,
                                      const HeatKernelSpec& spec, const model::GridSpec& grid, double dt);

/// Reusable form of spectral_phi_step that caches the per-mode factors for
/// the last step size; used inside the time loop.
class PhiIntegrator {
 public:
  PhiIntegrator(const HeatKernelSpec& spec, const model::GridSpec& grid);
  void step(std::vector<double>& phi, const std::vector<double>& rho, double dt);
  fft::PeriodicFFT& fft() { return fft_; }

 private:
  void prepare(double dt);
  HeatKernelSpec spec_;
  fft::PeriodicFFT fft_;
  double cached_dt_ = -1.0;
  std::vector<double> decay_, gain_;
  std::vector<std::complex<double>> phi_hat_, rho_hat_;
};

/// Density samples rho(tau_i) on a uniform time grid starting at 0.
struct RhoPath {
  std::vector<double> times;
  std::vector<std::vector<double>> fields;
};

struct DuhamelOptions {
  double tolerance = 1e-7;  // estimated relative L^2 quadrature error
};

struct DuhamelResult {
  std::vector<double> phi;
  double error_estimate = 0.0;
};

/// phi(t) = e^{-bt} Gamma(t) * phi0 + int_0^t e^{-b(t - tau)} Gamma(t - tau) * a rho(tau) dtau,
/// convolutions spectral, tau quadrature exact for rho piecewise linear between
/// nodes. t must be a node of the path. The error estimate compares against
/// the same rule on every other node; AccuracyError when it exceeds tolerance.
DuhamelResult duhamel_phi(const std::vector<double>& phi0, const RhoPath& path, const HeatKernelSpec& spec,
                          const model::GridSpec& grid, double t, const DuhamelOptions& options = {});

}  // namespace vasclab::parabolic
