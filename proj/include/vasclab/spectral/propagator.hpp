#pragma once

#include <complex>
#include <vector>

#include <Eigen/Core>

#include "vasclab/fft/periodic_fft.hpp"
#include "vasclab/model/grid.hpp"
#include "vasclab/model/params.hpp"

namespace vasclab::spectral {

/// Exact solution operator of the system linearised at (rho_bar, 0, phi_bar)
/// on a periodic grid, in perturbation variables (rho, v, phi):
///   rho_t = -div v
///   v_t   = -P'(rho_bar) grad rho - alpha v + mu rho_bar grad phi
///   phi_t = D lap phi + a rho - b phi
/// Each FFT mode caches an eigendecomposition of its generator; modes with an
/// ill-conditioned eigenbasis are exponentiated directly on demand.
class LinearPropagator {
 public:
  LinearPropagator(const model::ModelParams& params, const model::GridSpec& grid);

  /// State at initial.time + t.
  model::FieldState evolve(const model::FieldState& initial, double t);

  /// Largest real part over all mode eigenvalues except the conserved density
  /// of modes with zero discrete gradient (mean, pure Nyquist); negative means
  /// linear stability of the equilibrium.
  double spectral_abscissa() const { return abscissa_; }

 private:
  using CMat4 = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, 0, 4, 4>;
  using CVec4 = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, 1, 0, 4, 1>;
  struct Mode {
    CMat4 generator;
    CMat4 V, Vinv;
    CVec4 lambda;
    bool direct = false;
  };

  model::ModelParams params_;
  fft::PeriodicFFT fft_;
  std::vector<Mode> modes_;
  double abscissa_ = 0.0;
};

}  // namespace vasclab::spectral
