#pragma once

#include <complex>
#include <vector>

#include "vasclab/fft/periodic_fft.hpp"
#include "vasclab/model/grid.hpp"

namespace vasclab::diagnostics {

using FieldGroup = std::vector<const std::vector<double>*>;

/// Discrete L^p norm with cell-volume weights; p = INFINITY gives the max.
double lp_norm(const std::vector<double>& field, const model::GridSpec& grid, double p);

/// L^p norm of the pointwise Euclidean magnitude of a group of fields.
double lp_norm(const FieldGroup& fields, const model::GridSpec& grid, double p);

/// (sum_k (1 + |k|^2)^s |f_hat(k)|^2)^{1/2}, scaled so that s = 0 is the L^2 norm.
double sobolev_norm(const std::vector<double>& field, int s, const model::GridSpec& grid);
double sobolev_norm(const FieldGroup& fields, int s, const model::GridSpec& grid);

/// Reusable FFT-backed evaluator for repeated norm and gradient work on one grid.
class NormEvaluator {
 public:
  explicit NormEvaluator(const model::GridSpec& grid);

  double sobolev(const std::vector<double>& field, int s);
  double sobolev(const FieldGroup& fields, int s);
  /// H^{s} norm of the gradient, summed over axes.
  double gradient_sobolev(const FieldGroup& fields, int s);
  void gradient(const std::vector<double>& field, int axis, std::vector<double>& out);

  const model::GridSpec& grid() const { return fft_.grid(); }
  fft::PeriodicFFT& fft() { return fft_; }

 private:
  double weighted_energy(const std::vector<double>& field, int s, int gradient_axis);
  fft::PeriodicFFT fft_;
  std::vector<std::complex<double>> spectrum_;
  std::vector<double> multiplier_;
};

}  // namespace vasclab::diagnostics
