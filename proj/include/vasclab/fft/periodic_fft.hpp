#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

#include "vasclab/model/grid.hpp"

namespace vasclab::fft {

/// Real-to-half-complex transforms on a periodic GridSpec.
///
/// Spectra use the r2c layout: mode (i, j) lives at j * (nx/2 + 1) + i with
/// 0 <= i <= nx/2. forward() is unnormalised, inverse() divides by the cell
/// count, so inverse(forward(f)) == f. Instances own scratch buffers and are
/// not safe to share between threads.
class PeriodicFFT {
 public:
  explicit PeriodicFFT(const model::GridSpec& grid);
  ~PeriodicFFT();
  PeriodicFFT(PeriodicFFT&&) noexcept;
  PeriodicFFT& operator=(PeriodicFFT&&) noexcept;
  PeriodicFFT(const PeriodicFFT&) = delete;
  PeriodicFFT& operator=(const PeriodicFFT&) = delete;

  const model::GridSpec& grid() const { return grid_; }
  std::size_t cells() const { return grid_.size(); }
  std::size_t modes() const { return kx_.size(); }

  void forward(const double* field, std::complex<double>* spectrum);
  void inverse(const std::complex<double>* spectrum, double* field);

  /// Angular wavenumbers per stored mode.
  const std::vector<double>& kx() const { return kx_; }
  const std::vector<double>& ky() const { return ky_; }
  const std::vector<double>& k2() const { return k2_; }
  /// Multiplicity of each stored mode in the full spectrum (1 or 2).
  const std::vector<double>& weights() const { return weights_; }
  /// True where a mode sits on the Nyquist index of the given axis.
  const std::vector<unsigned char>& nyquist(int axis) const { return nyquist_[axis]; }

  /// Spectral derivative along an axis; the axis's Nyquist modes are zeroed
  /// so the result of a real field stays real.
  void gradient(const double* field, int axis, double* out);

  /// Sum over the full spectrum of weight(k) |f_hat(k)|^2, where weight is
  /// given per stored mode; the forward transform normalisation is undone so
  /// that multiplier == 1 reproduces sum_x f(x)^2.
  double spectral_energy(const std::complex<double>* spectrum, const double* multiplier) const;

 private:
  struct Plans;
  model::GridSpec grid_;
  std::unique_ptr<Plans> plans_;
  std::vector<double> kx_, ky_, k2_, weights_;
  std::vector<unsigned char> nyquist_[2];
  std::vector<std::complex<double>> scratch_;
};

}  // namespace vasclab::fft
