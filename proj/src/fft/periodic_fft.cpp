#include "vasclab/fft/periodic_fft.hpp"

#include <cmath>
#include <cstring>
#include <numbers>
#include <stdexcept>

#include <fftw3.h>

namespace vasclab::fft {

struct PeriodicFFT::Plans {
  std::size_t cells = 0;
  std::size_t modes = 0;
  double* real = nullptr;
  fftw_complex* spec = nullptr;
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;

  Plans(const model::GridSpec& g, std::size_t m) : cells(g.size()), modes(m) {
    real = fftw_alloc_real(cells);
    spec = fftw_alloc_complex(modes);
    if (real == nullptr || spec == nullptr) throw std::bad_alloc();
    if (g.dim == 1) {
      r2c = fftw_plan_dft_r2c_1d(g.nx(), real, spec, FFTW_ESTIMATE);
      c2r = fftw_plan_dft_c2r_1d(g.nx(), spec, real, FFTW_ESTIMATE);
    } else {
      r2c = fftw_plan_dft_r2c_2d(g.ny(), g.nx(), real, spec, FFTW_ESTIMATE);
      c2r = fftw_plan_dft_c2r_2d(g.ny(), g.nx(), spec, real, FFTW_ESTIMATE);
    }
    if (r2c == nullptr || c2r == nullptr) throw std::runtime_error("FFTW plan creation failed");
  }

  ~Plans() {
    if (r2c) fftw_destroy_plan(r2c);
    if (c2r) fftw_destroy_plan(c2r);
    fftw_free(real);
    fftw_free(spec);
  }
};

PeriodicFFT::PeriodicFFT(const model::GridSpec& grid) : grid_(grid) {
  grid_.validate();
  const int nx = grid_.nx();
  const int ny = grid_.ny();
  const int hx = nx / 2 + 1;
  const std::size_t m = static_cast<std::size_t>(hx) * ny;
  kx_.resize(m);
  ky_.resize(m);
  k2_.resize(m);
  weights_.resize(m);
  nyquist_[0].resize(m);
  nyquist_[1].resize(m);
  const double two_pi = 2.0 * std::numbers::pi;
  const double dkx = two_pi / grid_.lengths[0];
  const double dky = grid_.dim == 2 ? two_pi / grid_.lengths[1] : 0.0;
  for (int j = 0; j < ny; ++j) {
    const int jj = j <= ny / 2 ? j : j - ny;
    for (int i = 0; i < hx; ++i) {
      const std::size_t k = static_cast<std::size_t>(j) * hx + i;
      kx_[k] = dkx * i;
      ky_[k] = dky * jj;
      k2_[k] = kx_[k] * kx_[k] + ky_[k] * ky_[k];
      weights_[k] = (i == 0 || 2 * i == nx) ? 1.0 : 2.0;
      nyquist_[0][k] = 2 * i == nx;
      nyquist_[1][k] = grid_.dim == 2 && 2 * j == ny;
    }
  }
  plans_ = std::make_unique<Plans>(grid_, m);
  scratch_.resize(m);
}

PeriodicFFT::~PeriodicFFT() = default;
PeriodicFFT::PeriodicFFT(PeriodicFFT&&) noexcept = default;
PeriodicFFT& PeriodicFFT::operator=(PeriodicFFT&&) noexcept = default;

void PeriodicFFT::forward(const double* field, std::complex<double>* spectrum) {
  std::memcpy(plans_->real, field, plans_->cells * sizeof(double));
  fftw_execute(plans_->r2c);
  std::memcpy(static_cast<void*>(spectrum), plans_->spec, plans_->modes * sizeof(fftw_complex));
}

void PeriodicFFT::inverse(const std::complex<double>* spectrum, double* field) {
  // c2r destroys its input, hence the copy into the plan buffer.
  std::memcpy(plans_->spec, static_cast<const void*>(spectrum), plans_->modes * sizeof(fftw_complex));
  fftw_execute(plans_->c2r);
  const double scale = 1.0 / static_cast<double>(plans_->cells);
  for (std::size_t i = 0; i < plans_->cells; ++i) field[i] = plans_->real[i] * scale;
}

void PeriodicFFT::gradient(const double* field, int axis, double* out) {
  forward(field, scratch_.data());
  const std::vector<double>& k = axis == 0 ? kx_ : ky_;
  const std::vector<unsigned char>& nyq = nyquist_[axis];
  for (std::size_t m = 0; m < scratch_.size(); ++m) {
    scratch_[m] = nyq[m] ? std::complex<double>(0.0) : std::complex<double>(0.0, k[m]) * scratch_[m];
  }
  inverse(scratch_.data(), out);
}

double PeriodicFFT::spectral_energy(const std::complex<double>* spectrum, const double* multiplier) const {
  double sum = 0.0;
  for (std::size_t m = 0; m < kx_.size(); ++m) sum += weights_[m] * multiplier[m] * std::norm(spectrum[m]);
  return sum / static_cast<double>(grid_.size());
}

}  // namespace vasclab::fft
