#include "vasclab/spectral/symbols.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "vasclab/errors.hpp"
#include "vasclab/random.hpp"

namespace vasclab::spectral {

Mat SymbolSet::symbol(const Vec& xi) const {
  Mat a = Mat::Zero(state_dim(), state_dim());
  for (int j = 0; j < dim; ++j) a += xi(j) * jacobians[j];
  return a;
}

CMat SymbolSet::generator(const Vec& xi) const {
  const std::complex<double> minus_i(0.0, -1.0);
  return minus_i * symbol(xi).cast<std::complex<double>>() + dissipation.cast<std::complex<double>>();
}

SymbolSet raw_symbols(int dim, double pressure_derivative, double alpha) {
  if (dim != 1 && dim != 2) throw DomainError("symbol dimension must be 1 or 2");
  if (!(pressure_derivative >= 0.0)) throw DomainError("pressure derivative must be >= 0");
  SymbolSet s;
  s.dim = dim;
  s.sound_speed = std::sqrt(pressure_derivative);
  s.alpha = alpha;
  for (int j = 0; j < dim; ++j) {
    Mat a = Mat::Zero(dim + 1, dim + 1);
    a(0, j + 1) = s.sound_speed;
    a(j + 1, 0) = s.sound_speed;
    s.jacobians.push_back(a);
  }
  s.dissipation = Mat::Zero(dim + 1, dim + 1);
  for (int j = 1; j <= dim; ++j) s.dissipation(j, j) = -alpha;
  return s;
}

SymbolSet build_symbols(const model::ModelParams& params, int dim) {
  params.validate();
  return raw_symbols(dim, params.pressure.derivative(params.rho_bar), params.alpha);
}

std::vector<Vec> sphere_directions(int dim, int count) {
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    Vec xi(dim);
    if (dim == 1) {
      xi(0) = (k % 2 == 0) ? 1.0 : -1.0;
    } else {
      const double theta = 2.0 * std::numbers::pi * (k + 0.5) / count;
      xi << std::cos(theta), std::sin(theta);
    }
    out.push_back(xi);
  }
  return out;
}

std::vector<Vec> random_directions(int dim, int count, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    Vec xi(dim);
    if (dim == 1) {
      xi(0) = uniform01(gen) < 0.5 ? -1.0 : 1.0;
    } else {
      const double theta = uniform(gen, 0.0, 2.0 * std::numbers::pi);
      xi << std::cos(theta), std::sin(theta);
    }
    out.push_back(xi);
  }
  return out;
}

}  // namespace vasclab::spectral
