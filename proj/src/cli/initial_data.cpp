#include "vasclab/cli/initial_data.hpp"

#include <cmath>
#include <complex>

#include "vasclab/diagnostics/norms.hpp"
#include "vasclab/errors.hpp"
#include "vasclab/fft/periodic_fft.hpp"
#include "vasclab/random.hpp"

namespace vasclab::cli {

std::vector<double> band_limited_field(const model::GridSpec& grid, double kmax_fraction, std::mt19937_64& gen) {
  fft::PeriodicFFT fft(grid);
  const int nx = grid.nx(), ny = grid.ny();
  const int hx = nx / 2 + 1;
  const double kx_max = kmax_fraction * (nx / 2);
  const double ky_max = kmax_fraction * (ny / 2);
  std::vector<std::complex<double>> spec(fft.modes());
  for (int j = 0; j < ny; ++j) {
    const int jj = j <= ny / 2 ? j : j - ny;
    for (int i = 0; i < hx; ++i) {
      const std::size_t m = static_cast<std::size_t>(j) * hx + i;
      // Draw for every mode so the stream does not depend on the band limit.
      const double re = uniform(gen, -1.0, 1.0);
      const double im = uniform(gen, -1.0, 1.0);
      const bool inside = i <= kx_max && (grid.dim == 1 || std::abs(jj) <= ky_max);
      const bool mean = i == 0 && jj == 0;
      const bool nyq = fft.nyquist(0)[m] || fft.nyquist(1)[m];
      if (inside && !mean && !nyq) spec[m] = {re, im};
    }
  }
  // Enforce Hermitian symmetry on the i = 0 (and i = nx/2) planes of the 2D layout.
  if (grid.dim == 2) {
    for (int i : {0, nx / 2}) {
      for (int j = 1; j < ny / 2; ++j) {
        const std::size_t a = static_cast<std::size_t>(j) * hx + i;
        const std::size_t b = static_cast<std::size_t>(ny - j) * hx + i;
        spec[b] = std::conj(spec[a]);
      }
    }
  } else {
    spec[0] = spec[0].real();
  }
  std::vector<double> f(grid.size());
  fft.inverse(spec.data(), f.data());
  const double n2 = diagnostics::lp_norm(f, grid, 2.0);
  if (n2 > 0.0)
    for (double& x : f) x /= n2;
  return f;
}

model::FieldState make_initial_state(const InitialDataSpec& spec, const model::GridSpec& grid,
                                     const model::ModelParams& params, int sobolev_order, std::uint64_t seed) {
  model::FieldState s = model::FieldState::zeros(grid);
  if (spec.preset == "zero") return s;
  if (spec.preset == "gaussian") {
    const double cx = 0.5 * grid.lengths[0];
    const double cy = grid.dim == 2 ? 0.5 * grid.lengths[1] : 0.0;
    const double w2 = spec.width * spec.width;
    for (int j = 0; j < grid.ny(); ++j)
      for (int i = 0; i < grid.nx(); ++i) {
        const double dx = grid.center(0, i) - cx;
        const double dy = grid.dim == 2 ? grid.center(1, j) - cy : 0.0;
        s.rho[static_cast<std::size_t>(j) * grid.nx() + i] = spec.amplitude * std::exp(-0.5 * (dx * dx + dy * dy) / w2);
      }
  } else if (spec.preset == "band_limited") {
    std::mt19937_64 gen(seed);
    s.rho = band_limited_field(grid, spec.kmax_fraction, gen);
    for (auto& c : s.v) c = band_limited_field(grid, spec.kmax_fraction, gen);
    for (double& x : s.rho) x *= spec.amplitude;
    for (auto& c : s.v)
      for (double& x : c) x *= spec.amplitude;
  } else {
    throw InputError("unknown initial-data preset '" + spec.preset + "'");
  }
  if (spec.hs_norm > 0.0) {
    diagnostics::FieldGroup U{&s.rho};
    for (const auto& c : s.v) U.push_back(&c);
    const double hs = diagnostics::sobolev_norm(U, sobolev_order, grid);
    if (hs > 0.0) {
      const double k = spec.hs_norm * params.rho_bar / hs;
      for (double& x : s.rho) x *= k;
      for (auto& c : s.v)
        for (double& x : c) x *= k;
    }
  }
  for (std::size_t i = 0; i < s.size(); ++i) s.phi[i] = spec.phi_scale * params.a / params.b * s.rho[i];
  s.validate(params.rho_bar);
  return s;
}

}  // namespace vasclab::cli
