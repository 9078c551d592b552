#include "vasclab/spectral/propagator.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "vasclab/errors.hpp"
#include "vasclab/spectral/matrix_exp.hpp"

namespace vasclab::spectral {
namespace {

using cd = std::complex<double>;

}  // namespace

LinearPropagator::LinearPropagator(const model::ModelParams& params, const model::GridSpec& grid)
    : params_(params), fft_(grid) {
  params_.validate();
  const int n = grid.dim;
  const int m = n + 2;  // rho, v_1..v_n, phi
  const double dp = params.pressure.derivative(params.rho_bar);
  const cd I(0.0, 1.0);
  modes_.resize(fft_.modes());
  abscissa_ = -INFINITY;
  for (std::size_t k = 0; k < fft_.modes(); ++k) {
    double kv[2] = {fft_.kx()[k], fft_.ky()[k]};
    for (int d = 0; d < n; ++d)
      if (fft_.nyquist(d)[k]) kv[d] = 0.0;
    const double k2 = fft_.k2()[k];
    CMat4 G = CMat4::Zero(m, m);
    for (int d = 0; d < n; ++d) {
      G(0, 1 + d) = -I * kv[d];
      G(1 + d, 0) = -I * kv[d] * dp;
      G(1 + d, 1 + d) = -params.alpha;
      G(1 + d, m - 1) = I * kv[d] * params.mu * params.rho_bar;
    }
    G(m - 1, 0) = params.a;
    G(m - 1, m - 1) = -(params.D * k2 + params.b);
    Mode& md = modes_[k];
    md.generator = G;
    Eigen::ComplexEigenSolver<CMat4> es(G);
    bool ok = es.info() == Eigen::Success;
    if (ok) {
      Eigen::JacobiSVD<CMat4> svd(es.eigenvectors());
      const auto& sv = svd.singularValues();
      ok = sv(sv.size() - 1) > 0.0 && sv(0) / sv(sv.size() - 1) <= 1e8;
    }
    if (ok) {
      md.V = es.eigenvectors();
      md.Vinv = md.V.inverse();
      md.lambda = es.eigenvalues();
    } else {
      md.direct = true;
    }
    const CVec4 lam = ok ? md.lambda : CVec4(Eigen::ComplexEigenSolver<CMat4>(G, false).eigenvalues());
    // Modes the discrete gradient annihilates (the mean and pure Nyquist
    // modes) conserve their density; that eigenvalue is exactly 0.
    const bool neutral = std::all_of(kv, kv + n, [](double x) { return x == 0.0; });
    for (int j = 0; j < m; ++j) {
      if (neutral && std::abs(lam(j)) < 1e-12) continue;
      abscissa_ = std::max(abscissa_, lam(j).real());
    }
  }
}

model::FieldState LinearPropagator::evolve(const model::FieldState& initial, double t) {
  if (!(t >= 0.0)) throw DomainError("LinearPropagator::evolve needs t >= 0");
  const auto& grid = fft_.grid();
  if (initial.grid.size() != grid.size() || initial.dim() != grid.dim)
    throw DomainError("initial state grid does not match propagator grid");
  const int n = grid.dim;
  const int m = n + 2;
  const std::size_t nm = fft_.modes();
  std::vector<std::vector<cd>> spec(m, std::vector<cd>(nm));
  fft_.forward(initial.rho.data(), spec[0].data());
  for (int d = 0; d < n; ++d) fft_.forward(initial.v[d].data(), spec[1 + d].data());
  fft_.forward(initial.phi.data(), spec[m - 1].data());

  CVec4 u(m);
  for (std::size_t k = 0; k < nm; ++k) {
    const Mode& md = modes_[k];
    for (int j = 0; j < m; ++j) u(j) = spec[j][k];
    CVec4 r;
    if (md.direct) {
      r = detail::pade13_exp<CMat4>(t * md.generator) * u;
    } else {
      const CVec4 e = (t * md.lambda).array().exp();
      r = md.V * (e.asDiagonal() * (md.Vinv * u));
    }
    for (int j = 0; j < m; ++j) spec[j][k] = r(j);
  }

  model::FieldState out = model::FieldState::zeros(grid);
  out.time = initial.time + t;
  fft_.inverse(spec[0].data(), out.rho.data());
  for (int d = 0; d < n; ++d) fft_.inverse(spec[1 + d].data(), out.v[d].data());
  fft_.inverse(spec[m - 1].data(), out.phi.data());
  return out;
}

}  // namespace vasclab::spectral
