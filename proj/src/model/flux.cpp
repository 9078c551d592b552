#include "vasclab/model/flux.hpp"

#include <cmath>
#include <string>

#include "vasclab/errors.hpp"

namespace vasclab::model {
namespace {

double total_density(const Vec& U, const ModelParams& params) {
  const double rho_tot = U(0) + params.rho_bar;
  if (!(rho_tot > 0.0)) throw DomainError("total density must be > 0, got " + std::to_string(rho_tot));
  return rho_tot;
}

Vec momentum_flux(const Vec& U, double rho_tot, double pressure_term, int axis) {
  const auto n = U.size() - 1;
  Vec f(n + 1);
  const double vj = U(axis + 1);
  f(0) = vj;
  for (Eigen::Index i = 0; i < n; ++i) f(i + 1) = U(i + 1) * vj / rho_tot;
  f(axis + 1) += pressure_term;
  return f;
}

}  // namespace

Vec total_flux(const Vec& U, const ModelParams& params, int axis) {
  const double rho_tot = total_density(U, params);
  return momentum_flux(U, rho_tot, params.pressure.pressure(rho_tot), axis);
}

Vec perturbed_flux(const Vec& U, const ModelParams& params, int axis) {
  const double rho_tot = total_density(U, params);
  return momentum_flux(U, rho_tot, params.pressure.increment(params.rho_bar, U(0)), axis);
}

Mat flux_jacobian(const Vec& U, const ModelParams& params, int axis) {
  const double rho_tot = total_density(U, params);
  const auto n = U.size() - 1;
  const double vj = U(axis + 1);
  Mat J = Mat::Zero(n + 1, n + 1);
  J(0, axis + 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double vi = U(i + 1);
    J(i + 1, 0) = -vi * vj / (rho_tot * rho_tot);
    J(i + 1, i + 1) += vj / rho_tot;
    J(i + 1, axis + 1) += vi / rho_tot;
  }
  J(axis + 1, 0) += params.pressure.derivative(rho_tot);
  return J;
}

Vec source_damping(const Vec& U, const ModelParams& params) {
  Vec g = -params.alpha * U;
  g(0) = 0.0;
  return g;
}

Vec source_chemo(const Vec& U, const Vec& grad_phi, const ModelParams& params) {
  const double rho_tot = total_density(U, params);
  Vec h(U.size());
  h(0) = 0.0;
  h.tail(U.size() - 1) = params.mu * rho_tot * grad_phi;
  return h;
}

Vec cd_transform(const Vec& U, const ModelParams& params) {
  Vec out = U;
  out.tail(U.size() - 1) /= params.sound_speed_bar();
  return out;
}

Vec cd_inverse(const Vec& U_cd, const ModelParams& params) {
  Vec out = U_cd;
  out.tail(U_cd.size() - 1) *= params.sound_speed_bar();
  return out;
}

}  // namespace vasclab::model
