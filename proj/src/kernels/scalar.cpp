#include <cmath>
#include <limits>

#include "vasclab/kernels/kernels.hpp"

namespace vasclab::kernels::detail {
namespace {

void euler_cell_flux(std::size_t n, const double* rho_tot, const double* vn, const double* vt,
                     const double* dp, const double* c, double* f_rho, double* f_vn, double* f_vt,
                     double* speed) {
  for (std::size_t i = 0; i < n; ++i) {
    const double u = vn[i] / rho_tot[i];
    f_rho[i] = vn[i];
    f_vn[i] = vn[i] * u + dp[i];
    speed[i] = std::abs(u) + c[i];
  }
  if (vt != nullptr) {
    for (std::size_t i = 0; i < n; ++i) f_vt[i] = vt[i] * (vn[i] / rho_tot[i]);
  }
}

void rusanov_face(std::size_t n, const double* fl, const double* fr, const double* ul,
                  const double* ur, const double* sl, const double* sr, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const double s = sl[i] > sr[i] ? sl[i] : sr[i];
    out[i] = 0.5 * (fl[i] + fr[i]) - 0.5 * s * (ur[i] - ul[i]);
  }
}

void flux_divergence(std::size_t n, double* u, const double* f_minus, const double* f_plus,
                     double lambda) {
  for (std::size_t i = 0; i < n; ++i) u[i] -= lambda * (f_plus[i] - f_minus[i]);
}

void relax_source(std::size_t n, double* v, const double* rho_tot, const double* grad, double decay,
                  double gain) {
  for (std::size_t i = 0; i < n; ++i) v[i] = decay * v[i] + gain * (rho_tot[i] * grad[i]);
}

void spectral_relax(std::size_t modes, double* phi_hat, const double* rho_hat, const double* decay,
                    const double* gain) {
  for (std::size_t k = 0; k < modes; ++k) {
    phi_hat[2 * k] = decay[k] * phi_hat[2 * k] + gain[k] * rho_hat[2 * k];
    phi_hat[2 * k + 1] = decay[k] * phi_hat[2 * k + 1] + gain[k] * rho_hat[2 * k + 1];
  }
}

void lincomb(std::size_t n, double a, const double* x, double b, const double* y, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

double max_value(std::size_t n, const double* x) {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) m = x[i] > m ? x[i] : m;
  return m;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable t{Backend::scalar, euler_cell_flux, rusanov_face, flux_divergence,
                             relax_source,    spectral_relax,  lincomb,      max_value};
  return t;
}

}  // namespace vasclab::kernels::detail
