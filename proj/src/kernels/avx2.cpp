// Compiled with -mavx2 -mfma. Keep this translation unit free of shared inline
// templates (std:: algorithms, Eigen) so no AVX2 instantiation can leak into
// code paths that run on CPUs without it.
#include <immintrin.h>

#include "vasclab/kernels/kernels.hpp"

namespace vasclab::kernels::detail {
namespace {

constexpr std::size_t kLanes = 4;

inline __m256d abs_pd(__m256d x) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x); }

void euler_cell_flux(std::size_t n, const double* rho_tot, const double* vn, const double* vt,
                     const double* dp, const double* c, double* f_rho, double* f_vn, double* f_vt,
                     double* speed) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d r = _mm256_loadu_pd(rho_tot + i);
    const __m256d m = _mm256_loadu_pd(vn + i);
    const __m256d u = _mm256_div_pd(m, r);
    _mm256_storeu_pd(f_rho + i, m);
    _mm256_storeu_pd(f_vn + i, _mm256_fmadd_pd(m, u, _mm256_loadu_pd(dp + i)));
    _mm256_storeu_pd(speed + i, _mm256_add_pd(abs_pd(u), _mm256_loadu_pd(c + i)));
    if (vt != nullptr) _mm256_storeu_pd(f_vt + i, _mm256_mul_pd(_mm256_loadu_pd(vt + i), u));
  }
  for (; i < n; ++i) {
    const double u = vn[i] / rho_tot[i];
    f_rho[i] = vn[i];
    f_vn[i] = vn[i] * u + dp[i];
    speed[i] = __builtin_fabs(u) + c[i];
    if (vt != nullptr) f_vt[i] = vt[i] * u;
  }
}

void rusanov_face(std::size_t n, const double* fl, const double* fr, const double* ul,
                  const double* ur, const double* sl, const double* sr, double* out) {
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d s = _mm256_max_pd(_mm256_loadu_pd(sl + i), _mm256_loadu_pd(sr + i));
    const __m256d avg = _mm256_mul_pd(half, _mm256_add_pd(_mm256_loadu_pd(fl + i), _mm256_loadu_pd(fr + i)));
    const __m256d jump = _mm256_sub_pd(_mm256_loadu_pd(ur + i), _mm256_loadu_pd(ul + i));
    _mm256_storeu_pd(out + i, _mm256_fnmadd_pd(_mm256_mul_pd(half, s), jump, avg));
  }
  for (; i < n; ++i) {
    const double s = sl[i] > sr[i] ? sl[i] : sr[i];
    out[i] = 0.5 * (fl[i] + fr[i]) - 0.5 * s * (ur[i] - ul[i]);
  }
}

void flux_divergence(std::size_t n, double* u, const double* f_minus, const double* f_plus,
                     double lambda) {
  const __m256d l = _mm256_set1_pd(lambda);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(f_plus + i), _mm256_loadu_pd(f_minus + i));
    _mm256_storeu_pd(u + i, _mm256_fnmadd_pd(l, diff, _mm256_loadu_pd(u + i)));
  }
  for (; i < n; ++i) u[i] -= lambda * (f_plus[i] - f_minus[i]);
}

void relax_source(std::size_t n, double* v, const double* rho_tot, const double* grad, double decay,
                  double gain) {
  const __m256d d = _mm256_set1_pd(decay);
  const __m256d g = _mm256_set1_pd(gain);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d forcing = _mm256_mul_pd(_mm256_loadu_pd(rho_tot + i), _mm256_loadu_pd(grad + i));
    _mm256_storeu_pd(v + i, _mm256_fmadd_pd(d, _mm256_loadu_pd(v + i), _mm256_mul_pd(g, forcing)));
  }
  for (; i < n; ++i) v[i] = decay * v[i] + gain * (rho_tot[i] * grad[i]);
}

void spectral_relax(std::size_t modes, double* phi_hat, const double* rho_hat, const double* decay,
                    const double* gain) {
  std::size_t k = 0;
  for (; k + 2 <= modes; k += 2) {
    const __m256d d = _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(decay + k)), 0x50);
    const __m256d g = _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(gain + k)), 0x50);
    const __m256d p = _mm256_loadu_pd(phi_hat + 2 * k);
    const __m256d r = _mm256_loadu_pd(rho_hat + 2 * k);
    _mm256_storeu_pd(phi_hat + 2 * k, _mm256_fmadd_pd(d, p, _mm256_mul_pd(g, r)));
  }
  for (; k < modes; ++k) {
    phi_hat[2 * k] = decay[k] * phi_hat[2 * k] + gain[k] * rho_hat[2 * k];
    phi_hat[2 * k + 1] = decay[k] * phi_hat[2 * k + 1] + gain[k] * rho_hat[2 * k + 1];
  }
}

void lincomb(std::size_t n, double a, const double* x, double b, const double* y, double* out) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d r = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_mul_pd(vb, _mm256_loadu_pd(y + i)));
    _mm256_storeu_pd(out + i, r);
  }
  for (; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

double max_value(std::size_t n, const double* x) {
  const double neg_inf = -__builtin_inf();
  __m256d m = _mm256_set1_pd(neg_inf);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) m = _mm256_max_pd(_mm256_loadu_pd(x + i), m);
  alignas(32) double lanes[kLanes];
  _mm256_store_pd(lanes, m);
  double r = neg_inf;
  for (double l : lanes) r = l > r ? l : r;
  for (; i < n; ++i) r = x[i] > r ? x[i] : r;
  return r;
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable t{Backend::avx2, euler_cell_flux, rusanov_face, flux_divergence,
                             relax_source,  spectral_relax,  lincomb,      max_value};
  return t;
}

}  // namespace vasclab::kernels::detail
