#pragma once

#include <cstddef>
#include <string_view>

// Data-parallel inner loops of the finite-volume and spectral updates. Every
// kernel has a scalar reference and optional SIMD variants with identical
// semantics; the table is chosen once at startup from CPU features and can be
// overridden with VASCLAB_SIMD=scalar|avx2 or select().
namespace vasclab::kernels {

enum class Backend { scalar, avx2 };

std::string_view backend_name(Backend b);

struct KernelTable {
  Backend backend;

  // Per-cell physical flux along one axis and local wave speed:
  //   f_rho = vn, f_vn = vn^2/rho_tot + dp, f_vt = vn vt/rho_tot,
  //   speed = |vn|/rho_tot + c.
  // vt and f_vt may be null (one-dimensional runs).
  void (*euler_cell_flux)(std::size_t n, const double* rho_tot, const double* vn, const double* vt,
                          const double* dp, const double* c, double* f_rho, double* f_vn,
                          double* f_vt, double* speed);

  // Rusanov face flux for one component:
  //   out = (fl + fr)/2 - max(sl, sr) (ur - ul)/2.
  void (*rusanov_face)(std::size_t n, const double* fl, const double* fr, const double* ul,
                       const double* ur, const double* sl, const double* sr, double* out);

  // u[i] -= lambda (f_plus[i] - f_minus[i]).
  void (*flux_divergence)(std::size_t n, double* u, const double* f_minus, const double* f_plus,
                          double lambda);

  // Exact relaxation for frozen coefficients: v = decay v + gain rho_tot grad.
  void (*relax_source)(std::size_t n, double* v, const double* rho_tot, const double* grad,
                       double decay, double gain);

  // Mode-wise affine update of interleaved complex spectra:
  //   phi_hat[k] = decay[k] phi_hat[k] + gain[k] rho_hat[k].
  void (*spectral_relax)(std::size_t modes, double* phi_hat, const double* rho_hat,
                         const double* decay, const double* gain);

  // out = a x + b y (out may alias x or y).
  void (*lincomb)(std::size_t n, double a, const double* x, double b, const double* y, double* out);

  // Largest element; -inf for n == 0.
  double (*max_value)(std::size_t n, const double* x);
};

bool available(Backend b);
const KernelTable& table(Backend b);  // throws std::invalid_argument when unavailable
const KernelTable& active();
void select(Backend b);

/// Scoped override used by equivalence tests.
class ScopedBackend {
 public:
  explicit ScopedBackend(Backend b);
  ~ScopedBackend();
  ScopedBackend(const ScopedBackend&) = delete;
  ScopedBackend& operator=(const ScopedBackend&) = delete;

 private:
  Backend previous_;
};

namespace detail {
const KernelTable& scalar_table();
#if defined(VASCLAB_HAVE_AVX2)
const KernelTable& avx2_table();
#endif
}  // namespace detail

}  // namespace vasclab::kernels
