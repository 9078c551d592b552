#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "vasclab/kernels/kernels.hpp"

namespace vasclab::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(VASCLAB_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend initial_backend() {
  if (const char* env = std::getenv("VASCLAB_SIMD")) {
    const std::string want(env);
    if (want == "scalar") return Backend::scalar;
    if (want == "avx2" && cpu_has_avx2()) return Backend::avx2;
  }
  return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> ptr{&table(initial_backend())};
  return ptr;
}

}  // namespace

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
  }
  return "unknown";
}

bool available(Backend b) {
  switch (b) {
    case Backend::scalar: return true;
    case Backend::avx2: return cpu_has_avx2();
  }
  return false;
}

const KernelTable& table(Backend b) {
  if (b == Backend::scalar) return detail::scalar_table();
#if defined(VASCLAB_HAVE_AVX2)
  if (b == Backend::avx2 && cpu_has_avx2()) return detail::avx2_table();
#endif
  throw std::invalid_argument("kernel backend '" + std::string(backend_name(b)) + "' is not available");
}

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

void select(Backend b) { current().store(&table(b), std::memory_order_release); }

ScopedBackend::ScopedBackend(Backend b) : previous_(active().backend) { select(b); }

ScopedBackend::~ScopedBackend() { select(previous_); }

}  // namespace vasclab::kernels
