#include "torwav/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace torwav::kernels {

bool avx2_available() {
#if defined(TORWAV_HAVE_AVX2)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

Backend resolve_default() {
  if (const char* env = std::getenv("TORWAV_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
    if (std::strcmp(env, "avx2") == 0 && avx2_available()) return Backend::avx2;
  }
  return avx2_available() ? Backend::avx2 : Backend::scalar;
}

std::atomic<int> g_backend{-1};

}  // namespace

Backend active_backend() {
  int b = g_backend.load(std::memory_order_relaxed);
  if (b < 0) {
    b = static_cast<int>(resolve_default());
    g_backend.store(b, std::memory_order_relaxed);
  }
  return static_cast<Backend>(b);
}

void force_backend(Backend b) {
  if (b == Backend::avx2 && !avx2_available()) b = Backend::scalar;
  g_backend.store(static_cast<int>(b), std::memory_order_relaxed);
}

#if defined(TORWAV_HAVE_AVX2)
#define TORWAV_DISPATCH(fn, ...) \
  return active_backend() == Backend::avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__)
#else
#define TORWAV_DISPATCH(fn, ...) return scalar::fn(__VA_ARGS__)
#endif

void mul_add(cd* dst, const cd* a, const cd* b, std::size_t n) { TORWAV_DISPATCH(mul_add, dst, a, b, n); }
void conj_mul_add(cd* dst, const cd* a, const cd* b, std::size_t n) { TORWAV_DISPATCH(conj_mul_add, dst, a, b, n); }
void mul(cd* dst, const cd* a, const cd* b, std::size_t n) { TORWAV_DISPATCH(mul, dst, a, b, n); }
void scale(cd* dst, cd s, std::size_t n) { TORWAV_DISPATCH(scale, dst, s, n); }
void axpy(cd* dst, cd s, const cd* a, std::size_t n) { TORWAV_DISPATCH(axpy, dst, s, a, n); }
double sup_abs(const cd* a, std::size_t n) { TORWAV_DISPATCH(sup_abs, a, n); }
double sup_abs_diff(const cd* a, const cd* b, std::size_t n) { TORWAV_DISPATCH(sup_abs_diff, a, b, n); }

#undef TORWAV_DISPATCH

}  // namespace torwav::kernels
