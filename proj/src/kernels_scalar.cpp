#include "torwav/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace torwav::kernels::scalar {

void mul_add(cd* dst, const cd* a, const cd* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] += a[i] * b[i];
}

void conj_mul_add(cd* dst, const cd* a, const cd* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] += a[i] * std::conj(b[i]);
}

void mul(cd* dst, const cd* a, const cd* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * b[i];
}

void scale(cd* dst, cd s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] *= s;
}

void axpy(cd* dst, cd s, const cd* a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] += s * a[i];
}

double sup_abs(const cd* a, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double re = a[i].real(), im = a[i].imag();
    m = std::max(m, re * re + im * im);
  }
  return std::sqrt(m);
}

double sup_abs_diff(const cd* a, const cd* b, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double re = a[i].real() - b[i].real();
    const double im = a[i].imag() - b[i].imag();
    m = std::max(m, re * re + im * im);
  }
  return std::sqrt(m);
}

}  // namespace torwav::kernels::scalar
