#ifndef TORWAV_KERNELS_HPP
#define TORWAV_KERNELS_HPP

#include <complex>
#include <cstddef>

// Data-parallel inner loops shared by the grid arithmetic: bracket-product
// accumulation, pointwise products, scaling, and sup-norm reductions over
// interleaved complex<double> arrays. Each kernel has a scalar reference
// implementation and (on x86-64) an AVX2+FMA variant; the dispatched entry
// points select once at runtime. The two backends agree to floating-point
// reassociation error only, which the test suite bounds explicitly.

namespace torwav::kernels {

using cd = std::complex<double>;

enum class Backend { scalar, avx2 };

/// Backend used by the dispatched entry points. Resolved on first use from
/// CPU capabilities; the TORWAV_KERNELS environment variable ("scalar" or
/// "avx2") or force_backend() override the choice.
Backend active_backend();
void force_backend(Backend b);
bool avx2_available();

// Dispatched entry points.
void mul_add(cd* dst, const cd* a, const cd* b, std::size_t n);        // dst += a.*b
void conj_mul_add(cd* dst, const cd* a, const cd* b, std::size_t n);   // dst += a.*conj(b)
void mul(cd* dst, const cd* a, const cd* b, std::size_t n);            // dst  = a.*b
void scale(cd* dst, cd s, std::size_t n);                              // dst *= s
void axpy(cd* dst, cd s, const cd* a, std::size_t n);                  // dst += s*a
double sup_abs(const cd* a, std::size_t n);                            // max |a|
double sup_abs_diff(const cd* a, const cd* b, std::size_t n);          // max |a-b|

namespace scalar {
void mul_add(cd* dst, const cd* a, const cd* b, std::size_t n);
void conj_mul_add(cd* dst, const cd* a, const cd* b, std::size_t n);
void mul(cd* dst, const cd* a, const cd* b, std::size_t n);
void scale(cd* dst, cd s, std::size_t n);
void axpy(cd* dst, cd s, const cd* a, std::size_t n);
double sup_abs(const cd* a, std::size_t n);
double sup_abs_diff(const cd* a, const cd* b, std::size_t n);
}  // namespace scalar

#if defined(TORWAV_HAVE_AVX2)
namespace avx2 {
void mul_add(cd* dst, const cd* a, const cd* b, std::size_t n);
void conj_mul_add(cd* dst, const cd* a, const cd* b, std::size_t n);
void mul(cd* dst, const cd* a, const cd* b, std::size_t n);
void scale(cd* dst, cd s, std::size_t n);
void axpy(cd* dst, cd s, const cd* a, std::size_t n);
double sup_abs(const cd* a, std::size_t n);
double sup_abs_diff(const cd* a, const cd* b, std::size_t n);
}  // namespace avx2
#endif

}  // namespace torwav::kernels

#endif  // TORWAV_KERNELS_HPP
