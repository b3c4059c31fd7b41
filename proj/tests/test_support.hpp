#ifndef TORWAV_TEST_SUPPORT_HPP
#define TORWAV_TEST_SUPPORT_HPP

#include <complex>
#include <map>
#include <random>
#include <vector>

#include "torwav/filters.hpp"
#include "torwav/lattice.hpp"
#include "torwav/torusfn.hpp"

namespace torwav::testing {

inline IntMat mat1(std::int64_t a) {
  IntMat m(1);
  m.at(0, 0) = a;
  return m;
}

inline IntMat mat2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  IntMat m(2);
  m.at(0, 0) = a;
  m.at(0, 1) = b;
  m.at(1, 0) = c;
  m.at(1, 1) = d;
  return m;
}

inline DilationMatrix haar_dilation() { return DilationMatrix::validate(mat1(2)); }
inline DilationMatrix quincunx_dilation() { return DilationMatrix::validate(mat2(1, 1, 1, -1)); }
inline DilationMatrix three_dilation() { return DilationMatrix::validate(mat1(3)); }

/// m0 = 1 + e1-hat   (Haar low-pass, n = 1, q = 2)
inline TorusFunction haar_m0() {
  return TorusFunction::from_coeffs(1, {{{0}, cd{1.0, 0.0}}, {{1}, cd{1.0, 0.0}}});
}
/// m1 = e1-hat - 1   (Haar high-pass)
inline TorusFunction haar_m1() {
  return TorusFunction::from_coeffs(1, {{{0}, cd{-1.0, 0.0}}, {{1}, cd{1.0, 0.0}}});
}
/// quincunx m0 = 1 + exp(2 pi i x1)
inline TorusFunction quincunx_m0() {
  return TorusFunction::from_coeffs(2, {{{0, 0}, cd{1.0, 0.0}}, {{1, 0}, cd{1.0, 0.0}}});
}

/// Daubechies-4 low-pass with m0(0) = 2.
inline TorusFunction d4_m0() {
  const double s3 = std::sqrt(3.0);
  return TorusFunction::from_coeffs(1, {{{0}, cd{(1 + s3) / 4, 0}},
                                        {{1}, cd{(3 + s3) / 4, 0}},
                                        {{2}, cd{(3 - s3) / 4, 0}},
                                        {{3}, cd{(1 - s3) / 4, 0}}});
}

/// Random trigonometric polynomial, per-axis degree <= deg, nterms terms.
inline TorusFunction random_trig_poly(int dim, int deg, int nterms, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kdist(-deg, deg);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::map<MultiIndex, cd> c;
  for (int t = 0; t < nterms; ++t) {
    MultiIndex k(dim);
    for (int a = 0; a < dim; ++a) k[a] = kdist(rng);
    c[k] += cd{gauss(rng), gauss(rng)};
  }
  return TorusFunction::from_coeffs(dim, std::move(c));
}

}  // namespace torwav::testing

#endif
