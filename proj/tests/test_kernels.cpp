#include <doctest.h>

#include <random>
#include <vector>

#include "torwav/kernels.hpp"

// The AVX2 variants must agree with the scalar reference on every size,
// tails included, up to FMA reassociation error.

namespace {

using torwav::kernels::cd;

std::vector<cd> random_vec(std::size_t n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  std::vector<cd> v(n);
  for (auto& z : v) z = cd{g(rng), g(rng)};
  return v;
}

double rel_err(const std::vector<cd>& a, const std::vector<cd>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double denom = std::max(1.0, std::abs(a[i]));
    worst = std::max(worst, std::abs(a[i] - b[i]) / denom);
  }
  return worst;
}

}  // namespace

TEST_CASE("scalar kernels: reference semantics") {
  namespace ks = torwav::kernels::scalar;
  std::vector<cd> a{{1, 2}, {3, -1}}, b{{0, 1}, {2, 2}}, d{{1, 0}, {0, 0}};
  ks::mul_add(d.data(), a.data(), b.data(), 2);
  CHECK(d[0] == cd{1, 0} + cd{1, 2} * cd{0, 1});
  CHECK(d[1] == cd{3, -1} * cd{2, 2});

  std::vector<cd> e{{0, 0}, {0, 0}};
  ks::conj_mul_add(e.data(), a.data(), b.data(), 2);
  CHECK(e[0] == cd{1, 2} * std::conj(cd{0, 1}));

  CHECK(ks::sup_abs(a.data(), 2) == doctest::Approx(std::abs(cd{1, 2}) > std::abs(cd{3, -1})
                                                        ? std::abs(cd{1, 2})
                                                        : std::abs(cd{3, -1})));
}

#if defined(TORWAV_HAVE_AVX2)
TEST_CASE("avx2 kernels match scalar on random arrays") {
  if (!torwav::kernels::avx2_available()) return;
  namespace ks = torwav::kernels::scalar;
  namespace kv = torwav::kernels::avx2;
  std::mt19937_64 rng(7);

  for (std::size_t n : {0u, 1u, 2u, 3u, 5u, 8u, 17u, 64u, 1001u}) {
    const auto a = random_vec(n, rng);
    const auto b = random_vec(n, rng, 3.0);
    auto d1 = random_vec(n, rng);
    auto d2 = d1;

    ks::mul_add(d1.data(), a.data(), b.data(), n);
    kv::mul_add(d2.data(), a.data(), b.data(), n);
    CHECK(rel_err(d1, d2) < 1e-12);

    ks::conj_mul_add(d1.data(), a.data(), b.data(), n);
    kv::conj_mul_add(d2.data(), a.data(), b.data(), n);
    CHECK(rel_err(d1, d2) < 1e-12);

    std::vector<cd> m1(n), m2(n);
    ks::mul(m1.data(), a.data(), b.data(), n);
    kv::mul(m2.data(), a.data(), b.data(), n);
    CHECK(rel_err(m1, m2) < 1e-12);

    auto s1 = a, s2 = a;
    const cd s{0.7, -1.3};
    ks::scale(s1.data(), s, n);
    kv::scale(s2.data(), s, n);
    CHECK(rel_err(s1, s2) < 1e-12);

    auto y1 = d1, y2 = d1;
    ks::axpy(y1.data(), s, b.data(), n);
    kv::axpy(y2.data(), s, b.data(), n);
    CHECK(rel_err(y1, y2) < 1e-12);

    CHECK(ks::sup_abs(a.data(), n) == doctest::Approx(kv::sup_abs(a.data(), n)).epsilon(1e-13));
    CHECK(ks::sup_abs_diff(a.data(), b.data(), n) ==
          doctest::Approx(kv::sup_abs_diff(a.data(), b.data(), n)).epsilon(1e-13));
  }
}
#endif

TEST_CASE("dispatch honors forced backend") {
  using torwav::kernels::Backend;
  torwav::kernels::force_backend(Backend::scalar);
  CHECK(torwav::kernels::active_backend() == Backend::scalar);
  torwav::kernels::force_backend(Backend::avx2);
  if (torwav::kernels::avx2_available())
    CHECK(torwav::kernels::active_backend() == Backend::avx2);
  else
    CHECK(torwav::kernels::active_backend() == Backend::scalar);
  // leave the default in place for the rest of the suite
  torwav::kernels::force_backend(torwav::kernels::avx2_available() ? Backend::avx2
                                                                   : Backend::scalar);
}
