#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "rbk/simd.hpp"

namespace simd = rbk::simd;

namespace {

struct Rng {
  std::uint64_t s;
  explicit Rng(std::uint64_t seed) : s(seed) {}
  std::uint64_t next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  }
  double uniform() { return (next() >> 11) * 0x1.0p-53; }
  double signed_uniform() { return 2.0 * uniform() - 1.0; }
};

std::vector<double> random_vec(Rng& rng, std::size_t n, bool with_zeros) {
  std::vector<double> v(n);
  for (auto& x : v) {
    x = rng.signed_uniform();
    if (with_zeros && rng.next() % 4 == 0) x = 0.0;
  }
  return v;
}

const std::size_t kSizes[] = {0, 1, 2, 3, 4, 5, 7, 8, 15, 16, 33, 100, 1001};

}  // namespace

TEST_CASE("lane reporting") {
  CHECK((simd::active_lane() == simd::Lane::scalar ||
         simd::active_lane() == simd::Lane::avx2));
  CHECK(simd::lane_name(simd::Lane::scalar) == "scalar");
  CHECK(simd::lane_name(simd::Lane::avx2) == "avx2");
  if (!simd::avx2::available())
    CHECK(simd::active_lane() == simd::Lane::scalar);
}

TEST_CASE("reductions agree with a long-double reference across lanes") {
  Rng rng(7);
  for (std::size_t n : kSizes) {
    auto x = random_vec(rng, n, false);
    auto y = random_vec(rng, n, false);

    long double sum_ref = 0.0L, dot_ref = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
      sum_ref += x[i];
      dot_ref += (long double)x[i] * y[i];
    }

    CHECK(simd::scalar::sum(x) ==
          doctest::Approx((double)sum_ref).epsilon(1e-13));
    CHECK(simd::scalar::dot(x, y) ==
          doctest::Approx((double)dot_ref).epsilon(1e-13));
    if (simd::avx2::available()) {
      CHECK(simd::avx2::sum(x) ==
            doctest::Approx((double)sum_ref).epsilon(1e-13));
      CHECK(simd::avx2::dot(x, y) ==
            doctest::Approx((double)dot_ref).epsilon(1e-13));
    }
    CHECK(simd::sum(x) == doctest::Approx((double)sum_ref).epsilon(1e-13));
  }
}

TEST_CASE("axpy lanes are bit-identical") {
  Rng rng(11);
  for (std::size_t n : kSizes) {
    auto x = random_vec(rng, n, true);
    auto y0 = random_vec(rng, n, true);
    const double a = rng.signed_uniform();

    auto y_scalar = y0;
    simd::scalar::axpy(a, x, y_scalar);
    // the reference semantics, written out
    auto y_ref = y0;
    for (std::size_t i = 0; i < n; ++i) y_ref[i] = y_ref[i] + a * x[i];
    CHECK(y_scalar == y_ref);

    if (simd::avx2::available()) {
      auto y_avx = y0;
      simd::avx2::axpy(a, x, y_avx);
      CHECK(y_avx == y_scalar);
    }
    auto y_active = y0;
    simd::axpy(a, x, y_active);
    CHECK(y_active == y_scalar);
  }
}

TEST_CASE("axpy preserves exact zeros") {
  std::vector<double> x = {0.0, 1.0, 0.0};
  std::vector<double> y = {0.0, 0.0, 0.0};
  simd::axpy(0.5, x, y);
  CHECK(y[0] == 0.0);
  CHECK(y[1] == 0.5);
  CHECK(y[2] == 0.0);
}

TEST_CASE("wrms error norm counts only active components") {
  const double atol = 1e-10, rtol = 1e-6;

  SUBCASE("hand case") {
    std::vector<double> e = {0.0, 1e-7, 0.0};
    std::vector<double> y0 = {0.0, 2.0, 0.0};
    std::vector<double> y1 = {0.0, 2.5, 0.0};
    auto r = simd::scalar::wrms_error(e, y0, y1, atol, rtol);
    CHECK(r.active == 1);
    const double w = atol + rtol * 2.5;
    CHECK(r.norm == doctest::Approx(std::fabs(1e-7 / w)).epsilon(1e-14));
    if (simd::avx2::available()) {
      auto v = simd::avx2::wrms_error(e, y0, y1, atol, rtol);
      CHECK(v.active == r.active);
      CHECK(v.norm == doctest::Approx(r.norm).epsilon(1e-14));
    }
  }

  SUBCASE("zero vectors") {
    std::vector<double> z(8, 0.0);
    auto r = simd::wrms_error(z, z, z, atol, rtol);
    CHECK(r.active == 0);
    CHECK(r.norm == 0.0);
  }

  SUBCASE("padding with zeros never changes the norm") {
    Rng rng(13);
    for (std::size_t n : {3u, 6u, 17u}) {
      auto e = random_vec(rng, n, false);
      auto y0 = random_vec(rng, n, false);
      auto y1 = random_vec(rng, n, false);
      auto r = simd::wrms_error(e, y0, y1, atol, rtol);

      std::vector<double> e2(e), y02(y0), y12(y1);
      for (int pad = 0; pad < 9; ++pad) {
        e2.push_back(0.0);
        y02.push_back(0.0);
        y12.push_back(0.0);
      }
      auto r2 = simd::wrms_error(e2, y02, y12, atol, rtol);
      CHECK(r2.active == r.active);
      CHECK(r2.norm == r.norm);
    }
  }

  SUBCASE("lanes agree across sizes") {
    if (!simd::avx2::available()) return;
    Rng rng(17);
    for (std::size_t n : kSizes) {
      auto e = random_vec(rng, n, true);
      auto y0 = random_vec(rng, n, true);
      auto y1 = random_vec(rng, n, true);
      auto a = simd::scalar::wrms_error(e, y0, y1, atol, rtol);
      auto b = simd::avx2::wrms_error(e, y0, y1, atol, rtol);
      CHECK(a.active == b.active);
      if (a.norm == 0.0)
        CHECK(b.norm == 0.0);
      else
        CHECK(b.norm == doctest::Approx(a.norm).epsilon(1e-13));
    }
  }
}
