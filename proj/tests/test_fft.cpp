#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "rbk/fft.hpp"

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
};

std::vector<double> direct_autocorrelation(const std::vector<double>& u) {
  const std::size_t n = u.size();
  std::vector<double> r(n);
  for (std::size_t lag = 0; lag < n; ++lag) {
    long double acc = 0.0L;
    for (std::size_t i = 0; i + lag < n; ++i)
      acc += (long double)u[i] * u[i + lag];
    r[lag] = (double)acc;
  }
  return r;
}

}  // namespace

TEST_CASE("edge cases") {
  CHECK(rbk::fft::autocorrelation({}).empty());

  auto single = rbk::fft::autocorrelation(std::vector<double>{3.0});
  REQUIRE(single.size() == 1);
  CHECK(single[0] == 9.0);

  auto zeros = rbk::fft::autocorrelation(std::vector<double>(64, 0.0));
  for (double v : zeros) CHECK(v == 0.0);
}

TEST_CASE("matches direct summation for unit-scale data") {
  Rng rng(123);
  for (std::size_t n : {2u, 3u, 5u, 8u, 16u, 64u, 257u, 1000u}) {
    std::vector<double> u(n);
    for (auto& v : u) v = rng.uniform();
    auto fft = rbk::fft::autocorrelation(u);
    auto ref = direct_autocorrelation(u);
    REQUIRE(fft.size() == n);
    for (std::size_t lag = 0; lag < n; ++lag)
      CHECK(std::fabs(fft[lag] - ref[lag]) <=
            1e-13 * (1.0 + std::fabs(ref[lag])));
  }
}

TEST_CASE("matches direct summation for linearly weighted data") {
  // magnitudes like the weighted sequences of a product kernel at n=1024
  Rng rng(321);
  const std::size_t n = 1024;
  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = double(i + 1) * rng.uniform();
  auto fft = rbk::fft::autocorrelation(u);
  auto ref = direct_autocorrelation(u);
  // spectral rounding spreads noise of order eps_ld * corr[0] over all lags
  for (std::size_t lag = 0; lag < n; ++lag)
    CHECK(std::fabs(fft[lag] - ref[lag]) <=
          1e-18 * ref[0] + 1e-13 * (1.0 + std::fabs(ref[lag])));
}

TEST_CASE("impulse correlates to itself") {
  std::vector<double> u(32, 0.0);
  u[7] = 2.0;
  auto r = rbk::fft::autocorrelation(u);
  CHECK(std::fabs(r[0] - 4.0) < 1e-15);
  for (std::size_t lag = 1; lag < u.size(); ++lag)
    CHECK(std::fabs(r[lag]) < 1e-15);
}
