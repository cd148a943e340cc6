#include "rbk/fft.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>

namespace rbk::fft {

namespace {

using cplx = std::complex<long double>;

// Twiddle factors exp(-2*pi*i*m/L), m in [0, L/2), cached per length.
const std::vector<cplx>& twiddles(std::size_t len) {
  thread_local std::map<std::size_t, std::vector<cplx>> cache;
  auto it = cache.find(len);
  if (it != cache.end()) return it->second;
  std::vector<cplx> tw(len / 2);
  const long double step = -2.0L * std::numbers::pi_v<long double> /
                           static_cast<long double>(len);
  for (std::size_t m = 0; m < len / 2; ++m) {
    long double a = step * static_cast<long double>(m);
    tw[m] = cplx(std::cos(a), std::sin(a));
  }
  return cache.emplace(len, std::move(tw)).first->second;
}

// In-place iterative radix-2 transform. inverse=true uses conjugate
// twiddles; the caller applies the 1/L scale.
void transform(std::vector<cplx>& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, rev = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; rev & bit; bit >>= 1) rev ^= bit;
    rev ^= bit;
    if (i < rev) std::swap(a[i], a[rev]);
  }
  const auto& tw = twiddles(n);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t m = 0; m < len / 2; ++m) {
        cplx w = tw[m * stride];
        if (inverse) w = std::conj(w);
        cplx t = w * a[start + m + len / 2];
        a[start + m + len / 2] = a[start + m] - t;
        a[start + m] += t;
      }
    }
  }
}

}  // namespace

std::vector<double> autocorrelation(std::span<const double> u) {
  const std::size_t n = u.size();
  if (n == 0) return {};
  if (n == 1) return {u[0] * u[0]};

  const std::size_t len = std::bit_ceil(2 * n);
  std::vector<cplx> a(len, cplx(0.0L, 0.0L));
  for (std::size_t i = 0; i < n; ++i) a[i] = cplx(u[i], 0.0L);

  transform(a, false);
  for (auto& v : a) v = cplx(std::norm(v), 0.0L);  // F * conj(F)
  transform(a, true);

  const long double scale = 1.0L / static_cast<long double>(len);
  std::vector<double> r(n);
  for (std::size_t lag = 0; lag < n; ++lag)
    r[lag] = static_cast<double>(a[lag].real() * scale);
  return r;
}

}  // namespace rbk::fft
