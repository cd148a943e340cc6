#include <cmath>
#include <vector>

#include "doctest.h"
#include "rbk/oracles.hpp"

using namespace rbk::oracles;

TEST_CASE("monodisperse closed form") {
  CHECK(monodisperse_exact(1.0, 1, 1.0, 1.0) == 0.5);
  CHECK(monodisperse_exact(2.0, 4, 0.0, 123.0) == 2.0);
  CHECK(monodisperse_exact(3.0, 2, 1.0, 0.0) == 3.0);
}

TEST_CASE("geometric family values") {
  SelfSimilarParams p{1.0, 0.5};
  CHECK(p.beta_rate() == doctest::Approx(2.0 / 3.0).epsilon(1e-16));
  CHECK(self_similar_exact(p, 1, 0.0) == 0.5);
  CHECK(self_similar_exact(p, 2, 3.0) ==
        doctest::Approx(0.25 / 3.0).epsilon(1e-15));

  SelfSimilarParams empty{1.0, 0.0};
  for (int j = 1; j <= 5; ++j) {
    CHECK(self_similar_exact(empty, j, 0.0) == 0.0);
    CHECK(self_similar_exact(empty, j, 7.0) == 0.0);
  }
}

TEST_CASE("odd-count closed form") {
  CHECK(nu_odd_exact(2.0, 1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-16));
  CHECK(nu_odd_exact(0.0, 5.0) == 0.0);
  CHECK(nu_odd_exact(0.77, 0.0) == 0.77);
  // rate rescaling: K=2 doubles the clock
  CHECK(nu_odd_exact(1.0, 1.0, 2.0) == nu_odd_exact(1.0, 2.0, 1.0));
}

TEST_CASE("cluster-count envelope") {
  auto [lower, upper] = nu_bounds(3.0, 1.0);
  CHECK(lower == 0.75);
  CHECK(upper == 1.2);
  CHECK(nu_bounds(0.0, 9.0) == std::pair{0.0, 0.0});
  CHECK(nu_bounds(2.5, 0.0) == std::pair{2.5, 2.5});
}

TEST_CASE("scaling limits") {
  SelfSimilarParams p{1.0, 0.5};
  auto [c1, nu1] = scaling_limits(p, 1);
  CHECK(c1 == 0.75);
  CHECK(nu1 == 1.5);
  auto [c3, nu3] = scaling_limits(p, 3);
  CHECK(c3 == 0.1875);
  CHECK(nu3 == 1.5);

  SelfSimilarParams degenerate{1.0, 0.0};
  auto [cd, nud] = scaling_limits(degenerate, 1);
  CHECK(cd == 1.0);
  CHECK(nud == 1.0);
}

TEST_CASE("the family satisfies the constant-kernel balance in the "
          "truncation") {
  // residual of dc_j/dt + c_j*nu - gain with truncated sums, N = 256
  const int n = 256;
  SelfSimilarParams p{1.0, 0.5};
  const double beta = p.beta_rate();
  for (double t : {0.1, 1.0, 10.0}) {
    std::vector<double> c(n + 1);
    double nu = 0.0;
    for (int j = 1; j <= n; ++j) {
      c[j] = self_similar_exact(p, j, t);
      nu += c[j];
    }
    for (int j = 1; j <= 8; ++j) {
      double gain = 0.0;
      for (int k = 1; k <= n - j; ++k) gain += c[j + k] * c[k];
      double dcdt = -p.A0 * std::pow(p.alpha, j) * beta /
                    ((1.0 + beta * t) * (1.0 + beta * t));
      double residual = dcdt + c[j] * nu - gain;
      CHECK(std::fabs(residual) < 1e-10);
    }
  }
}

TEST_CASE("t*c_j increases toward its limit from below") {
  SelfSimilarParams p{1.0, 0.5};
  for (int j : {1, 2, 5}) {
    auto [limit, nu_limit] = scaling_limits(p, j);
    (void)nu_limit;
    double previous = 0.0;
    for (double t : {1.0, 10.0, 100.0, 1000.0, 10000.0}) {
      double value = t * self_similar_exact(p, j, t);
      CHECK(value > previous);
      CHECK(value < limit);
      previous = value;
    }
  }
}

TEST_CASE("odd-count form solves its rate equation (finite differences)") {
  const double nu0 = 2.0, t = 0.5, h = 1e-6;
  double derivative =
      (nu_odd_exact(nu0, t + h) - nu_odd_exact(nu0, t - h)) / (2.0 * h);
  double rhs = -nu_odd_exact(nu0, t) * nu_odd_exact(nu0, t);
  CHECK(std::fabs(derivative - rhs) < 1e-6);
}
