#pragma once

#include <cmath>
#include <utility>

namespace rbk::oracles {

// Closed-form references for the constant-kernel dynamics. For a general
// constant rate K the K=1 formulas apply with time rescaled t -> K*t (the
// equations are homogeneous of degree two, so K only sets the clock); the
// rate_constant parameters below implement that rescaling.

// Monodisperse data c_j(0) = lambda*delta_{j,p} stays monodisperse with
// c_p(t) = lambda / (1 + lambda*a_pp*t). The index p only labels the
// component; the value does not depend on it.
inline double monodisperse_exact(double lambda, int /*p*/, double a_pp,
                                 double t) {
  return lambda / (1.0 + lambda * a_pp * t);
}

// Geometric family c_j(t) = A0*alpha^j / (1 + beta*t) with
// beta = A0*alpha/(1 - alpha^2); an exact solution for the constant kernel.
struct SelfSimilarParams {
  double A0 = 1.0;
  double alpha = 0.5;  // in [0,1)

  double beta_rate() const { return A0 * alpha / (1.0 - alpha * alpha); }
};

inline double self_similar_exact(const SelfSimilarParams& p, int j, double t,
                                 double rate_constant = 1.0) {
  return p.A0 * std::pow(p.alpha, j) /
         (1.0 + p.beta_rate() * rate_constant * t);
}

// nu_odd solves dnu_odd/dt = -K*nu_odd^2, so
// nu_odd(t) = nu_odd(0) / (1 + nu_odd(0)*K*t).
inline double nu_odd_exact(double nu_odd_0, double t,
                           double rate_constant = 1.0) {
  return nu_odd_0 / (1.0 + nu_odd_0 * rate_constant * t);
}

// Two-sided envelope for the total cluster count under a constant kernel:
// nu0/(1+nu0*K*t) <= nu(t) <= nu0/(1+nu0*K*t/2).
inline std::pair<double, double> nu_bounds(double nu_0, double t,
                                           double rate_constant = 1.0) {
  double lower = nu_0 / (1.0 + nu_0 * rate_constant * t);
  double upper = nu_0 / (1.0 + 0.5 * nu_0 * rate_constant * t);
  return {lower, upper};
}

// Long-time scaling of the geometric family (K = 1):
//   t*c_j(t)  ->  (1-alpha^2) * alpha^(j-1)
//   t*nu(t)   ->  1 + alpha
inline std::pair<double, double> scaling_limits(const SelfSimilarParams& p,
                                                int j) {
  double cluster_limit =
      (1.0 - p.alpha * p.alpha) * std::pow(p.alpha, j - 1);
  return {cluster_limit, 1.0 + p.alpha};
}

}  // namespace rbk::oracles
