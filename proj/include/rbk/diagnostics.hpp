#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rbk/integrator.hpp"
#include "rbk/kernel.hpp"
#include "rbk/report.hpp"
#include "rbk/state.hpp"

namespace rbk {

// Weight sequence g_1..g_N for the weighted moment identities.
class WeightSequence {
public:
  enum class Kind { one, identity, odd_indicator, custom };

  static WeightSequence one() { return WeightSequence(Kind::one); }
  static WeightSequence identity() { return WeightSequence(Kind::identity); }
  static WeightSequence odd_indicator() {
    return WeightSequence(Kind::odd_indicator);
  }
  static WeightSequence custom(std::vector<double> values);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  // g_1..g_n; ConfigError if a custom array is shorter than n.
  std::vector<double> materialize(int n) const;

private:
  explicit WeightSequence(Kind kind);

  Kind kind_;
  std::vector<double> custom_;
  std::string name_;
};

// Instantaneous weighted balance of the truncated system:
//   sum_{j=1}^N g_j dc_j/dt
//     = - sum_{k<=j-1} (g_j - g_{j-k}) W_{j,k} - sum_{k>=j} g_j W_{j,k},
// with W_{j,k} = a(j,k) c_j c_k. Equals sum_j g_j d_j of the RHS exactly in
// exact arithmetic; used as the quadrature integrand of moment_residual.
double weighted_rhs_sum(const Kernel& kernel, const ClusterState& state,
                        std::span<const double> g);

// Compares the change of sum_j g_j c_j between consecutive grid times with
// the time integral of weighted_rhs_sum, the integral evaluated by composite
// Simpson quadrature on a refinement of each interval with states
// re-integrated at the quadrature nodes. The reported residual is the worst
// interval defect relative to the initial weighted moment.
OracleReport moment_residual(const Kernel& kernel, const Trajectory& traj,
                             const WeightSequence& g,
                             const IntegratorConfig& cfg,
                             double tolerance = 1e-6);

// Checks nu_odd against its closed form; constant kernels only
// (KernelMismatch otherwise).
OracleReport odd_count_check(const Kernel& kernel, const Trajectory& traj,
                             double tolerance = 1e-6);

// Support law: with initial positivity set P, the predicted support for
// t > 0 is gcd(P)*N intersected with [1, max P] when #P > 1, and P itself
// when #P = 1. Indices outside the prediction must stay bitwise zero;
// indices inside must exceed `threshold`. Positivity below t_min is reported
// but not failed (tiny times can sit below any fixed threshold).
OracleReport support_invariance_check(const Trajectory& traj,
                                      double threshold = 1e-12,
                                      double t_min = 1e-3);

struct ConvergenceResult {
  OracleReport report;
  // (N_i, D_i) with D_i = max over the grid of
  // sum_{j<=N_i} j |c_j^{N_i} - c_j^{N_{i+1}}|
  std::vector<std::pair<int, double>> ladder;
};

// Integrates the same problem at each truncation size and measures the
// weighted distance between consecutive sizes; passes when the ladder is
// nonincreasing.
ConvergenceResult truncation_convergence(const Kernel& kernel,
                                         const InitialCondition& ic,
                                         std::span<const int> sizes,
                                         std::span<const double> grid,
                                         const IntegratorConfig& cfg);

// Closed-form comparisons -------------------------------------------------

// Monodisperse data at index p: c_p(t) tracks lambda/(1+lambda*a_pp*t) and
// every other component stays bitwise zero.
OracleReport monodisperse_exactness_check(const Kernel& kernel,
                                          const Trajectory& traj, int p,
                                          double lambda,
                                          double tolerance = 1e-8);

// Geometric data under a constant kernel follows
// c_j(t) = A0*alpha^j/(1+K*beta*t). Checked for j <= j_limit; components
// near the truncation edge are excluded because the finite system sheds
// their infinite-tail gain.
OracleReport self_similar_check(const Kernel& kernel, const Trajectory& traj,
                                double A0, double alpha, int j_limit = 20,
                                double tolerance = 1e-6);

// Constant-kernel envelope nu0/(1+nu0*K*t) <= nu(t) <= nu0/(1+nu0*K*t/2)
// with relative slack.
OracleReport nu_envelope_check(const Kernel& kernel, const Trajectory& traj,
                               double slack = 1e-6);

struct ScalingTable {
  std::vector<std::string> columns;        // t, t_nu, t_nu_odd, t_c_1, ...
  std::vector<std::vector<double>> rows;
};

// Rows (t, t*nu, t*nu_odd, t*c_1, ..., t*c_jmax); constant kernels only.
ScalingTable scaling_diagnostics(const Kernel& kernel, const Trajectory& traj,
                                 int j_max);

}  // namespace rbk
