#include "rbk/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "rbk/simd.hpp"

namespace rbk {

namespace {

// Dormand-Prince 5(4) tableau. The truncated system is autonomous, so the
// stage abscissae are never needed.
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187,
                 kA53 = 64448.0 / 6561, kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33,
                 kA63 = 46732.0 / 5247, kA64 = 49.0 / 176,
                 kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192,
                 kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
// b - bhat, the embedded 4th-order error weights
constexpr double kE1 = 71.0 / 57600, kE3 = -71.0 / 16695, kE4 = 71.0 / 1920,
                 kE5 = -17253.0 / 339200, kE6 = 22.0 / 525, kE7 = -1.0 / 40;

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;

void check_config(const IntegratorConfig& cfg) {
  if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0))
    throw ConfigError("tolerances must be positive");
  if (!(cfg.max_step > 0.0)) throw ConfigError("max_step must be positive");
  if (!(cfg.negativity_floor >= 0.0))
    throw ConfigError("negativity_floor must be nonnegative");
}

class Dopri5 {
public:
  Dopri5(const Kernel& kernel, int n, const IntegratorConfig& cfg)
      : cfg_(cfg),
        rhs_(kernel, n, cfg.rhs_path),
        y5_(static_cast<std::size_t>(n)),
        ytmp_(static_cast<std::size_t>(n)),
        err_(static_cast<std::size_t>(n)) {
    for (auto& k : k_) k.resize(static_cast<std::size_t>(n));
  }

  RhsPath path() const { return rhs_.path(); }
  const IntegratorStats& stats() const { return stats_; }

  // Advances (t, y) exactly to t_target.
  void advance(double& t, std::vector<double>& y, double t_target) {
    while (t < t_target) {
      if (!have_f0_) {
        eval(y, k_[0]);
        have_f0_ = true;
      }
      if (h_prop_ == 0.0) h_prop_ = initial_step(y, t_target - t);

      const double remaining = t_target - t;
      double h = std::min(h_prop_, cfg_.max_step);
      const bool landing = h >= remaining;
      if (landing) h = remaining;
      if (!landing && t + h == t) throw StepSizeUnderflow(t, h);

      attempt(y, h);

      bool bad = false;
      double min_component = 0.0;
      for (double v : y5_) {
        if (!std::isfinite(v)) {
          bad = true;
          break;
        }
        min_component = std::min(min_component, v);
      }
      if (bad || min_component < -cfg_.negativity_floor) {
        ++stats_.steps_rejected;
        h_prop_ = half_or_underflow(t, h);
        continue;
      }

      auto [norm, active] = simd::wrms_error(err_, y, y5_, cfg_.abs_tol,
                                             cfg_.rel_tol);
      (void)active;
      if (norm > 1.0) {
        ++stats_.steps_rejected;
        double factor =
            std::max(kMinFactor, kSafety * std::pow(norm, -0.2));
        h_prop_ = h * factor;
        if (t + h_prop_ == t) throw StepSizeUnderflow(t, h_prop_);
        continue;
      }

      // accepted
      bool clamped = false;
      for (double& v : y5_) {
        if (v < 0.0) {
          v = 0.0;
          clamped = true;
        }
      }
      y.swap(y5_);
      t = landing ? t_target : t + h;
      ++stats_.steps_accepted;

      // k7 = f(t+h, y_new) before clamping; reusable as the next k1 (FSAL)
      // only when no component was clamped
      if (clamped)
        have_f0_ = false;
      else
        k_[0].swap(k_[6]);

      double factor = norm == 0.0
                          ? kMaxFactor
                          : std::clamp(kSafety * std::pow(norm, -0.2),
                                       kMinFactor, kMaxFactor);
      if (!landing) h_prop_ = h * factor;
      // landing steps keep the pre-trim proposal so dense output grids do
      // not throttle the controller
    }
  }

private:
  void eval(std::span<const double> c, std::span<double> d) {
    rhs_(c, d);
    ++stats_.rhs_evaluations;
  }

  void stage(const std::vector<double>& y, double h,
             std::initializer_list<std::pair<int, double>> terms) {
    std::copy(y.begin(), y.end(), ytmp_.begin());
    for (auto [idx, coeff] : terms) simd::axpy(h * coeff, k_[idx], ytmp_);
  }

  void attempt(const std::vector<double>& y, double h) {
    stage(y, h, {{0, kA21}});
    eval(ytmp_, k_[1]);
    stage(y, h, {{0, kA31}, {1, kA32}});
    eval(ytmp_, k_[2]);
    stage(y, h, {{0, kA41}, {1, kA42}, {2, kA43}});
    eval(ytmp_, k_[3]);
    stage(y, h, {{0, kA51}, {1, kA52}, {2, kA53}, {3, kA54}});
    eval(ytmp_, k_[4]);
    stage(y, h, {{0, kA61}, {1, kA62}, {2, kA63}, {3, kA64}, {4, kA65}});
    eval(ytmp_, k_[5]);

    std::copy(y.begin(), y.end(), y5_.begin());
    simd::axpy(h * kB1, k_[0], y5_);
    simd::axpy(h * kB3, k_[2], y5_);
    simd::axpy(h * kB4, k_[3], y5_);
    simd::axpy(h * kB5, k_[4], y5_);
    simd::axpy(h * kB6, k_[5], y5_);

    eval(y5_, k_[6]);

    std::fill(err_.begin(), err_.end(), 0.0);
    simd::axpy(h * kE1, k_[0], err_);
    simd::axpy(h * kE3, k_[2], err_);
    simd::axpy(h * kE4, k_[3], err_);
    simd::axpy(h * kE5, k_[4], err_);
    simd::axpy(h * kE6, k_[5], err_);
    simd::axpy(h * kE7, k_[6], err_);
  }

  double half_or_underflow(double t, double h) {
    double next = 0.5 * h;
    if (t + next == t) throw StepSizeUnderflow(t, next);
    return next;
  }

  // Classical heuristic from the first derivative magnitude; deterministic
  // given the configuration.
  double initial_step(const std::vector<double>& y, double span) {
    auto d0 = simd::wrms_error(y, y, y, cfg_.abs_tol, cfg_.rel_tol);
    auto d1 = simd::wrms_error(k_[0], y, y, cfg_.abs_tol, cfg_.rel_tol);
    double h = (d0.norm < 1e-5 || d1.norm < 1e-5)
                   ? 1e-6
                   : 0.01 * d0.norm / d1.norm;
    return std::min({h, cfg_.max_step, span});
  }

  const IntegratorConfig cfg_;
  RhsEvaluator rhs_;
  IntegratorStats stats_;
  std::vector<double> k_[7];
  std::vector<double> y5_, ytmp_, err_;
  double h_prop_ = 0.0;
  bool have_f0_ = false;
};

void check_grid(std::span<const double> grid) {
  if (grid.empty()) throw ConfigError("output grid is empty");
  if (!(grid.front() >= 0.0))
    throw ConfigError("output grid must start at a nonnegative time");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw ConfigError("output grid must be strictly increasing");
  for (double t : grid)
    if (!std::isfinite(t)) throw ConfigError("output grid times must be finite");
}

}  // namespace

Trajectory integrate(const Kernel& kernel, const InitialCondition& ic, int n,
                     std::span<const double> grid,
                     const IntegratorConfig& cfg) {
  check_config(cfg);
  check_grid(grid);
  ClusterState initial = ic.realize(n);

  Trajectory traj;
  traj.states.reserve(grid.size() + 1);
  traj.states.push_back(initial);

  Dopri5 stepper(kernel, n, cfg);
  traj.path_used = stepper.path();

  std::vector<double> y(initial.values().begin(), initial.values().end());
  double t = 0.0;
  for (double target : grid) {
    if (target == 0.0) continue;  // initial state already stored
    stepper.advance(t, y, target);
    traj.states.emplace_back(target, y);
  }
  traj.stats = stepper.stats();
  return traj;
}

Trajectory continue_from(const Kernel& kernel, const ClusterState& start,
                         std::span<const double> times,
                         const IntegratorConfig& cfg) {
  check_config(cfg);
  if (times.empty()) throw ConfigError("output grid is empty");
  if (!(times.front() > start.time()))
    throw ConfigError("continuation times must lie beyond the start time");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw ConfigError("output grid must be strictly increasing");

  Trajectory traj;
  traj.states.reserve(times.size() + 1);
  traj.states.push_back(start);

  Dopri5 stepper(kernel, start.size(), cfg);
  traj.path_used = stepper.path();

  std::vector<double> y(start.values().begin(), start.values().end());
  double t = start.time();
  for (double target : times) {
    stepper.advance(t, y, target);
    traj.states.emplace_back(target, y);
  }
  traj.stats = stepper.stats();
  return traj;
}

OracleReport decay_check(const Kernel& kernel, const Trajectory& traj,
                         double epsilon) {
  if (!(epsilon > 0.0)) throw ConfigError("decay epsilon must be positive");
  const ClusterState& final_state = traj.back();
  for (int j = 1; j <= final_state.size(); ++j)
    if (!(kernel.eval(j, j) > 0.0))
      throw PreconditionViolated("decay check requires a(j,j) > 0; a(" +
                                 std::to_string(j) + "," + std::to_string(j) +
                                 ") vanishes");

  double max_c = 0.0;
  int argmax = 1;
  for (int j = 1; j <= final_state.size(); ++j) {
    if (final_state[j] > max_c) {
      max_c = final_state[j];
      argmax = j;
    }
  }
  OracleReport report;
  report.check = "long_time_decay";
  report.residual = max_c;
  report.tolerance = epsilon;
  report.pass = max_c < epsilon;
  report.values["t_final"] = final_state.time();
  report.values["argmax_index"] = argmax;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "max_j c_j(%.6g) = %.6g at j=%d",
                final_state.time(), max_c, argmax);
  report.message = buf;
  return report;
}

}  // namespace rbk
