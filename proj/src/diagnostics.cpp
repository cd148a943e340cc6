#include "rbk/diagnostics.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numeric>

#include "rbk/oracles.hpp"
#include "rbk/simd.hpp"

namespace rbk {

namespace {

std::string fmt(const char* format, ...) {
  char buf[256];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

double weighted_moment(const ClusterState& state, std::span<const double> g) {
  return simd::dot(state.values(), g);
}

}  // namespace

WeightSequence::WeightSequence(Kind kind) : kind_(kind) {
  switch (kind) {
    case Kind::one: name_ = "one"; break;
    case Kind::identity: name_ = "identity"; break;
    case Kind::odd_indicator: name_ = "odd"; break;
    case Kind::custom: name_ = "custom"; break;
  }
}

WeightSequence WeightSequence::custom(std::vector<double> values) {
  WeightSequence w(Kind::custom);
  w.custom_ = std::move(values);
  return w;
}

std::vector<double> WeightSequence::materialize(int n) const {
  std::vector<double> g(static_cast<std::size_t>(n));
  switch (kind_) {
    case Kind::one:
      std::fill(g.begin(), g.end(), 1.0);
      break;
    case Kind::identity:
      for (int j = 1; j <= n; ++j) g[static_cast<std::size_t>(j - 1)] = j;
      break;
    case Kind::odd_indicator:
      for (int j = 1; j <= n; ++j)
        g[static_cast<std::size_t>(j - 1)] = (j % 2 == 1) ? 1.0 : 0.0;
      break;
    case Kind::custom:
      if (static_cast<int>(custom_.size()) < n)
        throw ConfigError("custom weight sequence shorter than truncation");
      std::copy(custom_.begin(), custom_.begin() + n, g.begin());
      break;
  }
  return g;
}

double weighted_rhs_sum(const Kernel& kernel, const ClusterState& state,
                        std::span<const double> g) {
  const int n = state.size();
  double total = 0.0;
  for (int j = 1; j <= n; ++j) {
    const double cj = state[j];
    if (cj == 0.0) continue;
    double inner = 0.0;
    for (int k = 1; k <= j - 1; ++k)
      inner += (g[static_cast<std::size_t>(j - 1)] -
                g[static_cast<std::size_t>(j - k - 1)]) *
               kernel.eval(j, k) * state[k];
    for (int k = j; k <= n; ++k)
      inner += g[static_cast<std::size_t>(j - 1)] * kernel.eval(j, k) *
               state[k];
    total -= cj * inner;
  }
  return total;
}

namespace {

// Integral of weighted_rhs_sum over [from.time(), t_end] by composite
// Simpson on M panels. Wide multiplicative intervals integrate in log time,
// where the integrand of the decaying dynamics is uniformly resolved;
// fixed-panel quadrature in linear time fails badly on decade-wide spans.
bool fill_nodes(double tau, double t_end, int panels, bool log_space,
                std::vector<double>& nodes) {
  nodes.resize(static_cast<std::size_t>(panels));
  if (log_space) {
    const double x0 = std::log(tau), x1 = std::log(t_end);
    for (int i = 1; i <= panels; ++i)
      nodes[static_cast<std::size_t>(i - 1)] =
          std::exp(x0 + (x1 - x0) * i / panels);
  } else {
    for (int i = 1; i <= panels; ++i)
      nodes[static_cast<std::size_t>(i - 1)] =
          tau + (t_end - tau) * i / panels;
  }
  nodes.back() = t_end;
  double prev = tau;
  for (double v : nodes) {
    if (!(v > prev)) return false;
    prev = v;
  }
  return true;
}

double simpson_pass(const Kernel& kernel, const ClusterState& from,
                    double t_end, std::span<const double> g,
                    const IntegratorConfig& cfg, int panels) {
  const double tau = from.time();
  bool log_space = tau > 0.0 && t_end / tau >= 4.0;

  std::vector<double> nodes;
  if (!fill_nodes(tau, t_end, panels, log_space, nodes)) {
    log_space = false;
    if (!fill_nodes(tau, t_end, panels, false, nodes)) {
      // interval too thin to refine: one-point rectangle rule
      return (t_end - tau) * weighted_rhs_sum(kernel, from, g);
    }
  }

  Trajectory fine = continue_from(kernel, from, nodes, cfg);

  double odd = 0.0, even = 0.0;
  double f0, fM;
  if (log_space) {
    auto integrand = [&](const ClusterState& s) {
      return weighted_rhs_sum(kernel, s, g) * s.time();
    };
    f0 = integrand(fine.states.front());
    fM = integrand(fine.states.back());
    for (int i = 1; i < panels; ++i) {
      double v = integrand(fine.states[static_cast<std::size_t>(i)]);
      (i % 2 ? odd : even) += v;
    }
    const double h = (std::log(t_end) - std::log(tau)) / panels;
    return h / 3.0 * (f0 + 4.0 * odd + 2.0 * even + fM);
  }
  f0 = weighted_rhs_sum(kernel, fine.states.front(), g);
  fM = weighted_rhs_sum(kernel, fine.states.back(), g);
  for (int i = 1; i < panels; ++i) {
    double v =
        weighted_rhs_sum(kernel, fine.states[static_cast<std::size_t>(i)], g);
    (i % 2 ? odd : even) += v;
  }
  const double h = (t_end - tau) / panels;
  return h / 3.0 * (f0 + 4.0 * odd + 2.0 * even + fM);
}

double interval_integral(const Kernel& kernel, const ClusterState& from,
                         double t_end, std::span<const double> g,
                         const IntegratorConfig& cfg, double abs_target) {
  int panels = 16;
  double previous = simpson_pass(kernel, from, t_end, g, cfg, panels);
  while (panels < 512) {
    panels *= 2;
    double refined = simpson_pass(kernel, from, t_end, g, cfg, panels);
    double change = std::fabs(refined - previous);
    previous = refined;
    if (change <= std::max(abs_target, 1e-14 * std::fabs(refined))) break;
  }
  return previous;
}

}  // namespace

OracleReport moment_residual(const Kernel& kernel, const Trajectory& traj,
                             const WeightSequence& g,
                             const IntegratorConfig& cfg, double tolerance) {
  if (traj.states.empty()) throw ConfigError("trajectory is empty");
  const int n = traj.front().size();
  const std::vector<double> weights = g.materialize(n);

  const double scale =
      std::max(weighted_moment(traj.front(), weights), DBL_MIN);
  double worst_abs = 0.0;
  double worst_time = traj.front().time();

  for (std::size_t i = 0; i + 1 < traj.states.size(); ++i) {
    const ClusterState& a = traj.states[i];
    const ClusterState& b = traj.states[i + 1];
    const double delta =
        weighted_moment(b, weights) - weighted_moment(a, weights);
    const double integral = interval_integral(
        kernel, a, b.time(), weights, cfg, 0.02 * tolerance * scale);
    const double defect = std::fabs(delta - integral);
    if (defect > worst_abs) {
      worst_abs = defect;
      worst_time = b.time();
    }
  }

  OracleReport report;
  report.check = "moment_identity_" + g.name();
  report.residual = worst_abs / scale;
  report.tolerance = tolerance;
  report.pass = report.residual <= tolerance;
  report.values["initial_weighted_moment"] = scale;
  report.values["worst_interval_end"] = worst_time;
  report.message = fmt("max interval defect %.3e relative to initial moment",
                       report.residual);
  return report;
}

OracleReport odd_count_check(const Kernel& kernel, const Trajectory& traj,
                             double tolerance) {
  if (!kernel.is_constant())
    throw KernelMismatch(
        "odd-count law is available for constant kernels only");
  if (traj.states.empty()) throw ConfigError("trajectory is empty");
  const double K = kernel.coefficient();
  const double t0 = traj.front().time();
  const double nu0 = traj.front().nu_odd();

  double worst = 0.0, worst_time = t0;
  for (const ClusterState& s : traj.states) {
    const double predicted = oracles::nu_odd_exact(nu0, s.time() - t0, K);
    const double rel =
        std::fabs(s.nu_odd() - predicted) / std::max(predicted, DBL_MIN);
    if (rel > worst) {
      worst = rel;
      worst_time = s.time();
    }
  }

  OracleReport report;
  report.check = "odd_count_law";
  report.residual = worst;
  report.tolerance = tolerance;
  report.pass = worst <= tolerance;
  report.values["nu_odd_0"] = nu0;
  report.values["worst_time"] = worst_time;
  report.message =
      fmt("max relative error %.3e against nu_odd closed form", worst);
  return report;
}

OracleReport support_invariance_check(const Trajectory& traj,
                                      double threshold, double t_min) {
  if (traj.states.empty()) throw ConfigError("trajectory is empty");
  const ClusterState& initial = traj.front();
  const int n = initial.size();
  const std::vector<int> p = initial.support(0.0);

  std::vector<bool> predicted(static_cast<std::size_t>(n + 1), false);
  int gcd = 0, sup = 0;
  if (p.size() == 1) {
    predicted[static_cast<std::size_t>(p[0])] = true;
    gcd = sup = p[0];
  } else if (p.size() > 1) {
    for (int j : p) gcd = std::gcd(gcd, j);
    sup = p.back();
    for (int j = gcd; j <= sup; j += gcd)
      predicted[static_cast<std::size_t>(j)] = true;
  }

  OracleReport report;
  report.check = "support_invariance";
  report.tolerance = threshold;
  report.pass = true;
  report.values["gcd"] = gcd;
  report.values["sup"] = sup;
  report.values["initial_support_size"] = static_cast<double>(p.size());

  double min_inside = HUGE_VAL;
  double min_inside_early = HUGE_VAL;  // below t_min, reported only
  for (const ClusterState& s : traj.states) {
    if (!(s.time() > initial.time())) continue;
    const bool enforce_positivity = s.time() >= t_min;
    for (int j = 1; j <= n; ++j) {
      if (!predicted[static_cast<std::size_t>(j)]) {
        if (s[j] != 0.0) {
          report.pass = false;
          if (report.message.empty())
            report.message = fmt(
                "index %d outside predicted support is %.3e at t=%.6g", j,
                s[j], s.time());
        }
      } else if (enforce_positivity) {
        min_inside = std::min(min_inside, s[j]);
        if (!(s[j] > threshold)) {
          report.pass = false;
          if (report.message.empty())
            report.message =
                fmt("index %d inside predicted support is %.3e <= %.3e "
                    "at t=%.6g",
                    j, s[j], threshold, s.time());
        }
      } else {
        min_inside_early = std::min(min_inside_early, s[j]);
      }
    }
  }
  if (std::isfinite(min_inside)) report.values["min_inside"] = min_inside;
  if (std::isfinite(min_inside_early))
    report.values["min_inside_below_t_min"] = min_inside_early;
  report.residual = std::isfinite(min_inside) ? min_inside : 0.0;
  if (report.message.empty())
    report.message = fmt("support law holds; min inside value %.3e",
                         report.residual);
  return report;
}

ConvergenceResult truncation_convergence(const Kernel& kernel,
                                         const InitialCondition& ic,
                                         std::span<const int> sizes,
                                         std::span<const double> grid,
                                         const IntegratorConfig& cfg) {
  if (sizes.size() < 2)
    throw ConfigError("truncation study needs at least two sizes");
  for (std::size_t i = 1; i < sizes.size(); ++i)
    if (!(sizes[i] > sizes[i - 1]))
      throw ConfigError("truncation sizes must be strictly increasing");

  std::vector<Trajectory> runs;
  runs.reserve(sizes.size());
  for (int n : sizes) runs.push_back(integrate(kernel, ic, n, grid, cfg));

  ConvergenceResult result;
  for (std::size_t i = 0; i + 1 < runs.size(); ++i) {
    const int n_small = sizes[i];
    double d = 0.0;
    for (std::size_t s = 0; s < runs[i].states.size(); ++s) {
      const ClusterState& small = runs[i].states[s];
      const ClusterState& large = runs[i + 1].states[s];
      double acc = 0.0;
      for (int j = 1; j <= n_small; ++j)
        acc += j * std::fabs(small[j] - large[j]);
      d = std::max(d, acc);
    }
    result.ladder.emplace_back(n_small, d);
  }

  OracleReport& report = result.report;
  report.check = "truncation_convergence";
  report.pass = true;
  for (std::size_t i = 0; i < result.ladder.size(); ++i) {
    auto [n, d] = result.ladder[i];
    report.values["D_" + std::to_string(n)] = d;
    if (i > 0 && d > result.ladder[i - 1].second) report.pass = false;
  }
  report.residual = result.ladder.back().second;
  report.tolerance = result.ladder.front().second;
  report.message = report.pass
                       ? "distance ladder is nonincreasing"
                       : "distance ladder increases along the sizes";
  return result;
}

OracleReport monodisperse_exactness_check(const Kernel& kernel,
                                          const Trajectory& traj, int p,
                                          double lambda, double tolerance) {
  if (traj.states.empty()) throw ConfigError("trajectory is empty");
  const double a_pp = kernel.eval(p, p);
  double worst = 0.0, worst_time = 0.0;
  bool off_index_clean = true;
  int dirty_index = 0;
  double dirty_time = 0.0;
  for (const ClusterState& s : traj.states) {
    const double predicted =
        oracles::monodisperse_exact(lambda, p, a_pp, s.time());
    const double rel =
        std::fabs(s[p] - predicted) / std::max(std::fabs(predicted), DBL_MIN);
    if (rel > worst) {
      worst = rel;
      worst_time = s.time();
    }
    for (int j = 1; j <= s.size() && off_index_clean; ++j) {
      if (j != p && s[j] != 0.0) {
        off_index_clean = false;
        dirty_index = j;
        dirty_time = s.time();
      }
    }
  }
  OracleReport report;
  report.check = "monodisperse_solution";
  report.residual = worst;
  report.tolerance = tolerance;
  report.pass = worst <= tolerance && off_index_clean;
  report.values["a_pp"] = a_pp;
  report.values["worst_time"] = worst_time;
  report.message = off_index_clean
                       ? fmt("max relative error %.3e at t=%.6g", worst,
                             worst_time)
                       : fmt("off-index component %d nonzero at t=%.6g",
                             dirty_index, dirty_time);
  return report;
}

OracleReport self_similar_check(const Kernel& kernel, const Trajectory& traj,
                                double A0, double alpha, int j_limit,
                                double tolerance) {
  if (!kernel.is_constant())
    throw KernelMismatch(
        "the geometric family solves the constant-kernel system only");
  if (traj.states.empty()) throw ConfigError("trajectory is empty");
  const double K = kernel.coefficient();
  const oracles::SelfSimilarParams params{A0, alpha};
  const int jmax = std::min(j_limit, traj.front().size());
  double worst = 0.0, worst_time = 0.0;
  int worst_index = 1;
  for (const ClusterState& s : traj.states) {
    for (int j = 1; j <= jmax; ++j) {
      const double predicted =
          oracles::self_similar_exact(params, j, s.time(), K);
      const double rel = std::fabs(s[j] - predicted) /
                         std::max(std::fabs(predicted), DBL_MIN);
      if (rel > worst) {
        worst = rel;
        worst_time = s.time();
        worst_index = j;
      }
    }
  }
  OracleReport report;
  report.check = "self_similar_family";
  report.residual = worst;
  report.tolerance = tolerance;
  report.pass = worst <= tolerance;
  report.values["beta"] = params.beta_rate() * K;
  report.values["j_limit"] = jmax;
  report.values["worst_time"] = worst_time;
  report.values["worst_index"] = worst_index;
  report.message = fmt("max relative error %.3e at j=%d, t=%.6g", worst,
                       worst_index, worst_time);
  return report;
}

OracleReport nu_envelope_check(const Kernel& kernel, const Trajectory& traj,
                               double slack) {
  if (!kernel.is_constant())
    throw KernelMismatch("the nu envelope holds for constant kernels only");
  if (traj.states.empty()) throw ConfigError("trajectory is empty");
  const double K = kernel.coefficient();
  const double t0 = traj.front().time();
  const double nu0 = traj.front().cluster_count();
  double worst = 0.0, worst_time = t0;
  for (const ClusterState& s : traj.states) {
    auto [lower, upper] = oracles::nu_bounds(nu0, s.time() - t0, K);
    const double nu = s.cluster_count();
    double violation = 0.0;
    if (nu < lower) violation = (lower - nu) / std::max(lower, DBL_MIN);
    if (nu > upper) violation = (nu - upper) / std::max(upper, DBL_MIN);
    if (violation > worst) {
      worst = violation;
      worst_time = s.time();
    }
  }
  OracleReport report;
  report.check = "nu_envelope";
  report.residual = worst;
  report.tolerance = slack;
  report.pass = worst <= slack;
  report.values["nu_0"] = nu0;
  report.values["worst_time"] = worst_time;
  report.message = fmt("max envelope violation %.3e relative", worst);
  return report;
}

ScalingTable scaling_diagnostics(const Kernel& kernel, const Trajectory& traj,
                                 int j_max) {
  if (!kernel.is_constant())
    throw KernelMismatch(
        "scaling diagnostics are available for constant kernels only");
  if (traj.states.empty()) throw ConfigError("trajectory is empty");
  if (j_max < 1 || j_max > traj.front().size())
    throw ConfigError("j_max must lie in [1, N]");

  ScalingTable table;
  table.columns = {"t", "t_nu", "t_nu_odd"};
  for (int j = 1; j <= j_max; ++j)
    table.columns.push_back("t_c_" + std::to_string(j));
  for (const ClusterState& s : traj.states) {
    std::vector<double> row;
    row.reserve(table.columns.size());
    const double t = s.time();
    row.push_back(t);
    row.push_back(t * s.cluster_count());
    row.push_back(t * s.nu_odd());
    for (int j = 1; j <= j_max; ++j) row.push_back(t * s[j]);
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace rbk
