#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "rbk/kernel.hpp"
#include "rbk/report.hpp"
#include "rbk/rhs.hpp"
#include "rbk/state.hpp"

namespace rbk {

struct IntegratorConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double max_step = std::numeric_limits<double>::infinity();
  // A step producing any component below -negativity_floor is rejected;
  // accepted components in [-negativity_floor, 0) are clamped to exactly 0,
  // so exact zeros stay exact.
  double negativity_floor = 1e-14;
  RhsPath rhs_path = RhsPath::automatic;
};

struct IntegratorStats {
  std::uint64_t steps_accepted = 0;
  std::uint64_t steps_rejected = 0;
  std::uint64_t rhs_evaluations = 0;
};

struct Trajectory {
  std::vector<ClusterState> states;  // strictly increasing times
  IntegratorStats stats;
  RhsPath path_used = RhsPath::naive;

  const ClusterState& front() const { return states.front(); }
  const ClusterState& back() const { return states.back(); }
};

// Integrates the truncated system from the realized initial condition at
// t = 0 with an embedded Dormand-Prince 5(4) pair and a standard step-size
// controller (safety 0.9, step ratio in [0.2, 5], weighted RMS error norm
// with weights abs_tol + rel_tol*|c_j| averaged over dynamically active
// components).
//
// `grid` must be nonempty, strictly increasing, grid[0] >= 0. The returned
// trajectory always starts with the initial state at t = 0; if grid[0] > 0
// the grid times follow it.
Trajectory integrate(const Kernel& kernel, const InitialCondition& ic, int n,
                     std::span<const double> grid,
                     const IntegratorConfig& cfg = {});

// Continues from an existing state; `times` must be strictly increasing and
// all beyond start.time(). The result begins with `start` itself.
Trajectory continue_from(const Kernel& kernel, const ClusterState& start,
                         std::span<const double> times,
                         const IntegratorConfig& cfg = {});

// Long-time decay: passes when max_j c_j at the final trajectory time is
// below epsilon. Requires a(j,j) > 0 for every j in the truncation
// (PreconditionViolated otherwise).
OracleReport decay_check(const Kernel& kernel, const Trajectory& traj,
                         double epsilon);

}  // namespace rbk
