#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rbk/diagnostics.hpp"
#include "rbk/integrator.hpp"

namespace rbk::io {

// 17 significant digits: lossless for downstream diffs and re-parsing.
std::string format_double(double v);

// Grid specs: "t0,t1,count" (linear, inclusive endpoints),
// "t0,t1,count,log" (log-spaced, t0 > 0) or "@path" (whitespace- or
// comma-separated times in a file). Resulting grid must be strictly
// increasing and nonnegative.
std::vector<double> parse_grid_spec(std::string_view spec);

// "32,64,128" -> ascending positive sizes.
std::vector<int> parse_sizes(std::string_view spec);

// CSV files are comma-separated with a header row, '.' decimal point and
// newline-terminated rows.
void write_trajectory_csv(const std::string& path, const Trajectory& traj);
void write_moments_csv(const std::string& path, const Trajectory& traj);
void write_scaling_csv(const std::string& path, const ScalingTable& table);
void write_convergence_csv(const std::string& path,
                           const std::vector<std::pair<int, double>>& ladder);

}  // namespace rbk::io
