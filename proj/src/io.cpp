#include "rbk/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rbk::io {

namespace {

double parse_real(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size())
      throw ConfigError(std::string("trailing characters in ") + what);
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError(std::string("cannot parse ") + what + " from '" + text +
                      "'");
  }
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find(sep, start);
    if (end == std::string_view::npos) {
      parts.emplace_back(s.substr(start));
      break;
    }
    parts.emplace_back(s.substr(start, end - start));
    start = end + 1;
  }
  return parts;
}

void check_grid_values(const std::vector<double>& grid) {
  if (grid.empty()) throw ConfigError("grid is empty");
  if (!(grid.front() >= 0.0)) throw ConfigError("grid times must be >= 0");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw ConfigError("grid times must be strictly increasing");
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<double> parse_grid_spec(std::string_view spec) {
  std::vector<double> grid;
  if (!spec.empty() && spec.front() == '@') {
    std::ifstream in{std::string(spec.substr(1))};
    if (!in)
      throw ConfigError("cannot open grid file '" +
                        std::string(spec.substr(1)) + "'");
    std::string token;
    while (in >> token) {
      for (auto& piece : split(token, ','))
        if (!piece.empty()) grid.push_back(parse_real(piece, "grid time"));
    }
    check_grid_values(grid);
    return grid;
  }

  auto parts = split(spec, ',');
  if (parts.size() != 3 && parts.size() != 4)
    throw ConfigError("grid spec is t0,t1,count[,log] or @file");
  bool log_spaced = false;
  if (parts.size() == 4) {
    if (parts[3] != "log")
      throw ConfigError("fourth grid field must be 'log'");
    log_spaced = true;
  }
  double t0 = parse_real(parts[0], "grid start");
  double t1 = parse_real(parts[1], "grid end");
  double count_real = parse_real(parts[2], "grid count");
  int count = static_cast<int>(count_real);
  if (count != count_real || count < 2)
    throw ConfigError("grid count must be an integer >= 2");
  if (!(t1 > t0)) throw ConfigError("grid end must exceed grid start");
  if (!(t0 >= 0.0)) throw ConfigError("grid start must be >= 0");
  if (log_spaced && !(t0 > 0.0))
    throw ConfigError("log-spaced grids need a positive start time");

  grid.resize(static_cast<std::size_t>(count));
  if (log_spaced) {
    const double x0 = std::log(t0), x1 = std::log(t1);
    for (int i = 0; i < count; ++i)
      grid[static_cast<std::size_t>(i)] =
          std::exp(x0 + (x1 - x0) * i / (count - 1));
  } else {
    for (int i = 0; i < count; ++i)
      grid[static_cast<std::size_t>(i)] = t0 + (t1 - t0) * i / (count - 1);
  }
  grid.front() = t0;
  grid.back() = t1;
  check_grid_values(grid);
  return grid;
}

std::vector<int> parse_sizes(std::string_view spec) {
  std::vector<int> sizes;
  for (auto& piece : split(spec, ',')) {
    double v = parse_real(piece, "truncation size");
    int n = static_cast<int>(v);
    if (n != v || n < 1)
      throw ConfigError("truncation sizes must be positive integers");
    sizes.push_back(n);
  }
  if (sizes.size() < 2)
    throw ConfigError("need at least two truncation sizes");
  for (std::size_t i = 1; i < sizes.size(); ++i)
    if (sizes[i] <= sizes[i - 1])
      throw ConfigError("truncation sizes must be strictly increasing");
  return sizes;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  auto out = open_out(path);
  const int n = traj.front().size();
  out << "t";
  for (int j = 1; j <= n; ++j) out << ",c_" << j;
  out << "\n";
  for (const ClusterState& s : traj.states) {
    out << format_double(s.time());
    for (int j = 1; j <= n; ++j) out << "," << format_double(s[j]);
    out << "\n";
  }
}

void write_moments_csv(const std::string& path, const Trajectory& traj) {
  auto out = open_out(path);
  out << "t,nu,mass,nu_odd\n";
  for (const ClusterState& s : traj.states) {
    out << format_double(s.time()) << "," << format_double(s.cluster_count())
        << "," << format_double(s.mass()) << "," << format_double(s.nu_odd())
        << "\n";
  }
}

void write_scaling_csv(const std::string& path, const ScalingTable& table) {
  auto out = open_out(path);
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out << ",";
    out << table.columns[i];
  }
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      out << format_double(row[i]);
    }
    out << "\n";
  }
}

void write_convergence_csv(const std::string& path,
                           const std::vector<std::pair<int, double>>& ladder) {
  auto out = open_out(path);
  out << "N,D\n";
  for (auto [n, d] : ladder) out << n << "," << format_double(d) << "\n";
}

}  // namespace rbk::io
