#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rbk/errors.hpp"

namespace rbk {

// Truncated concentration sequence c_1..c_N at one time point. Cluster
// indices are 1-based everywhere in the public interface; storage is a plain
// contiguous array. States are immutable value-type snapshots.
class ClusterState {
public:
  ClusterState() = default;
  ClusterState(double time, std::vector<double> values)
      : time_(time), c_(std::move(values)) {}

  int size() const { return static_cast<int>(c_.size()); }
  double time() const { return time_; }

  // Concentration of j-clusters, j in [1..N].
  double operator[](int j) const { return c_[static_cast<std::size_t>(j - 1)]; }

  std::span<const double> values() const { return c_; }

  // Sum_j j^p c_j for p in {0,1}.
  double moment(int p) const;
  double cluster_count() const { return moment(0); }
  double mass() const { return moment(1); }

  // Total concentration of odd-size clusters.
  double nu_odd() const;

  // { j : c_j > threshold }; threshold 0 gives the exact positivity set.
  std::vector<int> support(double threshold = 0.0) const;

private:
  double time_ = 0.0;
  std::vector<double> c_;
};

// Initial data specification, realized into a ClusterState at t = 0.
class InitialCondition {
public:
  enum class Form { monodisperse, geometric, explicit_list };

  // c_j(0) = lambda * delta_{j,p}
  static InitialCondition monodisperse(int p, double lambda);
  // c_j(0) = A0 * alpha^j, 0 <= alpha < 1
  static InitialCondition geometric(double A0, double alpha);
  // sparse list of (index, value) pairs
  static InitialCondition explicit_list(std::vector<std::pair<int, double>> entries);
  // "mono:p,lambda" | "geom:A0,alpha" | "explicit:path" where path is a CSV
  // of rows "j,value"
  static InitialCondition parse_spec(std::string_view spec);

  Form form() const { return form_; }
  int index() const { return p_; }
  double amplitude() const { return a_; }    // lambda or A0
  double decay() const { return alpha_; }    // geometric alpha
  const std::vector<std::pair<int, double>>& entries() const { return entries_; }

  // Throws TruncationTooSmall if an explicit/monodisperse index exceeds n.
  ClusterState realize(int n) const;

  // Mass discarded by truncating geometric data: A0 * sum_{j>n} j alpha^j.
  // Zero for compactly supported forms.
  double truncation_tail_mass(int n) const;

  const std::string& spec_string() const { return spec_; }

private:
  InitialCondition() = default;

  Form form_ = Form::monodisperse;
  int p_ = 1;
  double a_ = 0.0;
  double alpha_ = 0.0;
  std::vector<std::pair<int, double>> entries_;
  std::string spec_;
};

}  // namespace rbk
