#include "rbk/state.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rbk/simd.hpp"

namespace rbk {

namespace {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_real(std::string_view text, const char* what) {
  try {
    std::string s(text);
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size())
      throw ConfigError(std::string("trailing characters in ") + what);
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError(std::string("cannot parse ") + what + " from '" +
                      std::string(text) + "'");
  }
}

int parse_index(std::string_view text, const char* what) {
  double v = parse_real(text, what);
  int i = static_cast<int>(v);
  if (v != i || i < 1)
    throw ConfigError(std::string(what) + " must be a positive integer");
  return i;
}

}  // namespace

double ClusterState::moment(int p) const {
  if (p == 0) return simd::sum(c_);
  if (p != 1) throw ConfigError("moment order must be 0 or 1");
  double s = 0.0;
  for (std::size_t i = 0; i < c_.size(); ++i)
    s += static_cast<double>(i + 1) * c_[i];
  return s;
}

double ClusterState::nu_odd() const {
  double s = 0.0;
  for (std::size_t i = 0; i < c_.size(); i += 2) s += c_[i];
  return s;
}

std::vector<int> ClusterState::support(double threshold) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] > threshold) out.push_back(static_cast<int>(i + 1));
  return out;
}

InitialCondition InitialCondition::monodisperse(int p, double lambda) {
  if (p < 1) throw ConfigError("monodisperse index must be >= 1");
  if (!(lambda >= 0.0)) throw ConfigError("monodisperse value must be >= 0");
  InitialCondition ic;
  ic.form_ = Form::monodisperse;
  ic.p_ = p;
  ic.a_ = lambda;
  ic.spec_ = "mono:" + std::to_string(p) + "," + format_number(lambda);
  return ic;
}

InitialCondition InitialCondition::geometric(double A0, double alpha) {
  if (!(A0 >= 0.0)) throw ConfigError("geometric amplitude must be >= 0");
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw ConfigError("geometric ratio must satisfy 0 <= alpha < 1");
  InitialCondition ic;
  ic.form_ = Form::geometric;
  ic.a_ = A0;
  ic.alpha_ = alpha;
  ic.spec_ = "geom:" + format_number(A0) + "," + format_number(alpha);
  return ic;
}

InitialCondition InitialCondition::explicit_list(
    std::vector<std::pair<int, double>> entries) {
  InitialCondition ic;
  ic.form_ = Form::explicit_list;
  std::sort(entries.begin(), entries.end());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    auto [j, v] = entries[i];
    if (j < 1) throw ConfigError("explicit index must be >= 1");
    if (!(v >= 0.0)) throw ConfigError("explicit value must be >= 0");
    if (i > 0 && entries[i - 1].first == j)
      throw ConfigError("duplicate explicit index " + std::to_string(j));
  }
  std::string spec = "explicit:[";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) spec += ";";
    spec += std::to_string(entries[i].first) + "," +
            format_number(entries[i].second);
  }
  spec += "]";
  ic.entries_ = std::move(entries);
  ic.spec_ = std::move(spec);
  return ic;
}

InitialCondition InitialCondition::parse_spec(std::string_view spec) {
  auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw ConfigError("initial condition spec must be mono:p,lambda, "
                      "geom:A0,alpha or explicit:path");
  std::string_view head = spec.substr(0, colon);
  std::string_view body = spec.substr(colon + 1);
  if (head == "mono") {
    auto comma = body.find(',');
    if (comma == std::string_view::npos)
      throw ConfigError("monodisperse spec is mono:p,lambda");
    return monodisperse(parse_index(body.substr(0, comma), "cluster index p"),
                        parse_real(body.substr(comma + 1), "lambda"));
  }
  if (head == "geom") {
    auto comma = body.find(',');
    if (comma == std::string_view::npos)
      throw ConfigError("geometric spec is geom:A0,alpha");
    return geometric(parse_real(body.substr(0, comma), "A0"),
                     parse_real(body.substr(comma + 1), "alpha"));
  }
  if (head == "explicit") {
    std::ifstream in{std::string(body)};
    if (!in)
      throw ConfigError("cannot open initial condition file '" +
                        std::string(body) + "'");
    std::vector<std::pair<int, double>> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      auto comma = line.find(',');
      if (comma == std::string::npos)
        throw ConfigError("line " + std::to_string(lineno) + " of '" +
                          std::string(body) + "' is not 'j,value'");
      entries.emplace_back(
          parse_index(std::string_view(line).substr(0, comma), "cluster index"),
          parse_real(std::string_view(line).substr(comma + 1), "value"));
    }
    return explicit_list(std::move(entries));
  }
  throw ConfigError("unknown initial condition form '" + std::string(head) +
                    "'");
}

ClusterState InitialCondition::realize(int n) const {
  if (n < 1) throw ConfigError("truncation size must be >= 1");
  std::vector<double> c(static_cast<std::size_t>(n), 0.0);
  switch (form_) {
    case Form::monodisperse:
      if (p_ > n) throw TruncationTooSmall(p_, n);
      c[static_cast<std::size_t>(p_ - 1)] = a_;
      break;
    case Form::geometric: {
      double v = a_;
      for (int j = 1; j <= n; ++j) {
        v *= alpha_;
        c[static_cast<std::size_t>(j - 1)] = v;
      }
      break;
    }
    case Form::explicit_list:
      for (auto [j, v] : entries_) {
        if (j > n) throw TruncationTooSmall(j, n);
        c[static_cast<std::size_t>(j - 1)] = v;
      }
      break;
  }
  return ClusterState(0.0, std::move(c));
}

double InitialCondition::truncation_tail_mass(int n) const {
  if (form_ != Form::geometric || alpha_ == 0.0) return 0.0;
  // sum_{j>n} j alpha^j = alpha^{n+1} ((n+1) - n alpha) / (1-alpha)^2
  double one_minus = 1.0 - alpha_;
  return a_ * std::pow(alpha_, n + 1) * ((n + 1) - n * alpha_) /
         (one_minus * one_minus);
}

}  // namespace rbk
