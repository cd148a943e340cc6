#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rbk {

// Outcome of one verification check. For residual-style checks
// pass <=> residual <= tolerance; set-membership checks (support law) encode
// the first violation in `message` and use residual for the smallest value
// observed inside the predicted set.
struct OracleReport {
  std::string check;
  bool pass = false;
  bool skipped = false;  // check not applicable to this kernel/config
  double residual = 0.0;
  double tolerance = 0.0;
  std::string message;
  std::map<std::string, std::string> context;
  std::map<std::string, double> values;

  friend bool operator==(const OracleReport&, const OracleReport&) = default;
};

std::string reports_to_json(std::span<const OracleReport> reports);
std::vector<OracleReport> reports_from_json(std::string_view text);

void write_reports_file(const std::string& path,
                        std::span<const OracleReport> reports);
std::vector<OracleReport> read_reports_file(const std::string& path);

}  // namespace rbk
