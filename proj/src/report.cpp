#include "rbk/report.hpp"

#include <fstream>

#include "json.hpp"

#include "rbk/errors.hpp"

namespace rbk {

namespace {

nlohmann::json to_json(const OracleReport& r) {
  return nlohmann::json{{"check", r.check},
                        {"pass", r.pass},
                        {"skipped", r.skipped},
                        {"residual", r.residual},
                        {"tolerance", r.tolerance},
                        {"message", r.message},
                        {"context", r.context},
                        {"values", r.values}};
}

OracleReport from_json(const nlohmann::json& j) {
  OracleReport r;
  r.check = j.at("check").get<std::string>();
  r.pass = j.at("pass").get<bool>();
  r.skipped = j.at("skipped").get<bool>();
  r.residual = j.at("residual").get<double>();
  r.tolerance = j.at("tolerance").get<double>();
  r.message = j.at("message").get<std::string>();
  r.context = j.at("context").get<std::map<std::string, std::string>>();
  r.values = j.at("values").get<std::map<std::string, double>>();
  return r;
}

}  // namespace

std::string reports_to_json(std::span<const OracleReport> reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  return arr.dump(2) + "\n";
}

std::vector<OracleReport> reports_from_json(std::string_view text) {
  nlohmann::json arr = nlohmann::json::parse(text);
  if (!arr.is_array()) throw ConfigError("report JSON must be an array");
  std::vector<OracleReport> out;
  out.reserve(arr.size());
  for (const auto& j : arr) out.push_back(from_json(j));
  return out;
}

void write_reports_file(const std::string& path,
                        std::span<const OracleReport> reports) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out << reports_to_json(reports);
}

std::vector<OracleReport> read_reports_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return reports_from_json(text);
}

}  // namespace rbk
