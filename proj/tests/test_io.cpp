#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "rbk/integrator.hpp"
#include "rbk/io.hpp"
#include "rbk/report.hpp"

namespace fs = std::filesystem;
namespace io = rbk::io;

namespace {

struct Rng {
  std::uint64_t s;
  explicit Rng(std::uint64_t seed) : s(seed) {}
  std::uint64_t next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  }
  double uniform() { return (next() >> 11) * 0x1.0p-53; }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("format_double round-trips random values") {
  Rng rng(99);
  for (int i = 0; i < 200; ++i) {
    double v = (rng.uniform() - 0.5) * std::pow(10.0, double(i % 40) - 20.0);
    CHECK(std::stod(io::format_double(v)) == v);
  }
  CHECK(std::stod(io::format_double(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(io::format_double(0.0) == "0");
}

TEST_CASE("grid specs") {
  CHECK(io::parse_grid_spec("0,1,2") == std::vector<double>{0.0, 1.0});
  auto linear = io::parse_grid_spec("0,10,11");
  REQUIRE(linear.size() == 11);
  CHECK(linear.front() == 0.0);
  CHECK(linear.back() == 10.0);
  CHECK(linear[3] == doctest::Approx(3.0));

  auto log = io::parse_grid_spec("0.01,1000,7,log");
  REQUIRE(log.size() == 7);
  CHECK(log.front() == 0.01);
  CHECK(log.back() == 1000.0);
  for (std::size_t i = 1; i < log.size(); ++i) {
    CHECK(log[i] > log[i - 1]);
    CHECK(log[i] / log[i - 1] == doctest::Approx(std::pow(10.0, 5.0 / 6.0)));
  }

  CHECK_THROWS_AS(io::parse_grid_spec("1,0,5"), rbk::ConfigError);
  CHECK_THROWS_AS(io::parse_grid_spec("0,1,1"), rbk::ConfigError);
  CHECK_THROWS_AS(io::parse_grid_spec("0,1000,5,log"), rbk::ConfigError);
  CHECK_THROWS_AS(io::parse_grid_spec("0,1"), rbk::ConfigError);
  CHECK_THROWS_AS(io::parse_grid_spec("x,1,2"), rbk::ConfigError);
  CHECK_THROWS_AS(io::parse_grid_spec("0,1,2,linear"), rbk::ConfigError);
  CHECK_THROWS_AS(io::parse_grid_spec("@/no/such/grid.txt"),
                  rbk::ConfigError);

  fs::path gridfile = fs::temp_directory_path() / "rbk_test_grid.txt";
  {
    std::ofstream out(gridfile);
    out << "0 0.5\n1,2.5 7\n";
  }
  CHECK(io::parse_grid_spec("@" + gridfile.string()) ==
        std::vector<double>{0.0, 0.5, 1.0, 2.5, 7.0});
  fs::remove(gridfile);
}

TEST_CASE("size lists") {
  CHECK(io::parse_sizes("32,64,128") == std::vector<int>{32, 64, 128});
  CHECK_THROWS_AS(io::parse_sizes("64,32"), rbk::ConfigError);
  CHECK_THROWS_AS(io::parse_sizes("64"), rbk::ConfigError);
  CHECK_THROWS_AS(io::parse_sizes("1.5,2"), rbk::ConfigError);
  CHECK_THROWS_AS(io::parse_sizes("0,4"), rbk::ConfigError);
}

TEST_CASE("trajectory and moments CSV files") {
  rbk::Kernel k = rbk::Kernel::constant(1.0);
  auto traj = rbk::integrate(k, rbk::InitialCondition::geometric(1.0, 0.5), 3,
                             std::vector<double>{0.0, 1.0}, {});

  fs::path dir = fs::temp_directory_path() / "rbk_test_io";
  fs::create_directories(dir);
  io::write_trajectory_csv((dir / "trajectory.csv").string(), traj);
  io::write_moments_csv((dir / "moments.csv").string(), traj);

  std::string text = slurp(dir / "trajectory.csv");
  CHECK(text.substr(0, 13) == "t,c_1,c_2,c_3");
  CHECK(text.back() == '\n');

  // values round-trip bitwise through the 17-digit format
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);  // header
  for (const auto& s : traj.states) {
    REQUIRE(std::getline(lines, line));
    std::istringstream cells(line);
    std::string cell;
    std::getline(cells, cell, ',');
    CHECK(std::stod(cell) == s.time());
    for (int j = 1; j <= 3; ++j) {
      REQUIRE(std::getline(cells, cell, ','));
      CHECK(std::stod(cell) == s[j]);
    }
  }

  std::string moments = slurp(dir / "moments.csv");
  CHECK(moments.substr(0, 17) == "t,nu,mass,nu_odd\n");

  fs::remove_all(dir);
}

TEST_CASE("report JSON round trip") {
  rbk::OracleReport a;
  a.check = "odd_count_law";
  a.pass = true;
  a.skipped = false;
  a.residual = 1.0 / 3.0;
  a.tolerance = 1e-6;
  a.message = "max relative error 3.3e-07";
  a.context = {{"kernel", "const:1"}, {"ic", "geom:1,0.5"}};
  a.values = {{"nu_odd_0", 2.0 / 3.0}, {"tiny", 1e-300}};

  rbk::OracleReport b;
  b.check = "support_invariance";
  b.pass = false;
  b.skipped = false;
  b.residual = 0.0;
  b.tolerance = 1e-12;
  b.message = "index 4 outside predicted support";

  std::vector<rbk::OracleReport> reports = {a, b};
  fs::path file = fs::temp_directory_path() / "rbk_test_report.json";
  rbk::write_reports_file(file.string(), reports);
  auto reread = rbk::read_reports_file(file.string());
  REQUIRE(reread.size() == 2);
  CHECK(reread[0] == a);
  CHECK(reread[1] == b);
  fs::remove(file);

  CHECK_THROWS_AS(rbk::read_reports_file("/no/such/report.json"),
                  rbk::ConfigError);
  CHECK_THROWS_AS(rbk::reports_from_json("{\"not\":\"an array\"}"),
                  rbk::ConfigError);
}
