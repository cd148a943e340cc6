// End-to-end checks of the command-line tool. The binary path is injected by
// the build as RBK_CLI_PATH.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "rbk/report.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  fs::path log = fs::temp_directory_path() /
                 ("rbk_cli_log_" + std::to_string(counter++) + ".txt");
  std::string cmd = std::string(RBK_CLI_PATH) + " " + args + " > " +
                    log.string() + " 2>&1";
  int status = std::system(cmd.c_str());
  int code = -1;
  if (status != -1 && WIFEXITED(status)) code = WEXITSTATUS(status);
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  fs::remove(log);
  return {code, ss.str()};
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("rbk_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// cell (row, col) of a CSV file, header excluded from row numbering
double csv_value(const fs::path& file, int row, int col) {
  std::ifstream in(file);
  std::string line;
  std::getline(in, line);  // header
  for (int r = 0; r <= row; ++r) REQUIRE(std::getline(in, line));
  std::istringstream cells(line);
  std::string cell;
  for (int c = 0; c <= col; ++c) REQUIRE(std::getline(cells, cell, ','));
  return std::stod(cell);
}

}  // namespace

TEST_CASE("simulate: monodisperse run hits the closed form") {
  fs::path dir = fresh_dir("simulate");
  auto r = run_cli("simulate --kernel const:1 --ic mono:1,1 --n 4 "
                   "--grid 0,1,2 --out-dir " + dir.string());
  CHECK(r.exit_code == 0);
  REQUIRE(fs::exists(dir / "trajectory.csv"));
  REQUIRE(fs::exists(dir / "moments.csv"));
  REQUIRE(fs::exists(dir / "metadata.json"));

  // rows: t=0 and t=1; c_1(1) = 0.5 within 1e-8, the rest exactly 0
  CHECK(csv_value(dir / "trajectory.csv", 1, 0) == 1.0);
  CHECK(csv_value(dir / "trajectory.csv", 1, 1) ==
        doctest::Approx(0.5).epsilon(1e-8));
  for (int col : {2, 3, 4})
    CHECK(csv_value(dir / "trajectory.csv", 1, col) == 0.0);

  std::string meta = slurp(dir / "metadata.json");
  CHECK(meta.find("\"growth_class\": \"Bounded\"") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("simulate: identical configs give identical bytes") {
  fs::path a = fresh_dir("det_a");
  fs::path b = fresh_dir("det_b");
  std::string args = "simulate --kernel product:1,0.5 --ic geom:1,0.5 "
                     "--n 16 --grid 0,2,5";
  CHECK(run_cli(args + " --out-dir " + a.string()).exit_code == 0);
  CHECK(run_cli(args + " --out-dir " + b.string()).exit_code == 0);
  CHECK(slurp(a / "trajectory.csv") == slurp(b / "trajectory.csv"));
  CHECK(slurp(a / "moments.csv") == slurp(b / "moments.csv"));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("simulate: configuration failures exit with 2") {
  fs::path dir = fresh_dir("bad");
  auto asym = run_cli("simulate --kernel expr:j-k --ic mono:1,1 --n 4 "
                      "--grid 0,1,2 --out-dir " + dir.string());
  CHECK(asym.exit_code == 2);
  CHECK(asym.output.find("asymmetric") != std::string::npos);

  auto missing = run_cli("simulate --kernel const:1 "
                         "--ic explicit:/no/such/ic.csv --n 4 --grid 0,1,2 "
                         "--out-dir " + dir.string());
  CHECK(missing.exit_code == 2);

  auto badgrid = run_cli("simulate --kernel const:1 --ic mono:1,1 --n 4 "
                         "--grid 1,0,2 --out-dir " + dir.string());
  CHECK(badgrid.exit_code == 2);

  auto toosmall = run_cli("simulate --kernel const:1 --ic mono:9,1 --n 4 "
                          "--grid 0,1,2 --out-dir " + dir.string());
  CHECK(toosmall.exit_code == 2);

  CHECK(run_cli("").exit_code == 2);
  fs::remove_all(dir);
}

TEST_CASE("verify: oracle suite passes for the geometric family") {
  fs::path dir = fresh_dir("verify_oracles");
  auto r = run_cli("verify --kernel const:1 --ic geom:1,0.5 --n 64 "
                   "--grid 0,10,6 --rel-tol 1e-10 --abs-tol 1e-13 "
                   "--suite oracles --out-dir " + dir.string());
  CHECK(r.exit_code == 0);
  auto reports = rbk::read_reports_file((dir / "report.json").string());
  bool saw_family = false;
  for (const auto& rep : reports) {
    if (rep.check == "self_similar_family") {
      saw_family = true;
      CHECK(!rep.skipped);
      CHECK(rep.pass);
    }
    if (!rep.skipped) CHECK(rep.pass);
  }
  CHECK(saw_family);
  fs::remove_all(dir);
}

TEST_CASE("verify: support suite reports the predicted lattice") {
  fs::path dir = fresh_dir("verify_support");
  fs::path ic = dir / "ic.csv";
  {
    std::ofstream out(ic);
    out << "6,1.0\n10,1.0\n";
  }
  auto r = run_cli("verify --kernel const:1 --ic explicit:" + ic.string() +
                   " --n 10 --grid 0.1,10,3 --suite support --out-dir " +
                   dir.string());
  CHECK(r.exit_code == 0);
  auto reports = rbk::read_reports_file((dir / "report.json").string());
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].check == "support_invariance");
  CHECK(reports[0].pass);
  CHECK(reports[0].values.at("gcd") == 2.0);
  CHECK(reports[0].values.at("sup") == 10.0);
  fs::remove_all(dir);
}

TEST_CASE("verify: constant-kernel-only checks are skipped, not failed") {
  fs::path dir = fresh_dir("verify_skip");
  auto r = run_cli("verify --kernel product:1,1 --ic geom:1,0.5 --n 16 "
                   "--grid 0,1,3 --suite oracles --out-dir " + dir.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("SKIP") != std::string::npos);
  auto reports = rbk::read_reports_file((dir / "report.json").string());
  int skipped = 0;
  for (const auto& rep : reports)
    if (rep.skipped) ++skipped;
  CHECK(skipped >= 3);  // family, envelope, odd-count at least
  fs::remove_all(dir);
}

TEST_CASE("verify: moment suite on a short run") {
  fs::path dir = fresh_dir("verify_moments");
  auto r = run_cli("verify --kernel const:1 --ic geom:1,0.5 --n 24 "
                   "--grid 0,2,5 --rel-tol 1e-10 --abs-tol 1e-13 "
                   "--suite moments --out-dir " + dir.string());
  CHECK(r.exit_code == 0);
  auto reports = rbk::read_reports_file((dir / "report.json").string());
  CHECK(reports.size() == 3);
  for (const auto& rep : reports) CHECK(rep.pass);
  fs::remove_all(dir);
}

TEST_CASE("verify: full suite on explicit data, and failure exit code") {
  fs::path dir = fresh_dir("verify_all");
  fs::path ic = dir / "ic.csv";
  {
    std::ofstream out(ic);
    out << "2,1.0\n3,1.0\n";
  }
  auto r = run_cli("verify --kernel const:1 --ic explicit:" + ic.string() +
                   " --n 4 --grid 0,5,6 --rel-tol 1e-10 --abs-tol 1e-13 "
                   "--suite all --out-dir " + dir.string());
  CHECK(r.exit_code == 0);
  auto reports = rbk::read_reports_file((dir / "report.json").string());
  CHECK(reports.size() >= 7);  // 3 moments + support + 4 oracle checks

  // an unattainable support threshold fails the run but still writes the
  // report
  fs::path dir2 = fresh_dir("verify_fail");
  auto bad = run_cli("verify --kernel const:1 --ic explicit:" + ic.string() +
                     " --n 4 --grid 0,5,6 --suite support --threshold 10 "
                     "--out-dir " + dir2.string());
  CHECK(bad.exit_code == 1);
  auto failed = rbk::read_reports_file((dir2 / "report.json").string());
  REQUIRE(failed.size() == 1);
  CHECK_FALSE(failed[0].pass);
  fs::remove_all(dir);
  fs::remove_all(dir2);
}

TEST_CASE("simulate: requesting the fast path on a non-separable kernel "
          "falls back") {
  fs::path dir = fresh_dir("fastback");
  auto r = run_cli("simulate --kernel 'expr:min(j,k)' --ic mono:2,1 --n 8 "
                   "--grid 0,1,3 --rhs fast --out-dir " + dir.string());
  CHECK(r.exit_code == 0);
  std::string meta = slurp(dir / "metadata.json");
  CHECK(meta.find("\"rhs_path_requested\": \"fast\"") != std::string::npos);
  CHECK(meta.find("\"rhs_path_used\": \"naive\"") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("simulate: explicit grid file") {
  fs::path dir = fresh_dir("gridfile");
  fs::path grid = dir / "grid.txt";
  {
    std::ofstream out(grid);
    out << "0\n0.5\n1\n";
  }
  auto r = run_cli("simulate --kernel const:1 --ic mono:1,1 --n 2 "
                   "--grid @" + grid.string() + " --out-dir " + dir.string());
  CHECK(r.exit_code == 0);
  CHECK(csv_value(dir / "trajectory.csv", 2, 0) == 1.0);
  CHECK(csv_value(dir / "trajectory.csv", 2, 1) ==
        doctest::Approx(0.5).epsilon(1e-8));
  fs::remove_all(dir);
}

TEST_CASE("scaling: table approaches the long-time plateaus") {
  fs::path dir = fresh_dir("scaling");
  auto r = run_cli("scaling --kernel const:1 --ic mono:1,1 --n 2 "
                   "--grid 0.001,1000,40,log --jmax 1 --out-dir " +
                   dir.string());
  CHECK(r.exit_code == 0);
  REQUIRE(fs::exists(dir / "scaling.csv"));
  // last row: t = 1000, t*c_1 = t/(1+t) ~ 0.999
  CHECK(csv_value(dir / "scaling.csv", 40, 0) == 1000.0);
  CHECK(csv_value(dir / "scaling.csv", 40, 3) ==
        doctest::Approx(1000.0 / 1001.0).epsilon(1e-6));

  auto bad = run_cli("scaling --kernel product:1,0.5 --ic geom:1,0.5 --n 8 "
                     "--grid 1,10,5,log --out-dir " + dir.string());
  CHECK(bad.exit_code == 2);
  fs::remove_all(dir);
}

TEST_CASE("scaling: geometric family t*nu plateau") {
  fs::path dir = fresh_dir("scaling_geom");
  auto r = run_cli("scaling --kernel const:1 --ic geom:1,0.5 --n 64 "
                   "--grid 0.01,1000,30,log --jmax 5 --rel-tol 1e-10 "
                   "--out-dir " + dir.string());
  CHECK(r.exit_code == 0);
  // last row: t*nu within 0.5% of 1+alpha = 1.5
  CHECK(csv_value(dir / "scaling.csv", 30, 1) ==
        doctest::Approx(1.5).epsilon(5e-3));
  fs::remove_all(dir);
}

TEST_CASE("convergence: ladder command") {
  fs::path dir = fresh_dir("convergence");
  auto r = run_cli("convergence --kernel const:1 --ic geom:1,0.9 "
                   "--sizes 32,64,128 --grid 0,10,6 --n 32 --out-dir " +
                   dir.string());
  CHECK(r.exit_code == 0);
  REQUIRE(fs::exists(dir / "convergence.csv"));
  double d32 = csv_value(dir / "convergence.csv", 0, 1);
  double d64 = csv_value(dir / "convergence.csv", 1, 1);
  CHECK(d64 < d32);

  auto bad = run_cli("convergence --kernel const:1 --ic geom:1,0.9 "
                     "--sizes 64,32 --grid 0,10,6 --n 32 --out-dir " +
                     dir.string());
  CHECK(bad.exit_code == 2);

  // compactly supported data is independent of the truncation size
  auto exact = run_cli("convergence --kernel const:1 --ic mono:4,1 "
                       "--sizes 4,8 --grid 0,10,6 --n 4 --out-dir " +
                       dir.string());
  CHECK(exact.exit_code == 0);
  CHECK(csv_value(dir / "convergence.csv", 0, 1) == 0.0);
  fs::remove_all(dir);
}
