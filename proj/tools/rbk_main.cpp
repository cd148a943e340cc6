// Command-line front end: simulation runs, verification suites and data
// export for the truncated cluster-eating coagulation system.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rbk/diagnostics.hpp"
#include "rbk/integrator.hpp"
#include "rbk/io.hpp"
#include "rbk/kernel.hpp"
#include "rbk/oracles.hpp"
#include "rbk/report.hpp"
#include "rbk/simd.hpp"
#include "rbk/state.hpp"

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string kernel_spec;
  std::string ic_spec;
  std::string grid_spec = "0,10,21";
  std::string out_dir = ".";
  std::string rhs = "auto";
  std::string suite = "all";
  std::string sizes_spec;
  int n = 64;
  int j_max = 5;
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double threshold = 1e-12;
  double decay_epsilon = 0.0;  // 0 = decay check not requested
};

rbk::RhsPath parse_rhs(const std::string& s) {
  if (s == "naive") return rbk::RhsPath::naive;
  if (s == "fast") return rbk::RhsPath::fast;
  if (s == "auto") return rbk::RhsPath::automatic;
  throw rbk::ConfigError("--rhs must be naive, fast or auto");
}

rbk::IntegratorConfig make_config(const Options& opt) {
  rbk::IntegratorConfig cfg;
  cfg.rel_tol = opt.rel_tol;
  cfg.abs_tol = opt.abs_tol;
  cfg.rhs_path = parse_rhs(opt.rhs);
  return cfg;
}

fs::path ensure_out_dir(const Options& opt) {
  fs::path dir(opt.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw rbk::ConfigError("cannot create output directory '" + opt.out_dir +
                           "'");
  return dir;
}

void write_metadata(const fs::path& path, const Options& opt,
                    const rbk::Kernel& kernel, const rbk::InitialCondition& ic,
                    const std::vector<double>& grid,
                    const rbk::Trajectory& traj) {
  nlohmann::json meta;
  meta["kernel"] = {
      {"spec", kernel.spec_string()},
      {"growth_class", std::string(rbk::to_string(kernel.classify_growth()))},
      {"separable", kernel.separable()}};
  meta["initial_condition"] = {{"spec", ic.spec_string()}};
  double tail = ic.truncation_tail_mass(opt.n);
  if (ic.form() == rbk::InitialCondition::Form::geometric)
    meta["initial_condition"]["truncation_tail_mass"] = tail;
  meta["n"] = opt.n;
  meta["grid"] = {{"spec", opt.grid_spec},
                  {"points", grid.size()},
                  {"t_first", grid.front()},
                  {"t_last", grid.back()}};
  meta["integrator"] = {{"rel_tol", opt.rel_tol},
                        {"abs_tol", opt.abs_tol},
                        {"rhs_path_requested", opt.rhs},
                        {"rhs_path_used",
                         std::string(rbk::to_string(traj.path_used))}};
  meta["stats"] = {{"steps_accepted", traj.stats.steps_accepted},
                   {"steps_rejected", traj.stats.steps_rejected},
                   {"rhs_evaluations", traj.stats.rhs_evaluations}};
  meta["simd_lane"] =
      std::string(rbk::simd::lane_name(rbk::simd::active_lane()));
  std::ofstream out(path);
  if (!out)
    throw rbk::ConfigError("cannot open '" + path.string() + "' for writing");
  out << meta.dump(2) << "\n";
}

int cmd_simulate(const Options& opt) {
  rbk::Kernel kernel = rbk::Kernel::parse_spec(opt.kernel_spec, opt.n);
  rbk::InitialCondition ic = rbk::InitialCondition::parse_spec(opt.ic_spec);
  std::vector<double> grid = rbk::io::parse_grid_spec(opt.grid_spec);
  rbk::IntegratorConfig cfg = make_config(opt);
  fs::path dir = ensure_out_dir(opt);

  rbk::Trajectory traj = rbk::integrate(kernel, ic, opt.n, grid, cfg);

  rbk::io::write_trajectory_csv((dir / "trajectory.csv").string(), traj);
  rbk::io::write_moments_csv((dir / "moments.csv").string(), traj);
  write_metadata(dir / "metadata.json", opt, kernel, ic, grid, traj);

  std::cout << "kernel growth class: "
            << rbk::to_string(kernel.classify_growth())
            << (kernel.form() == rbk::Kernel::Form::expression
                    ? " (sampled, advisory)"
                    : "")
            << "\n"
            << "wrote " << (dir / "trajectory.csv").string() << ", "
            << (dir / "moments.csv").string() << ", "
            << (dir / "metadata.json").string() << "\n"
            << "steps accepted " << traj.stats.steps_accepted << ", rejected "
            << traj.stats.steps_rejected << ", rhs evaluations "
            << traj.stats.rhs_evaluations << "\n";
  return 0;
}

rbk::OracleReport skipped_report(const std::string& check,
                                 const std::string& why) {
  rbk::OracleReport r;
  r.check = check;
  r.skipped = true;
  r.pass = true;
  r.message = why;
  return r;
}

void annotate(rbk::OracleReport& r, const Options& opt,
              const rbk::Trajectory& traj) {
  r.context["kernel"] = opt.kernel_spec;
  r.context["ic"] = opt.ic_spec;
  r.context["n"] = std::to_string(opt.n);
  r.context["grid"] = opt.grid_spec;
  r.context["rhs_path"] = std::string(rbk::to_string(traj.path_used));
}

int cmd_verify(const Options& opt) {
  rbk::Kernel kernel = rbk::Kernel::parse_spec(opt.kernel_spec, opt.n);
  rbk::InitialCondition ic = rbk::InitialCondition::parse_spec(opt.ic_spec);
  std::vector<double> grid = rbk::io::parse_grid_spec(opt.grid_spec);
  rbk::IntegratorConfig cfg = make_config(opt);
  fs::path dir = ensure_out_dir(opt);

  if (opt.suite != "moments" && opt.suite != "support" &&
      opt.suite != "oracles" && opt.suite != "all")
    throw rbk::ConfigError("--suite must be moments, support, oracles or all");
  const bool moments = opt.suite == "moments" || opt.suite == "all";
  const bool support = opt.suite == "support" || opt.suite == "all";
  const bool oracles = opt.suite == "oracles" || opt.suite == "all";

  std::vector<rbk::OracleReport> reports;
  rbk::Trajectory traj = rbk::integrate(kernel, ic, opt.n, grid, cfg);

  if (moments) {
    for (const auto& w :
         {rbk::WeightSequence::one(), rbk::WeightSequence::identity(),
          rbk::WeightSequence::odd_indicator()}) {
      auto r = rbk::moment_residual(kernel, traj, w, cfg);
      annotate(r, opt, traj);
      reports.push_back(std::move(r));
    }
  }

  if (support) {
    // bitwise zero outside the predicted support needs the direct path
    rbk::IntegratorConfig naive_cfg = cfg;
    naive_cfg.rhs_path = rbk::RhsPath::naive;
    rbk::Trajectory naive_traj =
        rbk::integrate(kernel, ic, opt.n, grid, naive_cfg);
    auto r = rbk::support_invariance_check(naive_traj, opt.threshold);
    annotate(r, opt, naive_traj);
    reports.push_back(std::move(r));
  }

  if (oracles) {
    if (ic.form() == rbk::InitialCondition::Form::monodisperse) {
      auto r = rbk::monodisperse_exactness_check(kernel, traj, ic.index(),
                                                 ic.amplitude());
      annotate(r, opt, traj);
      reports.push_back(std::move(r));
    } else {
      reports.push_back(skipped_report("monodisperse_solution",
                                       "initial data is not monodisperse"));
    }

    if (ic.form() == rbk::InitialCondition::Form::geometric &&
        kernel.is_constant()) {
      // compare only components with a margin to the truncation edge; the
      // finite system sheds the infinite-tail gain of the edge components
      const int j_limit = std::min(20, std::max(1, opt.n - 20));
      auto r = rbk::self_similar_check(kernel, traj, ic.amplitude(),
                                       ic.decay(), j_limit);
      annotate(r, opt, traj);
      reports.push_back(std::move(r));
    } else {
      reports.push_back(skipped_report(
          "self_similar_family",
          "needs geometric initial data and a constant kernel"));
    }

    for (const char* name : {"nu_envelope", "odd_count_law"}) {
      if (!kernel.is_constant()) {
        reports.push_back(
            skipped_report(name, "holds for constant kernels only"));
        continue;
      }
      auto r = std::string(name) == "nu_envelope"
                   ? rbk::nu_envelope_check(kernel, traj)
                   : rbk::odd_count_check(kernel, traj);
      annotate(r, opt, traj);
      reports.push_back(std::move(r));
    }

    if (opt.decay_epsilon > 0.0) {
      try {
        auto r = rbk::decay_check(kernel, traj, opt.decay_epsilon);
        annotate(r, opt, traj);
        reports.push_back(std::move(r));
      } catch (const rbk::PreconditionViolated& e) {
        rbk::OracleReport r;
        r.check = "long_time_decay";
        r.pass = false;
        r.message = e.what();
        annotate(r, opt, traj);
        reports.push_back(std::move(r));
      }
    }
  }

  rbk::write_reports_file((dir / "report.json").string(), reports);

  bool all_pass = true;
  for (const auto& r : reports) {
    const char* tag = r.skipped ? "SKIP" : (r.pass ? "PASS" : "FAIL");
    std::cout << "[" << tag << "] " << r.check << ": " << r.message << "\n";
    if (!r.skipped && !r.pass) all_pass = false;
  }
  std::cout << "report written to " << (dir / "report.json").string() << "\n";
  return all_pass ? 0 : 1;
}

int cmd_scaling(const Options& opt) {
  rbk::Kernel kernel = rbk::Kernel::parse_spec(opt.kernel_spec, opt.n);
  if (!kernel.is_constant())
    throw rbk::ConfigError("scaling runs require a constant kernel");
  rbk::InitialCondition ic = rbk::InitialCondition::parse_spec(opt.ic_spec);
  std::vector<double> grid = rbk::io::parse_grid_spec(opt.grid_spec);
  rbk::IntegratorConfig cfg = make_config(opt);
  fs::path dir = ensure_out_dir(opt);

  rbk::Trajectory traj = rbk::integrate(kernel, ic, opt.n, grid, cfg);
  rbk::ScalingTable table = rbk::scaling_diagnostics(kernel, traj, opt.j_max);
  rbk::io::write_scaling_csv((dir / "scaling.csv").string(), table);
  std::cout << "wrote " << (dir / "scaling.csv").string() << "\n";
  return 0;
}

int cmd_convergence(const Options& opt) {
  rbk::Kernel kernel = rbk::Kernel::parse_spec(opt.kernel_spec, opt.n);
  rbk::InitialCondition ic = rbk::InitialCondition::parse_spec(opt.ic_spec);
  std::vector<double> grid = rbk::io::parse_grid_spec(opt.grid_spec);
  std::vector<int> sizes = rbk::io::parse_sizes(opt.sizes_spec);
  rbk::IntegratorConfig cfg = make_config(opt);
  fs::path dir = ensure_out_dir(opt);

  rbk::ConvergenceResult result =
      rbk::truncation_convergence(kernel, ic, sizes, grid, cfg);
  rbk::io::write_convergence_csv((dir / "convergence.csv").string(),
                                 result.ladder);
  for (auto [n, d] : result.ladder)
    std::cout << "D(" << n << ") = " << rbk::io::format_double(d) << "\n";
  std::cout << (result.report.pass ? "ladder nonincreasing"
                                   : "ladder increases")
            << "; wrote " << (dir / "convergence.csv").string() << "\n";
  return result.report.pass ? 0 : 1;
}

void add_common(CLI::App* cmd, Options& opt, bool needs_grid = true) {
  cmd->add_option("--kernel", opt.kernel_spec,
                  "kernel spec: const:K | product:K,beta | expr:<expression>")
      ->required();
  cmd->add_option("--ic", opt.ic_spec,
                  "initial condition: mono:p,lambda | geom:A0,alpha | "
                  "explicit:path")
      ->required();
  cmd->add_option("--n", opt.n, "truncation size")->check(CLI::PositiveNumber);
  if (needs_grid)
    cmd->add_option("--grid", opt.grid_spec,
                    "output grid: t0,t1,count[,log] or @file");
  cmd->add_option("--rel-tol", opt.rel_tol, "relative tolerance");
  cmd->add_option("--abs-tol", opt.abs_tol, "absolute tolerance");
  cmd->add_option("--rhs", opt.rhs, "rhs path: naive | fast | auto");
  cmd->add_option("--out-dir", opt.out_dir, "output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cluster-eating coagulation simulator: integrates the "
               "truncated Redner-Ben-Avraham-Kahng system and verifies its "
               "closed-form laws"};
  app.require_subcommand(1);

  Options opt;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "integrate and write trajectory/moments CSV files");
  add_common(simulate, opt);

  CLI::App* verify = app.add_subcommand(
      "verify", "run a verification suite and write a JSON report");
  add_common(verify, opt);
  verify->add_option("--suite", opt.suite,
                     "suite: moments | support | oracles | all");
  verify->add_option("--threshold", opt.threshold,
                     "support positivity threshold");
  verify->add_option("--decay-epsilon", opt.decay_epsilon,
                     "also run the long-time decay check with this bound");

  CLI::App* scaling = app.add_subcommand(
      "scaling", "write the scaling table t*nu, t*nu_odd, t*c_j");
  add_common(scaling, opt);
  scaling->add_option("--jmax", opt.j_max, "largest cluster index in table");

  CLI::App* convergence = app.add_subcommand(
      "convergence", "truncation ladder study across sizes");
  add_common(convergence, opt);
  convergence->add_option("--sizes", opt.sizes_spec,
                          "ascending truncation sizes, e.g. 32,64,128")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(opt);
    if (verify->parsed()) return cmd_verify(opt);
    if (scaling->parsed()) return cmd_scaling(opt);
    if (convergence->parsed()) return cmd_convergence(opt);
  } catch (const rbk::StepSizeUnderflow& e) {
    std::cerr << "integration failed: " << e.what() << "\n";
    return 3;
  } catch (const rbk::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
