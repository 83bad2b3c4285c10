#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sqpkit/bench.hpp"
#include "sqpkit/driver.hpp"

namespace {

int cmd_solve(const std::string& name, const std::string& preset_name,
              double opt_tol, double feas_tol, int maxiter,
              const std::string& history_path, const std::string& out_path) {
  sqpkit::SolverOptions opts = preset_name == "paper-benchmark"
                                   ? sqpkit::SolverOptions::paper_benchmark()
                                   : sqpkit::SolverOptions{};
  if (opt_tol > 0) opts.opt_tol = opt_tol;
  if (feas_tol > 0) opts.feas_tol = feas_tol;
  if (maxiter > 0) opts.maxiter = maxiter;
  opts.record_history = !history_path.empty();

  const sqpkit::RegistryEntry* entry = sqpkit::find_problem(name);
  if (!entry) {
    std::cerr << "error: unknown problem '" << name << "'\n";
    std::cerr << "known problems:\n";
    for (const auto& e : sqpkit::builtin_registry()) {
      std::cerr << "  " << e.name << "\n";
    }
    return 2;
  }

  const sqpkit::SolveReport report = sqpkit::solve(entry->make(), opts);

  std::cout << "problem:        " << name << "\n";
  std::cout << "status:         " << sqpkit::to_string(report.status) << " ("
            << report.message << ")\n";
  std::cout << "f:              " << report.f_final << "\n";
  std::cout << "x:             ";
  for (sqpkit::Index i = 0; i < report.x_final.size() && i < 8; ++i) {
    std::cout << ' ' << report.x_final(i);
  }
  if (report.x_final.size() > 8) std::cout << " ...";
  std::cout << "\n";
  std::cout << "max violation:  " << report.kkt.max_violation << "\n";
  std::cout << "stationarity:   " << report.kkt.stationarity << "\n";
  std::cout << "majors/minors:  " << report.majors << "/" << report.minors
            << "\n";
  std::cout << "evals:          nf=" << report.counts.nf
            << " ng=" << report.counts.ng << " nc=" << report.counts.nc
            << " nJ=" << report.counts.nJ << "\n";
  std::cout << "wall time:      " << report.wall_time << " s\n";

  if (!history_path.empty()) {
    sqpkit::write_history_csv(history_path, report.history);
  }
  if (!out_path.empty()) {
    sqpkit::RunRecord rec;
    rec.problem = name;
    rec.solver_tag = preset_name;
    rec.success = report.status == sqpkit::SolveStatus::Optimal;
    rec.wall_time = report.wall_time;
    rec.total_fevals = report.counts.total();
    rec.majors = report.majors;
    rec.minors = report.minors;
    rec.f_final = report.f_final;
    rec.max_violation = report.kkt.max_violation;
    rec.stationarity = report.kkt.stationarity;
    rec.status = sqpkit::to_string(report.status);
    sqpkit::write_jsonl(out_path, {rec});
  }
  return report.status == sqpkit::SolveStatus::Optimal ? 0 : 1;
}

int cmd_bench(const std::string& suite, const std::string& tag,
              const std::string& out_path) {
  if (suite != "builtin") {
    std::cerr << "error: unknown suite '" << suite << "'\n";
    return 2;
  }
  std::vector<sqpkit::RunRecord> records;
  for (const auto& entry : sqpkit::builtin_registry()) {
    records.push_back(
        sqpkit::run_problem(entry.name, sqpkit::SolverOptions{}, tag));
    const auto& rec = records.back();
    std::cout << rec.problem << ": " << rec.status << " (f=" << rec.f_final
              << ", fevals=" << rec.total_fevals << ")\n";
  }
  sqpkit::write_jsonl(out_path, records);
  std::cout << "wrote " << records.size() << " records to " << out_path
            << "\n";
  return 0;
}

int cmd_profile(const std::vector<std::string>& inputs,
                const std::string& measure, double beta, int grid,
                const std::string& out_path) {
  std::vector<sqpkit::RunRecord> records;
  for (const auto& path : inputs) {
    auto recs = sqpkit::read_jsonl(path);
    records.insert(records.end(), recs.begin(), recs.end());
  }
  const sqpkit::ProfileTable table =
      sqpkit::performance_ratios(records, measure, beta);
  const sqpkit::ProfileCurves curves = sqpkit::profile_curve(table, grid);
  sqpkit::write_profile_csv(out_path, curves);
  std::cout << "profiled " << table.problems.size() << " problems x "
            << table.solvers.size() << " solvers (r_max=" << table.r_max
            << ") -> " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SQP solver and benchmarking tool"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "solve a registry problem");
  std::string problem, preset = "default", history_path, solve_out;
  double opt_tol = 0, feas_tol = 0;
  int maxiter = 0;
  solve->add_option("--problem", problem, "registry problem name")
      ->required();
  solve->add_option("--opt-tol", opt_tol, "optimality tolerance");
  solve->add_option("--feas-tol", feas_tol, "feasibility tolerance");
  solve->add_option("--maxiter", maxiter, "major iteration limit");
  solve->add_option("--preset", preset, "option preset")
      ->check(CLI::IsMember({"default", "paper-benchmark"}));
  solve->add_option("--history", history_path, "per-iteration CSV output");
  solve->add_option("--out", solve_out, "JSON run record output");

  auto* bench = app.add_subcommand("bench", "run the builtin suite");
  std::string suite = "builtin", tag = "default",
              bench_out = "results.jsonl";
  bench->add_option("--suite", suite, "problem suite");
  bench->add_option("--tag", tag, "solver configuration label");
  bench->add_option("--out", bench_out, "JSONL results path");

  auto* profile = app.add_subcommand("profile", "compute performance profiles");
  std::vector<std::string> inputs;
  std::string measure, profile_out;
  double beta = 2.0;
  int grid = 101;
  profile->add_option("--inputs", inputs, "JSONL results files")
      ->required()
      ->expected(-1);
  profile->add_option("--measure", measure, "cost measure")
      ->required()
      ->check(CLI::IsMember({"time", "fevals"}));
  profile->add_option("--beta", beta, "failure ratio multiplier");
  profile->add_option("--grid", grid, "tau grid points");
  profile->add_option("--out", profile_out, "CSV output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (solve->parsed()) {
      return cmd_solve(problem, preset, opt_tol, feas_tol, maxiter,
                       history_path, solve_out);
    }
    if (bench->parsed()) {
      return cmd_bench(suite, tag, bench_out);
    }
    return cmd_profile(inputs, measure, beta, grid, profile_out);
  } catch (const sqpkit::UnknownProblem& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
