#ifndef SQPKIT_BENCH_HPP
#define SQPKIT_BENCH_HPP

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sqpkit/driver.hpp"
#include "sqpkit/problem.hpp"

namespace sqpkit {

struct ReferenceSolution {
  Vector x_star;
  double f_star = 0.0;
};

struct RegistryEntry {
  std::string name;
  std::function<ProblemSpec()> make;
  std::optional<ReferenceSolution> reference;
};

/// Built-in desk-scale test problems.
const std::vector<RegistryEntry>& builtin_registry();
const RegistryEntry* find_problem(std::string_view name);

class UnknownProblem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyTable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One solver run on one problem, as serialized to results files.
struct RunRecord {
  std::string problem;
  std::string solver_tag;
  bool success = false;
  double wall_time = 0.0;
  long total_fevals = 0;
  long majors = 0;
  long minors = 0;
  double f_final = 0.0;
  double max_violation = 0.0;
  double stationarity = 0.0;
  std::string status;
};

RunRecord run_problem(std::string_view name, const SolverOptions& preset,
                      std::string_view solver_tag);

/// Per-problem performance ratios r_ps; failed runs carry beta * r_max.
struct ProfileTable {
  std::vector<std::string> solvers;
  std::vector<std::string> problems;  // problems with at least one success
  std::string measure;                // "time" or "fevals"
  Matrix ratios;                      // n_p x n_s
  double r_max = 1.0;
  double beta = 2.0;
};

ProfileTable performance_ratios(const std::vector<RunRecord>& records,
                                std::string_view measure, double beta);

/// P_s(tau) sampled on a uniform grid over [0, log2(r_max)].
struct ProfileCurves {
  std::vector<std::string> solvers;
  std::vector<double> tau;
  Matrix P;  // grid x n_s
};

ProfileCurves profile_curve(const ProfileTable& table, int grid_size);

// --- serialization -------------------------------------------------------

std::string run_record_to_json(const RunRecord& rec);
RunRecord run_record_from_json(const std::string& line);

void write_jsonl(const std::string& path, const std::vector<RunRecord>& recs);
std::vector<RunRecord> read_jsonl(const std::string& path);

void write_profile_csv(const std::string& path, const ProfileCurves& curves);
void write_history_csv(const std::string& path,
                       const std::vector<HistoryRow>& rows);

}  // namespace sqpkit

#endif
