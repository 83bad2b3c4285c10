#include <algorithm>
#include <cmath>
#include <map>

#include "sqpkit/bench.hpp"

namespace sqpkit {

RunRecord run_problem(std::string_view name, const SolverOptions& preset,
                      std::string_view solver_tag) {
  const RegistryEntry* entry = find_problem(name);
  if (!entry) {
    throw UnknownProblem("unknown problem: " + std::string(name));
  }
  const SolveReport report = solve(entry->make(), preset);

  RunRecord rec;
  rec.problem = entry->name;
  rec.solver_tag = std::string(solver_tag);
  rec.success = report.status == SolveStatus::Optimal;
  rec.wall_time = report.wall_time;
  rec.total_fevals = report.counts.total();
  rec.majors = report.majors;
  rec.minors = report.minors;
  rec.f_final = report.f_final;
  rec.max_violation = report.kkt.max_violation;
  rec.stationarity = report.kkt.stationarity;
  rec.status = to_string(report.status);
  return rec;
}

ProfileTable performance_ratios(const std::vector<RunRecord>& records,
                                std::string_view measure, double beta) {
  if (beta <= 1.0) throw std::invalid_argument("beta must exceed 1");
  if (measure != "time" && measure != "fevals") {
    throw std::invalid_argument("measure must be 'time' or 'fevals'");
  }

  std::vector<std::string> solvers;
  std::vector<std::string> problems;
  for (const auto& rec : records) {
    if (std::find(solvers.begin(), solvers.end(), rec.solver_tag) ==
        solvers.end()) {
      solvers.push_back(rec.solver_tag);
    }
    if (std::find(problems.begin(), problems.end(), rec.problem) ==
        problems.end()) {
      problems.push_back(rec.problem);
    }
  }

  std::map<std::pair<std::string, std::string>, const RunRecord*> by_pair;
  for (const auto& rec : records) {
    auto key = std::make_pair(rec.problem, rec.solver_tag);
    if (by_pair.count(key)) {
      throw std::invalid_argument("duplicate record for problem '" +
                                  rec.problem + "' solver '" +
                                  rec.solver_tag + "'");
    }
    by_pair[key] = &rec;
  }

  const auto cost = [&](const RunRecord& rec) {
    if (measure == "time") return std::max(rec.wall_time, 1e-12);
    return static_cast<double>(rec.total_fevals);
  };

  // keep only problems some solver finished; no denominator exists otherwise
  std::vector<std::string> kept;
  for (const auto& prob : problems) {
    bool any_success = false;
    for (const auto& solver : solvers) {
      auto it = by_pair.find({prob, solver});
      if (it == by_pair.end()) {
        throw std::invalid_argument("missing record for problem '" + prob +
                                    "' solver '" + solver + "'");
      }
      any_success = any_success || it->second->success;
    }
    if (any_success) kept.push_back(prob);
  }
  if (kept.empty()) throw EmptyTable("every run failed on every problem");

  ProfileTable table;
  table.solvers = solvers;
  table.problems = kept;
  table.measure = std::string(measure);
  table.beta = beta;

  const Index n_p = static_cast<Index>(kept.size());
  const Index n_s = static_cast<Index>(solvers.size());
  table.ratios.resize(n_p, n_s);

  double r_max = 1.0;
  for (Index p = 0; p < n_p; ++p) {
    double best = kInf;
    for (Index s = 0; s < n_s; ++s) {
      const RunRecord* rec =
          by_pair.at({kept[static_cast<size_t>(p)],
                      solvers[static_cast<size_t>(s)]});
      if (rec->success) best = std::min(best, cost(*rec));
    }
    for (Index s = 0; s < n_s; ++s) {
      const RunRecord* rec =
          by_pair.at({kept[static_cast<size_t>(p)],
                      solvers[static_cast<size_t>(s)]});
      if (rec->success) {
        table.ratios(p, s) = cost(*rec) / best;
        r_max = std::max(r_max, table.ratios(p, s));
      } else {
        table.ratios(p, s) = -1.0;  // placeholder until r_max is known
      }
    }
  }
  table.r_max = r_max;
  for (Index p = 0; p < n_p; ++p) {
    for (Index s = 0; s < n_s; ++s) {
      if (table.ratios(p, s) < 0.0) table.ratios(p, s) = beta * r_max;
    }
  }
  return table;
}

ProfileCurves profile_curve(const ProfileTable& table, int grid_size) {
  if (grid_size < 2) throw std::invalid_argument("grid_size must be >= 2");

  ProfileCurves curves;
  curves.solvers = table.solvers;
  const double tau_max = std::log2(table.r_max);
  curves.tau.resize(static_cast<size_t>(grid_size));
  for (int i = 0; i < grid_size; ++i) {
    curves.tau[static_cast<size_t>(i)] =
        tau_max * static_cast<double>(i) / static_cast<double>(grid_size - 1);
  }
  // the right endpoint must be exact so the curve ends at the success rate
  curves.tau.back() = tau_max;

  const Index n_p = table.ratios.rows();
  const Index n_s = table.ratios.cols();
  curves.P.setZero(grid_size, n_s);
  for (Index s = 0; s < n_s; ++s) {
    for (int i = 0; i < grid_size; ++i) {
      Index count = 0;
      for (Index p = 0; p < n_p; ++p) {
        if (std::log2(table.ratios(p, s)) <=
            curves.tau[static_cast<size_t>(i)]) {
          ++count;
        }
      }
      curves.P(i, s) =
          static_cast<double>(count) / static_cast<double>(n_p);
    }
  }
  return curves;
}

}  // namespace sqpkit
