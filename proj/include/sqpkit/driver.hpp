#ifndef SQPKIT_DRIVER_HPP
#define SQPKIT_DRIVER_HPP

#include <optional>
#include <string>
#include <vector>

#include "sqpkit/elastic.hpp"
#include "sqpkit/hessian.hpp"
#include "sqpkit/merit.hpp"
#include "sqpkit/problem.hpp"

namespace sqpkit {

struct SolverOptions {
  int maxiter = 1000;
  double opt_tol = 1e-6;
  double feas_tol = 1e-6;
  double beta_min = 1e-10;
  double gamma_init = 1e6;
  double gamma_max = 1e12;
  int gamma_persist = 25;
  double wolfe_c1 = 1e-4;
  double wolfe_c2 = 0.9;
  bool record_history = false;

  /// Settings used for the cross-solver benchmark runs.
  static SolverOptions paper_benchmark() {
    SolverOptions opts;
    opts.maxiter = 250;
    opts.opt_tol = 1.22e-4;
    opts.feas_tol = 2.00e-6;
    return opts;
  }
};

enum class SolveStatus {
  Optimal,
  MaxIterations,
  Infeasible,
  UndefinedRegion,
  InitialEvaluationFailed,
  InternalError,
};

std::string to_string(SolveStatus status);

struct KktMeasures {
  double max_violation = 0.0;
  double stationarity = 0.0;
  double max_complementarity = 0.0;
  double min_multiplier = 0.0;
};

struct ConvergenceStatus {
  bool converged = false;
  KktMeasures kkt;
};

/// Full state of one major iteration.
struct IterateState {
  int k = 0;
  Vector x;
  MeritContext merit;    // lambda, s, rho, delta_rho, trend
  HessianApprox hessian;
  ElasticState elastic;
  Evaluation eval;
  long minor_total = 0;
};

struct HistoryRow {
  int k = 0;
  double f = 0.0;
  double max_violation = 0.0;
  double stationarity = 0.0;
  double alpha = 0.0;
  double rho_norm = 0.0;
  double gamma = 0.0;
  long minors = 0;
};

/// Snapshot of one line search, kept when record_history is on so accepted
/// steps can be re-verified from scratch.
struct WolfeStepLog {
  Vector x, p, q, r, lambda, s, rho;
  double alpha = 0.0;
  double phi0 = 0.0;
  double dphi0 = 0.0;
  bool wolfe_satisfied = false;
  bool at_bound = false;
};

struct SolveReport {
  SolveStatus status = SolveStatus::MaxIterations;
  Vector x_final;
  Vector lambda_canonical;
  UserMultipliers lambda_final;
  double f_final = 0.0;
  KktMeasures kkt;
  int majors = 0;
  long minors = 0;
  EvalCounters counts;
  double wall_time = 0.0;
  std::string message;
  std::vector<HistoryRow> history;
  std::vector<WolfeStepLog> wolfe_log;
};

/// Bound-projected start with fallback to the user's x0 when evaluations
/// fail at the projected point; nullopt when both points fail.
std::optional<IterateState> initialize(StandardProblem& prob,
                                       const SolverOptions& opts);

/// Scaled KKT tests: tau_f = feas_tol (1 + ||x||_inf),
/// tau_o = opt_tol (1 + ||lambda||_inf). Equality rows are tested two-sided
/// and their multipliers are exempt from the sign test.
ConvergenceStatus check_convergence(const Evaluation& eval, const Vector& x,
                                    const Vector& lambda,
                                    const StandardProblem& prob,
                                    const SolverOptions& opts);

SolveReport solve(StandardProblem& prob, const SolverOptions& opts = {});
SolveReport solve(const ProblemSpec& spec, const SolverOptions& opts = {});

}  // namespace sqpkit

#endif
