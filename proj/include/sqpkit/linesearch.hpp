#ifndef SQPKIT_LINESEARCH_HPP
#define SQPKIT_LINESEARCH_HPP

#include <functional>
#include <optional>

#include "sqpkit/merit.hpp"
#include "sqpkit/problem.hpp"

namespace sqpkit {

enum class LineSearchStatus { WolfeSatisfied, FallbackAccepted, Failed };

struct LineSearchResult {
  double alpha = 0.0;
  LineSearchStatus status = LineSearchStatus::Failed;
  int evals = 0;
  /// accepted step sits on alpha_max with the curvature test waived
  bool at_bound = false;
  std::optional<Evaluation> last_eval;
};

/// One sample of the merit along the ray. `eval` is absent for synthetic
/// rays used in tests.
struct RaySample {
  double phi = 0.0;
  double dphi = 0.0;
  std::optional<Evaluation> eval;
};

/// alpha -> (phi, phi') or nullopt on evaluation failure.
using RayFn = std::function<std::optional<RaySample>(double)>;

/// Augmented-Lagrangian merit restricted to x + alpha p with
/// lambda + alpha q and s + alpha r; phi and phi' come from one Evaluation.
class MeritRay {
 public:
  MeritRay(StandardProblem& prob, Vector x, SearchRay ray, Vector lambda,
           Vector s, Vector rho);

  std::optional<RaySample> operator()(double alpha);
  int evals() const { return evals_; }

 private:
  StandardProblem& prob_;
  Vector x_;
  SearchRay ray_;
  Vector lambda_, s_, rho_;
  int evals_ = 0;
};

struct BacktrackResult {
  bool ok = false;
  double beta = 0.0;
  std::optional<Evaluation> eval;  // at x + beta p when ok
  int evals = 0;
};

/// Halves beta from 1 until evaluation at x + beta p succeeds; not ok when
/// beta falls below beta_min.
BacktrackResult backtrack_to_defined(StandardProblem& prob, const Vector& x,
                                     const Vector& p, double beta_min = 1e-10);

/// Strong Wolfe search with bracketing and safeguarded cubic interpolation.
/// Requires dphi0 < 0. A bracket collapsing onto alpha_max with sufficient
/// decrease holding is accepted with at_bound set.
LineSearchResult strong_wolfe(const RayFn& ray, double phi0, double dphi0,
                              double alpha_init, double alpha_max,
                              double c1 = 1e-4, double c2 = 0.9,
                              int budget = 25);

/// Backtracking Armijo on the l1 merit f + mu * total violation with
/// mu = 2 ||lambda_hat||_inf + 1. Accepts the first trial with
/// phi(alpha) <= phi(0) - 1e-4 alpha ||p||^2, else the best trial seen.
/// eval_at_x supplies phi(0) without a fresh evaluation.
LineSearchResult l1_fallback(StandardProblem& prob, const Evaluation& eval_at_x,
                             const Vector& p, const Vector& lambda_hat,
                             double alpha_init, int max_trials = 20);

}  // namespace sqpkit

#endif
