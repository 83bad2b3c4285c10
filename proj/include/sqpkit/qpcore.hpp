#ifndef SQPKIT_QPCORE_HPP
#define SQPKIT_QPCORE_HPP

#include <vector>

#include "sqpkit/types.hpp"

namespace sqpkit {

/// Strictly convex QP:
///   minimize    0.5 p'Hp + g0'p
///   subject to  a_i'p  = b_i   for i < n_eq
///               a_i'p >= b_i   otherwise,
/// with a_i the rows of A.
struct QPData {
  Matrix H;
  Vector g0;
  Matrix A;  // m x n
  Vector b;  // length m
  Index n_eq = 0;
};

enum class QPStatus { Optimal, Infeasible, NotPositiveDefinite, MaxMinorIterations };

struct QPSolution {
  Vector p;
  Vector lambda;               // length m; zero on inactive rows
  std::vector<Index> active;   // sorted row indices active at p
  int iterations = 0;
  QPStatus status = QPStatus::Optimal;
  /// Dual objective after each minor step; nondecreasing for this method.
  std::vector<double> objective_trace;
};

/// Dual active-set solve starting from the unconstrained minimizer.
/// Equality rows are activated first and never leave the active set.
QPSolution solve_qp(const QPData& data);

/// Max KKT residuals of a claimed-optimal solution. Test harness only;
/// the SQP driver never calls this.
struct KktResiduals {
  double stationarity = 0.0;     // ||Hp + g0 - A'lambda||_inf
  double feasibility = 0.0;      // worst constraint violation
  double complementarity = 0.0;  // max |lambda_i (a_i'p - b_i)| over inequalities
  double dual_negativity = 0.0;  // max(0, -min inequality multiplier)
  double max_all() const;
};

KktResiduals verify_qp_kkt(const QPData& data, const QPSolution& sol);

}  // namespace sqpkit

#endif
