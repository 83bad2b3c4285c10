#ifndef SQPKIT_PROBLEM_HPP
#define SQPKIT_PROBLEM_HPP

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqpkit/types.hpp"

namespace sqpkit {

enum class ConstraintKind { Equality, InequalityGeZero };

/// User evaluators fill the outputs and return true, or return false to
/// signal a failed evaluation (out of domain, solver blew up, ...).
/// Non-finite outputs are treated as failures as well.
using ObjectiveFn = std::function<bool(const Vector& x, double& f, Vector& g)>;
using ConstraintFn = std::function<bool(const Vector& x, double& c, Vector& grad)>;

struct ConstraintRow {
  ConstraintFn eval;
  ConstraintKind kind = ConstraintKind::InequalityGeZero;
};

/// User-facing model: minimize f(x) subject to the constraint rows and
/// simple bounds lower <= x <= upper (entries may be +-inf).
struct ProblemSpec {
  std::string name;
  Index n = 0;
  Vector x0;
  Vector lower;
  Vector upper;
  ObjectiveFn objective;
  std::vector<ConstraintRow> constraints;
};

class InvalidSpec : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Where a canonical row came from.
struct RowOrigin {
  enum class Source { UserConstraint, LowerBound, UpperBound };
  Source source = Source::UserConstraint;
  Index index = 0;  // user constraint index, or variable index for bound rows
};

struct EvalCounters {
  long nf = 0;  // objective values
  long ng = 0;  // objective gradients
  long nc = 0;  // constraint-vector sweeps
  long nJ = 0;  // constraint-Jacobian sweeps
  long total() const { return nf + ng + nc + nJ; }
};

/// Functions and first derivatives at a single point, in canonical row order.
struct Evaluation {
  double f = 0.0;
  Vector g;  // length n
  Vector c;  // length m_total
  Matrix J;  // m_total x n, dense
  Vector x;
};

struct EvaluationFailure {
  /// -1 means the objective failed; otherwise the user constraint index.
  Index failed_constraint = -1;
  bool objective_failed() const { return failed_constraint < 0; }
};

struct EvalOutcome {
  std::optional<Evaluation> value;
  EvaluationFailure failure;
  bool ok() const { return value.has_value(); }
};

/// Canonical all-inequality form: equality rows first, then user
/// inequalities, then finite bounds appended as rows x_j - l_j >= 0 and
/// u_j - x_j >= 0. Equality rows keep their flag; the evaluation counters
/// live here and are the only mutable state.
class StandardProblem {
 public:
  StandardProblem(ProblemSpec spec, std::vector<Index> row_order,
                  std::vector<RowOrigin> origins, Index m_eq, Index m_ineq);

  Index n() const { return spec_.n; }
  Index m_eq() const { return m_eq_; }
  Index m_ineq() const { return m_ineq_; }
  Index num_bound_rows() const {
    return static_cast<Index>(origins_.size()) - m_eq_ - m_ineq_;
  }
  Index m_total() const { return static_cast<Index>(origins_.size()); }

  const std::string& name() const { return spec_.name; }
  const Vector& x0() const { return spec_.x0; }
  const Vector& lower() const { return spec_.lower; }
  const Vector& upper() const { return spec_.upper; }
  Index num_user_constraints() const {
    return static_cast<Index>(spec_.constraints.size());
  }

  bool is_equality_row(Index i) const { return i < m_eq_; }
  std::vector<bool> equality_flags() const;
  const RowOrigin& origin(Index i) const { return origins_.at(i); }

  /// Evaluate f, g, c, J at x. Counters advance for every attempted stage.
  EvalOutcome evaluate(const Vector& x);

  const EvalCounters& counters() const { return counters_; }

 private:
  ProblemSpec spec_;
  std::vector<Index> row_order_;  // canonical row -> user constraint index
  std::vector<RowOrigin> origins_;
  Index m_eq_ = 0;
  Index m_ineq_ = 0;
  EvalCounters counters_;
};

/// Validates the problem data and builds the canonical row ordering.
/// Throws InvalidSpec on lower_j > upper_j or dimension mismatches.
StandardProblem canonicalize(ProblemSpec spec);

/// Componentwise clamp of x into [lower, upper].
Vector project_to_bounds(const Vector& x, const Vector& lower,
                         const Vector& upper);

struct UserMultipliers {
  Vector constraints;   // one per user constraint row
  Vector bound_lower;   // per variable; 0 where the bound is infinite
  Vector bound_upper;
};

/// Maps canonical-row multipliers back to the user's constraints; bound
/// multipliers are reported separately. Accepts either the canonical length
/// m_total or the elastic-expanded length m_total + m_eq, in which case each
/// equality row is a (plus, minus) pair recombined as lambda+ - lambda-.
UserMultipliers multipliers_to_user(const Vector& lambda_std,
                                    const StandardProblem& prob);

}  // namespace sqpkit

#endif
