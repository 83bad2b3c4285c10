#include "sqpkit/problem.hpp"

#include <cmath>
#include <utility>

namespace sqpkit {

namespace {

bool finite(double v) { return std::isfinite(v); }

bool all_finite(const Vector& v) { return v.allFinite(); }

}  // namespace

StandardProblem::StandardProblem(ProblemSpec spec, std::vector<Index> row_order,
                                 std::vector<RowOrigin> origins, Index m_eq,
                                 Index m_ineq)
    : spec_(std::move(spec)),
      row_order_(std::move(row_order)),
      origins_(std::move(origins)),
      m_eq_(m_eq),
      m_ineq_(m_ineq) {}

std::vector<bool> StandardProblem::equality_flags() const {
  std::vector<bool> flags(static_cast<size_t>(m_total()), false);
  for (Index i = 0; i < m_eq_; ++i) flags[static_cast<size_t>(i)] = true;
  return flags;
}

EvalOutcome StandardProblem::evaluate(const Vector& x) {
  EvalOutcome out;
  if (x.size() != spec_.n) {
    throw std::invalid_argument("evaluate: point has wrong dimension");
  }

  Evaluation ev;
  ev.x = x;
  ev.g.resize(spec_.n);
  ev.c.resize(m_total());
  ev.J.setZero(m_total(), spec_.n);

  ++counters_.nf;
  ++counters_.ng;
  if (!spec_.objective(x, ev.f, ev.g) || !finite(ev.f) || !all_finite(ev.g)) {
    out.failure.failed_constraint = -1;
    return out;
  }

  // one constraint sweep per call, even when the sweep is empty
  const Index m_user = m_eq_ + m_ineq_;
  ++counters_.nc;
  ++counters_.nJ;
  Vector grad(spec_.n);
  for (Index i = 0; i < m_user; ++i) {
    const Index user = row_order_[static_cast<size_t>(i)];
    double ci = 0.0;
    grad.setZero();
    if (!spec_.constraints[static_cast<size_t>(user)].eval(x, ci, grad) ||
        !finite(ci) || !all_finite(grad)) {
      out.failure.failed_constraint = user;
      return out;
    }
    if (grad.size() != spec_.n) {
      throw std::invalid_argument("constraint gradient has wrong dimension");
    }
    ev.c(i) = ci;
    ev.J.row(i) = grad.transpose();
  }

  // bound rows are exact by construction
  for (Index i = m_user; i < m_total(); ++i) {
    const RowOrigin& ro = origins_[static_cast<size_t>(i)];
    const Index j = ro.index;
    if (ro.source == RowOrigin::Source::LowerBound) {
      ev.c(i) = x(j) - spec_.lower(j);
      ev.J(i, j) = 1.0;
    } else {
      ev.c(i) = spec_.upper(j) - x(j);
      ev.J(i, j) = -1.0;
    }
  }

  out.value = std::move(ev);
  return out;
}

StandardProblem canonicalize(ProblemSpec spec) {
  if (spec.n <= 0) throw InvalidSpec("canonicalize: n must be positive");
  if (spec.x0.size() != spec.n) {
    throw InvalidSpec("canonicalize: x0 has wrong length");
  }
  if (spec.lower.size() == 0) spec.lower = Vector::Constant(spec.n, -kInf);
  if (spec.upper.size() == 0) spec.upper = Vector::Constant(spec.n, kInf);
  if (spec.lower.size() != spec.n || spec.upper.size() != spec.n) {
    throw InvalidSpec("canonicalize: bound vectors have wrong length");
  }
  for (Index j = 0; j < spec.n; ++j) {
    if (spec.lower(j) > spec.upper(j)) {
      throw InvalidSpec("canonicalize: lower bound exceeds upper bound");
    }
  }
  if (!spec.objective) throw InvalidSpec("canonicalize: missing objective");

  std::vector<Index> row_order;
  std::vector<RowOrigin> origins;
  Index m_eq = 0;
  Index m_ineq = 0;

  const Index m_user = static_cast<Index>(spec.constraints.size());
  for (Index u = 0; u < m_user; ++u) {
    if (spec.constraints[static_cast<size_t>(u)].kind ==
        ConstraintKind::Equality) {
      row_order.push_back(u);
      origins.push_back({RowOrigin::Source::UserConstraint, u});
      ++m_eq;
    }
  }
  for (Index u = 0; u < m_user; ++u) {
    if (spec.constraints[static_cast<size_t>(u)].kind ==
        ConstraintKind::InequalityGeZero) {
      row_order.push_back(u);
      origins.push_back({RowOrigin::Source::UserConstraint, u});
      ++m_ineq;
    }
  }
  for (Index j = 0; j < spec.n; ++j) {
    if (std::isfinite(spec.lower(j))) {
      origins.push_back({RowOrigin::Source::LowerBound, j});
    }
    if (std::isfinite(spec.upper(j))) {
      origins.push_back({RowOrigin::Source::UpperBound, j});
    }
  }

  return StandardProblem(std::move(spec), std::move(row_order),
                         std::move(origins), m_eq, m_ineq);
}

Vector project_to_bounds(const Vector& x, const Vector& lower,
                         const Vector& upper) {
  Vector out = x;
  for (Index j = 0; j < x.size(); ++j) {
    out(j) = std::min(upper(j), std::max(lower(j), x(j)));
  }
  return out;
}

UserMultipliers multipliers_to_user(const Vector& lambda_std,
                                    const StandardProblem& prob) {
  const Index m_total = prob.m_total();
  const Index m_eq = prob.m_eq();
  const Index expanded = m_total + m_eq;

  Vector canonical;
  if (lambda_std.size() == m_total) {
    canonical = lambda_std;
  } else if (lambda_std.size() == expanded) {
    // elastic expansion: each equality row i occupies the adjacent pair
    // (plus, minus); recombine as lambda = lambda+ - lambda-.
    canonical.resize(m_total);
    Index src = 0;
    for (Index i = 0; i < m_total; ++i) {
      if (prob.is_equality_row(i)) {
        canonical(i) = lambda_std(src) - lambda_std(src + 1);
        src += 2;
      } else {
        canonical(i) = lambda_std(src);
        src += 1;
      }
    }
  } else {
    throw std::invalid_argument("multipliers_to_user: bad multiplier length");
  }

  UserMultipliers out;
  out.constraints = Vector::Zero(prob.num_user_constraints());
  out.bound_lower = Vector::Zero(prob.n());
  out.bound_upper = Vector::Zero(prob.n());
  for (Index i = 0; i < m_total; ++i) {
    const RowOrigin& ro = prob.origin(i);
    switch (ro.source) {
      case RowOrigin::Source::UserConstraint:
        out.constraints(ro.index) = canonical(i);
        break;
      case RowOrigin::Source::LowerBound:
        out.bound_lower(ro.index) = canonical(i);
        break;
      case RowOrigin::Source::UpperBound:
        out.bound_upper(ro.index) = canonical(i);
        break;
    }
  }
  return out;
}

}  // namespace sqpkit
