#include "sqpkit/qpcore.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

// Dual active-set method of Goldfarb and Idnani for strictly convex QPs,
// extended with an equality block that is activated first and never dropped.
// The implementation maintains H = LL' (Cholesky) and an orthogonal
// factorization of the active-constraint normals,
//   L^{-1} N = Q [R; 0],   J = L^{-T} Q,
// updated by Givens rotations on single constraint adds and drops. Columns
// iq..n-1 of J span the H-conjugate complement of the active normals.

namespace sqpkit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Applies the Givens rotation built from (a, b) so that the second entry
// becomes zero; returns the signed norm placed in the first entry.
struct Givens {
  double cc, ss, xny, h;
};

Givens make_givens(double a, double b) {
  Givens g;
  g.h = std::hypot(a, b);
  if (g.h == 0.0) {
    g.cc = 1.0;
    g.ss = 0.0;
    g.xny = 0.0;
    return g;
  }
  g.cc = a / g.h;
  g.ss = b / g.h;
  if (g.cc < 0.0) {
    g.cc = -g.cc;
    g.ss = -g.ss;
    g.h = -g.h;
  }
  g.xny = g.ss / (1.0 + g.cc);
  return g;
}

class DualActiveSet {
 public:
  explicit DualActiveSet(const QPData& data)
      : data_(data),
        n_(data.H.rows()),
        m_(data.A.rows()),
        n_eq_(data.n_eq),
        J_(n_, n_),
        R_(Matrix::Zero(n_, n_)),
        d_(n_),
        z_(n_),
        r_(n_),
        iter_cap_(static_cast<int>(50 * (m_ + n_))) {}

  QPSolution run() {
    QPSolution sol;
    Eigen::LLT<Matrix> llt(data_.H);
    if (llt.info() != Eigen::Success) {
      sol.status = QPStatus::NotPositiveDefinite;
      return sol;
    }

    // unconstrained minimizer and J = L^{-T}
    p_ = llt.solve(-data_.g0);
    f_ = 0.5 * data_.g0.dot(p_);
    J_.setIdentity();
    llt.matrixU().solveInPlace(J_);
    sol.objective_trace.push_back(f_);

    if (!activate_equalities(sol)) return finish(sol);
    inequality_loop(sol);
    return finish(sol);
  }

 private:
  // d = J' a,  z = J_2 d_2,  r = R^{-1} d_1 for the candidate normal a.
  void decompose_normal(const Vector& a) {
    d_.noalias() = J_.transpose() * a;
    z_.setZero();
    if (iq_ < n_) {
      z_.noalias() = J_.rightCols(n_ - iq_) * d_.tail(n_ - iq_);
    }
    if (iq_ > 0) {
      r_.head(iq_) = R_.topLeftCorner(iq_, iq_)
                         .triangularView<Eigen::Upper>()
                         .solve(d_.head(iq_));
    }
  }

  bool step_direction_nonzero() const {
    double dmax = 0.0;
    for (Index k = 0; k < n_; ++k) dmax = std::max(dmax, std::abs(d_(k)));
    double zmax = 0.0;
    for (Index k = iq_; k < n_; ++k) zmax = std::max(zmax, std::abs(d_(k)));
    return zmax > 1e-12 * std::max(1.0, dmax);
  }

  // Rotates d so its tail vanishes and appends it as the new R column.
  // Fails when the new normal is dependent on the active ones.
  bool add_active(Index row) {
    if (iq_ >= n_) return false;  // active set already spans R^n
    for (Index j = n_ - 1; j >= iq_ + 1; --j) {
      Givens g = make_givens(d_(j - 1), d_(j));
      if (g.h == 0.0) continue;
      d_(j) = 0.0;
      d_(j - 1) = g.h;
      for (Index k = 0; k < n_; ++k) {
        const double t1 = J_(k, j - 1);
        const double t2 = J_(k, j);
        J_(k, j - 1) = t1 * g.cc + t2 * g.ss;
        J_(k, j) = g.xny * (t1 + J_(k, j - 1)) - t2;
      }
    }
    ++iq_;
    R_.col(iq_ - 1).head(iq_) = d_.head(iq_);
    if (std::abs(d_(iq_ - 1)) <= 100.0 * kEps * r_norm_) {
      --iq_;
      return false;
    }
    r_norm_ = std::max(r_norm_, std::abs(d_(iq_ - 1)));
    active_.push_back(row);
    return true;
  }

  // Removes active position pos (inequality only) and re-triangularizes.
  void drop_active(Index pos) {
    for (Index i = pos; i + 1 < iq_; ++i) {
      u_(i) = u_(i + 1);
      active_[static_cast<size_t>(i)] = active_[static_cast<size_t>(i + 1)];
      R_.col(i) = R_.col(i + 1);
    }
    active_.pop_back();
    --iq_;
    R_.col(iq_).setZero();
    for (Index j = pos; j < iq_; ++j) {
      Givens g = make_givens(R_(j, j), R_(j + 1, j));
      if (g.h == 0.0) continue;
      R_(j, j) = g.h;
      R_(j + 1, j) = 0.0;
      for (Index k = j + 1; k < iq_; ++k) {
        const double t1 = R_(j, k);
        const double t2 = R_(j + 1, k);
        R_(j, k) = t1 * g.cc + t2 * g.ss;
        R_(j + 1, k) = g.xny * (t1 + R_(j, k)) - t2;
      }
      for (Index k = 0; k < n_; ++k) {
        const double t1 = J_(k, j);
        const double t2 = J_(k, j + 1);
        J_(k, j) = t1 * g.cc + t2 * g.ss;
        J_(k, j + 1) = g.xny * (t1 + J_(k, j)) - t2;
      }
    }
  }

  bool activate_equalities(QPSolution& sol) {
    u_ = Vector::Zero(n_);
    for (Index i = 0; i < n_eq_; ++i) {
      const Vector a = data_.A.row(i).transpose();
      decompose_normal(a);
      double t2 = 0.0;
      const double s = a.dot(p_) - data_.b(i);
      if (step_direction_nonzero()) {
        t2 = -s / z_.dot(a);
      }
      p_ += t2 * z_;
      u_.head(iq_) -= t2 * r_.head(iq_);
      f_ += 0.5 * t2 * t2 * z_.dot(a);
      sol.objective_trace.push_back(f_);
      ++sol.iterations;
      if (!add_active(i)) {
        // dependent equality rows make the subproblem unsolvable here;
        // the elastic layer handles recovery
        sol.status = QPStatus::Infeasible;
        return false;
      }
      u_(iq_ - 1) = t2;
    }
    sol.status = QPStatus::Optimal;
    return true;
  }

  void inequality_loop(QPSolution& sol) {
    while (true) {
      if (sol.iterations > iter_cap_) {
        sol.status = QPStatus::MaxMinorIterations;
        return;
      }
      // most violated inactive inequality; smallest index wins ties
      Index ip = -1;
      double worst = 0.0;
      for (Index i = n_eq_; i < m_; ++i) {
        if (is_active(i)) continue;
        const double s = data_.A.row(i).dot(p_) - data_.b(i);
        const double tol =
            1e-11 * (1.0 + std::abs(data_.b(i)) +
                     data_.A.row(i).cwiseAbs().maxCoeff() *
                         std::max(1.0, p_.cwiseAbs().maxCoeff()));
        if (s < -tol && s < worst) {
          worst = s;
          ip = i;
        }
      }
      if (ip < 0) {
        sol.status = QPStatus::Optimal;
        return;
      }

      const Vector a = data_.A.row(ip).transpose();
      double u_plus = 0.0;
      double s = a.dot(p_) - data_.b(ip);

      while (true) {
        if (++sol.iterations > iter_cap_) {
          sol.status = QPStatus::MaxMinorIterations;
          return;
        }
        decompose_normal(a);

        // partial step bound from the active inequalities
        double t1 = kInf;
        Index drop_pos = -1;
        for (Index k = n_eq_; k < iq_; ++k) {
          if (r_(k) > 0.0) {
            const double ratio = u_(k) / r_(k);
            if (ratio < t1) {
              t1 = ratio;
              drop_pos = k;
            } else if (ratio == t1 && drop_pos >= 0 &&
                       active_[static_cast<size_t>(k)] <
                           active_[static_cast<size_t>(drop_pos)]) {
              drop_pos = k;
            }
          }
        }

        const bool have_z = step_direction_nonzero();
        const double t2 = have_z ? -s / z_.dot(a) : kInf;
        const double t = std::min(t1, t2);

        if (!std::isfinite(t)) {
          sol.status = QPStatus::Infeasible;
          return;
        }

        if (!have_z) {
          // dual-only step: raise u+ and release the blocking constraint
          u_.head(iq_) -= t * r_.head(iq_);
          u_plus += t;
          drop_active(drop_pos);
          sol.objective_trace.push_back(f_);
          continue;
        }

        p_ += t * z_;
        f_ += t * z_.dot(a) * (0.5 * t + u_plus);
        u_.head(iq_) -= t * r_.head(iq_);
        u_plus += t;
        sol.objective_trace.push_back(f_);

        if (t == t2) {
          if (!add_active(ip)) {
            // full step onto a dependent normal cannot happen with z != 0
            sol.status = QPStatus::Infeasible;
            return;
          }
          u_(iq_ - 1) = u_plus;
          break;  // back to violated-constraint scan
        }

        drop_active(drop_pos);
        s = a.dot(p_) - data_.b(ip);
      }
    }
  }

  bool is_active(Index row) const {
    return std::find(active_.begin(), active_.end(), row) != active_.end();
  }

  QPSolution finish(QPSolution& sol) {
    sol.p = p_;
    sol.lambda = Vector::Zero(m_);
    if (sol.status == QPStatus::Optimal) {
      for (Index k = 0; k < iq_; ++k) {
        sol.lambda(active_[static_cast<size_t>(k)]) = u_(k);
      }
      sol.active = active_;
      std::sort(sol.active.begin(), sol.active.end());
    }
    return sol;
  }

  const QPData& data_;
  Index n_;
  Index m_;
  Index n_eq_;
  Matrix J_;
  Matrix R_;
  Vector d_, z_, r_;
  Vector p_;
  Vector u_;
  std::vector<Index> active_;
  Index iq_ = 0;
  double f_ = 0.0;
  double r_norm_ = 1.0;
  int iter_cap_;
};

}  // namespace

QPSolution solve_qp(const QPData& data) {
  const Index n = data.H.rows();
  const Index m = data.A.rows();
  if (data.H.cols() != n || data.g0.size() != n || data.A.cols() != n ||
      data.b.size() != m || data.n_eq < 0 || data.n_eq > m) {
    throw std::invalid_argument("solve_qp: inconsistent dimensions");
  }
  DualActiveSet solver(data);
  return solver.run();
}

double KktResiduals::max_all() const {
  return std::max({stationarity, feasibility, complementarity, dual_negativity});
}

KktResiduals verify_qp_kkt(const QPData& data, const QPSolution& sol) {
  KktResiduals res;
  const Vector grad = data.H * sol.p + data.g0 -
                      (data.A.rows() > 0
                           ? Vector(data.A.transpose() * sol.lambda)
                           : Vector(Vector::Zero(sol.p.size())));
  res.stationarity = grad.size() > 0 ? grad.cwiseAbs().maxCoeff() : 0.0;
  for (Index i = 0; i < data.A.rows(); ++i) {
    const double s = data.A.row(i).dot(sol.p) - data.b(i);
    if (i < data.n_eq) {
      res.feasibility = std::max(res.feasibility, std::abs(s));
    } else {
      res.feasibility = std::max(res.feasibility, -s);
      res.complementarity =
          std::max(res.complementarity, std::abs(sol.lambda(i) * s));
      res.dual_negativity = std::max(res.dual_negativity, -sol.lambda(i));
    }
  }
  res.feasibility = std::max(res.feasibility, 0.0);
  res.dual_negativity = std::max(res.dual_negativity, 0.0);
  return res;
}

}  // namespace sqpkit
