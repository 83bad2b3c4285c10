#include "sqpkit/driver.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "sqpkit/linesearch.hpp"
#include "sqpkit/qpcore.hpp"

namespace sqpkit {

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::MaxIterations: return "MaxIterations";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::UndefinedRegion: return "UndefinedRegion";
    case SolveStatus::InitialEvaluationFailed: return "InitialEvaluationFailed";
    case SolveStatus::InternalError: return "InternalError";
  }
  return "Unknown";
}

std::optional<IterateState> initialize(StandardProblem& prob,
                                       const SolverOptions& opts) {
  const Vector xs = project_to_bounds(prob.x0(), prob.lower(), prob.upper());
  Vector x = xs;
  EvalOutcome out = prob.evaluate(xs);
  if (!out.ok() && xs != prob.x0()) {
    x = prob.x0();
    out = prob.evaluate(x);
  }
  if (!out.ok()) return std::nullopt;

  IterateState st{.k = 0,
                  .x = std::move(x),
                  .merit = {},
                  .hessian = HessianApprox(prob.n()),
                  .elastic = {},
                  .eval = std::move(*out.value),
                  .minor_total = 0};
  const Index m = prob.m_total();
  st.merit.lambda = Vector::Zero(m);
  st.merit.s = Vector::Zero(m);
  st.merit.rho = Vector::Zero(m);
  st.merit.delta_rho = 1.0;
  st.elastic.gamma_init = opts.gamma_init;
  st.elastic.gamma_max = opts.gamma_max;
  st.elastic.persist_limit = opts.gamma_persist;
  return st;
}

ConvergenceStatus check_convergence(const Evaluation& eval, const Vector& x,
                                    const Vector& lambda,
                                    const StandardProblem& prob,
                                    const SolverOptions& opts) {
  const double tau_f =
      opts.feas_tol * (1.0 + (x.size() ? x.cwiseAbs().maxCoeff() : 0.0));
  const double tau_o =
      opts.opt_tol *
      (1.0 + (lambda.size() ? lambda.cwiseAbs().maxCoeff() : 0.0));

  ConvergenceStatus out;
  KktMeasures& kkt = out.kkt;
  bool have_ineq = false;
  double min_mult = kInf;
  for (Index i = 0; i < eval.c.size(); ++i) {
    if (prob.is_equality_row(i)) {
      kkt.max_violation = std::max(kkt.max_violation, std::abs(eval.c(i)));
    } else {
      kkt.max_violation = std::max(kkt.max_violation, -eval.c(i));
      have_ineq = true;
      min_mult = std::min(min_mult, lambda(i));
    }
    kkt.max_complementarity =
        std::max(kkt.max_complementarity, std::abs(eval.c(i) * lambda(i)));
  }
  kkt.max_violation = std::max(kkt.max_violation, 0.0);
  kkt.min_multiplier = have_ineq ? min_mult : 0.0;

  const Vector stat = eval.g - eval.J.transpose() * lambda;
  kkt.stationarity = stat.size() ? stat.cwiseAbs().maxCoeff() : 0.0;

  out.converged = kkt.max_violation <= tau_f && kkt.stationarity <= tau_o &&
                  kkt.max_complementarity <= tau_o &&
                  kkt.min_multiplier >= -tau_o;
  return out;
}

namespace {

void fill_terminal(SolveReport& rep, const IterateState& st,
                   StandardProblem& prob, const SolverOptions& opts) {
  rep.x_final = st.x;
  rep.lambda_canonical = st.merit.lambda;
  rep.lambda_final = multipliers_to_user(st.merit.lambda, prob);
  rep.f_final = st.eval.f;
  rep.kkt = check_convergence(st.eval, st.x, st.merit.lambda, prob, opts).kkt;
  rep.majors = st.k;
  rep.minors = st.minor_total;
}

}  // namespace

SolveReport solve(StandardProblem& prob, const SolverOptions& opts) {
  if (opts.maxiter < 1 || opts.opt_tol <= 0.0 || opts.feas_tol <= 0.0 ||
      opts.beta_min <= 0.0) {
    throw std::invalid_argument("solve: invalid solver options");
  }
  const auto t_start = std::chrono::steady_clock::now();
  SolveReport rep;

  auto st_opt = initialize(prob, opts);
  if (!st_opt) {
    rep.status = SolveStatus::InitialEvaluationFailed;
    rep.message = "Function evaluations failed at the initial point";
    rep.counts = prob.counters();
    return rep;
  }
  IterateState st = std::move(*st_opt);
  const Index n = prob.n();
  const auto eq_flags = prob.equality_flags();

  rep.status = SolveStatus::MaxIterations;
  rep.message = "Maximum number of major iterations reached";

  if (check_convergence(st.eval, st.x, st.merit.lambda, prob, opts)
          .converged) {
    rep.status = SolveStatus::Optimal;
    rep.message = "Optimality conditions satisfied";
  }

  while (rep.status == SolveStatus::MaxIterations && st.k < opts.maxiter) {
    const long minors_before = st.minor_total;

    // slack reset, then the QP subproblem at the current iterate
    st.merit.s = slack_reset(st.eval.c, st.merit.lambda, st.merit.rho);

    QPData qp{st.hessian.matrix(), st.eval.g, st.eval.J, -st.eval.c,
              prob.m_eq()};
    QPSolution qps = solve_qp(qp);
    st.minor_total += qps.iterations;
    if (qps.status == QPStatus::NotPositiveDefinite) {
      st.hessian.reset();
      qp.H = st.hessian.matrix();
      qps = solve_qp(qp);
      st.minor_total += qps.iterations;
      if (qps.status == QPStatus::NotPositiveDefinite) {
        rep.status = SolveStatus::InternalError;
        rep.message =
            "Internal error: identity Hessian rejected by the QP solver";
        break;
      }
    }

    Vector p, lambda_hat;
    if (qps.status == QPStatus::Optimal) {
      st.elastic = update_gamma(st.elastic, false);
      p = std::move(qps.p);
      lambda_hat = std::move(qps.lambda);
    } else {
      // infeasible linearization: relax through the augmented subproblem
      st.elastic = update_gamma(st.elastic, true);
      const AugmentedQP aqp =
          build_augmented_qp(qp, st.eval.c, eq_flags, st.elastic.gamma);
      QPSolution aqps = solve_qp(aqp.data);
      st.minor_total += aqps.iterations;
      if (aqps.status != QPStatus::Optimal) {
        rep.status = SolveStatus::Infeasible;
        rep.message = "Problem declared infeasible";
        break;
      }
      ElasticDirection dir = extract_search_direction(aqps, n, aqp.row_map);
      p = std::move(dir.p);
      lambda_hat = std::move(dir.lambda_hat);
    }

    const double x_scale = 1.0 + (st.x.size() ? st.x.cwiseAbs().maxCoeff() : 0.0);
    if ((p.size() ? p.cwiseAbs().maxCoeff() : 0.0) <= 1e-14 * x_scale) {
      // zero step: adopt the subproblem multipliers and slacks directly
      st.merit.lambda = lambda_hat;
      st.merit.s = (st.eval.c + st.eval.J * p).cwiseMax(0.0);
      ++st.k;
      const ConvergenceStatus conv =
          check_convergence(st.eval, st.x, st.merit.lambda, prob, opts);
      if (opts.record_history) {
        rep.history.push_back({st.k, st.eval.f, conv.kkt.max_violation,
                               conv.kkt.stationarity, 1.0,
                               st.merit.rho.norm(), st.elastic.gamma,
                               st.minor_total - minors_before});
      }
      if (conv.converged) {
        rep.status = SolveStatus::Optimal;
        rep.message = "Optimality conditions satisfied";
      }
      continue;
    }

    // make sure the full step lands where the model functions exist
    const BacktrackResult bt =
        backtrack_to_defined(prob, st.x, p, opts.beta_min);
    if (!bt.ok) {
      rep.status = SolveStatus::UndefinedRegion;
      rep.message = "Unable to make progress around undefined region";
      break;
    }
    const double beta = bt.beta;

    // penalty update: least-norm rho*, regulated damping, trend tracking
    const Vector v = st.eval.c - st.merit.s;
    const Vector q = lambda_hat - st.merit.lambda;
    const double pHp = p.dot(st.hessian.matrix() * p);
    const double delta = st.eval.g.dot(p) - q.dot(v) + st.merit.lambda.dot(v) +
                         0.5 * pHp;
    const Vector rho_star = penalty_star(v, delta);
    const Vector rho_bar =
        damp_penalties(st.merit.rho, rho_star, st.merit.delta_rho);
    st.merit = update_delta_rho(std::move(st.merit), rho_bar.norm());
    st.merit.rho = rho_bar;

    SearchRay ray_dirs{p, q, (st.eval.c + st.eval.J * p) - st.merit.s};
    const double phi0 = merit_value(st.eval.f, st.eval.c, st.merit.lambda,
                                    st.merit.s, st.merit.rho);
    const double dphi0 = merit_slope(st.eval, ray_dirs, st.merit.lambda,
                                     st.merit.s, st.merit.rho);

    MeritRay ray(prob, st.x, ray_dirs, st.merit.lambda, st.merit.s,
                 st.merit.rho);
    LineSearchResult ls =
        strong_wolfe([&ray](double a) { return ray(a); }, phi0, dphi0, beta,
                     beta, opts.wolfe_c1, opts.wolfe_c2);
    if (ls.status == LineSearchStatus::Failed) {
      ls = l1_fallback(prob, st.eval, p, lambda_hat, beta);
    }
    if (ls.status == LineSearchStatus::Failed || !ls.last_eval) {
      rep.status = SolveStatus::UndefinedRegion;
      rep.message = "Unable to make progress around undefined region";
      break;
    }
    if (opts.record_history) {
      rep.wolfe_log.push_back(
          {st.x, p, q, ray_dirs.r, st.merit.lambda, st.merit.s, st.merit.rho,
           ls.alpha, phi0, dphi0,
           ls.status == LineSearchStatus::WolfeSatisfied, ls.at_bound});
    }

    // variable updates along the accepted step
    const double alpha = ls.alpha;
    st.x += alpha * p;
    st.merit.lambda += alpha * q;
    st.merit.s += alpha * ray_dirs.r;

    Evaluation prev_eval = std::exchange(st.eval, std::move(*ls.last_eval));

    const CurvaturePair pair =
        curvature_pair(prev_eval.g, st.eval.g, prev_eval.J, st.eval.J,
                       st.merit.lambda, alpha, p);
    if (pair.d.norm() >=
        1e-14 * (1.0 + (st.x.size() ? st.x.norm() : 0.0))) {
      try {
        st.hessian = damped_update(st.hessian, pair);
      } catch (const DegenerateStep&) {
        st.hessian.reset();
      }
    }

    ++st.k;
    const ConvergenceStatus conv =
        check_convergence(st.eval, st.x, st.merit.lambda, prob, opts);
    if (opts.record_history) {
      rep.history.push_back({st.k, st.eval.f, conv.kkt.max_violation,
                             conv.kkt.stationarity, alpha,
                             st.merit.rho.norm(), st.elastic.gamma,
                             st.minor_total - minors_before});
    }
    if (conv.converged) {
      rep.status = SolveStatus::Optimal;
      rep.message = "Optimality conditions satisfied";
    }
  }

  fill_terminal(rep, st, prob, opts);
  rep.counts = prob.counters();
  rep.wall_time = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t_start)
                      .count();
  return rep;
}

SolveReport solve(const ProblemSpec& spec, const SolverOptions& opts) {
  StandardProblem prob = canonicalize(spec);
  return solve(prob, opts);
}

}  // namespace sqpkit
