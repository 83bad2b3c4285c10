#include "sqpkit/linesearch.hpp"

#include <cmath>
#include <utility>

namespace sqpkit {

namespace {

struct Point {
  double a = 0.0;
  double phi = 0.0;
  double dphi = 0.0;
  bool valid = false;  // sample succeeded (false only for failed endpoints)
  std::optional<Evaluation> eval;
};

// Minimizer of the cubic Hermite fit through two sampled points,
// safeguarded into the inner 80% of the interval; bisection fallback.
double interpolate(const Point& lo, const Point& hi) {
  const double span = hi.a - lo.a;
  const double mid = lo.a + 0.5 * span;
  if (!hi.valid || span == 0.0) return mid;
  const double d1 = lo.dphi + hi.dphi - 3.0 * (lo.phi - hi.phi) / (lo.a - hi.a);
  const double disc = d1 * d1 - lo.dphi * hi.dphi;
  if (disc < 0.0) return mid;
  const double d2 = std::copysign(std::sqrt(disc), span);
  const double denom = hi.dphi - lo.dphi + 2.0 * d2;
  if (denom == 0.0) return mid;
  double aj = hi.a - span * (hi.dphi + d2 - d1) / denom;
  const double lo_guard = std::min(lo.a, hi.a) + 0.1 * std::abs(span);
  const double hi_guard = std::max(lo.a, hi.a) - 0.1 * std::abs(span);
  if (!std::isfinite(aj) || aj < lo_guard || aj > hi_guard) return mid;
  return aj;
}

}  // namespace

MeritRay::MeritRay(StandardProblem& prob, Vector x, SearchRay ray,
                   Vector lambda, Vector s, Vector rho)
    : prob_(prob),
      x_(std::move(x)),
      ray_(std::move(ray)),
      lambda_(std::move(lambda)),
      s_(std::move(s)),
      rho_(std::move(rho)) {}

std::optional<RaySample> MeritRay::operator()(double alpha) {
  ++evals_;
  EvalOutcome out = prob_.evaluate(x_ + alpha * ray_.p);
  if (!out.ok()) return std::nullopt;
  const Vector lambda_a = lambda_ + alpha * ray_.q;
  const Vector s_a = s_ + alpha * ray_.r;
  RaySample sample;
  sample.phi = merit_value(out.value->f, out.value->c, lambda_a, s_a, rho_);
  sample.dphi = merit_slope(*out.value, ray_, lambda_a, s_a, rho_);
  sample.eval = std::move(out.value);
  return sample;
}

BacktrackResult backtrack_to_defined(StandardProblem& prob, const Vector& x,
                                     const Vector& p, double beta_min) {
  BacktrackResult res;
  for (double beta = 1.0; beta >= beta_min; beta *= 0.5) {
    ++res.evals;
    EvalOutcome out = prob.evaluate(x + beta * p);
    if (out.ok()) {
      res.ok = true;
      res.beta = beta;
      res.eval = std::move(out.value);
      return res;
    }
  }
  return res;
}

LineSearchResult strong_wolfe(const RayFn& ray, double phi0, double dphi0,
                              double alpha_init, double alpha_max, double c1,
                              double c2, int budget) {
  LineSearchResult res;
  if (!(dphi0 < 0.0) || !(alpha_init > 0.0) || alpha_init > alpha_max) {
    return res;  // Failed
  }

  const auto suff = [&](double a, double phi) {
    return phi <= phi0 + c1 * a * dphi0;
  };
  const auto curv = [&](double dphi) {
    return std::abs(dphi) <= c2 * std::abs(dphi0);
  };

  int evals = 0;
  const auto sample = [&](double a) -> Point {
    ++evals;
    auto s = ray(a);
    Point pt;
    pt.a = a;
    if (s) {
      pt.phi = s->phi;
      pt.dphi = s->dphi;
      pt.valid = true;
      pt.eval = std::move(s->eval);
    }
    return pt;
  };

  const auto accept = [&](Point& pt, bool at_bound) {
    res.alpha = pt.a;
    res.status = LineSearchStatus::WolfeSatisfied;
    res.at_bound = at_bound;
    res.evals = evals;
    res.last_eval = std::move(pt.eval);
    return res;
  };
  const auto fail = [&]() {
    res.status = LineSearchStatus::Failed;
    res.evals = evals;
    return res;
  };

  Point prev;  // alpha = 0
  prev.phi = phi0;
  prev.dphi = dphi0;
  prev.valid = true;

  Point zlo, zhi;
  bool bracketed = false;

  double a = alpha_init;
  bool first = true;
  while (!bracketed) {
    if (evals >= budget) return fail();
    Point cur = sample(a);
    if (!cur.valid) {
      // undefined point: shrink the upper bracket toward the last good one
      alpha_max = cur.a;
      a = 0.5 * (prev.a + cur.a);
      if (a - prev.a <= 1e-16 * std::max(1.0, prev.a)) return fail();
      continue;
    }
    if (!suff(cur.a, cur.phi) || (!first && cur.phi >= prev.phi)) {
      zlo = std::move(prev);
      zhi = std::move(cur);
      bracketed = true;
      break;
    }
    if (curv(cur.dphi)) return accept(cur, false);
    if (cur.dphi >= 0.0) {
      zhi = std::move(prev);
      zlo = std::move(cur);
      bracketed = true;
      break;
    }
    if (cur.a >= alpha_max * (1.0 - 1e-14)) {
      // sufficient decrease holds and phi still descends at the boundary
      return accept(cur, true);
    }
    prev = std::move(cur);
    a = std::min(2.0 * prev.a, alpha_max);
    first = false;
  }

  // zoom: phi(zlo) is the least sufficient-decrease value seen so far
  while (evals < budget) {
    const double gap = std::abs(zhi.a - zlo.a);
    if (gap <= 1e-14 * std::max(1.0, zlo.a)) {
      if (zlo.a >= alpha_max * (1.0 - 1e-12) && zlo.valid && zlo.a > 0.0 &&
          suff(zlo.a, zlo.phi)) {
        return accept(zlo, true);
      }
      return fail();
    }
    const double aj = interpolate(zlo, zhi);
    Point cur = sample(aj);
    if (!cur.valid) {
      zhi = std::move(cur);  // shrink toward zlo, phi data unknown
      continue;
    }
    if (!suff(cur.a, cur.phi) || cur.phi >= zlo.phi) {
      zhi = std::move(cur);
      continue;
    }
    if (curv(cur.dphi)) return accept(cur, false);
    if (cur.dphi * (zhi.a - zlo.a) >= 0.0) {
      zhi = std::move(zlo);
    }
    zlo = std::move(cur);
  }
  return fail();
}

LineSearchResult l1_fallback(StandardProblem& prob, const Evaluation& eval_at_x,
                             const Vector& p, const Vector& lambda_hat,
                             double alpha_init, int max_trials) {
  const double mu =
      (lambda_hat.size() > 0 ? 2.0 * lambda_hat.cwiseAbs().maxCoeff() : 0.0) +
      1.0;

  const auto l1_merit = [&](const Evaluation& ev) {
    double viol = 0.0;
    for (Index i = 0; i < ev.c.size(); ++i) {
      if (prob.is_equality_row(i)) {
        viol += std::abs(ev.c(i));
      } else {
        viol += std::max(0.0, -ev.c(i));
      }
    }
    return ev.f + mu * viol;
  };

  LineSearchResult res;
  const double phi0 = l1_merit(eval_at_x);
  const double slope = p.squaredNorm();

  double best_phi = kInf;
  double alpha = alpha_init;
  for (int trial = 0; trial < max_trials; ++trial, alpha *= 0.5) {
    ++res.evals;
    EvalOutcome out = prob.evaluate(Vector(eval_at_x.x + alpha * p));
    if (!out.ok()) continue;
    const double phi = l1_merit(*out.value);
    if (phi <= phi0 - 1e-4 * alpha * slope) {
      res.alpha = alpha;
      res.status = LineSearchStatus::FallbackAccepted;
      res.last_eval = std::move(out.value);
      return res;
    }
    if (phi < best_phi) {
      best_phi = phi;
      res.alpha = alpha;
      res.last_eval = std::move(out.value);
    }
  }
  if (res.last_eval) {
    res.status = LineSearchStatus::FallbackAccepted;
  }
  return res;
}

}  // namespace sqpkit
