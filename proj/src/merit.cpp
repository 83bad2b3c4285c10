#include "sqpkit/merit.hpp"

#include <cmath>

namespace sqpkit {

double merit_value(double f, const Vector& c, const Vector& lambda,
                   const Vector& s, const Vector& rho) {
  const Vector v = c - s;
  return f - lambda.dot(v) + 0.5 * rho.dot(v.cwiseProduct(v));
}

double merit_slope(const Evaluation& eval, const SearchRay& ray,
                   const Vector& lambda_alpha, const Vector& s_alpha,
                   const Vector& rho) {
  const Vector v = eval.c - s_alpha;
  const Vector Jp_minus_r = eval.J * ray.p - ray.r;
  double slope = eval.g.dot(ray.p);
  slope -= ray.q.dot(v);
  slope -= lambda_alpha.dot(Jp_minus_r);
  slope += rho.dot(v.cwiseProduct(Jp_minus_r));
  return slope;
}

Vector slack_reset(const Vector& c, const Vector& lambda, const Vector& rho) {
  Vector s(c.size());
  for (Index i = 0; i < c.size(); ++i) {
    if (rho(i) == 0.0) {
      s(i) = std::max(0.0, c(i));
    } else {
      s(i) = std::max(0.0, c(i) - lambda(i) / rho(i));
    }
  }
  return s;
}

Vector penalty_star(const Vector& v, double delta) {
  const Index m = v.size();
  if (delta <= 0.0) return Vector::Zero(m);
  const Vector v2 = v.cwiseProduct(v);
  const double denom = v2.dot(v2);  // sum v_i^4
  if (denom == 0.0) return Vector::Zero(m);
  return (delta / denom) * v2;
}

Vector damp_penalties(const Vector& rho, const Vector& rho_star,
                      double delta_rho) {
  Vector out(rho.size());
  for (Index i = 0; i < rho.size(); ++i) {
    double rho_hat = rho(i);
    if (rho(i) >= 4.0 * (rho_star(i) + delta_rho)) {
      rho_hat = std::sqrt(rho(i) * (rho_star(i) + delta_rho));
    }
    out(i) = std::max(rho_star(i), rho_hat);
  }
  return out;
}

MeritContext update_delta_rho(MeritContext ctx, double new_rho_norm) {
  if (!ctx.prev_rho_norm) {
    ctx.trend = MeritContext::Trend::None;
    ctx.run_length = 0;
    ctx.prev_rho_norm = new_rho_norm;
    return ctx;
  }
  const double prev = *ctx.prev_rho_norm;
  if (new_rho_norm == prev) {
    return ctx;  // ties do not break a trend
  }
  const auto dir = new_rho_norm > prev ? MeritContext::Trend::Increasing
                                       : MeritContext::Trend::Decreasing;
  if (ctx.trend == MeritContext::Trend::None) {
    ctx.trend = dir;
    ctx.run_length = 1;
  } else if (dir == ctx.trend) {
    ++ctx.run_length;
  } else {
    if (ctx.run_length >= 2) ctx.delta_rho *= 2.0;
    ctx.trend = dir;
    ctx.run_length = 1;
  }
  ctx.prev_rho_norm = new_rho_norm;
  return ctx;
}

}  // namespace sqpkit
