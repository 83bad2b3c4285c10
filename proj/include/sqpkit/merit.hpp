#ifndef SQPKIT_MERIT_HPP
#define SQPKIT_MERIT_HPP

#include <optional>

#include "sqpkit/problem.hpp"
#include "sqpkit/types.hpp"

namespace sqpkit {

/// Direction of the one-dimensional search in (x, lambda, s) space.
struct SearchRay {
  Vector p;  // primal direction
  Vector q;  // dual direction, lambda_hat - lambda
  Vector r;  // slack direction, s_hat - s with s_hat = c + J p
};

/// Per-run merit state: multipliers, slacks, penalties, and the damping
/// increment with its trend tracker.
struct MeritContext {
  Vector lambda;
  Vector s;
  Vector rho;
  double delta_rho = 1.0;
  enum class Trend { None, Increasing, Decreasing };
  Trend trend = Trend::None;
  int run_length = 0;
  std::optional<double> prev_rho_norm;
};

/// f - lambda'(c - s) + 0.5 sum rho_i (c_i - s_i)^2
double merit_value(double f, const Vector& c, const Vector& lambda,
                   const Vector& s, const Vector& rho);

/// Directional derivative of the merit along the ray at the point where
/// eval was taken; lambda_alpha = lambda + alpha q, s_alpha = s + alpha r.
double merit_slope(const Evaluation& eval, const SearchRay& ray,
                   const Vector& lambda_alpha, const Vector& s_alpha,
                   const Vector& rho);

/// Componentwise minimizer of the merit over s >= 0.
Vector slack_reset(const Vector& c, const Vector& lambda, const Vector& rho);

/// Minimum-norm penalties with sum v_i^2 rho_i = delta; zero when delta <= 0
/// or v = 0.
Vector penalty_star(const Vector& v, double delta);

/// Regulated decrease of the penalties toward rho_star.
Vector damp_penalties(const Vector& rho, const Vector& rho_star,
                      double delta_rho);

/// Doubles delta_rho when ||rho||_2 reverses a monotone run of length >= 2;
/// ties leave the trend untouched.
MeritContext update_delta_rho(MeritContext ctx, double new_rho_norm);

}  // namespace sqpkit

#endif
