#include "sqpkit/hessian.hpp"

namespace sqpkit {

CurvaturePair curvature_pair(const Vector& g_k, const Vector& g_k1,
                             const Matrix& J_k, const Matrix& J_k1,
                             const Vector& lambda_k1, double alpha,
                             const Vector& p) {
  CurvaturePair pair;
  pair.d = alpha * p;
  pair.w = g_k1 - g_k;
  if (lambda_k1.size() > 0) {
    pair.w -= (J_k1 - J_k).transpose() * lambda_k1;
  }
  return pair;
}

HessianApprox damped_update(const HessianApprox& H, const CurvaturePair& pair) {
  const Vector& d = pair.d;
  const Vector& w = pair.w;
  if (d.norm() == 0.0) throw DegenerateStep("damped_update: zero step");

  const Vector Hd = H.matrix() * d;
  const double dHd = d.dot(Hd);
  if (dHd <= 0.0) throw DegenerateStep("damped_update: d'Hd <= 0");

  const double wd = w.dot(d);
  double theta = 1.0;
  if (wd < 0.2 * dHd) {
    theta = 0.8 * dHd / (dHd - wd);
  }
  const Vector w_hat = theta * w + (1.0 - theta) * Hd;
  const double whd = w_hat.dot(d);  // equals 0.2 d'Hd exactly when damped

  HessianApprox out = H;
  out.matrix_ -= (Hd * Hd.transpose()) / dHd;
  out.matrix_ += (w_hat * w_hat.transpose()) / whd;
  out.matrix_ = ((out.matrix_ + out.matrix_.transpose()) * 0.5).eval();
  return out;
}

}  // namespace sqpkit
