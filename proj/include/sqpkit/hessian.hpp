#ifndef SQPKIT_HESSIAN_HPP
#define SQPKIT_HESSIAN_HPP

#include <stdexcept>
#include <utility>

#include "sqpkit/types.hpp"

namespace sqpkit {

/// Raised when the update is asked for with a zero step or nonpositive
/// curvature d'Hd; the caller should reset to the identity instead.
class DegenerateStep : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CurvaturePair {
  Vector d;  // primal step x_{k+1} - x_k
  Vector w;  // Lagrangian-gradient difference
};

/// Positive-definite quasi-Newton approximation of the Lagrangian Hessian.
class HessianApprox {
 public:
  explicit HessianApprox(Index n) : matrix_(Matrix::Identity(n, n)) {}
  explicit HessianApprox(Matrix m) : matrix_(std::move(m)) {}

  static HessianApprox identity(Index n) { return HessianApprox(n); }

  const Matrix& matrix() const { return matrix_; }
  Index dim() const { return matrix_.rows(); }

  void reset() { matrix_.setIdentity(); }

 private:
  friend HessianApprox damped_update(const HessianApprox&,
                                     const CurvaturePair&);
  Matrix matrix_;
};

/// Fresh identity approximation of dimension n.
inline HessianApprox reset(Index n) { return HessianApprox(n); }

/// d = alpha * p;  w = g_{k+1} - g_k - (J_{k+1} - J_k)' lambda_{k+1}.
CurvaturePair curvature_pair(const Vector& g_k, const Vector& g_k1,
                             const Matrix& J_k, const Matrix& J_k1,
                             const Vector& lambda_k1, double alpha,
                             const Vector& p);

/// BFGS update with Powell damping: theta keeps w'd >= 0.2 d'Hd so the
/// updated matrix stays positive definite. The result is symmetrized.
HessianApprox damped_update(const HessianApprox& H, const CurvaturePair& pair);

}  // namespace sqpkit

#endif
