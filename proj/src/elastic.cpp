#include "sqpkit/elastic.hpp"

#include <algorithm>

namespace sqpkit {

ElasticState update_gamma(ElasticState state, bool plain_qp_infeasible) {
  if (!plain_qp_infeasible) {
    state.consecutive_infeasible = 0;
    state.was_feasible_last = true;
    return state;
  }
  if (state.was_feasible_last) {
    state.gamma = state.gamma_init;
    state.consecutive_infeasible = 1;
    state.was_feasible_last = false;
    return state;
  }
  ++state.consecutive_infeasible;
  if (state.consecutive_infeasible >= state.persist_limit) {
    state.gamma = std::min(10.0 * state.gamma, state.gamma_max);
    state.consecutive_infeasible = 0;
  }
  return state;
}

AugmentedQP build_augmented_qp(const QPData& qp, const Vector& c_k,
                               const std::vector<bool>& eq_flags,
                               double gamma) {
  const Index n = qp.H.rows();
  const Index m = qp.A.rows();

  Index n_pairs = 0;
  for (Index i = 0; i < m; ++i) {
    if (eq_flags[static_cast<size_t>(i)]) ++n_pairs;
  }
  const Index m_aug = m + n_pairs + 2;  // pairs plus the two eta rows

  AugmentedQP out;
  out.data.H = Matrix::Zero(n + 1, n + 1);
  out.data.H.topLeftCorner(n, n) = qp.H;
  out.data.H(n, n) = gamma;
  out.data.g0 = Vector::Zero(n + 1);
  out.data.g0.head(n) = qp.g0;
  out.data.A = Matrix::Zero(m_aug, n + 1);
  out.data.b = Vector::Zero(m_aug);
  out.data.n_eq = 0;
  out.row_map.reserve(static_cast<size_t>(m));

  // row c_i (1 - sigma eta) + grad_i'p >= 0  with sigma = [c_i < 0]
  auto emit = [&](Index dst, const Vector& grad, double ci) {
    out.data.A.row(dst).head(n) = grad.transpose();
    out.data.A(dst, n) = (ci < 0.0) ? -ci : 0.0;
    out.data.b(dst) = -ci;
  };

  Index dst = 0;
  for (Index i = 0; i < m; ++i) {
    const Vector grad = qp.A.row(i).transpose();
    if (eq_flags[static_cast<size_t>(i)]) {
      emit(dst, grad, c_k(i));
      emit(dst + 1, Vector(-grad), -c_k(i));
      out.row_map.emplace_back(dst, dst + 1);
      dst += 2;
    } else {
      emit(dst, grad, c_k(i));
      out.row_map.emplace_back(dst, -1);
      dst += 1;
    }
  }
  // 0 <= eta <= 1
  out.data.A(dst, n) = 1.0;
  out.data.b(dst) = 0.0;
  out.data.A(dst + 1, n) = -1.0;
  out.data.b(dst + 1) = -1.0;
  return out;
}

ElasticDirection extract_search_direction(
    const QPSolution& aqp_sol, Index n,
    const std::vector<std::pair<Index, Index>>& row_map) {
  ElasticDirection out;
  out.p = aqp_sol.p.head(n);
  out.eta = std::clamp(aqp_sol.p(n), 0.0, 1.0);
  out.lambda_hat.resize(static_cast<Index>(row_map.size()));
  for (size_t i = 0; i < row_map.size(); ++i) {
    const auto& [plus, minus] = row_map[i];
    if (minus >= 0) {
      out.lambda_hat(static_cast<Index>(i)) =
          aqp_sol.lambda(plus) - aqp_sol.lambda(minus);
    } else {
      out.lambda_hat(static_cast<Index>(i)) = aqp_sol.lambda(plus);
    }
  }
  return out;
}

}  // namespace sqpkit
