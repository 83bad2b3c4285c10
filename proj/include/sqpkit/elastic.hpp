#ifndef SQPKIT_ELASTIC_HPP
#define SQPKIT_ELASTIC_HPP

#include <utility>
#include <vector>

#include "sqpkit/types.hpp"
#include "sqpkit/qpcore.hpp"

namespace sqpkit {

/// Penalty schedule for the feasibility-restoring variable eta.
struct ElasticState {
  double gamma = 0.0;  // 0 until first activation
  int consecutive_infeasible = 0;
  bool was_feasible_last = true;
  double gamma_init = 1e6;
  double gamma_max = 1e12;
  int persist_limit = 25;
};

/// Advances the schedule: gamma_init on a feasible->infeasible transition,
/// x10 (capped) after persist_limit consecutive infeasible iterations at a
/// fixed gamma, counter reset on any feasible iteration.
ElasticState update_gamma(ElasticState state, bool plain_qp_infeasible);

struct AugmentedQP {
  QPData data;  // decision vector (p, eta); n_eq = 0
  /// canonical row -> (aqp row, pair partner), partner -1 for unsplit rows
  std::vector<std::pair<Index, Index>> row_map;
};

/// Relaxes each row by eta when its constant term is negative; equality
/// rows are split into inequality pairs, each member getting its own sign
/// rule. Rows 0 <= eta <= 1 are appended. (p, eta) = (0, 1) is always
/// feasible for the result.
AugmentedQP build_augmented_qp(const QPData& qp, const Vector& c_k,
                               const std::vector<bool>& eq_flags,
                               double gamma);

struct ElasticDirection {
  Vector p;           // length n
  Vector lambda_hat;  // canonical length; pairs recombined
  double eta = 0.0;   // clamped to [0, 1]
};

ElasticDirection extract_search_direction(
    const QPSolution& aqp_sol, Index n,
    const std::vector<std::pair<Index, Index>>& row_map);

}  // namespace sqpkit

#endif
