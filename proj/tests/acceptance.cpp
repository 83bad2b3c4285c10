// Acceptance suite: one pass/fail line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sqpkit/bench.hpp"
#include "sqpkit/driver.hpp"
#include "sqpkit/elastic.hpp"
#include "sqpkit/hessian.hpp"
#include "sqpkit/linesearch.hpp"
#include "sqpkit/merit.hpp"
#include "sqpkit/qpcore.hpp"

using namespace sqpkit;

namespace {

struct Criterion {
  int id;
  std::string summary;
  std::function<bool(std::string&)> run;
};

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

// --- 1: registry solve suite ---------------------------------------------

bool registry_suite(std::string& note) {
  const double t0 = now_seconds();
  bool ok = true;
  std::ostringstream detail;
  for (const auto& entry : builtin_registry()) {
    if (!entry.reference) continue;
    const SolveReport rep = solve(entry.make());
    const ReferenceSolution& ref = *entry.reference;
    const double xerr = (rep.x_final - ref.x_star).cwiseAbs().maxCoeff();
    const double ferr = std::abs(rep.f_final - ref.f_star);
    const bool good = rep.status == SolveStatus::Optimal && xerr <= 1e-4 &&
                      ferr <= 1e-6 * (1.0 + std::abs(ref.f_star));
    if (!good) {
      ok = false;
      detail << " " << entry.name << "[status=" << to_string(rep.status)
             << " xerr=" << xerr << " ferr=" << ferr << "]";
    }
  }
  const double elapsed = now_seconds() - t0;
  if (elapsed >= 5.0) {
    ok = false;
    detail << " runtime " << elapsed << "s exceeds 5s";
  }
  note = detail.str();
  return ok;
}

// --- 2: QP oracle equivalence ---------------------------------------------

bool qp_oracle_equivalence(std::string& note) {
  const double t0 = now_seconds();
  std::mt19937 rng(20250810);
  int compared = 0;
  int trial = 0;
  while (compared < 200) {
    if (++trial > 2000) {
      note = " did not reach 200 feasible instances";
      return false;
    }
    const QPData data = testing::random_qp(rng, trial % 2 == 0);
    const testing::OracleResult oracle = testing::brute_force_qp(data);
    const QPSolution sol = solve_qp(data);
    if (!oracle.feasible) {
      if (sol.status != QPStatus::Infeasible) {
        note = " solver disagreed with an infeasible oracle verdict";
        return false;
      }
      continue;
    }
    if (sol.status != QPStatus::Optimal) {
      note = " solver failed a feasible instance";
      return false;
    }
    const double obj = 0.5 * sol.p.dot(data.H * sol.p) + data.g0.dot(sol.p);
    if ((sol.p - oracle.p).cwiseAbs().maxCoeff() > 1e-7 ||
        std::abs(obj - oracle.objective) > 1e-7 * (1.0 + std::abs(obj))) {
      note = " solution mismatch beyond 1e-7";
      return false;
    }
    ++compared;
  }
  const double elapsed = now_seconds() - t0;
  if (elapsed >= 10.0) {
    note = " runtime exceeds 10s";
    return false;
  }
  std::ostringstream d;
  d << " (200 matched, " << elapsed << "s)";
  note = d.str();
  return true;
}

// --- 3: damped BFGS properties --------------------------------------------

bool bfgs_properties(std::string& note) {
  std::mt19937 rng(77);
  std::uniform_int_distribution<Index> nd(2, 6);
  for (int trial = 0; trial < 1000; ++trial) {
    const Index n = nd(rng);
    const HessianApprox H(testing::random_spd(rng, n));
    Vector d = testing::random_vector(rng, n);
    while (d.norm() < 1e-3) d = testing::random_vector(rng, n);
    const Vector w = testing::random_vector(rng, n, -2.0, 2.0);

    const double dHd = d.dot(H.matrix() * d);
    const double wd = w.dot(d);
    const double theta = wd >= 0.2 * dHd ? 1.0 : 0.8 * dHd / (dHd - wd);
    const Vector w_hat = theta * w + (1.0 - theta) * (H.matrix() * d);
    if (w_hat.dot(d) < 0.2 * dHd * (1.0 - 1e-10)) {
      note = " curvature floor violated";
      return false;
    }

    const HessianApprox H1 = damped_update(H, CurvaturePair{d, w});
    Eigen::LLT<Matrix> llt(H1.matrix());
    if (llt.info() != Eigen::Success) {
      note = " factorization failed after update";
      return false;
    }
    if (theta == 1.0) {
      const Vector secant = H1.matrix() * d;
      if ((secant - w).norm() > 1e-10 * (1.0 + w.norm())) {
        note = " secant condition violated in the undamped case";
        return false;
      }
    }
  }
  return true;
}

// --- 4: merit calculus ------------------------------------------------------

bool merit_calculus(std::string& note) {
  std::mt19937 rng(1618);
  ProblemSpec spec;
  spec.name = "smooth";
  spec.n = 3;
  spec.x0 = Vector::Zero(3);
  spec.objective = [](const Vector& x, double& f, Vector& g) {
    f = 0.5 * x.squaredNorm() + x(0) * x(1) - x(2);
    g << x(0) + x(1), x(1) + x(0), x(2) - 1.0;
    return true;
  };
  spec.constraints.push_back({[](const Vector& x, double& c, Vector& grad) {
                                c = x(0) * x(0) + 2.0 * x(1) - x(2) + 1.0;
                                grad << 2.0 * x(0), 2.0, -1.0;
                                return true;
                              },
                              ConstraintKind::InequalityGeZero});
  spec.constraints.push_back({[](const Vector& x, double& c, Vector& grad) {
                                c = x(0) * x(2) - x(1) * x(1);
                                grad << x(2), -2.0 * x(1), x(0);
                                return true;
                              },
                              ConstraintKind::Equality});
  StandardProblem prob = canonicalize(spec);

  for (int trial = 0; trial < 100; ++trial) {
    const Vector x = testing::random_vector(rng, 3);
    const Vector p = testing::random_vector(rng, 3);
    const Vector lambda = testing::random_vector(rng, 2);
    const Vector q = testing::random_vector(rng, 2);
    const Vector s = testing::random_vector(rng, 2, 0.0, 1.0);
    const Vector r = testing::random_vector(rng, 2);
    const Vector rho = testing::random_vector(rng, 2, 0.0, 5.0);
    const SearchRay ray{p, q, r};

    const auto phi = [&](double a) {
      auto out = prob.evaluate(Vector(x + a * p));
      return merit_value(out.value->f, out.value->c, Vector(lambda + a * q),
                         Vector(s + a * r), rho);
    };
    auto out = prob.evaluate(x);
    const double analytic =
        merit_slope(*out.value, ray, lambda, s, rho);
    const double numeric = testing::central_diff(phi, 0.0, 1e-6);
    if (std::abs(analytic - numeric) > 1e-6 * (1.0 + std::abs(numeric))) {
      note = " finite-difference mismatch";
      return false;
    }
  }

  // penalty exactness and the damped descent guarantee
  int exact = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Index n = 3, m = 4;
    const Matrix H = testing::random_spd(rng, n);
    const Vector p = testing::random_vector(rng, n);
    const Vector g = testing::random_vector(rng, n, -2.0, 2.0);
    const Vector c = testing::random_vector(rng, m, -2.0, 2.0);
    const Vector lambda = testing::random_vector(rng, m);
    const Vector lambda_hat = testing::random_vector(rng, m);
    Vector rho_prev = testing::random_vector(rng, m, 0.0, 8.0);
    rho_prev(1) = 0.0;
    const Vector s = slack_reset(c, lambda, rho_prev);
    const Vector v = c - s;
    if (v.cwiseAbs().maxCoeff() < 1e-10 || p.norm() < 1e-8) continue;
    const Vector q = lambda_hat - lambda;
    const double pHp = p.dot(H * p);
    const double delta =
        g.dot(p) - q.dot(v) + lambda.dot(v) + 0.5 * pHp;
    if (delta <= 0.0) continue;
    const Vector rho_star = penalty_star(v, delta);
    const auto slope = [&](const Vector& rho) {
      return g.dot(p) - q.dot(v) + lambda.dot(v) -
             rho.dot(v.cwiseProduct(v));
    };
    if (std::abs(slope(rho_star) + 0.5 * pHp) > 1e-9 * (1.0 + 0.5 * pHp)) {
      note = " exact slope constraint violated by rho*";
      return false;
    }
    const Vector rho_bar = damp_penalties(rho_prev, rho_star, 1.0);
    if (slope(rho_bar) > -0.5 * pHp + 1e-9) {
      note = " damped penalties broke the descent guarantee";
      return false;
    }
    ++exact;
  }
  if (exact < 100) {
    note = " too few delta > 0 samples";
    return false;
  }
  return true;
}

// --- 5: slack reset optimality ---------------------------------------------

bool slack_reset_optimality(std::string& note) {
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 500; ++trial) {
    const Index m = 5;
    const Vector c = testing::random_vector(rng, m, -2.0, 2.0);
    const Vector lambda = testing::random_vector(rng, m, -2.0, 2.0);
    const Vector rho = testing::random_vector(rng, m, 0.01, 6.0);
    const Vector s = slack_reset(c, lambda, rho);
    const double base = merit_value(0.0, c, lambda, s, rho);
    for (Index i = 0; i < m; ++i) {
      for (double d : {1e-4, -1e-4}) {
        Vector pert = s;
        pert(i) = std::max(0.0, s(i) + d);
        if (merit_value(0.0, c, lambda, pert, rho) < base - 1e-12) {
          note = " a perturbed slack decreased the merit";
          return false;
        }
      }
    }
  }
  return true;
}

// --- 6: elastic path ---------------------------------------------------------

bool elastic_path(std::string& note) {
  SolverOptions opts;
  opts.record_history = true;
  const RegistryEntry* entry = find_problem("overdet-eq");
  const SolveReport rep = solve(entry->make(), opts);
  if (rep.status != SolveStatus::Optimal) {
    note = " overdetermined-equality problem did not reach Optimal";
    return false;
  }
  bool saw_elastic = false;
  for (const auto& row : rep.history) saw_elastic |= row.gamma >= 1e6;
  if (!saw_elastic) {
    note = " no augmented subproblem was built";
    return false;
  }

  std::mt19937 rng(90210);
  for (int trial = 0; trial < 100; ++trial) {
    const QPData qp = testing::random_qp(rng, false);
    const Vector c = -qp.b;
    std::vector<bool> eq(static_cast<size_t>(qp.A.rows()));
    for (Index i = 0; i < qp.n_eq; ++i) eq[static_cast<size_t>(i)] = true;
    const AugmentedQP aqp = build_augmented_qp(qp, c, eq, 1e6);
    Vector point = Vector::Zero(qp.H.rows() + 1);
    point(qp.H.rows()) = 1.0;
    if ((aqp.data.A * point - aqp.data.b).minCoeff() < -1e-12) {
      note = " (p, eta) = (0, 1) infeasible for a constructed AQP";
      return false;
    }
  }

  // schedule constants: 1e6 on activation, x10 at the 25 count, 1e12 cap
  ElasticState st;
  st = update_gamma(st, true);
  if (st.gamma != 1e6) {
    note = " activation gamma is not 1e6";
    return false;
  }
  for (int i = 0; i < 24; ++i) st = update_gamma(st, true);
  if (st.gamma != 1e7) {
    note = " gamma did not scale by 10 at the 25 count";
    return false;
  }
  for (int round = 0; round < 20; ++round) {
    for (int i = 0; i < 25; ++i) st = update_gamma(st, true);
  }
  if (st.gamma != 1e12) {
    note = " gamma cap is not 1e12";
    return false;
  }
  return true;
}

// --- 7: undefined-region handling -------------------------------------------

bool undefined_region(std::string& note) {
  SolverOptions opts;
  opts.record_history = true;
  const RegistryEntry* entry = find_problem("sqrt-domain");
  const SolveReport rep = solve(entry->make(), opts);

  // every accepted iterate must be inside the open domain x > 0
  for (const auto& step : rep.wolfe_log) {
    if (step.x(0) <= 0.0 || step.x(0) + step.alpha * step.p(0) <= 0.0) {
      note = " an accepted iterate left the domain";
      return false;
    }
  }
  if (rep.x_final(0) <= 0.0) {
    note = " terminal point left the domain";
    return false;
  }

  // UndefinedRegion must only be declared once beta underflows beta_min:
  // an always-failing ray must take ~34 halvings before giving up.
  ProblemSpec spec;
  spec.name = "nowhere";
  spec.n = 1;
  spec.x0 = Vector{{0.5}};
  spec.objective = [](const Vector& x, double& f, Vector& g) {
    if (x(0) < 0.4) return false;
    f = x(0);
    g(0) = 1.0;
    return true;
  };
  StandardProblem prob = canonicalize(spec);
  const BacktrackResult bt =
      backtrack_to_defined(prob, Vector{{0.3}}, Vector{{-1.0}});
  if (bt.ok || bt.evals != 34) {
    note = " backtrack gave up before beta reached 1e-10";
    return false;
  }
  std::ostringstream d;
  d << " (terminal status " << to_string(rep.status) << ")";
  note = d.str();
  return true;
}

// --- 8: Wolfe verification ---------------------------------------------------

bool wolfe_verification(std::string& note) {
  SolverOptions opts;
  opts.record_history = true;
  int checked = 0;
  for (const auto& entry : builtin_registry()) {
    const SolveReport rep = solve(entry.make(), opts);
    StandardProblem fresh = canonicalize(entry.make());
    for (const auto& step : rep.wolfe_log) {
      if (!step.wolfe_satisfied) continue;
      auto out = fresh.evaluate(Vector(step.x + step.alpha * step.p));
      if (!out.ok()) {
        note = " accepted step not evaluable on re-check";
        return false;
      }
      const Vector lambda_a = step.lambda + step.alpha * step.q;
      const Vector s_a = step.s + step.alpha * step.r;
      const double phi =
          merit_value(out.value->f, out.value->c, lambda_a, s_a, step.rho);
      const SearchRay ray{step.p, step.q, step.r};
      const double dphi =
          merit_slope(*out.value, ray, lambda_a, s_a, step.rho);
      const double tol = 1e-10 * (1.0 + std::abs(step.phi0));
      if (phi > step.phi0 + 1e-4 * step.alpha * step.dphi0 + tol) {
        note = " sufficient decrease failed on re-check";
        return false;
      }
      if (!step.at_bound &&
          std::abs(dphi) > 0.9 * std::abs(step.dphi0) + tol) {
        note = " curvature condition failed on re-check";
        return false;
      }
      ++checked;
    }
  }
  std::ostringstream d;
  d << " (" << checked << " steps re-verified)";
  note = d.str();
  return checked > 0;
}

// --- 9: convergence-test exactness -------------------------------------------

bool convergence_exactness(std::string& note) {
  SolverOptions opts;
  opts.feas_tol = 2e-6;
  opts.opt_tol = 1e-6;

  ProblemSpec spec;
  spec.name = "one-ineq";
  spec.n = 2;
  spec.x0 = Vector{{9.0, 0.0}};
  spec.objective = [](const Vector&, double& f, Vector& g) {
    f = 0.0;
    g.setZero();
    return true;
  };
  spec.constraints.push_back({[](const Vector& x, double& c, Vector& grad) {
                                c = x(1);
                                grad << 0.0, 1.0;
                                return true;
                              },
                              ConstraintKind::InequalityGeZero});
  StandardProblem prob = canonicalize(spec);

  const double tau_f = opts.feas_tol * (1.0 + 9.0);
  if (std::abs(tau_f - 2e-5) > std::nextafter(2e-5, 1.0) - 2e-5) {
    note = " tau_f formula does not give 2e-5";
    return false;
  }
  const Vector x_at{{9.0, -tau_f}};
  auto ev_at = prob.evaluate(x_at);
  if (!check_convergence(*ev_at.value, x_at, Vector::Zero(1), prob, opts)
           .converged) {
    note = " violation at tau_f rejected";
    return false;
  }
  const Vector x_over{{9.0, -tau_f * (1.0 + 1e-9)}};
  auto ev_over = prob.evaluate(x_over);
  if (check_convergence(*ev_over.value, x_over, Vector::Zero(1), prob, opts)
          .converged) {
    note = " violation beyond tau_f accepted";
    return false;
  }

  // tau_o scales with the multipliers: stationarity 1.5e-6 passes only
  // with |lambda|_inf = 1
  ProblemSpec uspec;
  uspec.name = "stat";
  uspec.n = 1;
  uspec.x0 = Vector{{0.0}};
  uspec.objective = [](const Vector& x, double& f, Vector& g) {
    f = x(0);
    g(0) = 1.5e-6;
    return true;
  };
  StandardProblem uprob = canonicalize(uspec);
  auto ev = uprob.evaluate(Vector{{0.0}});
  if (check_convergence(*ev.value, Vector{{0.0}}, Vector(0), uprob, opts)
          .converged) {
    note = " tau_o ignored the multiplier scaling";
    return false;
  }

  ProblemSpec cspec = uspec;
  cspec.constraints.push_back({[](const Vector& x, double& c, Vector& grad) {
                                 c = x(0) + 1.0;
                                 grad(0) = 1.5e-6;
                                 return true;
                               },
                               ConstraintKind::InequalityGeZero});
  StandardProblem cprob = canonicalize(cspec);
  auto cev = cprob.evaluate(Vector{{0.0}});
  // lambda = 1: tau_o = 1e-6 * 2 = 2e-6; stationarity residual
  // |g - J'lambda| = |1.5e-6 - 1.5e-6| = 0, complementarity 1 * 1 = 1 fails
  const auto conv1 =
      check_convergence(*cev.value, Vector{{0.0}}, Vector{{1.0}}, cprob, opts);
  if (conv1.converged) {
    note = " complementarity miss was accepted";
    return false;
  }
  return true;
}

// --- 10: profile pipeline ----------------------------------------------------

bool profile_pipeline(std::string& note) {
  auto rec = [](const std::string& p, const std::string& s, bool ok,
                double t, long fe) {
    RunRecord r;
    r.problem = p;
    r.solver_tag = s;
    r.success = ok;
    r.wall_time = t;
    r.total_fevals = fe;
    r.status = ok ? "Optimal" : "MaxIterations";
    return r;
  };

  const std::vector<RunRecord> hand = {rec("P", "A", true, 2.0, 10),
                                       rec("P", "B", true, 4.0, 20)};
  const ProfileTable table = performance_ratios(hand, "time", 2.0);
  if (table.ratios(0, 0) != 1.0 || table.ratios(0, 1) != 2.0) {
    note = " hand ratios are not (1, 2)";
    return false;
  }
  const ProfileCurves curves = profile_curve(table, 5);
  if (curves.P(4, 1) != 1.0 || curves.P(0, 1) != 0.0 ||
      curves.P(0, 0) != 1.0) {
    note = " hand curve values are wrong";
    return false;
  }

  std::mt19937 rng(13);
  std::uniform_real_distribution<double> td(0.5, 8.0);
  std::bernoulli_distribution okd(0.75);
  std::vector<RunRecord> random_recs;
  for (int p = 0; p < 6; ++p) {
    for (const char* s : {"a", "b", "c"}) {
      random_recs.push_back(
          rec("p" + std::to_string(p), s, okd(rng), td(rng), 10));
    }
  }
  const ProfileTable rt = performance_ratios(random_recs, "time", 2.0);
  const ProfileCurves rc = profile_curve(rt, 41);
  for (Index s = 0; s < rc.P.cols(); ++s) {
    for (size_t i = 1; i < rc.tau.size(); ++i) {
      if (rc.P(static_cast<Index>(i), s) <
          rc.P(static_cast<Index>(i - 1), s)) {
        note = " a curve decreased";
        return false;
      }
    }
  }

  // bench -> jsonl -> profile -> csv, bit-exact on rewrite
  std::vector<RunRecord> bench_recs;
  for (const auto& entry : builtin_registry()) {
    bench_recs.push_back(run_problem(entry.name, SolverOptions{}, "default"));
  }
  const std::string jsonl = "acceptance_results.jsonl";
  write_jsonl(jsonl, bench_recs);
  const std::vector<RunRecord> back = read_jsonl(jsonl);
  write_jsonl(jsonl, back);
  const std::vector<RunRecord> back2 = read_jsonl(jsonl);
  for (size_t i = 0; i < back.size(); ++i) {
    if (run_record_to_json(back[i]) != run_record_to_json(back2[i])) {
      note = " JSONL rewrite is not bit-exact";
      return false;
    }
  }
  const ProfileTable bt = performance_ratios(back, "fevals", 2.0);
  const ProfileCurves bc = profile_curve(bt, 21);
  const std::string csv1 = "acceptance_profile.csv";
  const std::string csv2 = "acceptance_profile2.csv";
  write_profile_csv(csv1, bc);
  write_profile_csv(csv2, bc);
  std::ifstream f1(csv1), f2(csv2);
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  if (s1.str() != s2.str() || s1.str().empty()) {
    note = " profile CSV rewrite differs";
    return false;
  }
  std::remove(jsonl.c_str());
  std::remove(csv1.c_str());
  std::remove(csv2.c_str());
  return true;
}

// --- 11: determinism ---------------------------------------------------------

bool determinism(std::string& note) {
  const auto run_batch = [] {
    std::vector<RunRecord> recs;
    for (const auto& entry : builtin_registry()) {
      recs.push_back(run_problem(entry.name, SolverOptions{}, "default"));
    }
    return recs;
  };
  const std::vector<RunRecord> a = run_batch();
  const std::vector<RunRecord> b = run_batch();
  for (size_t i = 0; i < a.size(); ++i) {
    RunRecord lhs = a[i];
    RunRecord rhs = b[i];
    lhs.wall_time = 0.0;  // the one permitted difference
    rhs.wall_time = 0.0;
    if (run_record_to_json(lhs) != run_record_to_json(rhs)) {
      note = " records differ beyond wall_time for " + a[i].problem;
      return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "registry solve suite hits the reference solutions", registry_suite},
      {2, "QP solutions match brute-force enumeration", qp_oracle_equivalence},
      {3, "damped BFGS keeps positive definiteness and the secant property",
       bfgs_properties},
      {4, "merit slope and penalty update calculus", merit_calculus},
      {5, "slack reset minimizes the merit over s >= 0",
       slack_reset_optimality},
      {6, "elastic path solves overdetermined equalities with the gamma "
          "schedule",
       elastic_path},
      {7, "undefined regions are skirted and reported", undefined_region},
      {8, "accepted Wolfe steps verify independently", wolfe_verification},
      {9, "scaled convergence tolerances are exact", convergence_exactness},
      {10, "profile pipeline reproduces hand values and round-trips",
       profile_pipeline},
      {11, "benchmark runs are deterministic", determinism},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    std::string note;
    bool ok = false;
    try {
      ok = criterion.run(note);
    } catch (const std::exception& e) {
      note = std::string(" exception: ") + e.what();
    }
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion.id
              << ": " << criterion.summary << note << "\n";
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
