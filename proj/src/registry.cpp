#include <cmath>

#include "sqpkit/bench.hpp"

namespace sqpkit {

namespace {

ProblemSpec unconstrained_quadratic() {
  ProblemSpec spec;
  spec.name = "uncon-quadratic";
  spec.n = 2;
  spec.x0 = Vector{{3.0, 4.0}};
  spec.objective = [](const Vector& x, double& f, Vector& g) {
    f = 0.5 * x.squaredNorm();
    g = x;
    return true;
  };
  return spec;
}

ProblemSpec rosenbrock() {
  ProblemSpec spec;
  spec.name = "rosenbrock";
  spec.n = 2;
  spec.x0 = Vector{{-1.2, 1.0}};
  spec.objective = [](const Vector& x, double& f, Vector& g) {
    const double a = 1.0 - x(0);
    const double b = x(1) - x(0) * x(0);
    f = a * a + 100.0 * b * b;
    g(0) = -2.0 * a - 400.0 * x(0) * b;
    g(1) = 200.0 * b;
    return true;
  };
  return spec;
}

ProblemSpec eqcon_quadratic() {
  ProblemSpec spec;
  spec.name = "eqcon-quadratic";
  spec.n = 2;
  spec.x0 = Vector{{0.0, 0.0}};
  spec.objective = [](const Vector& x, double& f, Vector& g) {
    f = x.squaredNorm();
    g = 2.0 * x;
    return true;
  };
  spec.constraints.push_back(
      {[](const Vector& x, double& c, Vector& grad) {
         c = x(0) + x(1) - 1.0;
         grad << 1.0, 1.0;
         return true;
       },
       ConstraintKind::Equality});
  return spec;
}

ProblemSpec circle_lin() {
  ProblemSpec spec;
  spec.name = "circle-lin";
  spec.n = 2;
  spec.x0 = Vector{{0.0, 0.0}};
  spec.objective = [](const Vector& x, double& f, Vector& g) {
    f = x(0) + x(1);
    g << 1.0, 1.0;
    return true;
  };
  spec.constraints.push_back(
      {[](const Vector& x, double& c, Vector& grad) {
         c = 1.0 - x.squaredNorm();
         grad = -2.0 * x;
         return true;
       },
       ConstraintKind::InequalityGeZero});
  return spec;
}

// Three consistent nonlinear equalities in two variables; the feasible set
// is {(0.6, 0.8), (0.8, 0.6)} and every linearization is overdetermined,
// so the plain QP is inconsistent away from a solution.
ProblemSpec overdetermined_equalities() {
  ProblemSpec spec;
  spec.name = "overdet-eq";
  spec.n = 2;
  spec.x0 = Vector{{0.5, 0.9}};
  spec.objective = [](const Vector& x, double& f, Vector& g) {
    f = x.squaredNorm();
    g = 2.0 * x;
    return true;
  };
  spec.constraints.push_back(
      {[](const Vector& x, double& c, Vector& grad) {
         c = x.squaredNorm() - 1.0;
         grad = 2.0 * x;
         return true;
       },
       ConstraintKind::Equality});
  spec.constraints.push_back(
      {[](const Vector& x, double& c, Vector& grad) {
         c = x(0) * x(1) - 0.48;
         grad << x(1), x(0);
         return true;
       },
       ConstraintKind::Equality});
  spec.constraints.push_back(
      {[](const Vector& x, double& c, Vector& grad) {
         c = x(0) + x(1) - 1.4;
         grad << 1.0, 1.0;
         return true;
       },
       ConstraintKind::Equality});
  return spec;
}

ProblemSpec box_infeasible() {
  ProblemSpec spec;
  spec.name = "box-infeasible";
  spec.n = 1;
  spec.x0 = Vector{{0.5}};
  spec.objective = [](const Vector& x, double& f, Vector& g) {
    f = x(0) * x(0);
    g(0) = 2.0 * x(0);
    return true;
  };
  spec.constraints.push_back({[](const Vector& x, double& c, Vector& grad) {
                                c = x(0) - 1.0;
                                grad(0) = 1.0;
                                return true;
                              },
                              ConstraintKind::InequalityGeZero});
  spec.constraints.push_back({[](const Vector& x, double& c, Vector& grad) {
                                c = -x(0);
                                grad(0) = -1.0;
                                return true;
                              },
                              ConstraintKind::InequalityGeZero});
  return spec;
}

// Objective defined only for x > 0 with descent pointing out of the domain.
ProblemSpec sqrt_domain() {
  ProblemSpec spec;
  spec.name = "sqrt-domain";
  spec.n = 1;
  spec.x0 = Vector{{0.25}};
  spec.objective = [](const Vector& x, double& f, Vector& g) {
    if (x(0) <= 0.0) return false;
    f = std::sqrt(x(0)) + 0.5 * x(0);
    g(0) = 0.5 / std::sqrt(x(0)) + 0.5;
    return true;
  };
  return spec;
}

ProblemSpec box_clamped_start() {
  ProblemSpec spec;
  spec.name = "box-clamped-start";
  spec.n = 2;
  spec.x0 = Vector{{-5.0, 7.0}};
  spec.lower = Vector{{0.0, -1.0}};
  spec.upper = Vector{{1.0, 1.0}};
  spec.objective = [](const Vector& x, double& f, Vector& g) {
    const double a = x(0) - 2.0;
    const double b = x(1) + 3.0;
    f = a * a + b * b;
    g << 2.0 * a, 2.0 * b;
    return true;
  };
  return spec;
}

ProblemSpec convex_50() {
  ProblemSpec spec;
  spec.name = "convex-50";
  spec.n = 50;
  spec.x0 = Vector::Zero(50);
  spec.objective = [](const Vector& x, double& f, Vector& g) {
    f = 0.0;
    for (Index i = 0; i < x.size(); ++i) {
      const double d = 1.0 + 9.0 * static_cast<double>(i) / 49.0;
      f += 0.5 * d * x(i) * x(i) - x(i);
      g(i) = d * x(i) - 1.0;
    }
    return true;
  };
  return spec;
}

ProblemSpec nonconvex_wells() {
  ProblemSpec spec;
  spec.name = "nonconvex-wells";
  spec.n = 2;
  spec.x0 = Vector{{0.8, 0.5}};
  spec.objective = [](const Vector& x, double& f, Vector& g) {
    const double a = x(0) * x(0) - 1.0;
    f = a * a + x(1) * x(1);
    g << 4.0 * x(0) * a, 2.0 * x(1);
    return true;
  };
  return spec;
}

std::vector<RegistryEntry> make_registry() {
  std::vector<RegistryEntry> reg;

  reg.push_back({"uncon-quadratic", unconstrained_quadratic,
                 ReferenceSolution{Vector::Zero(2), 0.0}});
  reg.push_back(
      {"rosenbrock", rosenbrock, ReferenceSolution{Vector{{1.0, 1.0}}, 0.0}});
  reg.push_back({"eqcon-quadratic", eqcon_quadratic,
                 ReferenceSolution{Vector{{0.5, 0.5}}, 0.5}});
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  reg.push_back({"circle-lin", circle_lin,
                 ReferenceSolution{Vector{{-inv_sqrt2, -inv_sqrt2}},
                                   -std::sqrt(2.0)}});
  reg.push_back({"overdet-eq", overdetermined_equalities, std::nullopt});
  reg.push_back({"box-infeasible", box_infeasible, std::nullopt});
  reg.push_back({"sqrt-domain", sqrt_domain, std::nullopt});
  reg.push_back({"box-clamped-start", box_clamped_start,
                 ReferenceSolution{Vector{{1.0, -1.0}}, 5.0}});
  Vector conv50_star(50);
  double conv50_f = 0.0;
  for (Index i = 0; i < 50; ++i) {
    const double d = 1.0 + 9.0 * static_cast<double>(i) / 49.0;
    conv50_star(i) = 1.0 / d;
    conv50_f -= 0.5 / d;
  }
  reg.push_back(
      {"convex-50", convex_50, ReferenceSolution{conv50_star, conv50_f}});
  reg.push_back({"nonconvex-wells", nonconvex_wells,
                 ReferenceSolution{Vector{{1.0, 0.0}}, 0.0}});
  return reg;
}

}  // namespace

const std::vector<RegistryEntry>& builtin_registry() {
  static const std::vector<RegistryEntry> registry = make_registry();
  return registry;
}

const RegistryEntry* find_problem(std::string_view name) {
  for (const auto& entry : builtin_registry()) {
    if (entry.name == name) return &entry;
  }
  return nullptr;
}

}  // namespace sqpkit
