#include "einwave/model_system.hpp"

#include <cmath>
#include <utility>

#include "einwave/errors.hpp"

namespace einwave {

ModelSolution::ModelSolution(ProfileFamily family, double singular_cutoff)
    : family_(std::move(family)), cutoff_(singular_cutoff) {}

const Field& ModelSolution::field(int which) {
  static const Field phi1{{1.0, {}, {0, 1, 0, 0}}};
  static const Field phi2{{-1.0, {1, 0, 0}, {0, 0, 1, 0}}};
  if (which == 1) return phi1;
  if (which == 2) return phi2;
  throw ConfigError("model field index must be 1 or 2");
}

bool ModelSolution::in_cone(const SpacetimePoint& p) {
  if (p.t < 0.0) return false;
  return std::hypot(p.x[0] - 1.0, p.x[1], p.x[2]) <= 1.0 - p.t;
}

void ModelSolution::check(const SpacetimePoint& p, int order) const {
  if (!in_cone(p)) throw DomainError("point outside the model cone");
  if (order >= 2 && std::abs(p.s()) < cutoff_)
    throw SingularError("second derivative requested on the singular line x1 = t");
}

double ModelSolution::eval(const SpacetimePoint& p, int which, const MultiIndex& a) const {
  const int order = a[0] + a[1] + a[2] + a[3];
  if (order > 2) throw ConfigError("derivative order above 2");
  check(p, order);
  const auto jets = ProfileJets::at(family_, p.s(), order);
  return derivative(field(which), a, p, jets);
}

double ModelSolution::box(const SpacetimePoint& p, int which) const {
  check(p, 2);
  const auto jets = ProfileJets::at(family_, p.s(), 2);
  const Field& f = field(which);
  return -derivative(f, {2, 0, 0, 0}, p, jets) + derivative(f, {0, 2, 0, 0}, p, jets) +
         derivative(f, {0, 0, 2, 0}, p, jets) + derivative(f, {0, 0, 0, 2}, p, jets);
}

double ModelSolution::lbar(const SpacetimePoint& p, int which) const {
  check(p, 1);
  const auto jets = ProfileJets::at(family_, p.s(), 1);
  return directional(field(which), {1.0, -1.0, 0.0, 0.0}, p, jets);
}

ModelSolution::Residual ModelSolution::residual(const SpacetimePoint& p) const {
  const double l = lbar(p, 1);
  return {box(p, 1), box(p, 2) + l * l};
}

}  // namespace einwave
