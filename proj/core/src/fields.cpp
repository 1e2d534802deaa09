#include "einwave/fields.hpp"

#include <cmath>

namespace einwave {
namespace {

/// d^n/dx^n x^p evaluated as coefficient * x^(p-n); returns the coefficient.
double falling(int p, int n) {
  if (n > p) return 0.0;
  double c = 1.0;
  for (int k = 0; k < n; ++k) c *= static_cast<double>(p - k);
  return c;
}

double ipow(double x, int n) {
  double r = 1.0;
  for (int k = 0; k < n; ++k) r *= x;
  return r;
}

constexpr double binom(int n, int k) {
  return (n == 2 && k == 1) ? 2.0 : 1.0;
}

}  // namespace

Field& Field::add(const Field& other, double scale) {
  for (Term t : other.terms_) {
    t.coeff *= scale;
    if (t.coeff != 0.0) terms_.push_back(t);
  }
  return *this;
}

Field Field::scaled(double c) const {
  Field out;
  out.add(*this, c);
  return out;
}

ProfileJets ProfileJets::at(const ProfileFamily& family, double s, int max_order) {
  ProfileJets j;
  j.chi1 = family.jet(Profile::chi1, s, max_order);
  j.c = j.chi1 + Jet::constant(1.0);
  j.chi2 = family.jet(Profile::chi2, s, max_order);
  j.chitilde2 = family.jet(Profile::chitilde2, s, max_order);
  return j;
}

Jet factor_jet(const ProfileFactor& f, const ProfileJets& jets) {
  Jet out = Jet::constant(1.0);
  if (f.c != 0) out = out * pow(jets.c, f.c);
  if (f.chi1 != 0) out = out * pow(jets.chi1, f.chi1);
  if (f.chi2 != 0) out = out * pow(jets.chi2, f.chi2);
  if (f.chitilde2 != 0) out = out * pow(jets.chitilde2, f.chitilde2);
  return out;
}

SliceMonomial differentiate(const Term& term, const MultiIndex& a, double t,
                            const ProfileJets& jets) {
  const auto [nt, n1, n2, n3] = a;
  SliceMonomial out;
  out.x2 = term.mono.x2 - n2;
  out.x3 = term.mono.x3 - n3;
  const double space = falling(term.mono.x2, n2) * falling(term.mono.x3, n3);
  if (space == 0.0) return out;

  const Jet f = factor_jet(term.factor, jets);
  // d_t acts on t^p and on F(x1 - t) (with a minus sign); d_x1 only on F.
  double sum = 0.0;
  for (int k = 0; k <= nt; ++k) {
    const double tpart = falling(term.mono.t, k) * ipow(t, std::max(term.mono.t - k, 0));
    if (tpart == 0.0) continue;
    const int order = nt - k + n1;
    const double sign = ((nt - k) % 2 == 0) ? 1.0 : -1.0;
    sum += binom(nt, k) * tpart * sign * f.derivative(order);
  }
  out.coeff = term.coeff * space * sum;
  return out;
}

double derivative(const Field& field, const MultiIndex& a, const SpacetimePoint& p,
                  const ProfileJets& jets) {
  double sum = 0.0;
  for (const auto& term : field.terms()) {
    const auto m = differentiate(term, a, p.t, jets);
    if (m.coeff == 0.0) continue;
    sum += m.coeff * ipow(p.x[1], m.x2) * ipow(p.x[2], m.x3);
  }
  return sum;
}

double directional(const Field& field, const Direction& a, const SpacetimePoint& p,
                   const ProfileJets& jets) {
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (a[static_cast<std::size_t>(i)] == 0.0) continue;
    MultiIndex m{};
    m[static_cast<std::size_t>(i)] = 1;
    sum += a[static_cast<std::size_t>(i)] * derivative(field, m, p, jets);
  }
  return sum;
}

double directional2(const Field& field, const Direction& a, const Direction& b,
                    const SpacetimePoint& p, const ProfileJets& jets) {
  double sum = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < 4; ++j) {
      if (b[j] == 0.0) continue;
      MultiIndex m{};
      m[i] += 1;
      m[j] += 1;
      sum += a[i] * b[j] * derivative(field, m, p, jets);
    }
  }
  return sum;
}

}  // namespace einwave
