#pragma once

#include <array>
#include <initializer_list>
#include <vector>

#include "einwave/jet.hpp"
#include "einwave/profiles.hpp"

namespace einwave {

/// An event (t, x1, x2, x3). The null coordinate s = x1 - t is the argument of
/// every profile.
struct SpacetimePoint {
  double t = 0.0;
  std::array<double, 3> x{};

  double s() const { return x[0] - t; }
  double coord(int i) const { return i == 0 ? t : x[static_cast<std::size_t>(i - 1)]; }
};

/// Counts of coordinate derivatives (d_t, d_x1, d_x2, d_x3).
using MultiIndex = std::array<int, 4>;

/// Powers of the basic profile functions making up one factor:
/// (1 + chi1)^c * chi1^chi1 * chi2^chi2 * chitilde2^chitilde2.
struct ProfileFactor {
  int c = 0;
  int chi1 = 0;
  int chi2 = 0;
  int chitilde2 = 0;
};

/// Powers of t, x2, x3.
struct Monomial {
  int t = 0;
  int x2 = 0;
  int x3 = 0;
};

/// coeff * t^a x2^b x3^c * F(x1 - t).
struct Term {
  double coeff = 0.0;
  Monomial mono;
  ProfileFactor factor;
};

/// A finite sum of terms. Every metric entry, inverse-metric entry and model
/// field used here has this form, so all derivatives are exact given the
/// profile jets.
class Field {
 public:
  Field() = default;
  Field(std::initializer_list<Term> terms) : terms_(terms) {}

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  Field& add(const Field& other, double scale = 1.0);
  Field scaled(double c) const;

 private:
  std::vector<Term> terms_;
};

/// Profile jets at one value of s.
struct ProfileJets {
  Jet c;  // 1 + chi1
  Jet chi1;
  Jet chi2;
  Jet chitilde2;

  /// `max_order` 2 throws SingularError on the singular line.
  static ProfileJets at(const ProfileFamily& family, double s, int max_order = 2);
};

Jet factor_jet(const ProfileFactor& f, const ProfileJets& jets);

/// One term after differentiation, restricted to a time slice: K * x2^q2 x3^q3
/// with K already containing every t and s dependence.
struct SliceMonomial {
  double coeff = 0.0;
  int x2 = 0;
  int x3 = 0;
};

/// d^a of a term at time t and null coordinate s, as a monomial in (x2, x3).
/// Total order of `a` in (t, x1) must not exceed 2.
SliceMonomial differentiate(const Term& term, const MultiIndex& a, double t,
                            const ProfileJets& jets);

/// d^a field at a point, |a| <= 2.
double derivative(const Field& field, const MultiIndex& a, const SpacetimePoint& p,
                  const ProfileJets& jets);

inline double value(const Field& field, const SpacetimePoint& p, const ProfileJets& jets) {
  return derivative(field, {0, 0, 0, 0}, p, jets);
}

/// Constant coordinate components of a direction field.
using Direction = std::array<double, 4>;

/// Directional derivative sum_i a^i d_i field.
double directional(const Field& field, const Direction& a, const SpacetimePoint& p,
                   const ProfileJets& jets);

/// Second directional derivative sum_ij a^i b^j d_i d_j field.
double directional2(const Field& field, const Direction& a, const Direction& b,
                    const SpacetimePoint& p, const ProfileJets& jets);

}  // namespace einwave
