#pragma once

#include "einwave/fields.hpp"
#include "einwave/profiles.hpp"

namespace einwave {

/// The semilinear model  box phi2 = -(Lbar phi1)^2,  box phi1 = 0  with the exact
/// solution phi1 = chi1(x1 - t), phi2 = -t chi2(x1 - t) on the cone
/// |x - (1,0,0)| <= 1 - t, t >= 0.
class ModelSolution {
 public:
  static constexpr double kDefaultCutoff = 1e-6;

  explicit ModelSolution(ProfileFamily family, double singular_cutoff = kDefaultCutoff);

  const ProfileFamily& family() const { return family_; }
  static const Field& field(int which);

  static bool in_cone(const SpacetimePoint& p);

  /// d^a phi_which. Throws DomainError outside the cone and SingularError for
  /// second-order requests within the cutoff of x1 = t.
  double eval(const SpacetimePoint& p, int which, const MultiIndex& a) const;

  struct Residual {
    double r1 = 0.0;  // box phi1
    double r2 = 0.0;  // box phi2 + (Lbar phi1)^2
  };
  Residual residual(const SpacetimePoint& p) const;

  /// box = -d_t^2 + d_x1^2 + d_x2^2 + d_x3^2 of phi_which.
  double box(const SpacetimePoint& p, int which) const;
  /// (d_t - d_x1) phi_which.
  double lbar(const SpacetimePoint& p, int which) const;

 private:
  void check(const SpacetimePoint& p, int order) const;
  ProfileFamily family_;
  double cutoff_;
};

}  // namespace einwave
