#pragma once

#include <iosfwd>
#include <memory>
#include <span>
#include <string>

#include "einwave/jet.hpp"

namespace einwave {

/// Amplitude and log-power exponent of the singular profiles.
struct ProfileParams {
  double epsilon = 0.1;
  double alpha = 0.4;

  /// Throws ConfigError unless epsilon >= 0 and 1/4 < alpha < 1/2. With
  /// `allow_out_of_range` any alpha in (0, 1) is accepted (negative controls).
  void validate(bool allow_out_of_range = false) const;
};

enum class Profile { chi1, chi2, chitilde2 };

std::string to_string(Profile p);

/// One profile evaluation. `singular` marks a second derivative requested at
/// s = 0, where the value is unbounded and `value` is +inf.
struct ProfileEval {
  double value = 0.0;
  int order = 0;
  bool singular = false;
  double s = 0.0;
};

/// Which function plays the role of the Riccati profile. `chi2` is the
/// negative control that breaks Ricci-flatness on purpose.
enum class RiccatiSource { riccati, chi2 };

struct ProfileBuildOptions {
  double grid_step = 0.01;   // node spacing in u = log(4/|s|)
  double blowup_bound = 8.0;
  RiccatiSource source = RiccatiSource::riccati;
  /// q in chitilde2' = 2 chi1'^2 (1 + chi1)^-2 + q chitilde2^2. 1/8 is the value
  /// for which Ric_{Lbar Lbar} of the metric vanishes; 1/16 is kept selectable.
  double riccati_quadratic = 0.125;
  bool allow_out_of_range = false;
  int max_refinements = 3;   // grid halvings tried before giving up on ode_tol
};

/// The three profiles chi1, chi2 and the Riccati-corrected chitilde2 as
/// functions of the null coordinate s = x1 - t, with derivatives up to order
/// two. Immutable after construction; copies share the tables.
///
/// chi1(s) = eps * int_0^s |log|r/4||^alpha dr, chi2(s) = 2 int_0^s chi1'^2,
/// and chitilde2 solves
///   chitilde2' = 2 chi1'^2 (1 + chi1)^-2 + q chitilde2^2,  chitilde2(0) = 0.
class ProfileFamily {
 public:
  /// Largest |s| accepted by the evaluators; the profiles are smooth on
  /// 0 < |s| < 4 and the bent domain reaches s = 3 at t = 0.
  static constexpr double kDomain = 3.5;
  /// |s| below this is treated as exactly zero.
  static constexpr double kZeroWindow = 1e-300;

  static ProfileFamily build(const ProfileParams& params, double ode_tol = 1e-10,
                             const ProfileBuildOptions& opts = {});

  const ProfileParams& params() const;
  RiccatiSource source() const;
  double ode_tol() const;
  double riccati_quadratic() const;

  ProfileEval chi1(double s, int order) const;
  ProfileEval chi2(double s, int order) const;
  ProfileEval chitilde2(double s, int order) const;
  ProfileEval eval(Profile p, double s, int order) const;

  /// Value and derivatives up to `max_order`; entries above `max_order` are 0.
  /// Throws SingularError when max_order == 2 and s is zero.
  Jet jet(Profile p, double s, int max_order = 2) const;

  /// Right-hand side 2 chi1'(s)^2 (1 + chi1(s))^-2 + q y^2.
  double riccati_rhs(double s, double y) const;

  /// chitilde2' - rhs(s, chitilde2) with chitilde2' taken from the stored
  /// interpolant (not from the ODE), so this measures how well the table
  /// solves the equation.
  double ode_residual(double s) const;

  /// Largest |ode_residual| over the cell midpoints checked at build time.
  double max_ode_residual() const;

  /// Node spacing in u that met the residual tolerance.
  double grid_step() const;

 private:
  struct Impl;
  explicit ProfileFamily(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

struct ProfileBounds {
  double sup_chitilde2 = 0.0;    // sup over |s| <= 1
  double chi1_energy = 0.0;      // int_0^1 chi1'^2 ds
  double sup_gap = 0.0;          // sup over |s| <= 1 of |chitilde2 - chi2|
  bool pass = false;
};

/// Computes the bootstrap quantities without throwing.
ProfileBounds profile_bounds(const ProfileFamily& family);

/// As profile_bounds, but throws VerificationFailure naming the violated
/// constant (sup|chitilde2| <= 2 or int chi1'^2 <= 1).
ProfileBounds profile_bound_check(const ProfileFamily& family);

/// CSV table with columns s, chi1, chi1', chi2, chi2', chitilde2, chitilde2'.
void write_profile_csv(std::ostream& os, const ProfileFamily& family,
                       std::span<const double> s_values);

}  // namespace einwave
