#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "einwave/fields.hpp"
#include "einwave/numerics/quadrature.hpp"
#include "einwave/profiles.hpp"

namespace einwave {

using numerics::QuadratureOutcome;

enum class SliceKind { ball, bent, empty };

std::string to_string(SliceKind k);

/// Time slice of a domain, foliated by discs {x1 = const} centred on the x1 axis.
///   ball B_t: (x1 - 1)^2 + x2^2 + x3^2 < (1 - t)^2
///   bent D_t: (x1 - 1)^2 H(x1 - 1) + (x2^2 + x3^2) / 4 < (1 - t)^2,
///             H = 1 for x1 < 1 and 1/4 for x1 >= 1.
/// Both start at x1 = t, i.e. on the singular line s = 0.
struct DomainSlice {
  SliceKind kind = SliceKind::empty;
  double t = 0.0;
  double x1_min = 0.0;
  double x1_max = 0.0;

  bool empty() const { return kind == SliceKind::empty; }
  /// Squared radius of the cross-section at s = x1 - t (0 outside), in
  /// factored form so that it keeps full relative accuracy as s -> 0.
  double rho2_s(double s) const;
  /// Cross-section area.
  double w0_s(double s) const;
  /// Single-axis second moment int x2^2 dA = w0^2 / (4 pi).
  double w2_s(double s) const;
  double w0(double x1) const { return w0_s(x1 - t); }
  double w2(double x1) const { return w2_s(x1 - t); }
  /// Largest s = x1 - t on the slice.
  double s_max() const { return x1_max - t; }
  /// Interior values of s where the weight is not smooth.
  std::vector<double> kinks_s() const;
};

DomainSlice slice(SliceKind kind, double t);

/// Cell-centred n^3 sample of the interior of the domain over 0 < t < t_max:
/// t_i = t_max (i + 1/2) / n, s_j = s_max(t_i) (j + 1/2) / n, and a transverse
/// point at radius fraction (k + 1/2) / n of the cross-section, rotated by the
/// golden angle from one k to the next.
std::vector<SpacetimePoint> interior_grid(SliceKind kind, int n, double t_max = 0.9);

/// int x2^p2 x3^p3 dA over the disc x2^2 + x3^2 < rho2.
double disc_moment(int p2, int p3, double rho2);

/// Cross-section integrated density as a function of s = x1 - t.
using SliceDensity = std::function<double(double)>;

struct LadderSpec {
  int k_min = 4;   // first cutoff 2^-k_min
  int k_max = 40;  // last cutoff 2^-k_max
  double quad_tol = 1e-10;

  std::vector<double> deltas() const;
};

struct LadderRung {
  double delta = 0.0;
  double value = 0.0;      // int over s in (delta, s_max)
  double increment = 0.0;  // value - previous value (first rung: value)
  double error = 0.0;      // accumulated quadrature error estimate
};

/// Truncated integrals I(delta_k) of `density` over the slice, built
/// incrementally so that deep increments are not lost to cancellation.
/// Throws QuadratureError on non-convergence.
std::vector<LadderRung> build_ladder(const SliceDensity& density, const DomainSlice& slice,
                                     const LadderSpec& spec);

/// int_delta^{s_max} density(s) ds over the slice with log substitution at the
/// singular end.
QuadratureOutcome slice_integral(const SliceDensity& density, const DomainSlice& slice,
                                 double delta, double quad_tol);

/// f^(order)(s)^2 for a single profile.
struct SquaredProfile {
  Profile profile = Profile::chi1;
  int order = 2;
};

/// int (f^(order)(x1 - t))^2 w_moment(x1) dx1 over the slice minus |x1 - t| < delta.
QuadratureOutcome reduced_integral(const ProfileFamily& family, SquaredProfile f,
                                   const DomainSlice& slice, int moment, double delta,
                                   double quad_tol);

enum class Verdict { finite, divergent, inconclusive, empty };
enum class VerdictRule { none, stationary, geometric, log_power, zero_measure };

std::string to_string(Verdict v);
std::string to_string(VerdictRule r);

struct DivergenceVerdict {
  Verdict verdict = Verdict::inconclusive;
  VerdictRule rule = VerdictRule::none;
  double limit = 0.0;      // finite verdicts
  double exponent = 0.0;   // fitted p of I ~ a + b l^p
  double amplitude = 0.0;  // b
  double offset = 0.0;     // a
  double fit_r2 = 0.0;
  double max_ratio = 0.0;  // largest increment ratio in the geometric window
  std::vector<LadderRung> ladder;
};

struct ClassifyOptions {
  double ratio_max = 0.5;  // geometric rule: |d_{k+1} / d_k| <= ratio_max
  int window = 4;          // ratios checked at the end of the ladder
  double min_r2 = 0.99;
  double log_scale = 1.0;  // l = log(log_scale / delta)
  double fit_fraction = 0.5;  // the fit uses this deepest fraction of the rungs
  int min_rungs = 8;
};

/// Finite if the increments decay geometrically over the last `window`
/// rungs, or if I = a + b l^p fits with b < 0, p < 0 (limit a). Divergent if
/// the fit has b > 0, p > 0. Otherwise inconclusive.
DivergenceVerdict classify(std::span<const LadderRung> ladder, const ClassifyOptions& opts = {});

/// Classification options used for profile ladders: l = log(4 / delta) is the
/// natural variable of the log-power singularities.
ClassifyOptions profile_classify_options();

/// Spatial multi-indices of order <= `order`, optionally shifted by one d_t.
std::vector<MultiIndex> sobolev_indices(int order, bool with_dt);

/// sum_a int_{disc} |d^a field|^2 dA at s on the slice.
double field_density(const Field& field, std::span<const MultiIndex> indices,
                     const ProfileFamily& family, const DomainSlice& slice, double s);

enum class NormKind { h2, dt_h1 };

std::string to_string(NormKind k);

struct ComponentVerdict {
  std::string component;  // "g00", "phi2", ...
  NormKind norm = NormKind::h2;
  double t = 0.0;
  DivergenceVerdict verdict;
};

DivergenceVerdict classify_field(const Field& field, NormKind norm, const ProfileFamily& family,
                                 const DomainSlice& slice, const LadderSpec& spec);

/// Coordinate components of g - m as structured fields (index pairs mu <= nu).
const std::array<Field, 10>& coordinate_perturbation_fields();

struct NormReport {
  double t = 0.0;
  SliceKind kind = SliceKind::bent;
  std::vector<ComponentVerdict> components;
  /// sqrt(sum over all 16 mu,nu of the limits); infinite unless every
  /// ladder of that norm kind is finite.
  double h2_norm = 0.0;
  double dt_h1_norm = 0.0;
  bool all_finite = false;
};

/// H^2 of g(t) - m and H^1 of d_t g(t) on D_t, per coordinate component.
NormReport norm_report(double t, const ProfileFamily& family, const LadderSpec& spec = {});

/// H^2 ladders of phi1 and phi2 on the ball B_t.
std::vector<ComponentVerdict> model_norm_profile(double t, const ProfileFamily& family,
                                                 const LadderSpec& spec = {});

}  // namespace einwave
