#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "einwave/fields.hpp"
#include "einwave/profiles.hpp"

namespace einwave {

enum class BoundaryPiece { c1, c2 };

std::string to_string(BoundaryPiece p);

/// A point of the lateral boundary of D,
///   C1: x1 < 1,  (x1 - 1)^2     + (x2^2 + x3^2) / 4 = (1 - t)^2
///   C2: x1 >= 1, (x1 - 1)^2 / 4 + (x2^2 + x3^2) / 4 = (1 - t)^2.
struct BoundaryPoint {
  BoundaryPiece piece = BoundaryPiece::c1;
  SpacetimePoint p;

  double u() const { return 0.5 * (p.t - p.x[0]); }
  double v() const { return 0.5 * (p.t + p.x[0]); }
  double rho2() const { return p.x[1] * p.x[1] + p.x[2] * p.x[2]; }

  /// Polar parameterization: theta in [0, pi/2] measures the opening from the
  /// apex side (theta = 0 is u = 0 on C1 and x1 = 3 - 2t on C2), phi is the
  /// angle in the (x2, x3) plane.
  static BoundaryPoint on(BoundaryPiece piece, double t, double theta, double phi);
};

/// Left side minus right side of the defining equation.
double defining_residual(const BoundaryPoint& b);

/// Coordinate components (dt, dx1, dx2, dx3). On C1
///   n = 2(1 - t) dt - 2(1 - x1) dx1 + x2 dx2 / 2 + x3 dx3 / 2,
/// on C2 the gradient of its defining quadratic. Throws GeometryError if the
/// defining residual exceeds 1e-10.
std::array<double, 4> conormal(const BoundaryPoint& b);

/// C1 conormal in null coordinates (du, dv, dx2, dx3):
///   n = 4(1 - v) du - 4u dv + x2 dx2 / 2 + x3 dx3 / 2.
std::array<double, 4> null_conormal(const BoundaryPoint& b);

/// dt = du + dv, dx1 = dv - du.
std::array<double, 4> null_to_coordinate(const std::array<double, 4>& n_uv);

struct CausalCharacter {
  double q = 0.0;       // g^{ab} n_a n_b
  double q_mink = 0.0;  // m^{ab} n_a n_b
  /// (|chi1| + |chitilde2|) rho^2 + |g^{LL}| u^2, the scale of q - q_mink.
  double comparison_scale = 0.0;
};

CausalCharacter causal_character(const BoundaryPoint& b, const ProfileFamily& family);

/// The hand expansion of g^{ab} n_a n_b on C1,
///   16(1 - v)u + rho^2/4 + (x3^2 - x2^2/(1 + chi1)) chi1 / 4 - rho^2 (1 - v) chitilde2
///   + 16 u^2 chitilde2 ((u + v)/4 + (x2^2 (1 + chi1) + x3^2 / (1 + chi1)) chitilde2 / 64).
/// Kept as a cross-check of causal_character.
double c1_expanded_form(const BoundaryPoint& b, const ProfileFamily& family);

struct ScanSpec {
  int t_levels = 10;    // t = j / t_levels, j = 0 .. t_levels - 1
  int radial = 25;      // theta levels per piece
  int angles = 20;      // phi levels
  double q_tol = 1e-10;
  double null_window = 1e-8;
  double u_window = 1e-4;

  std::size_t points() const {
    return 2u * static_cast<std::size_t>(t_levels) * static_cast<std::size_t>(radial) *
           static_cast<std::size_t>(angles);
  }
};

struct ScanSample {
  BoundaryPiece piece = BoundaryPiece::c1;
  double t = 0.0;
  double u = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  double q = 0.0;
  double q_mink = 0.0;
  double q_expanded = 0.0;  // C1 only
};

struct ScanReport {
  std::vector<ScanSample> samples;
  double max_q = 0.0;
  ScanSample max_q_at;
  std::size_t near_null = 0;
  double near_null_max_abs_u = 0.0;
  double max_c2_q = 0.0;          // largest q on C2
  double max_defining_residual = 0.0;
  double comparison_constant = 0.0;  // max |q - q_mink| / comparison_scale
  double max_mink_deviation = 0.0;   // max |q_mink + 3 rho^2 / 4| on C1
  double max_expansion_mismatch = 0.0;
  std::optional<ScanSample> violation;  // first sample with q > q_tol

  bool passed(const ScanSpec& spec) const {
    return !violation && near_null_max_abs_u <= spec.u_window && max_c2_q < 0.0;
  }
};

ScanReport boundary_scan(const ScanSpec& spec, const ProfileFamily& family);

/// Columns piece,t,u,theta,phi,Q,Q_mink,Q_expanded.
void write_scan_csv(std::ostream& os, const ScanReport& report);

}  // namespace einwave
