#include "einwave/causality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "einwave/errors.hpp"
#include "einwave/frame.hpp"
#include "einwave/metric.hpp"

namespace einwave {
namespace {

double contract(const CoordSymTensor2& ginv, const std::array<double, 4>& n) {
  double q = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) q += ginv(a, b) * n[static_cast<std::size_t>(a)] * n[static_cast<std::size_t>(b)];
  return q;
}

}  // namespace

std::string to_string(BoundaryPiece p) { return p == BoundaryPiece::c1 ? "C1" : "C2"; }

BoundaryPoint BoundaryPoint::on(BoundaryPiece piece, double t, double theta, double phi) {
  if (!(t < 1.0)) throw GeometryError("boundary pieces are empty for t >= 1");
  const double R = 1.0 - t;
  const double rho = 2.0 * R * std::sin(theta);
  BoundaryPoint b;
  b.piece = piece;
  b.p.t = t;
  // On C1 theta = 0 must land exactly on x1 = t.
  b.p.x[0] = piece == BoundaryPiece::c1 ? t + 2.0 * R * std::sin(0.5 * theta) * std::sin(0.5 * theta)
                                        : 1.0 + 2.0 * R * std::cos(theta);
  b.p.x[1] = rho * std::cos(phi);
  b.p.x[2] = rho * std::sin(phi);
  return b;
}

double defining_residual(const BoundaryPoint& b) {
  const double d = b.p.x[0] - 1.0;
  const double R = 1.0 - b.p.t;
  const double h = b.piece == BoundaryPiece::c1 ? 1.0 : 0.25;
  return h * d * d + 0.25 * b.rho2() - R * R;
}

std::array<double, 4> conormal(const BoundaryPoint& b) {
  const double r = defining_residual(b);
  const bool side_ok = b.piece == BoundaryPiece::c1 ? b.p.x[0] < 1.0 : b.p.x[0] >= 1.0;
  if (std::abs(r) > 1e-10 || !side_ok) {
    std::ostringstream msg;
    msg << "point is not on " << to_string(b.piece) << " (defining residual " << r << ")";
    throw GeometryError(msg.str());
  }
  const double R = 1.0 - b.p.t;
  const double h = b.piece == BoundaryPiece::c1 ? 1.0 : 0.25;
  return {2.0 * R, 2.0 * h * (b.p.x[0] - 1.0), 0.5 * b.p.x[1], 0.5 * b.p.x[2]};
}

std::array<double, 4> null_conormal(const BoundaryPoint& b) {
  if (b.piece != BoundaryPiece::c1) throw GeometryError("null-coordinate conormal is defined on C1");
  return {4.0 * (1.0 - b.v()), -4.0 * b.u(), 0.5 * b.p.x[1], 0.5 * b.p.x[2]};
}

std::array<double, 4> null_to_coordinate(const std::array<double, 4>& n) {
  // n_u du + n_v dv with du = (dt - dx1)/2, dv = (dt + dx1)/2.
  return {0.5 * (n[0] + n[1]), 0.5 * (n[1] - n[0]), n[2], n[3]};
}

CausalCharacter causal_character(const BoundaryPoint& b, const ProfileFamily& family) {
  const auto n = conormal(b);
  const FrameSymTensor2 ginv_frame = inverse_metric_frame(b.p, family);
  const CoordSymTensor2 ginv = frame_to_coord(ginv_frame);
  const CoordSymTensor2 mink = frame_to_coord(minkowski_frame(Variance::contravariant));
  CausalCharacter out;
  out.q = contract(ginv, n);
  out.q_mink = contract(mink, n);
  const auto j = ProfileJets::at(family, b.p.s(), 0);
  const double u = b.u();
  out.comparison_scale = (std::abs(j.chi1.v) + std::abs(j.chitilde2.v)) * b.rho2() +
                         std::abs(ginv_frame.comp(0, 0)) * u * u;
  return out;
}

double c1_expanded_form(const BoundaryPoint& b, const ProfileFamily& family) {
  const auto j = ProfileJets::at(family, b.p.s(), 0);
  const double chi1 = j.chi1.v;
  const double c = 1.0 + chi1;
  const double y = j.chitilde2.v;
  const double u = b.u(), v = b.v();
  const double x2s = b.p.x[1] * b.p.x[1], x3s = b.p.x[2] * b.p.x[2];
  const double rho2 = x2s + x3s;
  return 16.0 * (1.0 - v) * u + 0.25 * rho2 + 0.25 * (x3s - x2s / c) * chi1 - rho2 * (1.0 - v) * y +
         16.0 * u * u * y * (0.25 * (u + v) + (x2s * c + x3s / c) * y / 64.0);
}

ScanReport boundary_scan(const ScanSpec& spec, const ProfileFamily& family) {
  if (spec.t_levels < 1 || spec.radial < 2 || spec.angles < 1)
    throw ConfigError("boundary scan needs t_levels >= 1, radial >= 2, angles >= 1");
  ScanReport rep;
  rep.samples.reserve(spec.points());
  rep.max_q = -std::numeric_limits<double>::infinity();
  rep.max_c2_q = -std::numeric_limits<double>::infinity();
  const double half_pi = 0.5 * std::numbers::pi;

  for (const BoundaryPiece piece : {BoundaryPiece::c1, BoundaryPiece::c2}) {
    for (int jt = 0; jt < spec.t_levels; ++jt) {
      const double t = static_cast<double>(jt) / spec.t_levels;
      for (int k = 0; k < spec.radial; ++k) {
        // C1 stops short of x1 = 1, which belongs to C2.
        const double theta = piece == BoundaryPiece::c1 ? half_pi * k / spec.radial
                                                        : half_pi * k / (spec.radial - 1);
        for (int m = 0; m < spec.angles; ++m) {
          const double phi = 2.0 * std::numbers::pi * m / spec.angles;
          const BoundaryPoint b = BoundaryPoint::on(piece, t, theta, phi);
          const auto cc = causal_character(b, family);
          ScanSample s{piece, t, b.u(), theta, phi, cc.q, cc.q_mink, 0.0};
          rep.max_defining_residual = std::max(rep.max_defining_residual, std::abs(defining_residual(b)));
          if (cc.comparison_scale > 0.0)
            rep.comparison_constant =
                std::max(rep.comparison_constant, std::abs(cc.q - cc.q_mink) / cc.comparison_scale);
          if (piece == BoundaryPiece::c1) {
            s.q_expanded = c1_expanded_form(b, family);
            rep.max_expansion_mismatch = std::max(rep.max_expansion_mismatch, std::abs(s.q_expanded - s.q));
            rep.max_mink_deviation = std::max(rep.max_mink_deviation, std::abs(cc.q_mink + 0.75 * b.rho2()));
          } else {
            rep.max_c2_q = std::max(rep.max_c2_q, cc.q);
          }
          if (cc.q > rep.max_q) {
            rep.max_q = cc.q;
            rep.max_q_at = s;
          }
          if (std::abs(cc.q) <= spec.null_window) {
            ++rep.near_null;
            rep.near_null_max_abs_u = std::max(rep.near_null_max_abs_u, std::abs(s.u));
          }
          if (cc.q > spec.q_tol && !rep.violation) rep.violation = s;
          rep.samples.push_back(s);
        }
      }
    }
  }
  return rep;
}

void write_scan_csv(std::ostream& os, const ScanReport& report) {
  const auto old = os.precision(17);
  os << "piece,t,u,theta,phi,Q,Q_mink,Q_expanded\n";
  for (const auto& s : report.samples) {
    os << to_string(s.piece) << ',' << s.t << ',' << s.u << ',' << s.theta << ',' << s.phi << ',' << s.q
       << ',' << s.q_mink << ',';
    if (s.piece == BoundaryPiece::c1) os << s.q_expanded;
    os << '\n';
  }
  os.precision(old);
}

}  // namespace einwave
