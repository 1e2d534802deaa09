#pragma once

// Reference computations used only by the tests. They share no code with the
// library beyond reading profile values from a ProfileFamily where noted.

#include <array>
#include <functional>
#include <vector>

#include "einwave/profiles.hpp"

namespace oracle {

using Vec4 = std::array<double, 4>;  // (t, x1, x2, x3)
using Mat4 = std::array<std::array<double, 4>, 4>;

/// chi1 = sign(s) 4 eps Gamma(alpha + 1, u), chi2 = sign(s) 8 eps^2 Gamma(2 alpha + 1, u),
/// u = log(4 / |s|), with derivatives in closed form.
struct ClosedProfiles {
  double eps;
  double alpha;
  double chi1(double s, int order) const;
  double chi2(double s, int order) const;
};

/// chitilde2 from a dense-output Dormand-Prince integration in s, started
/// just off the singular line with the leading-order value.
class RiccatiOracle {
 public:
  RiccatiOracle(double eps, double alpha, double q);
  double value(double s) const;
  double derivative(double s) const;

 private:
  ClosedProfiles p_;
  double q_;
};

/// Coordinate metric assembled from the frame description with profile values
/// taken from `family` (value only, no derivatives).
Mat4 coordinate_metric(const einwave::ProfileFamily& family, const Vec4& x);
Mat4 inverse(const Mat4& g);

using MetricFn = std::function<Mat4(const Vec4&)>;

/// Ricci tensor by nested fourth-order central differences of the metric.
Mat4 fd_ricci(const MetricFn& g, const Vec4& x, double h);

/// R_{rho sigma mu nu} = g_{rho l} (d_mu Gamma^l_{nu sigma} - d_nu Gamma^l_{mu sigma} + ...),
/// flattened as 64 rho + 16 sigma + 4 mu + nu.
std::array<double, 256> fd_riemann(const MetricFn& g, const Vec4& x, double h);

/// d_gamma = g^{mu nu} d_mu g_{nu gamma} by central differences.
Vec4 fd_gauge(const MetricFn& g, const Vec4& x, double h);

/// -f_tt + f_11 + f_22 + f_33 by the second-order three-point stencil.
double fd_box(const std::function<double(const Vec4&)>& f, const Vec4& x, double h);

/// 1/4 tr_m(p) tr_m(k) - 1/2 <p, k>_m for coordinate components.
double p_form(const Mat4& p, const Mat4& k);

/// Frame (L, Lbar, 2, 3) components to coordinate components.
Mat4 frame_to_coordinate(const Mat4& frame);

/// Cross-section area divided by s = x1 - t, in factored form (no loss of
/// accuracy as s -> 0). Bent slice D_t and ball B_t.
double bent_area_over_s(double t, double s);
double ball_area_over_s(double t, double s);

/// int_a^b f by Gauss-Kronrod.
double finite_integral(const std::function<double(double)>& f, double a, double b);
/// int_u0^infinity g(u) du by exp-sinh.
double tail_integral(const std::function<double(double)>& g, double u0);

}  // namespace oracle
