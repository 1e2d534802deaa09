#pragma once

#include <array>

#include "einwave/frame.hpp"
#include "einwave/metric.hpp"
#include "einwave/numerics/quadrature.hpp"

namespace einwave {

/// closed: the explicit list in terms of chi1, chitilde2 and their first
/// derivatives. exact: the defining formula applied to exact metric partials.
/// numeric: the defining formula applied to Richardson-extrapolated central
/// differences of the metric along frame directions.
enum class ChristoffelMethod { closed, exact, numeric };

/// Lowered symbols Gamma_{abc} = (d_a g_bc + d_c g_ba - d_b g_ac) / 2 in frame
/// indices; the middle index is the lowered one.
struct ChristoffelTable {
  std::array<double, 64> data{};
  SpacetimePoint point;

  double operator()(int a, int b, int c) const { return data[static_cast<std::size_t>(16 * a + 4 * b + c)]; }
  double& operator()(int a, int b, int c) { return data[static_cast<std::size_t>(16 * a + 4 * b + c)]; }
  double operator()(FrameIndex a, FrameIndex b, FrameIndex c) const { return (*this)(idx(a), idx(b), idx(c)); }

  /// Gamma_a^b_c = g^{bd} Gamma_{adc}.
  double raised(const FrameSymTensor2& ginv, int a, int b, int c) const;
  double max_abs() const;
};

struct ChristoffelOptions {
  double h = 1e-4;  // base step of the numeric method
};

/// Throws SingularError for the numeric method within 10 h of the singular
/// line (and for no method otherwise).
ChristoffelTable christoffel(const SpacetimePoint& p, const ProfileFamily& family,
                             ChristoffelMethod method, const ChristoffelOptions& opts = {});

/// Rank-4 array in frame indices, R(m, a, n, b).
struct Rank4 {
  std::array<double, 256> data{};
  double operator()(int m, int a, int n, int b) const {
    return data[static_cast<std::size_t>(64 * m + 16 * a + 4 * n + b)];
  }
  double& operator()(int m, int a, int n, int b) {
    return data[static_cast<std::size_t>(64 * m + 16 * a + 4 * n + b)];
  }
  double max_abs() const;
};

/// R = R_lin + R_quad with
///   R_lin_{manb}  = d_b Gamma_{man} - d_n Gamma_{mab}
///   R_quad_{manb} = g^{lc} Gamma_{nla} Gamma_{mcb} - g^{lc} Gamma_{alb} Gamma_{mcn}.
struct CurvatureSplit {
  Rank4 lin;
  Rank4 quad;
  SpacetimePoint point;
  double total(int m, int a, int n, int b) const { return lin(m, a, n, b) + quad(m, a, n, b); }
};

/// From exact first and second metric partials. Throws SingularError on s = 0.
CurvatureSplit riemann_split(const SpacetimePoint& p, const ProfileFamily& family);

/// The same split from central first and second differences of the metric
/// with step h along frame directions (error O(h^2)). Throws SingularError
/// within 10 h of the singular line.
CurvatureSplit riemann_numeric(const SpacetimePoint& p, const ProfileFamily& family, double h);

/// Ric_{ab} = g^{mn} R_{manb}.
FrameSymTensor2 ricci(const SpacetimePoint& p, const ProfileFamily& family);

/// Pointwise squared curvature norm
///   |R|^2 = (g^{L Lbar})^2 sum_{A,B} g^{AA} g^{BB} R_{A Lbar B Lbar}^2,
/// the only non-trivial contraction for this metric (the full contraction
/// R_{manb} R^{manb} vanishes identically).
double curvature_density(const SpacetimePoint& p, const ProfileFamily& family);

struct CurvatureNorm {
  double value = 0.0;         // ||R(t)||_{L2(D_t)}
  double squared = 0.0;       // value^2
  double tail = 0.0;          // analytic contribution of s < cutoff
  double cutoff = 0.0;
  double constant = 0.0;      // value / epsilon (0 when epsilon = 0)
  numerics::QuadratureOutcome quadrature;
};

/// L2 norm of the curvature over the bent slice D_t, 0 <= t < 1. The region
/// s < cutoff is added from the leading asymptotics 2 chi1''^2 w0.
/// Throws QuadratureError on non-convergence.
CurvatureNorm curvature_l2_norm(double t, const ProfileFamily& family, double quad_tol = 1e-10,
                                double cutoff = 0x1p-30);

}  // namespace einwave
