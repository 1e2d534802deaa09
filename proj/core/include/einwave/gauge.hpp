#pragma once

#include <array>

#include "einwave/frame.hpp"
#include "einwave/metric.hpp"

namespace einwave {

/// d_g = g^{mn} d_m g_{ng} in frame components g = L, Lbar, 2, 3.
struct GaugeResidual {
  double d_L = 0.0;
  double d_Lbar = 0.0;
  double d_2 = 0.0;
  double d_3 = 0.0;

  std::array<double, 4> as_array() const { return {d_L, d_Lbar, d_2, d_3}; }
  double max_abs() const;
};

/// Throws SingularError on the singular line s = 0.
GaugeResidual wave_gauge_residual(const SpacetimePoint& p, const ProfileFamily& family);

/// (1/2) g^{mn} d_g g_{mn} = (1/2) d_g log|det g|, per frame direction g.
std::array<double, 4> log_det_gradient(const SpacetimePoint& p, const ProfileFamily& family);

/// -g^{mn} d_m g_{ng} + (1/2) g^{mn} d_g g_{mn}.
std::array<double, 4> lowered_gauge_residual(const SpacetimePoint& p, const ProfileFamily& family);

/// Linearized wave-coordinate conditions on the ansatz h:
///   L:     d_Lbar h_LL - 2 d_A h_AL + d_L (h_AA)
///   Lbar:  d_L h_LbarLbar - 2 d_A h_ALbar + d_Lbar (h_AA)
///   C:     d_Lbar h_LC + d_L h_LbarC - 2 d_A h_AC + d_C (-h_LLbar + h_AA)
struct LinearizedGauge {
  double cons_L = 0.0;
  double cons_Lbar = 0.0;
  std::array<double, 2> cons_C{};  // C = 2, 3

  double max_abs() const;
};

/// Requires |x| < 1 - t (DomainError) and s != 0 (SingularError).
LinearizedGauge linearized_gauge_residual(const SpacetimePoint& p, const ProfileFamily& family);

enum class PMethod { coordinate, null_frame };

/// P(p, k) = (1/4) p^a_a k^b_b - (1/2) p^{ab} k_{ab}, indices raised with the
/// Minkowski metric. Inputs are covariant frame tensors. The coordinate method
/// converts to Cartesian components; the null-frame method uses the expansion
///   1/4 d^{AB}(2 p_AL k_BLb + 2 p_ALb k_BL - p_AB k_LLb - p_LLb k_AB)
///   - 1/8 (p_LL k_LbLb + p_LbLb k_LL)
///   - 1/4 d^{AB} d^{A'B'} (2 p_AA' k_BB' - p_AB k_A'B').
double p_form(const FrameSymTensor2& p, const FrameSymTensor2& k, PMethod method);

struct PReduction {
  double lhs = 0.0;  // P(dh, dh)
  double rhs = 0.0;  // -1/2 (dh_22^2 + dh_33^2 + 2 dh_23^2)
};

/// For dh with dh_LL = dh_L2 = dh_L3 = 0 and dh_22 + dh_33 = 0; throws
/// PreconditionError if any of these exceeds 1e-12 in magnitude.
PReduction p_semilinear_reduction(const FrameSymTensor2& dh);

}  // namespace einwave
