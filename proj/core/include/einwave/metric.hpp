#pragma once

#include <array>

#include "einwave/fields.hpp"
#include "einwave/frame.hpp"
#include "einwave/profiles.hpp"

namespace einwave {

/// Frame components of a symmetric tensor field, one Field per Sym4 slot.
using FrameFieldTable = std::array<Field, 10>;

/// g_{YZ}: g_{L Lbar} = -2, g_{Lbar Lbar} = -t chitilde2, g_22 = 1 + chi1 = 1/g_33,
/// g_{A Lbar} = -x_A g_AA chitilde2 / 4.
const FrameFieldTable& metric_fields();
/// g^{YZ}, the inverse of metric_fields().
const FrameFieldTable& inverse_metric_fields();
/// Linearized perturbation h_{YZ} built from chi1 and chi2.
const FrameFieldTable& ansatz_fields();

inline const Field& component(const FrameFieldTable& table, FrameIndex a, FrameIndex b) {
  return table[static_cast<std::size_t>(Sym4::slot(idx(a), idx(b)))];
}

/// Metric data at one event: profile jets are evaluated once and every
/// component and derivative is exact in terms of them. On the singular line
/// only first derivatives are available.
class MetricAt {
 public:
  MetricAt(const ProfileFamily& family, const SpacetimePoint& p);

  const SpacetimePoint& point() const { return p_; }
  const ProfileJets& jets() const { return jets_; }
  bool second_derivatives() const { return second_; }

  FrameSymTensor2 metric() const;
  FrameSymTensor2 inverse() const;

  /// D_a g_{YZ} along a constant direction.
  double partial(const Direction& d, FrameIndex y, FrameIndex z) const;
  /// D_a D_b g_{YZ}; throws SingularError on the singular line.
  double partial2(const Direction& d1, const Direction& d2, FrameIndex y, FrameIndex z) const;
  /// D_a g^{YZ}.
  double inverse_partial(const Direction& d, FrameIndex y, FrameIndex z) const;

 private:
  SpacetimePoint p_;
  ProfileJets jets_;
  bool second_ = true;
};

FrameSymTensor2 metric_frame(const SpacetimePoint& p, const ProfileFamily& family);
FrameSymTensor2 inverse_metric_frame(const SpacetimePoint& p, const ProfileFamily& family);

struct FrameDeterminant {
  double det_frame = 0.0;
  double sqrt_abs_det = 0.0;
};

/// Determinant of the frame component matrix and sqrt|det|.
FrameDeterminant frame_det_and_volume(const SpacetimePoint& p, const ProfileFamily& family);

/// Single derivative of a metric frame component along `d`.
double metric_partial(const SpacetimePoint& p, const ProfileFamily& family, const Direction& d,
                      FrameIndex y, FrameIndex z);

/// h_{YZ} on the cone |x| < 1 - t; throws DomainError outside.
FrameSymTensor2 linearized_ansatz(const SpacetimePoint& p, const ProfileFamily& family);

/// |x| < 1 - t.
bool in_ansatz_cone(const SpacetimePoint& p);

}  // namespace einwave
