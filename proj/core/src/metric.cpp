#include "einwave/metric.hpp"

#include <cmath>

#include "einwave/errors.hpp"

namespace einwave {
namespace {

using F = FrameIndex;

Field& at(FrameFieldTable& t, F a, F b) {
  return t[static_cast<std::size_t>(Sym4::slot(idx(a), idx(b)))];
}

FrameFieldTable build_metric() {
  FrameFieldTable g;
  at(g, F::L, F::Lbar) = {{-2.0, {}, {}}};
  at(g, F::Lbar, F::Lbar) = {{-1.0, {1, 0, 0}, {0, 0, 0, 1}}};
  at(g, F::e2, F::e2) = {{1.0, {}, {1, 0, 0, 0}}};
  at(g, F::e3, F::e3) = {{1.0, {}, {-1, 0, 0, 0}}};
  at(g, F::e2, F::Lbar) = {{-0.25, {0, 1, 0}, {1, 0, 0, 1}}};
  at(g, F::e3, F::Lbar) = {{-0.25, {0, 0, 1}, {-1, 0, 0, 1}}};
  return g;
}

FrameFieldTable build_inverse() {
  FrameFieldTable g;
  at(g, F::L, F::L) = {
      {0.25, {1, 0, 0}, {0, 0, 0, 1}},
      {1.0 / 64.0, {0, 2, 0}, {1, 0, 0, 2}},
      {1.0 / 64.0, {0, 0, 2}, {-1, 0, 0, 2}},
  };
  at(g, F::L, F::Lbar) = {{-0.5, {}, {}}};
  at(g, F::L, F::e2) = {{-0.125, {0, 1, 0}, {0, 0, 0, 1}}};
  at(g, F::L, F::e3) = {{-0.125, {0, 0, 1}, {0, 0, 0, 1}}};
  at(g, F::e2, F::e2) = {{1.0, {}, {-1, 0, 0, 0}}};
  at(g, F::e3, F::e3) = {{1.0, {}, {1, 0, 0, 0}}};
  return g;
}

FrameFieldTable build_ansatz() {
  FrameFieldTable h;
  at(h, F::Lbar, F::Lbar) = {{-1.0, {1, 0, 0}, {0, 0, 1, 0}}};
  at(h, F::e2, F::Lbar) = {{-0.25, {0, 1, 0}, {0, 0, 1, 0}}};
  at(h, F::e3, F::Lbar) = {{-0.25, {0, 0, 1}, {0, 0, 1, 0}}};
  at(h, F::e2, F::e2) = {{1.0, {}, {0, 1, 0, 0}}};
  at(h, F::e3, F::e3) = {{-1.0, {}, {0, 1, 0, 0}}};
  return h;
}

FrameSymTensor2 evaluate(const FrameFieldTable& table, Variance v, const SpacetimePoint& p,
                         const ProfileJets& jets) {
  FrameSymTensor2 out;
  out.variance = v;
  out.point = p;
  for (int a = 0; a < 4; ++a)
    for (int b = a; b < 4; ++b)
      out.comp(a, b) = value(table[static_cast<std::size_t>(Sym4::slot(a, b))], p, jets);
  return out;
}

}  // namespace

const FrameFieldTable& metric_fields() {
  static const FrameFieldTable g = build_metric();
  return g;
}

const FrameFieldTable& inverse_metric_fields() {
  static const FrameFieldTable g = build_inverse();
  return g;
}

const FrameFieldTable& ansatz_fields() {
  static const FrameFieldTable h = build_ansatz();
  return h;
}

MetricAt::MetricAt(const ProfileFamily& family, const SpacetimePoint& p) : p_(p) {
  const double s = p.s();
  second_ = std::abs(s) >= ProfileFamily::kZeroWindow;
  jets_ = ProfileJets::at(family, s, second_ ? 2 : 1);
}

FrameSymTensor2 MetricAt::metric() const {
  return evaluate(metric_fields(), Variance::covariant, p_, jets_);
}

FrameSymTensor2 MetricAt::inverse() const {
  return evaluate(inverse_metric_fields(), Variance::contravariant, p_, jets_);
}

double MetricAt::partial(const Direction& d, FrameIndex y, FrameIndex z) const {
  return directional(component(metric_fields(), y, z), d, p_, jets_);
}

double MetricAt::partial2(const Direction& d1, const Direction& d2, FrameIndex y,
                          FrameIndex z) const {
  if (!second_) throw SingularError("second derivative of the metric on the singular line s = 0");
  return directional2(component(metric_fields(), y, z), d1, d2, p_, jets_);
}

double MetricAt::inverse_partial(const Direction& d, FrameIndex y, FrameIndex z) const {
  return directional(component(inverse_metric_fields(), y, z), d, p_, jets_);
}

FrameSymTensor2 metric_frame(const SpacetimePoint& p, const ProfileFamily& family) {
  return MetricAt(family, p).metric();
}

FrameSymTensor2 inverse_metric_frame(const SpacetimePoint& p, const ProfileFamily& family) {
  return MetricAt(family, p).inverse();
}

FrameDeterminant frame_det_and_volume(const SpacetimePoint& p, const ProfileFamily& family) {
  const double det = determinant(metric_frame(p, family).comp);
  return {det, std::sqrt(std::abs(det))};
}

double metric_partial(const SpacetimePoint& p, const ProfileFamily& family, const Direction& d,
                      FrameIndex y, FrameIndex z) {
  return MetricAt(family, p).partial(d, y, z);
}

bool in_ansatz_cone(const SpacetimePoint& p) {
  const double r = std::hypot(p.x[0], p.x[1], p.x[2]);
  return r < 1.0 - p.t;
}

FrameSymTensor2 linearized_ansatz(const SpacetimePoint& p, const ProfileFamily& family) {
  if (!in_ansatz_cone(p)) throw DomainError("linearized ansatz requires |x| < 1 - t");
  const auto jets = ProfileJets::at(family, p.s(), 0);
  return evaluate(ansatz_fields(), Variance::covariant, p, jets);
}

}  // namespace einwave
