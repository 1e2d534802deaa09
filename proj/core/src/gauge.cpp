#include "einwave/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "einwave/errors.hpp"

namespace einwave {
namespace {

constexpr int L = 0, Lb = 1;

double max_of(std::initializer_list<double> xs) {
  double m = 0.0;
  for (double x : xs) m = std::max(m, std::abs(x));
  return m;
}

void require_off_singular_line(const SpacetimePoint& p) {
  if (std::abs(p.s()) < ProfileFamily::kZeroWindow)
    throw SingularError("gauge condition evaluated on the singular line s = 0");
}

Direction dir(int a) { return frame_direction(kFrame[static_cast<std::size_t>(a)]); }
FrameIndex fi(int a) { return kFrame[static_cast<std::size_t>(a)]; }

// Minkowski in Cartesian coordinates.
constexpr std::array<double, 4> kEta{-1.0, 1.0, 1.0, 1.0};

}  // namespace

double GaugeResidual::max_abs() const { return max_of({d_L, d_Lbar, d_2, d_3}); }

double LinearizedGauge::max_abs() const { return max_of({cons_L, cons_Lbar, cons_C[0], cons_C[1]}); }

GaugeResidual wave_gauge_residual(const SpacetimePoint& p, const ProfileFamily& family) {
  require_off_singular_line(p);
  const MetricAt m(family, p);
  const FrameSymTensor2 ginv = m.inverse();
  std::array<double, 4> d{};
  for (int g = 0; g < 4; ++g)
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) {
        const double gi = ginv.comp(mu, nu);
        if (gi != 0.0) d[static_cast<std::size_t>(g)] += gi * m.partial(dir(mu), fi(nu), fi(g));
      }
  return {d[0], d[1], d[2], d[3]};
}

std::array<double, 4> log_det_gradient(const SpacetimePoint& p, const ProfileFamily& family) {
  require_off_singular_line(p);
  const MetricAt m(family, p);
  const FrameSymTensor2 ginv = m.inverse();
  std::array<double, 4> out{};
  for (int g = 0; g < 4; ++g)
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) {
        const double gi = ginv.comp(mu, nu);
        if (gi != 0.0) out[static_cast<std::size_t>(g)] += 0.5 * gi * m.partial(dir(g), fi(mu), fi(nu));
      }
  return out;
}

std::array<double, 4> lowered_gauge_residual(const SpacetimePoint& p, const ProfileFamily& family) {
  const auto d = wave_gauge_residual(p, family).as_array();
  const auto tr = log_det_gradient(p, family);
  std::array<double, 4> out{};
  for (std::size_t g = 0; g < 4; ++g) out[g] = -d[g] + tr[g];
  return out;
}

LinearizedGauge linearized_gauge_residual(const SpacetimePoint& p, const ProfileFamily& family) {
  if (!in_ansatz_cone(p)) throw DomainError("linearized gauge needs |x| < 1 - t");
  require_off_singular_line(p);
  const auto jets = ProfileJets::at(family, p.s(), 1);
  const auto& h = ansatz_fields();
  auto dh = [&](int a, int y, int z) { return directional(component(h, fi(y), fi(z)), dir(a), p, jets); };

  auto cons = [&](int g) {
    double s = 0.0;
    for (int A = 2; A < 4; ++A) s += -2.0 * dh(A, A, g) + dh(g, A, A);
    return s;
  };
  LinearizedGauge out;
  out.cons_L = dh(Lb, L, L) + cons(L);
  out.cons_Lbar = dh(L, Lb, Lb) + cons(Lb);
  for (int C = 2; C < 4; ++C)
    out.cons_C[static_cast<std::size_t>(C - 2)] =
        dh(Lb, L, C) + dh(L, Lb, C) - dh(C, L, Lb) + cons(C);
  return out;
}

double p_form(const FrameSymTensor2& p, const FrameSymTensor2& k, PMethod method) {
  if (method == PMethod::coordinate) {
    const CoordSymTensor2 pc = frame_to_coord(p);
    const CoordSymTensor2 kc = frame_to_coord(k);
    double trp = 0.0, trk = 0.0, pk = 0.0;
    for (int a = 0; a < 4; ++a) {
      const double ea = kEta[static_cast<std::size_t>(a)];
      trp += ea * pc(a, a);
      trk += ea * kc(a, a);
      for (int b = 0; b < 4; ++b) pk += ea * kEta[static_cast<std::size_t>(b)] * pc(a, b) * kc(a, b);
    }
    return 0.25 * trp * trk - 0.5 * pk;
  }
  const Sym4& P = p.comp;
  const Sym4& K = k.comp;
  double first = 0.0;
  for (int A = 2; A < 4; ++A)
    first += 2.0 * P(A, L) * K(A, Lb) + 2.0 * P(A, Lb) * K(A, L) - P(A, A) * K(L, Lb) - P(L, Lb) * K(A, A);
  const double second = P(L, L) * K(Lb, Lb) + P(Lb, Lb) * K(L, L);
  double third = 0.0;
  for (int A = 2; A < 4; ++A)
    for (int B = 2; B < 4; ++B) third += 2.0 * P(A, B) * K(A, B) - P(A, A) * K(B, B);
  return 0.25 * first - 0.125 * second - 0.25 * third;
}

PReduction p_semilinear_reduction(const FrameSymTensor2& dh) {
  const Sym4& c = dh.comp;
  const double violation = max_of({c(L, L), c(L, 2), c(L, 3), c(2, 2) + c(3, 3)});
  if (violation > 1e-12) {
    std::ostringstream msg;
    msg << "dh violates the wave-coordinate slice by " << violation;
    throw PreconditionError(msg.str());
  }
  PReduction out;
  out.lhs = p_form(dh, dh, PMethod::null_frame);
  out.rhs = -0.5 * (c(2, 2) * c(2, 2) + c(3, 3) * c(3, 3) + 2.0 * c(2, 3) * c(2, 3));
  return out;
}

}  // namespace einwave
