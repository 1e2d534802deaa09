#include "einwave/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "einwave/errors.hpp"
#include "einwave/sobolev.hpp"

namespace einwave {
namespace {

using Partials = std::array<Sym4, 4>;  // [direction] -> d_dir g_{YZ}

SpacetimePoint shifted(const SpacetimePoint& p, const Direction& d, double h) {
  SpacetimePoint q = p;
  q.t += h * d[0];
  for (std::size_t i = 0; i < 3; ++i) q.x[i] += h * d[i + 1];
  return q;
}

Partials exact_partials(const MetricAt& m) {
  Partials d;
  for (int a = 0; a < 4; ++a) {
    const Direction dir = frame_direction(kFrame[static_cast<std::size_t>(a)]);
    for (int y = 0; y < 4; ++y)
      for (int z = y; z < 4; ++z)
        d[static_cast<std::size_t>(a)](y, z) =
            m.partial(dir, kFrame[static_cast<std::size_t>(y)], kFrame[static_cast<std::size_t>(z)]);
  }
  return d;
}

Partials numeric_partials(const SpacetimePoint& p, const ProfileFamily& family, double h) {
  auto central = [&](const Direction& dir, double step) {
    const Sym4 plus = metric_frame(shifted(p, dir, step), family).comp;
    const Sym4 minus = metric_frame(shifted(p, dir, -step), family).comp;
    Sym4 out;
    for (int y = 0; y < 4; ++y)
      for (int z = y; z < 4; ++z) out(y, z) = (plus(y, z) - minus(y, z)) / (2.0 * step);
    return out;
  };
  Partials d;
  for (int a = 0; a < 4; ++a) {
    const Direction dir = frame_direction(kFrame[static_cast<std::size_t>(a)]);
    const Sym4 coarse = central(dir, h);
    const Sym4 fine = central(dir, 0.5 * h);
    Sym4 rich;
    for (int y = 0; y < 4; ++y)
      for (int z = y; z < 4; ++z) rich(y, z) = (4.0 * fine(y, z) - coarse(y, z)) / 3.0;
    d[static_cast<std::size_t>(a)] = rich;
  }
  return d;
}

ChristoffelTable from_partials(const Partials& d, const SpacetimePoint& p) {
  ChristoffelTable G;
  G.point = p;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        G(a, b, c) = 0.5 * (d[static_cast<std::size_t>(a)](b, c) + d[static_cast<std::size_t>(c)](b, a) -
                            d[static_cast<std::size_t>(b)](a, c));
  return G;
}

ChristoffelTable closed_christoffel(const SpacetimePoint& p, const ProfileFamily& family) {
  const auto j = ProfileJets::at(family, p.s(), 1);
  const double y = j.chitilde2.v;
  const double dy = j.chitilde2.d1;
  const double c = j.c.v;
  const double dc = j.c.d1;
  // chi_{1A}, chi_{1A}', chi_{2A} = chi_{1A} chitilde2, chi_{2A}'.
  const double chi1A[2] = {c, 1.0 / c};
  const double dchi1A[2] = {dc, -dc / (c * c)};
  double chi2A[2], dchi2A[2];
  for (int i = 0; i < 2; ++i) {
    chi2A[i] = chi1A[i] * y;
    dchi2A[i] = dchi1A[i] * y + chi1A[i] * dy;
  }
  constexpr int L = 0, Lb = 1;
  ChristoffelTable G;
  G.point = p;
  G(L, Lb, Lb) = -0.5 * y;
  G(Lb, Lb, L) = -0.5 * y;
  G(Lb, L, Lb) = 0.5 * y;
  G(Lb, Lb, Lb) = -0.5 * y + p.t * dy;
  for (int i = 0; i < 2; ++i) {
    const int A = 2 + i;
    G(Lb, A, Lb) = 0.5 * p.x[static_cast<std::size_t>(1 + i)] * dchi2A[i];
    G(Lb, A, A) = -dchi1A[i];
    G(A, A, Lb) = -dchi1A[i];
    G(A, Lb, A) = -0.25 * chi2A[i] + dchi1A[i];
  }
  return G;
}

}  // namespace

double ChristoffelTable::raised(const FrameSymTensor2& ginv, int a, int b, int c) const {
  double s = 0.0;
  for (int d = 0; d < 4; ++d) s += ginv.comp(b, d) * (*this)(a, d, c);
  return s;
}

double ChristoffelTable::max_abs() const {
  double m = 0.0;
  for (double v : data) m = std::max(m, std::abs(v));
  return m;
}

double Rank4::max_abs() const {
  double m = 0.0;
  for (double v : data) m = std::max(m, std::abs(v));
  return m;
}

ChristoffelTable christoffel(const SpacetimePoint& p, const ProfileFamily& family,
                             ChristoffelMethod method, const ChristoffelOptions& opts) {
  switch (method) {
    case ChristoffelMethod::closed:
      return closed_christoffel(p, family);
    case ChristoffelMethod::exact:
      return from_partials(exact_partials(MetricAt(family, p)), p);
    case ChristoffelMethod::numeric:
      // The Lbar stencil moves s by 2h per step.
      if (std::abs(p.s()) < 10.0 * opts.h)
        throw SingularError("numeric Christoffel stencil too close to the singular line");
      return from_partials(numeric_partials(p, family, opts.h), p);
  }
  throw ConfigError("unknown Christoffel method");
}

namespace {

using SecondPartials = std::array<std::array<Sym4, 4>, 4>;  // [b][c] -> d_b d_c g_{YZ}

CurvatureSplit assemble(const SpacetimePoint& p, const FrameSymTensor2& ginv, const Partials& d1,
                        const SecondPartials& dd) {
  const ChristoffelTable G = from_partials(d1, p);
  auto d2 = [&](int b, int c, int y, int z) {
    return dd[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)](y, z);
  };
  CurvatureSplit R;
  R.point = p;
  for (int mu = 0; mu < 4; ++mu)
    for (int a = 0; a < 4; ++a)
      for (int n = 0; n < 4; ++n)
        for (int b = 0; b < 4; ++b) {
          R.lin(mu, a, n, b) =
              0.5 * (d2(b, mu, a, n) - d2(b, a, mu, n) - d2(n, mu, a, b) + d2(n, a, mu, b));
          double q = 0.0;
          for (int l = 0; l < 4; ++l)
            for (int c = 0; c < 4; ++c) {
              const double gi = ginv.comp(l, c);
              if (gi == 0.0) continue;
              q += gi * (G(n, l, a) * G(mu, c, b) - G(a, l, b) * G(mu, c, n));
            }
          R.quad(mu, a, n, b) = q;
        }
  return R;
}

}  // namespace

CurvatureSplit riemann_split(const SpacetimePoint& p, const ProfileFamily& family) {
  const MetricAt m(family, p);
  if (!m.second_derivatives())
    throw SingularError("curvature requested on the singular line s = 0");
  SecondPartials dd;
  for (int b = 0; b < 4; ++b)
    for (int c = b; c < 4; ++c) {
      Sym4 s;
      for (int y = 0; y < 4; ++y)
        for (int z = y; z < 4; ++z)
          s(y, z) = m.partial2(frame_direction(kFrame[static_cast<std::size_t>(b)]),
                               frame_direction(kFrame[static_cast<std::size_t>(c)]),
                               kFrame[static_cast<std::size_t>(y)], kFrame[static_cast<std::size_t>(z)]);
      dd[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)] = s;
      dd[static_cast<std::size_t>(c)][static_cast<std::size_t>(b)] = s;
    }
  return assemble(p, m.inverse(), exact_partials(m), dd);
}

CurvatureSplit riemann_numeric(const SpacetimePoint& p, const ProfileFamily& family, double h) {
  if (std::abs(p.s()) < 10.0 * h)
    throw SingularError("curvature stencil too close to the singular line");
  auto g = [&](const Direction& a, double ha, const Direction& b, double hb) {
    return metric_frame(shifted(shifted(p, a, ha), b, hb), family).comp;
  };
  const Direction zero{};
  const Sym4 g0 = g(zero, 0.0, zero, 0.0);
  Partials d1;
  SecondPartials dd;
  for (int b = 0; b < 4; ++b) {
    const Direction eb = frame_direction(kFrame[static_cast<std::size_t>(b)]);
    const Sym4 gp = g(eb, h, zero, 0.0), gm = g(eb, -h, zero, 0.0);
    for (int y = 0; y < 4; ++y)
      for (int z = y; z < 4; ++z) {
        d1[static_cast<std::size_t>(b)](y, z) = (gp(y, z) - gm(y, z)) / (2.0 * h);
        dd[static_cast<std::size_t>(b)][static_cast<std::size_t>(b)](y, z) =
            (gp(y, z) - 2.0 * g0(y, z) + gm(y, z)) / (h * h);
      }
    for (int c = b + 1; c < 4; ++c) {
      const Direction ec = frame_direction(kFrame[static_cast<std::size_t>(c)]);
      const Sym4 pp = g(eb, h, ec, h), pm = g(eb, h, ec, -h), mp = g(eb, -h, ec, h), mm = g(eb, -h, ec, -h);
      Sym4 s;
      for (int y = 0; y < 4; ++y)
        for (int z = y; z < 4; ++z) s(y, z) = (pp(y, z) - pm(y, z) - mp(y, z) + mm(y, z)) / (4.0 * h * h);
      dd[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)] = s;
      dd[static_cast<std::size_t>(c)][static_cast<std::size_t>(b)] = s;
    }
  }
  return assemble(p, inverse_metric_frame(p, family), d1, dd);
}

FrameSymTensor2 ricci(const SpacetimePoint& p, const ProfileFamily& family) {
  const CurvatureSplit R = riemann_split(p, family);
  const FrameSymTensor2 ginv = inverse_metric_frame(p, family);
  FrameSymTensor2 ric;
  ric.point = p;
  ric.variance = Variance::covariant;
  for (int a = 0; a < 4; ++a)
    for (int b = a; b < 4; ++b) {
      double s = 0.0;
      for (int mu = 0; mu < 4; ++mu)
        for (int n = 0; n < 4; ++n) {
          const double gi = ginv.comp(mu, n);
          if (gi != 0.0) s += gi * R.total(mu, a, n, b);
        }
      ric.comp(a, b) = s;
    }
  return ric;
}

double curvature_density(const SpacetimePoint& p, const ProfileFamily& family) {
  const CurvatureSplit R = riemann_split(p, family);
  const FrameSymTensor2 ginv = inverse_metric_frame(p, family);
  const double gl = ginv.comp(0, 1);
  double s = 0.0;
  for (int A = 2; A < 4; ++A)
    for (int B = 2; B < 4; ++B) {
      const double r = R.total(A, 1, B, 1);
      s += ginv.comp(A, A) * ginv.comp(B, B) * r * r;
    }
  return gl * gl * s;
}

CurvatureNorm curvature_l2_norm(double t, const ProfileFamily& family, double quad_tol,
                                double cutoff) {
  if (!(t >= 0.0 && t < 1.0)) throw ConfigError("curvature norm needs 0 <= t < 1");
  const DomainSlice d = slice(SliceKind::bent, t);
  CurvatureNorm out;
  out.cutoff = cutoff;
  // R_{A Lbar B Lbar} and the inverse metric depend on s only, so the
  // cross-section integral is w0. Evaluating at t = 0 keeps s exact for tiny s.
  auto density = [&](double s) {
    return curvature_density({0.0, {s, 0.0, 0.0}}, family) * d.w0_s(s);
  };
  out.quadrature = slice_integral(density, d, cutoff, quad_tol);
  numerics::require_converged(out.quadrature, "curvature L2 norm");

  const double eps = family.params().epsilon;
  const double alpha = family.params().alpha;
  const double U = std::log(4.0 / cutoff);
  out.tail = 16.0 * std::numbers::pi * (1.0 - t) * eps * eps * alpha * alpha *
             std::pow(U, 2.0 * alpha - 1.0) / (1.0 - 2.0 * alpha);
  out.squared = out.quadrature.value + out.tail;
  out.value = std::sqrt(out.squared);
  out.constant = eps > 0.0 ? out.value / eps : 0.0;
  return out;
}

}  // namespace einwave
