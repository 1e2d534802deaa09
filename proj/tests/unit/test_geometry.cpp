#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "einwave/errors.hpp"
#include "einwave/geometry.hpp"
#include "einwave/golden.hpp"
#include "einwave/metric.hpp"
#include "einwave/sobolev.hpp"
#include "oracles.hpp"

using namespace einwave;

namespace {

const ProfileFamily& family() {
  static const ProfileFamily f = ProfileFamily::build({0.1, 0.4}, 1e-10);
  return f;
}

const ProfileFamily& family_q16() {
  static const ProfileFamily f = [] {
    ProfileBuildOptions o;
    o.riccati_quadratic = 1.0 / 16.0;
    return ProfileFamily::build({0.1, 0.4}, 1e-10, o);
  }();
  return f;
}

oracle::Vec4 vec(const SpacetimePoint& p) { return {p.t, p.x[0], p.x[1], p.x[2]}; }

std::vector<SpacetimePoint> random_points(int n, std::uint64_t seed, double s_min) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> t(0.0, 0.9), s(-2.5, 2.5), x(-1.0, 1.0);
  std::vector<SpacetimePoint> out;
  while (static_cast<int>(out.size()) < n) {
    const double ti = t(rng), si = s(rng);
    const double a = x(rng), b = x(rng);
    if (std::abs(si) >= s_min) out.push_back({ti, {ti + si, a, b}});
  }
  return out;
}

}  // namespace

TEST_CASE("Christoffel methods agree") {
  for (const auto& p : random_points(60, 11, 0.05)) {
    const auto closed = christoffel(p, family(), ChristoffelMethod::closed);
    const auto exact = christoffel(p, family(), ChristoffelMethod::exact);
    const auto numeric = christoffel(p, family(), ChristoffelMethod::numeric);
    for (std::size_t k = 0; k < 64; ++k) {
      CHECK(std::abs(closed.data[k] - exact.data[k]) <= 1e-14);
      CHECK(std::abs(closed.data[k] - numeric.data[k]) <= 1e-9);
    }
  }
}

TEST_CASE("Christoffel symbols are symmetric in the outer indices") {
  for (const auto& p : random_points(30, 12, 0.01)) {
    const auto G = christoffel(p, family(), ChristoffelMethod::exact);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c) CHECK(G(a, b, c) == doctest::Approx(G(c, b, a)).epsilon(1e-14));
  }
}

TEST_CASE("numeric Christoffel refuses the singular neighbourhood") {
  const SpacetimePoint p{0.3, {0.3 + 5e-4, 0.1, 0.1}};
  CHECK_THROWS_AS(christoffel(p, family(), ChristoffelMethod::numeric), SingularError);
  CHECK_NOTHROW(christoffel(p, family(), ChristoffelMethod::closed));
  CHECK_THROWS_AS(riemann_split({0.3, {0.3, 0.1, 0.1}}, family()), SingularError);
}

TEST_CASE("Riemann symmetries") {
  for (const auto& p : random_points(20, 13, 0.05)) {
    const auto R = riemann_split(p, family());
    for (int m = 0; m < 4; ++m)
      for (int a = 0; a < 4; ++a)
        for (int n = 0; n < 4; ++n)
          for (int b = 0; b < 4; ++b) {
            CHECK(std::abs(R.total(m, a, n, b) + R.total(m, a, b, n)) <= 1e-12);
            CHECK(std::abs(R.total(m, a, n, b) + R.total(a, m, n, b)) <= 1e-12);
            CHECK(std::abs(R.total(m, a, n, b) - R.total(n, b, m, a)) <= 1e-12);
          }
  }
}

TEST_CASE("Riemann stencil converges at second order") {
  for (const auto& p : random_points(10, 14, 0.1)) {
    const auto R = riemann_split(p, family());
    auto err = [&](double h) {
      const auto N = riemann_numeric(p, family(), h);
      double e = 0.0;
      for (std::size_t k = 0; k < 256; ++k)
        e = std::max(e, std::abs(N.lin.data[k] + N.quad.data[k] - R.lin.data[k] - R.quad.data[k]));
      return e;
    };
    const double e1 = err(4e-3), e2 = err(2e-3);
    CAPTURE(p.s());
    CHECK(std::log2(e1 / e2) == doctest::Approx(2.0).epsilon(0.1));
  }
}

TEST_CASE("Ricci tensor matches finite differences of the coordinate metric") {
  for (const ProfileFamily* f : {&family(), &family_q16()}) {
    const oracle::MetricFn g = [f](const oracle::Vec4& x) { return oracle::coordinate_metric(*f, x); };
    for (const auto& p : random_points(8, 15, 0.3)) {
      const auto core = frame_to_coord(ricci(p, *f));
      const auto fd = oracle::fd_ricci(g, vec(p), 4e-3);
      for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) {
          CAPTURE(f->riccati_quadratic());
          CAPTURE(p.s());
          CHECK(std::abs(core(m, n) - fd[m][n]) <= 1e-7);
        }
    }
  }
}

TEST_CASE("only the 1/8 Riccati coefficient makes the metric Ricci flat") {
  double flat = 0.0, q16 = 0.0;
  for (const auto& p : interior_grid(SliceKind::bent, 10)) {
    flat = std::max(flat, ricci(p, family()).comp.max_abs());
    q16 = std::max(q16, std::abs(ricci(p, family_q16())(FrameIndex::Lbar, FrameIndex::Lbar)));
  }
  CHECK(flat <= 1e-12);
  CHECK(q16 > 1e-5);
  // With q = 1/16 the residual is exactly (1/8 - 1/16) chitilde2^2 in magnitude.
  const SpacetimePoint p{0.2, {1.1, 0.1, -0.2}};
  const double y = family_q16().chitilde2(p.s(), 0).value;
  CHECK(std::abs(ricci(p, family_q16())(FrameIndex::Lbar, FrameIndex::Lbar)) ==
        doctest::Approx(y * y / 16.0).epsilon(1e-8));
}

TEST_CASE("negative control breaks Ricci-flatness") {
  ProfileBuildOptions o;
  o.source = RiccatiSource::chi2;
  const auto f = ProfileFamily::build({0.1, 0.4}, 1e-10, o);
  double m = 0.0;
  for (const auto& p : interior_grid(SliceKind::bent, 10))
    m = std::max(m, std::abs(ricci(p, f)(FrameIndex::Lbar, FrameIndex::Lbar)));
  CHECK(m > 1e-4);
}

TEST_CASE("curvature density matches the finite-difference Riemann tensor") {
  const oracle::MetricFn g = [](const oracle::Vec4& x) { return oracle::coordinate_metric(family(), x); };
  const oracle::Vec4 Lbar{1.0, -1.0, 0.0, 0.0};
  for (const auto& p : random_points(6, 16, 0.3)) {
    const auto R = oracle::fd_riemann(g, vec(p), 4e-3);
    const auto gi = inverse_metric_frame(p, family());
    double density = 0.0;
    for (int A = 2; A < 4; ++A)
      for (int B = 2; B < 4; ++B) {
        double r = 0.0;
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b) r += R[64 * A + 16 * a + 4 * B + b] * Lbar[a] * Lbar[b];
        density += gi.comp(A, A) * gi.comp(B, B) * r * r;
      }
    density *= gi.comp(0, 1) * gi.comp(0, 1);
    CAPTURE(p.s());
    CHECK(curvature_density(p, family()) == doctest::Approx(density).epsilon(1e-6));
  }
}

TEST_CASE("curvature density depends on s only") {
  for (const auto& p : random_points(30, 17, 0.01)) {
    const SpacetimePoint q{0.0, {p.s(), -0.7, 0.4}};
    CHECK(curvature_density(p, family()) == doctest::Approx(curvature_density(q, family())).epsilon(1e-12));
  }
}

TEST_CASE("curvature L2 norms agree with an independent quadrature") {
  const auto golden = load_json(golden_file(EINWAVE_TEST_GOLDEN_DIR)).at("values");
  for (double t : {0.0, 0.25, 0.5}) {
    // Below the kink at x1 = 1 integrate in u = log(4/s), ds = -s du.
    const double s_kink = 1.0 - t;
    const double s_max = 3.0 * (1.0 - t);
    auto integrand_s = [t](double s) {
      return curvature_density({0.0, {s, 0.0, 0.0}}, family()) * oracle::bent_area_over_s(t, s) * s;
    };
    const double u_kink = std::log(4.0 / s_kink);
    auto integrand_u = [&](double u) {
      const double s = 4.0 * std::exp(-u);
      return integrand_s(s) * s;
    };
    const double below_cutoff_u = std::log(4.0 / 0x1p-30);
    const double tail = [&] {
      const double a = family().params().alpha, e = family().params().epsilon;
      return 16.0 * std::numbers::pi * (1.0 - t) * e * e * a * a * std::pow(below_cutoff_u, 2.0 * a - 1.0) /
             (1.0 - 2.0 * a);
    }();
    const double squared = oracle::finite_integral(integrand_s, s_kink, s_max) +
                           oracle::finite_integral(integrand_u, u_kink, below_cutoff_u) + tail;
    std::ostringstream key;
    key << "curvature_l2_squared@" << t;
    CAPTURE(t);
    CHECK(golden.at(key.str()).get<double>() == doctest::Approx(squared).epsilon(1e-8));
    CHECK(curvature_l2_norm(t, family()).squared == doctest::Approx(squared).epsilon(1e-8));
  }
}

TEST_CASE("curvature norm is insensitive to the analytic cutoff") {
  const auto a = curvature_l2_norm(0.25, family(), 1e-11, 0x1p-30);
  const auto b = curvature_l2_norm(0.25, family(), 1e-11, 0x1p-45);
  CHECK(a.value == doctest::Approx(b.value).epsilon(1e-8));
  CHECK(a.tail > b.tail);
}

TEST_CASE("curvature norm scales linearly in epsilon") {
  const auto half = ProfileFamily::build({0.05, 0.4});
  for (double t : {0.0, 0.25, 0.5}) {
    const double r = curvature_l2_norm(t, half).value / curvature_l2_norm(t, family()).value;
    CHECK(r == doctest::Approx(0.5).epsilon(0.1));
  }
  CHECK(curvature_l2_norm(0.0, ProfileFamily::build({0.0, 0.4})).value == 0.0);
}

TEST_CASE("curvature norm rejects slices outside the domain") {
  CHECK_THROWS_AS(curvature_l2_norm(1.0, family()), ConfigError);
  CHECK_THROWS_AS(curvature_l2_norm(-0.1, family()), ConfigError);
}
