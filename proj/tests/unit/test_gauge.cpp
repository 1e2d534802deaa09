#include <doctest.h>

#include <cmath>
#include <random>

#include "einwave/errors.hpp"
#include "einwave/gauge.hpp"
#include "einwave/metric.hpp"
#include "einwave/sobolev.hpp"
#include "oracles.hpp"

using namespace einwave;

namespace {

const ProfileFamily& family() {
  static const ProfileFamily f = ProfileFamily::build({0.1, 0.4}, 1e-10);
  return f;
}

FrameSymTensor2 random_sym(std::mt19937_64& rng, oracle::Mat4* mirror = nullptr) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  FrameSymTensor2 T;
  for (int a = 0; a < 4; ++a)
    for (int b = a; b < 4; ++b) {
      T.comp(a, b) = u(rng);
      if (mirror) (*mirror)[a][b] = (*mirror)[b][a] = T.comp(a, b);
    }
  return T;
}

}  // namespace

TEST_CASE("wave gauge holds on the interior sample, d_L exactly") {
  double worst = 0.0;
  for (const auto& p : interior_grid(SliceKind::bent, 12)) {
    const auto d = wave_gauge_residual(p, family());
    CHECK(d.d_L == 0.0);
    worst = std::max(worst, d.max_abs());
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("gauge residual agrees with finite differences of the coordinate metric") {
  const oracle::MetricFn g = [](const oracle::Vec4& x) { return oracle::coordinate_metric(family(), x); };
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> t(0.0, 0.9), s(0.2, 2.0), x(-1.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const double ti = t(rng);
    const SpacetimePoint p{ti, {ti + (i % 2 ? s(rng) : -s(rng)), x(rng), x(rng)}};
    const auto d = oracle::fd_gauge(g, {p.t, p.x[0], p.x[1], p.x[2]}, 1e-3);
    const auto core = wave_gauge_residual(p, family());
    CHECK(std::abs(core.d_L - (d[0] + d[1])) <= 1e-9);
    CHECK(std::abs(core.d_Lbar - (d[0] - d[1])) <= 1e-9);
    CHECK(std::abs(core.d_2 - d[2]) <= 1e-9);
    CHECK(std::abs(core.d_3 - d[3]) <= 1e-9);
  }
}

TEST_CASE("lowered gauge form and log-det gradient") {
  for (const auto& p : interior_grid(SliceKind::bent, 6)) {
    const auto d = wave_gauge_residual(p, family()).as_array();
    const auto lo = lowered_gauge_residual(p, family());
    const auto ld = log_det_gradient(p, family());
    for (std::size_t k = 0; k < 4; ++k) {
      CHECK(std::abs(lo[k] + d[k]) <= 1e-12);
      CHECK(std::abs(ld[k]) <= 1e-12);
    }
  }
}

TEST_CASE("gauge is refused on the singular line") {
  CHECK_THROWS_AS(wave_gauge_residual({0.3, {0.3, 0.0, 0.0}}, family()), SingularError);
}

TEST_CASE("linearized gauge conditions vanish on the ansatz cone") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> t(0.0, 0.9), x(-1.0, 1.0);
  int checked = 0;
  while (checked < 300) {
    const double ti = t(rng);
    const SpacetimePoint p{ti, {x(rng) * (1 - ti), x(rng) * (1 - ti), x(rng) * (1 - ti)}};
    if (!in_ansatz_cone(p) || std::abs(p.s()) < 1e-6) continue;
    CHECK(linearized_gauge_residual(p, family()).max_abs() <= 1e-12);
    ++checked;
  }
  CHECK_THROWS_AS(linearized_gauge_residual({0.5, {0.9, 0.0, 0.0}}, family()), DomainError);
}

TEST_CASE("P form: both evaluations agree with the coordinate oracle") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 1000; ++i) {
    oracle::Mat4 pf{}, kf{};
    const auto p = random_sym(rng, &pf);
    const auto k = random_sym(rng, &kf);
    const double ref = oracle::p_form(oracle::frame_to_coordinate(pf), oracle::frame_to_coordinate(kf));
    CHECK(std::abs(p_form(p, k, PMethod::coordinate) - ref) <= 1e-13);
    CHECK(std::abs(p_form(p, k, PMethod::null_frame) - ref) <= 1e-13);
    CHECK(p_form(p, k, PMethod::null_frame) == doctest::Approx(p_form(k, p, PMethod::null_frame)).epsilon(1e-14));
  }
}

TEST_CASE("P form is bilinear") {
  std::mt19937_64 rng(24);
  for (int i = 0; i < 50; ++i) {
    const auto a = random_sym(rng), b = random_sym(rng), c = random_sym(rng);
    FrameSymTensor2 sum;
    for (int x = 0; x < 4; ++x)
      for (int y = x; y < 4; ++y) sum.comp(x, y) = 2.0 * a.comp(x, y) - b.comp(x, y);
    const double lhs = p_form(sum, c, PMethod::null_frame);
    const double rhs = 2.0 * p_form(a, c, PMethod::null_frame) - p_form(b, c, PMethod::null_frame);
    CHECK(std::abs(lhs - rhs) <= 1e-13);
  }
}

TEST_CASE("P of Minkowski with itself") {
  const auto m = minkowski_frame();
  CHECK(p_form(m, m, PMethod::coordinate) == 2.0);
  CHECK(p_form(m, m, PMethod::null_frame) == 2.0);
}

TEST_CASE("constrained reduction of P") {
  std::mt19937_64 rng(25);
  for (int i = 0; i < 500; ++i) {
    auto dh = random_sym(rng);
    dh.comp(0, 0) = dh.comp(0, 2) = dh.comp(0, 3) = 0.0;
    dh.comp(3, 3) = -dh.comp(2, 2);
    const auto r = p_semilinear_reduction(dh);
    CHECK(std::abs(r.lhs - r.rhs) <= 1e-13);
    CHECK(r.rhs <= 0.0);
    CHECK(r.lhs == doctest::Approx(p_form(dh, dh, PMethod::coordinate)).epsilon(1e-13));
  }
  auto bad = random_sym(rng);
  bad.comp(0, 0) = 0.3;
  CHECK_THROWS_AS(p_semilinear_reduction(bad), PreconditionError);
}
