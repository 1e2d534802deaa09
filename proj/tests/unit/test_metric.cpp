#include <doctest.h>

#include <cmath>
#include <random>

#include "einwave/errors.hpp"
#include "einwave/metric.hpp"
#include "oracles.hpp"

using namespace einwave;

namespace {

const ProfileFamily& family() {
  static const ProfileFamily f = ProfileFamily::build({0.1, 0.4}, 1e-10);
  return f;
}

std::vector<SpacetimePoint> random_points(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> t(0.0, 0.9), s(-2.5, 2.5), x(-1.0, 1.0);
  std::vector<SpacetimePoint> out;
  for (int i = 0; i < n; ++i) {
    const double ti = t(rng);
    out.push_back({ti, {ti + s(rng), x(rng), x(rng)}});
  }
  return out;
}

}  // namespace

TEST_CASE("frame determinant is -4 everywhere") {
  for (const auto& p : random_points(500, 1)) {
    const auto d = frame_det_and_volume(p, family());
    CHECK(std::abs(d.det_frame + 4.0) <= 1e-13);
    CHECK(std::abs(d.sqrt_abs_det - 2.0) <= 1e-13);
  }
}

TEST_CASE("coordinate determinant is -1 and agrees with the oracle assembly") {
  for (const auto& p : random_points(200, 2)) {
    const auto g = frame_to_coord(metric_frame(p, family()));
    const auto ref = oracle::coordinate_metric(family(), {p.t, p.x[0], p.x[1], p.x[2]});
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n) CHECK(std::abs(g(m, n) - ref[m][n]) <= 1e-15);
    CHECK(determinant(g.comp) == doctest::Approx(-1.0).epsilon(1e-13));
  }
}

TEST_CASE("inverse metric is the matrix inverse") {
  for (const auto& p : random_points(200, 3)) {
    const auto M = product(metric_frame(p, family()).comp, inverse_metric_frame(p, family()).comp);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) CHECK(std::abs(M[a][b] - (a == b ? 1.0 : 0.0)) <= 1e-14);
  }
}

TEST_CASE("frame and coordinate components round-trip") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    for (auto v : {Variance::covariant, Variance::contravariant}) {
      FrameSymTensor2 T;
      T.variance = v;
      for (int a = 0; a < 4; ++a)
        for (int b = a; b < 4; ++b) T.comp(a, b) = u(rng);
      const auto back = coord_to_frame(frame_to_coord(T));
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) CHECK(std::abs(back.comp(a, b) - T.comp(a, b)) <= 1e-15);
    }
  }
}

TEST_CASE("covariant frame to coordinate agrees with the oracle") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  FrameSymTensor2 T;
  oracle::Mat4 F{};
  for (int a = 0; a < 4; ++a)
    for (int b = a; b < 4; ++b) F[a][b] = F[b][a] = T.comp(a, b) = u(rng);
  const auto C = frame_to_coord(T);
  const auto ref = oracle::frame_to_coordinate(F);
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) CHECK(std::abs(C(m, n) - ref[m][n]) <= 1e-15);
}

TEST_CASE("Minkowski limits") {
  const auto flat = ProfileFamily::build({0.0, 0.4});
  const auto m = frame_to_coord(minkowski_frame());
  const double eta[4] = {-1.0, 1.0, 1.0, 1.0};
  for (const auto& p : random_points(50, 6)) {
    const auto g = frame_to_coord(metric_frame(p, flat));
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        CHECK(g(a, b) == (a == b ? eta[a] : 0.0));
        CHECK(m(a, b) == (a == b ? eta[a] : 0.0));
      }
  }
  const auto mi = minkowski_frame(Variance::contravariant);
  CHECK(mi(FrameIndex::L, FrameIndex::Lbar) == -0.5);
  CHECK(mi(FrameIndex::e2, FrameIndex::e2) == 1.0);
}

TEST_CASE("exact first derivatives agree with central differences") {
  for (const auto& p : random_points(50, 7)) {
    if (std::abs(p.s()) < 0.05) continue;
    for (int mu = 0; mu < 4; ++mu) {
      const Direction d = coord_direction(mu);
      for (auto y : kFrame)
        for (auto z : kFrame) {
          const double h = 1e-5;
          SpacetimePoint a = p, b = p;
          (mu == 0 ? a.t : a.x[static_cast<std::size_t>(mu - 1)]) += h;
          (mu == 0 ? b.t : b.x[static_cast<std::size_t>(mu - 1)]) -= h;
          const double fd = (metric_frame(a, family())(y, z) - metric_frame(b, family())(y, z)) / (2.0 * h);
          CHECK(std::abs(metric_partial(p, family(), d, y, z) - fd) <= 1e-8);
        }
    }
  }
}

TEST_CASE("metric components carry the documented structure") {
  const SpacetimePoint p{0.3, {0.8, 0.2, -0.4}};
  const auto g = metric_frame(p, family());
  const double c = 1.0 + family().chi1(p.s(), 0).value;
  const double y = family().chitilde2(p.s(), 0).value;
  CHECK(g(FrameIndex::L, FrameIndex::L) == 0.0);
  CHECK(g(FrameIndex::L, FrameIndex::Lbar) == -2.0);
  CHECK(g(FrameIndex::L, FrameIndex::e2) == 0.0);
  CHECK(g(FrameIndex::Lbar, FrameIndex::Lbar) == doctest::Approx(-p.t * y));
  CHECK(g(FrameIndex::e2, FrameIndex::e2) * g(FrameIndex::e3, FrameIndex::e3) == doctest::Approx(1.0));
  CHECK(g(FrameIndex::e2, FrameIndex::e2) == doctest::Approx(c));
  CHECK(g(FrameIndex::e2, FrameIndex::Lbar) == doctest::Approx(-p.x[1] * c * y / 4.0));
  CHECK(g(FrameIndex::e3, FrameIndex::Lbar) == doctest::Approx(-p.x[2] / c * y / 4.0));
}

TEST_CASE("linearized ansatz is confined to its cone") {
  CHECK(in_ansatz_cone({0.2, {0.3, 0.1, 0.1}}));
  CHECK_FALSE(in_ansatz_cone({0.2, {0.9, 0.0, 0.0}}));
  CHECK_THROWS_AS(linearized_ansatz({0.2, {0.9, 0.0, 0.0}}, family()), DomainError);
  const auto h = linearized_ansatz({0.2, {0.3, 0.1, 0.1}}, family());
  CHECK(h(FrameIndex::L, FrameIndex::L) == 0.0);
}

TEST_CASE("singular line keeps first derivatives only") {
  const MetricAt m(family(), {0.4, {0.4, 0.1, 0.2}});
  CHECK_FALSE(m.second_derivatives());
  CHECK_THROWS_AS(m.partial2(coord_direction(1), coord_direction(1), FrameIndex::e2, FrameIndex::e2),
                  SingularError);
  CHECK(m.metric()(FrameIndex::e2, FrameIndex::e2) == 1.0);
}
