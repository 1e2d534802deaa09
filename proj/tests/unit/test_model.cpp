#include <doctest.h>

#include <cmath>
#include <random>

#include "einwave/errors.hpp"
#include "einwave/model_system.hpp"
#include "einwave/sobolev.hpp"
#include "oracles.hpp"

using namespace einwave;

namespace {

const ModelSolution& model() {
  static const ModelSolution m(ProfileFamily::build({0.1, 0.4}, 1e-10));
  return m;
}

const oracle::ClosedProfiles kClosed{0.1, 0.4};

double phi1(const oracle::Vec4& x) { return kClosed.chi1(x[1] - x[0], 0); }
double phi2(const oracle::Vec4& x) { return -x[0] * kClosed.chi2(x[1] - x[0], 0); }

std::vector<SpacetimePoint> cone_points(int n, std::uint64_t seed, double s_min) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> t(0.0, 0.8), x(-1.0, 1.0);
  std::vector<SpacetimePoint> out;
  while (static_cast<int>(out.size()) < n) {
    const double ti = t(rng), R = 1.0 - ti;
    const SpacetimePoint p{ti, {1.0 + R * x(rng), R * x(rng), R * x(rng)}};
    if (ModelSolution::in_cone(p) && std::abs(p.s()) > s_min) out.push_back(p);
  }
  return out;
}

}  // namespace

TEST_CASE("closed-form residuals vanish on the cone") {
  for (const auto& p : interior_grid(SliceKind::ball, 12)) {
    const auto r = model().residual(p);
    CHECK(std::abs(r.r1) <= 1e-12);
    CHECK(std::abs(r.r2) <= 1e-12);
  }
}

TEST_CASE("box agrees with a finite-difference stencil at second order") {
  for (const auto& p : cone_points(20, 41, 0.2)) {
    const oracle::Vec4 x{p.t, p.x[0], p.x[1], p.x[2]};
    for (int which : {1, 2}) {
      const auto f = which == 1 ? phi1 : phi2;
      const double exact = model().box(p, which);
      const double e1 = std::abs(oracle::fd_box(f, x, 2e-2) - exact);
      const double e2 = std::abs(oracle::fd_box(f, x, 1e-2) - exact);
      CAPTURE(which);
      CAPTURE(p.s());
      CHECK(e2 <= 1e-4);
      if (e1 > 1e-9) CHECK(std::log2(e1 / e2) == doctest::Approx(2.0).epsilon(0.1));
    }
  }
}

TEST_CASE("stencil residual of the model system converges to zero") {
  for (const auto& p : cone_points(10, 42, 0.2)) {
    const oracle::Vec4 x{p.t, p.x[0], p.x[1], p.x[2]};
    const double lbar = kClosed.chi1(p.s(), 1) * -2.0;  // (d_t - d_1) chi1(x1 - t)
    auto res = [&](double h) { return std::abs(oracle::fd_box(phi2, x, h) + lbar * lbar); };
    const double a = res(2e-2), b = res(1e-2);
    CHECK(b < a);
    CHECK(std::log2(a / b) == doctest::Approx(2.0).epsilon(0.15));
    CHECK(std::abs(oracle::fd_box(phi1, x, 1e-2)) <= 1e-4);
  }
}

TEST_CASE("field values and Lbar derivative") {
  for (const auto& p : cone_points(50, 43, 1e-3)) {
    CHECK(model().eval(p, 1, {0, 0, 0, 0}) == doctest::Approx(kClosed.chi1(p.s(), 0)).epsilon(1e-10));
    CHECK(model().eval(p, 2, {0, 0, 0, 0}) == doctest::Approx(-p.t * kClosed.chi2(p.s(), 0)).epsilon(1e-10));
    CHECK(model().lbar(p, 1) == doctest::Approx(-2.0 * kClosed.chi1(p.s(), 1)).epsilon(1e-10));
  }
}

TEST_CASE("domain checks") {
  CHECK_FALSE(ModelSolution::in_cone({0.5, {0.0, 0.0, 0.0}}));
  CHECK_THROWS_AS(model().eval({0.5, {0.0, 0.0, 0.0}}, 1, {0, 0, 0, 0}), DomainError);
  CHECK_THROWS_AS(model().eval({0.2, {0.2 + 1e-9, 0.0, 0.0}}, 1, {0, 2, 0, 0}), SingularError);
  CHECK_NOTHROW(model().eval({0.2, {0.2 + 1e-9, 0.0, 0.0}}, 1, {0, 1, 0, 0}));
}

TEST_CASE("epsilon = 0 is the zero solution") {
  const ModelSolution flat(ProfileFamily::build({0.0, 0.4}));
  for (const auto& p : cone_points(20, 44, 1e-3)) {
    CHECK(flat.eval(p, 1, {0, 0, 0, 0}) == 0.0);
    CHECK(flat.residual(p).r2 == 0.0);
  }
}
