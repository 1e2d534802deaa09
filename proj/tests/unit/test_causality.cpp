#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "einwave/causality.hpp"
#include "einwave/errors.hpp"
#include "einwave/golden.hpp"
#include "oracles.hpp"

using namespace einwave;

namespace {

const ProfileFamily& family() {
  static const ProfileFamily f = ProfileFamily::build({0.1, 0.4}, 1e-10);
  return f;
}

double defining(BoundaryPiece piece, const oracle::Vec4& x) {
  const double h = piece == BoundaryPiece::c1 ? 1.0 : 0.25;
  const double R = 1.0 - x[0];
  return h * (x[1] - 1.0) * (x[1] - 1.0) + (x[2] * x[2] + x[3] * x[3]) / 4.0 - R * R;
}

// g^{mu nu} dF_mu dF_nu with the gradient of the defining function taken by
// central differences and the inverse of the independently assembled metric.
double oracle_q(const BoundaryPoint& b) {
  const oracle::Vec4 x{b.p.t, b.p.x[0], b.p.x[1], b.p.x[2]};
  oracle::Vec4 n{};
  for (int m = 0; m < 4; ++m) {
    oracle::Vec4 a = x, c = x;
    a[m] += 1e-6;
    c[m] -= 1e-6;
    n[m] = (defining(b.piece, a) - defining(b.piece, c)) / 2e-6;
  }
  const auto gi = oracle::inverse(oracle::coordinate_metric(family(), x));
  double q = 0.0;
  for (int m = 0; m < 4; ++m)
    for (int k = 0; k < 4; ++k) q += gi[m][k] * n[m] * n[k];
  return q;
}

}  // namespace

TEST_CASE("boundary parameterization lies on the defining surfaces") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> t(0.0, 0.99), th(0.0, std::numbers::pi / 2), ph(0.0, 2 * std::numbers::pi);
  for (int i = 0; i < 500; ++i) {
    for (auto piece : {BoundaryPiece::c1, BoundaryPiece::c2}) {
      const auto b = BoundaryPoint::on(piece, t(rng), th(rng), ph(rng));
      CHECK(std::abs(defining_residual(b)) <= 1e-14);
      CHECK(std::abs(defining(piece, {b.p.t, b.p.x[0], b.p.x[1], b.p.x[2]})) <= 1e-14);
      if (piece == BoundaryPiece::c1)
        CHECK(b.p.x[0] <= 1.0 + 1e-15);
      else
        CHECK(b.p.x[0] >= 1.0 - 1e-15);
    }
  }
  CHECK(BoundaryPoint::on(BoundaryPiece::c1, 0.3, 0.0, 0.0).u() == 0.0);
  CHECK_THROWS_AS(BoundaryPoint::on(BoundaryPiece::c1, 1.0, 0.3, 0.0), GeometryError);
}

TEST_CASE("conormal is the gradient of the defining function") {
  const auto b = BoundaryPoint::on(BoundaryPiece::c1, 0.2, 0.7, 1.1);
  const auto n = conormal(b);
  CHECK(n[0] == doctest::Approx(2.0 * (1.0 - b.p.t)));
  CHECK(n[1] == doctest::Approx(-2.0 * (1.0 - b.p.x[0])));
  CHECK(n[2] == doctest::Approx(b.p.x[1] / 2.0));
  const auto uv = null_to_coordinate(null_conormal(b));
  for (std::size_t k = 0; k < 4; ++k) CHECK(uv[k] == doctest::Approx(n[k]).epsilon(1e-14));
  auto off = b;
  off.p.x[0] += 1e-3;
  CHECK_THROWS_AS(conormal(off), GeometryError);
}

TEST_CASE("causal character matches the coordinate oracle") {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> t(0.0, 0.9), th(0.05, std::numbers::pi / 2), ph(0.0, 2 * std::numbers::pi);
  for (int i = 0; i < 200; ++i) {
    for (auto piece : {BoundaryPiece::c1, BoundaryPiece::c2}) {
      const auto b = BoundaryPoint::on(piece, t(rng), th(rng), ph(rng));
      CHECK(causal_character(b, family()).q == doctest::Approx(oracle_q(b)).epsilon(1e-8));
    }
  }
}

TEST_CASE("golden boundary values agree with the oracle") {
  const auto golden = load_json(golden_file(EINWAVE_TEST_GOLDEN_DIR)).at("values");
  for (double theta : {0.3, 0.9, 1.4}) {
    std::ostringstream at;
    at << '@' << theta;
    const auto b1 = BoundaryPoint::on(BoundaryPiece::c1, 0.25, theta, 0.7);
    const auto b2 = BoundaryPoint::on(BoundaryPiece::c2, 0.25, theta, 0.7);
    CHECK(golden.at("Q/C1/t=0.25,phi=0.7" + at.str()).get<double>() == doctest::Approx(oracle_q(b1)).epsilon(1e-8));
    CHECK(golden.at("Q/C2/t=0.25,phi=0.7" + at.str()).get<double>() == doctest::Approx(oracle_q(b2)).epsilon(1e-8));
  }
}

TEST_CASE("Minkowski reference values") {
  const auto flat = ProfileFamily::build({0.0, 0.4});
  for (double th : {0.0, 0.4, 1.2}) {
    const auto b1 = BoundaryPoint::on(BoundaryPiece::c1, 0.3, th, 0.5);
    const auto b2 = BoundaryPoint::on(BoundaryPiece::c2, 0.3, th, 0.5);
    const auto c1 = causal_character(b1, flat);
    const auto c2 = causal_character(b2, flat);
    CHECK(c1.q == doctest::Approx(-0.75 * b1.rho2()).epsilon(1e-14));
    CHECK(c1.q_mink == doctest::Approx(-0.75 * b1.rho2()).epsilon(1e-14));
    CHECK(c2.q == doctest::Approx(-3.0 * 0.7 * 0.7).epsilon(1e-14));
  }
}

TEST_CASE("boundary is nowhere timelike and null only at the apex line") {
  const auto rep = boundary_scan({}, family());
  CHECK(rep.samples.size() == 10000);
  CHECK(rep.passed({}));
  CHECK(rep.max_q <= 1e-10);
  CHECK(rep.near_null > 0);
  CHECK(rep.near_null_max_abs_u <= 1e-4);
  CHECK(rep.max_c2_q < 0.0);
  CHECK(rep.max_defining_residual <= 1e-12);
  CHECK(rep.max_mink_deviation <= 1e-12);
  CHECK(rep.comparison_constant < 10.0);
  CHECK_FALSE(rep.violation.has_value());
  for (const auto& s : rep.samples) {
    if (s.piece == BoundaryPiece::c1 && s.u != 0.0) CHECK(s.q < 0.0);
  }
}

TEST_CASE("the hand expansion of Q differs from the contraction") {
  const auto rep = boundary_scan({}, family());
  CHECK(rep.max_expansion_mismatch > 1e-3);
  const auto b = BoundaryPoint::on(BoundaryPiece::c1, 0.25, 0.9, 0.7);
  const double gap = c1_expanded_form(b, family()) - causal_character(b, family()).q;
  // The discrepancy is carried by the rho^2 chitilde2 term alone.
  const double y = family().chitilde2(b.p.x[0] - b.p.t, 0).value;
  const double expected = -b.rho2() * (1.0 - b.v()) * y - 0.5 * b.u() * y * b.rho2();
  CHECK(gap == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("scan CSV has one row per sample") {
  ScanSpec spec;
  spec.t_levels = 2;
  spec.radial = 3;
  spec.angles = 2;
  const auto rep = boundary_scan(spec, family());
  std::ostringstream os;
  write_scan_csv(os, rep);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "piece,t,u,theta,phi,Q,Q_mink,Q_expanded");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == static_cast<int>(spec.points()));
}
