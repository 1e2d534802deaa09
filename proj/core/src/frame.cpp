#include "einwave/frame.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace einwave {
namespace {

// theta^Y_mu: frame components of d_mu, d_t = (L + Lbar)/2, d_x1 = (L - Lbar)/2.
constexpr double kTheta[4][4] = {
    {0.5, 0.5, 0.0, 0.0},
    {0.5, -0.5, 0.0, 0.0},
    {0.0, 0.0, 1.0, 0.0},
    {0.0, 0.0, 0.0, 1.0},
};
// e_Y^mu: coordinate components of the frame vectors.
constexpr double kFrameVec[4][4] = {
    {1.0, 1.0, 0.0, 0.0},
    {1.0, -1.0, 0.0, 0.0},
    {0.0, 0.0, 1.0, 0.0},
    {0.0, 0.0, 0.0, 1.0},
};

/// out_{ij} = sum_{ab} M[i][a] M[j][b] in_{ab}
Sym4 transform(const Sym4& in, const double (&M)[4][4]) {
  Sym4 out;
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) {
      double s = 0.0;
      for (int a = 0; a < 4; ++a) {
        if (M[i][a] == 0.0) continue;
        for (int b = 0; b < 4; ++b) {
          if (M[j][b] == 0.0) continue;
          s += M[i][a] * M[j][b] * in(a, b);
        }
      }
      out(i, j) = s;
    }
  }
  return out;
}

const char* frame_key(int i) {
  static const char* names[4] = {"L", "Lbar", "2", "3"};
  return names[i];
}

}  // namespace

std::string to_string(FrameIndex a) { return frame_key(idx(a)); }

Direction frame_direction(FrameIndex a) {
  const auto& r = kFrameVec[idx(a)];
  return {r[0], r[1], r[2], r[3]};
}

Direction coord_direction(int mu) {
  Direction d{};
  d[static_cast<std::size_t>(mu)] = 1.0;
  return d;
}

double Sym4::max_abs() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

std::array<std::array<double, 4>, 4> product(const Sym4& a, const Sym4& b) {
  std::array<std::array<double, 4>, 4> out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double s = 0.0;
      for (int k = 0; k < 4; ++k) s += a(i, k) * b(k, j);
      out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s;
    }
  return out;
}

double determinant(const Sym4& a) {
  Eigen::Matrix4d m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = a(i, j);
  return m.determinant();
}

CoordSymTensor2 frame_to_coord(const FrameSymTensor2& T) {
  CoordSymTensor2 out;
  out.variance = T.variance;
  out.point = T.point;
  if (T.variance == Variance::covariant) {
    out.comp = transform(T.comp, kTheta);
  } else {
    // g^{mu nu} = e_Y^mu e_Z^nu g^{YZ}: transpose of kFrameVec.
    double Et[4][4];
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) Et[i][j] = kFrameVec[j][i];
    out.comp = transform(T.comp, Et);
  }
  return out;
}

FrameSymTensor2 coord_to_frame(const CoordSymTensor2& T) {
  FrameSymTensor2 out;
  out.variance = T.variance;
  out.point = T.point;
  if (T.variance == Variance::covariant) {
    out.comp = transform(T.comp, kFrameVec);
  } else {
    double Tt[4][4];
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) Tt[i][j] = kTheta[j][i];
    out.comp = transform(T.comp, Tt);
  }
  return out;
}

FrameSymTensor2 minkowski_frame(Variance v) {
  FrameSymTensor2 m;
  m.variance = v;
  m(FrameIndex::L, FrameIndex::Lbar) = v == Variance::covariant ? -2.0 : -0.5;
  m(FrameIndex::e2, FrameIndex::e2) = 1.0;
  m(FrameIndex::e3, FrameIndex::e3) = 1.0;
  return m;
}

nlohmann::json to_json(const FrameSymTensor2& T) {
  nlohmann::json j = nlohmann::json::object();
  for (int a = 0; a < 4; ++a)
    for (int b = a; b < 4; ++b) j[std::string(frame_key(a)) + frame_key(b)] = T.comp(a, b);
  return j;
}

nlohmann::json to_json(const CoordSymTensor2& T) {
  nlohmann::json j = nlohmann::json::object();
  for (int a = 0; a < 4; ++a)
    for (int b = a; b < 4; ++b) j[std::to_string(a) + std::to_string(b)] = T.comp(a, b);
  return j;
}

}  // namespace einwave
