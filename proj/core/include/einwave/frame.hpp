#pragma once

#include <array>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "einwave/fields.hpp"

namespace einwave {

/// Null frame {L, Lbar, e2, e3} with L = d_t + d_x1 and Lbar = d_t - d_x1.
enum class FrameIndex : int { L = 0, Lbar = 1, e2 = 2, e3 = 3 };

inline constexpr std::array<FrameIndex, 4> kFrame{FrameIndex::L, FrameIndex::Lbar,
                                                   FrameIndex::e2, FrameIndex::e3};

constexpr int idx(FrameIndex a) { return static_cast<int>(a); }

std::string to_string(FrameIndex a);

/// Coordinate components of a frame vector.
Direction frame_direction(FrameIndex a);
/// Unit coordinate direction d_mu, mu = 0..3.
Direction coord_direction(int mu);

enum class Variance { covariant, contravariant };

/// Ten independent components of a symmetric 4x4 array.
class Sym4 {
 public:
  static constexpr int slot(int i, int j) {
    if (i > j) std::swap(i, j);
    return i * 4 - i * (i - 1) / 2 + (j - i);
  }

  double operator()(int i, int j) const { return c_[static_cast<std::size_t>(slot(i, j))]; }
  double& operator()(int i, int j) { return c_[static_cast<std::size_t>(slot(i, j))]; }

  const std::array<double, 10>& data() const { return c_; }
  double max_abs() const;

 private:
  std::array<double, 10> c_{};
};

/// Matrix product a * b of two symmetric arrays (generally not symmetric).
std::array<std::array<double, 4>, 4> product(const Sym4& a, const Sym4& b);

double determinant(const Sym4& a);

struct FrameSymTensor2 {
  Sym4 comp;
  Variance variance = Variance::covariant;
  SpacetimePoint point;

  double operator()(FrameIndex a, FrameIndex b) const { return comp(idx(a), idx(b)); }
  double& operator()(FrameIndex a, FrameIndex b) { return comp(idx(a), idx(b)); }
};

/// Coordinate components, signature (-,+,+,+), index 0 = t.
struct CoordSymTensor2 {
  Sym4 comp;
  Variance variance = Variance::covariant;
  SpacetimePoint point;

  double operator()(int mu, int nu) const { return comp(mu, nu); }
  double& operator()(int mu, int nu) { return comp(mu, nu); }
};

CoordSymTensor2 frame_to_coord(const FrameSymTensor2& T);
FrameSymTensor2 coord_to_frame(const CoordSymTensor2& T);

/// Minkowski metric in the frame: m_{L Lbar} = -2, m_AA = 1 (or the inverse).
FrameSymTensor2 minkowski_frame(Variance v = Variance::covariant);

/// Keys "LL", "LLbar", ..., "33" (frame) or "00", "01", ..., "33" (coordinates).
nlohmann::json to_json(const FrameSymTensor2& T);
nlohmann::json to_json(const CoordSymTensor2& T);

}  // namespace einwave
