#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace einwave::numerics {

/// Value and first derivative of an interpolant.
struct Interpolated {
  double value;
  double slope;
};

/// Piecewise quintic Hermite interpolant on a uniform grid. Each node stores
/// the value with its first and second derivative, so the interpolant is C2
/// and reproduces quintics exactly.
class QuinticHermiteTable {
 public:
  QuinticHermiteTable() = default;

  QuinticHermiteTable(double x0, double h, std::vector<double> f,
                      std::vector<double> df, std::vector<double> d2f)
      : x0_(x0), h_(h), f_(std::move(f)), df_(std::move(df)), d2f_(std::move(d2f)) {}

  double x_min() const { return x0_; }
  double x_max() const { return x0_ + h_ * static_cast<double>(f_.size() - 1); }
  double step() const { return h_; }
  std::size_t size() const { return f_.size(); }
  double node(std::size_t i) const { return x0_ + h_ * static_cast<double>(i); }
  double value_at_node(std::size_t i) const { return f_[i]; }
  double slope_at_node(std::size_t i) const { return df_[i]; }

  /// Caller guarantees x_min() <= x <= x_max().
  Interpolated operator()(double x) const {
    const double pos = (x - x0_) / h_;
    const auto last = static_cast<double>(f_.size() - 2);
    const double cell = std::clamp(std::floor(pos), 0.0, last);
    const auto i = static_cast<std::size_t>(cell);
    const double t = pos - cell;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double t4 = t3 * t;
    const double t5 = t4 * t;

    const double h0 = 1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5;
    const double h1 = t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5;
    const double h2 = 0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5;
    const double h3 = 10.0 * t3 - 15.0 * t4 + 6.0 * t5;
    const double h4 = -4.0 * t3 + 7.0 * t4 - 3.0 * t5;
    const double h5 = 0.5 * t3 - t4 + 0.5 * t5;

    const double g0 = -30.0 * t2 + 60.0 * t3 - 30.0 * t4;
    const double g1 = 1.0 - 18.0 * t2 + 32.0 * t3 - 15.0 * t4;
    const double g2 = t - 4.5 * t2 + 6.0 * t3 - 2.5 * t4;
    const double g3 = -g0;
    const double g4 = -12.0 * t2 + 28.0 * t3 - 15.0 * t4;
    const double g5 = 1.5 * t2 - 4.0 * t3 + 2.5 * t4;

    const double a0 = f_[i];
    const double a1 = h_ * df_[i];
    const double a2 = h_ * h_ * d2f_[i];
    const double b0 = f_[i + 1];
    const double b1 = h_ * df_[i + 1];
    const double b2 = h_ * h_ * d2f_[i + 1];

    return {a0 * h0 + a1 * h1 + a2 * h2 + b0 * h3 + b1 * h4 + b2 * h5,
            (a0 * g0 + a1 * g1 + a2 * g2 + b0 * g3 + b1 * g4 + b2 * g5) / h_};
  }

 private:
  double x0_ = 0.0;
  double h_ = 1.0;
  std::vector<double> f_;
  std::vector<double> df_;
  std::vector<double> d2f_;
};

}  // namespace einwave::numerics
