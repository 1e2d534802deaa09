#include "einwave/profiles.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "einwave/errors.hpp"
#include "einwave/numerics/hermite.hpp"
#include "einwave/numerics/quadrature.hpp"

namespace einwave {
namespace {

using numerics::QuinticHermiteTable;

constexpr double kInf = std::numeric_limits<double>::infinity();
// Beyond u = log(4/|s|) = kTableTop the primitives switch to their asymptotic
// series, which is exact to rounding there.
constexpr double kTableTop = 70.0;

double u_of(double s) { return std::log(4.0 / std::abs(s)); }

/// P(s) = amplitude * int_0^s log(4/|r|)^beta dr, odd in s. Tabulated in
/// u = log(4/|s|) where P(s) = F(u) = 4 a int_u^inf e^-v v^beta dv.
class LogPowerPrimitive {
 public:
  LogPowerPrimitive() = default;

  LogPowerPrimitive(double amplitude, double beta, double u_lo, double h)
      : a_(amplitude), beta_(beta) {
    const auto n = static_cast<std::size_t>(std::ceil((kTableTop - u_lo) / h));
    const double step = (kTableTop - u_lo) / static_cast<double>(n);
    std::vector<double> f(n + 1), df(n + 1), d2f(n + 1);
    const auto integrand = [this](double v) {
      return 4.0 * a_ * std::exp(-v) * std::pow(v, beta_);
    };
    // Accumulate from s = 0: the tail beyond the table top first, then cell by
    // cell towards larger |s|.
    numerics::QuadratureOptions tail_opts;
    tail_opts.rel_tol = 1e-12;
    auto tail = numerics::integrate(integrand, kTableTop, kTableTop + 80.0, tail_opts);
    if (a_ != 0.0) numerics::require_converged(tail, "log-power primitive tail");
    double acc = tail.value;
    for (std::size_t k = n + 1; k-- > 0;) {
      const double u = u_lo + step * static_cast<double>(k);
      if (k < n) {
        double err = 0.0;
        acc += numerics::gauss_kronrod15(integrand, u, u + step, err);
      }
      const double e = 4.0 * a_ * std::exp(-u);
      f[k] = acc;
      df[k] = -e * std::pow(u, beta_);
      d2f[k] = e * (std::pow(u, beta_) - beta_ * std::pow(u, beta_ - 1.0));
    }
    table_ = QuinticHermiteTable(u_lo, step, std::move(f), std::move(df), std::move(d2f));
  }

  double value(double s) const {
    if (std::abs(s) < ProfileFamily::kZeroWindow || a_ == 0.0) return 0.0;
    const double u = u_of(s);
    const double mag = u > table_.x_max() ? series(std::abs(s), u) : table_(u).value;
    return s > 0.0 ? mag : -mag;
  }

  double slope(double s) const {
    if (a_ == 0.0) return 0.0;
    if (std::abs(s) < ProfileFamily::kZeroWindow) return kInf;
    return a_ * std::pow(u_of(s), beta_);
  }

  /// Caller excludes s = 0.
  double curvature(double s) const {
    if (a_ == 0.0) return 0.0;
    return -a_ * beta_ * std::pow(u_of(s), beta_ - 1.0) / s;
  }

  double series(double abs_s, double u) const {
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 60; ++k) {
      term *= (beta_ - static_cast<double>(k) + 1.0) / u;
      sum += term;
      if (std::abs(term) < 1e-18) break;
    }
    return a_ * abs_s * std::pow(u, beta_) * sum;
  }

  const QuinticHermiteTable& table() const { return table_; }

 private:
  double a_ = 0.0;
  double beta_ = 0.0;
  QuinticHermiteTable table_;
};

}  // namespace

std::string to_string(Profile p) {
  switch (p) {
    case Profile::chi1:
      return "chi1";
    case Profile::chi2:
      return "chi2";
    case Profile::chitilde2:
      return "chitilde2";
  }
  return "?";
}

void ProfileParams::validate(bool allow_out_of_range) const {
  std::ostringstream msg;
  if (!std::isfinite(epsilon) || epsilon < 0.0) {
    msg << "epsilon must be finite and >= 0, got " << epsilon;
    throw ConfigError(msg.str());
  }
  const bool in_range = alpha > 0.25 && alpha < 0.5;
  const bool loose = alpha > 0.0 && alpha < 1.0;
  if (!(allow_out_of_range ? loose : in_range)) {
    msg << "alpha must lie in (1/4, 1/2), got " << alpha;
    if (!allow_out_of_range) msg << " (pass allow-out-of-range for negative controls)";
    throw ConfigError(msg.str());
  }
}

struct ProfileFamily::Impl {
  ProfileParams params;
  RiccatiSource source = RiccatiSource::riccati;
  double quadratic = 0.125;
  double ode_tol = 0.0;
  double step = 0.0;
  double max_residual = 0.0;
  LogPowerPrimitive chi1;
  LogPowerPrimitive chi2;
  // chitilde2 in u = log(4/|s|) for s > 0 and s < 0.
  QuinticHermiteTable riccati_pos;
  QuinticHermiteTable riccati_neg;

  double rhs(double s, double y) const {
    const double d = chi1.slope(s);
    const double c = 1.0 + chi1.value(s);
    return 2.0 * d * d / (c * c) + quadratic * y * y;
  }

  double riccati_value(double s) const {
    if (std::abs(s) < kZeroWindow) return 0.0;
    const double u = u_of(s);
    const auto& table = s > 0.0 ? riccati_pos : riccati_neg;
    // Below the table the correction to chi2 is O(eps |s|) relative.
    if (u > table.x_max()) return chi2.value(s);
    return table(u).value;
  }

  double riccati_second(double s, double y, double dy) const {
    const double d1 = chi1.slope(s);
    const double d2 = chi1.curvature(s);
    const double c = 1.0 + chi1.value(s);
    return 4.0 * d1 * d2 / (c * c) - 4.0 * d1 * d1 * d1 / (c * c * c) + 2.0 * quadratic * y * dy;
  }

  Jet jet(Profile p, double s, int max_order) const {
    Jet j;
    const bool zero = std::abs(s) < kZeroWindow;
    if (p == Profile::chitilde2 && source == RiccatiSource::chi2) p = Profile::chi2;
    switch (p) {
      case Profile::chi1:
        j.v = chi1.value(s);
        if (max_order >= 1) j.d1 = chi1.slope(s);
        if (max_order >= 2) j.d2 = zero ? kInf : chi1.curvature(s);
        break;
      case Profile::chi2:
        j.v = chi2.value(s);
        if (max_order >= 1) j.d1 = chi2.slope(s);
        if (max_order >= 2) j.d2 = zero ? kInf : chi2.curvature(s);
        break;
      case Profile::chitilde2:
        j.v = riccati_value(s);
        if (max_order >= 1) j.d1 = zero ? (params.epsilon == 0.0 ? 0.0 : kInf) : rhs(s, j.v);
        if (max_order >= 2) j.d2 = zero ? kInf : riccati_second(s, j.v, j.d1);
        break;
    }
    if (params.epsilon == 0.0) j = Jet{};
    return j;
  }

  void build_riccati(double u_lo, double blowup_bound);
  double check_residual() const;
};

namespace {

void check_order(int order) {
  if (order < 0 || order > 2) {
    throw PreconditionError("profile derivative order must be 0, 1 or 2, got " +
                            std::to_string(order));
  }
}

void check_domain(double s) {
  if (!(std::abs(s) <= ProfileFamily::kDomain)) {
    std::ostringstream msg;
    msg << "profile argument s=" << s << " outside [-" << ProfileFamily::kDomain << ", "
        << ProfileFamily::kDomain << "]";
    throw DomainError(msg.str());
  }
}

}  // namespace

void ProfileFamily::Impl::build_riccati(double u_lo, double blowup_bound) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 1>;
  const auto& grid = chi1.table();
  const std::size_t n = grid.size() - 1;
  const double step = grid.step();

  for (const double sign : {1.0, -1.0}) {
    std::vector<double> f(n + 1), df(n + 1), d2f(n + 1);
    const auto system = [&](const State& y, State& dydu, double u) {
      const double s = sign * 4.0 * std::exp(-u);
      dydu[0] = -s * rhs(s, y[0]);
    };
    auto stepper = odeint::make_controlled(1e-20, 1e-13,
                                           odeint::runge_kutta_fehlberg78<State>());
    const double s_top = sign * 4.0 * std::exp(-grid.x_max());
    State y{chi2.value(s_top)};
    for (std::size_t k = n + 1; k-- > 0;) {
      const double u = u_lo + step * static_cast<double>(k);
      if (k < n) {
        odeint::integrate_adaptive(stepper, system, y, u + step, u, -step / 4.0);
      }
      if (!std::isfinite(y[0]) || std::abs(y[0]) > blowup_bound) {
        std::ostringstream msg;
        msg << "Riccati profile exceeds the safety bound " << blowup_bound << " near s="
            << sign * 4.0 * std::exp(-u) << "; epsilon=" << params.epsilon
            << " is too large";
        throw ProfileBlowupError(msg.str());
      }
      const double s = sign * 4.0 * std::exp(-u);
      const double dy = rhs(s, y[0]);
      const double d2y = riccati_second(s, y[0], dy);
      f[k] = y[0];
      df[k] = -s * dy;
      d2f[k] = s * dy + s * s * d2y;
    }
    QuinticHermiteTable table(u_lo, step, std::move(f), std::move(df), std::move(d2f));
    (sign > 0.0 ? riccati_pos : riccati_neg) = std::move(table);
  }
}

double ProfileFamily::Impl::check_residual() const {
  double worst = 0.0;
  for (const auto* table : {&riccati_pos, &riccati_neg}) {
    const double sign = table == &riccati_pos ? 1.0 : -1.0;
    for (std::size_t k = 0; k + 1 < table->size(); ++k) {
      const double u = table->node(k) + 0.5 * table->step();
      const double s = sign * 4.0 * std::exp(-u);
      const auto ip = (*table)(u);
      const double r = -ip.slope / s - rhs(s, ip.value);
      worst = std::max(worst, std::abs(r));
    }
  }
  return worst;
}

ProfileFamily::ProfileFamily(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

ProfileFamily ProfileFamily::build(const ProfileParams& params, double ode_tol,
                                   const ProfileBuildOptions& opts) {
  params.validate(opts.allow_out_of_range);
  if (!(ode_tol > 0.0)) throw ConfigError("ode_tol must be positive");
  if (!(opts.grid_step > 0.0)) throw ConfigError("grid_step must be positive");
  if (!(opts.riccati_quadratic >= 0.0 && std::isfinite(opts.riccati_quadratic)))
    throw ConfigError("riccati_quadratic must be finite and non-negative");

  const double u_lo = std::log(4.0 / kDomain);
  double h = opts.grid_step;
  for (int attempt = 0;; ++attempt) {
    auto impl = std::make_shared<Impl>();
    impl->params = params;
    impl->source = opts.source;
    impl->quadratic = opts.riccati_quadratic;
    impl->ode_tol = ode_tol;
    impl->step = h;
    impl->chi1 = LogPowerPrimitive(params.epsilon, params.alpha, u_lo, h);
    impl->chi2 = LogPowerPrimitive(2.0 * params.epsilon * params.epsilon,
                                   2.0 * params.alpha, u_lo, h);
    if (opts.source == RiccatiSource::chi2) {
      return ProfileFamily(std::move(impl));
    }
    impl->build_riccati(u_lo, opts.blowup_bound);
    impl->max_residual = impl->check_residual();
    if (impl->max_residual <= ode_tol) return ProfileFamily(std::move(impl));
    if (attempt >= opts.max_refinements) {
      std::ostringstream msg;
      msg << "Riccati interpolant residual " << impl->max_residual
          << " exceeds ode_tol=" << ode_tol << " at grid step " << h;
      throw OdeToleranceError(msg.str());
    }
    h *= 0.5;
  }
}

const ProfileParams& ProfileFamily::params() const { return impl_->params; }
RiccatiSource ProfileFamily::source() const { return impl_->source; }
double ProfileFamily::ode_tol() const { return impl_->ode_tol; }
double ProfileFamily::riccati_quadratic() const { return impl_->quadratic; }
double ProfileFamily::max_ode_residual() const { return impl_->max_residual; }
double ProfileFamily::grid_step() const { return impl_->step; }

ProfileEval ProfileFamily::eval(Profile p, double s, int order) const {
  check_order(order);
  check_domain(s);
  ProfileEval out;
  out.order = order;
  out.s = s;
  if (order == 2 && std::abs(s) < kZeroWindow) {
    out.singular = true;
    out.value = kInf;
    return out;
  }
  out.value = impl_->jet(p, s, order).derivative(order);
  return out;
}

ProfileEval ProfileFamily::chi1(double s, int order) const { return eval(Profile::chi1, s, order); }
ProfileEval ProfileFamily::chi2(double s, int order) const { return eval(Profile::chi2, s, order); }
ProfileEval ProfileFamily::chitilde2(double s, int order) const {
  return eval(Profile::chitilde2, s, order);
}

Jet ProfileFamily::jet(Profile p, double s, int max_order) const {
  check_order(max_order);
  check_domain(s);
  if (max_order == 2 && std::abs(s) < kZeroWindow) {
    throw SingularError("second derivative of " + to_string(p) +
                        " requested on the singular line s = 0");
  }
  return impl_->jet(p, s, max_order);
}

double ProfileFamily::riccati_rhs(double s, double y) const {
  check_domain(s);
  return impl_->rhs(s, y);
}

double ProfileFamily::ode_residual(double s) const {
  check_domain(s);
  if (std::abs(s) < kZeroWindow) return 0.0;
  if (impl_->source == RiccatiSource::chi2) {
    return impl_->chi2.slope(s) - impl_->rhs(s, impl_->chi2.value(s));
  }
  const double u = u_of(s);
  const auto& table = s > 0.0 ? impl_->riccati_pos : impl_->riccati_neg;
  if (u > table.x_max()) return 0.0;
  const auto ip = table(u);
  return -ip.slope / s - impl_->rhs(s, ip.value);
}

ProfileBounds profile_bounds(const ProfileFamily& family) {
  ProfileBounds out;
  const double eps = family.params().epsilon;
  const double alpha = family.params().alpha;
  // s in [0, 1] maps to u in [log 4, inf).
  const auto energy_density = [eps, alpha](double u) {
    return 4.0 * eps * eps * std::exp(-u) * std::pow(u, 2.0 * alpha);
  };
  numerics::QuadratureOptions opts;
  opts.rel_tol = 1e-12;
  const auto q = numerics::integrate(energy_density, std::log(4.0), std::log(4.0) + 80.0, opts);
  out.chi1_energy = eps == 0.0 ? 0.0 : numerics::require_converged(q, "int_0^1 chi1'^2");

  const int n = 2000;
  for (int i = 0; i <= n; ++i) {
    // Geometric spacing towards s = 0 plus the endpoints.
    const double mag = i == 0 ? 1.0 : std::pow(10.0, -12.0 * i / n);
    for (const double s : {mag, -mag}) {
      const double y = family.chitilde2(s, 0).value;
      out.sup_chitilde2 = std::max(out.sup_chitilde2, std::abs(y));
      out.sup_gap = std::max(out.sup_gap, std::abs(y - family.chi2(s, 0).value));
    }
  }
  out.pass = out.sup_chitilde2 <= 2.0 && out.chi1_energy <= 1.0;
  return out;
}

ProfileBounds profile_bound_check(const ProfileFamily& family) {
  auto out = profile_bounds(family);
  std::ostringstream msg;
  if (out.sup_chitilde2 > 2.0) {
    msg << "bootstrap bound sup_{|s|<=1} |chitilde2| <= 2 violated: " << out.sup_chitilde2;
    throw VerificationFailure(msg.str());
  }
  if (out.chi1_energy > 1.0) {
    msg << "energy bound int_0^1 chi1'^2 <= 1 violated: " << out.chi1_energy;
    throw VerificationFailure(msg.str());
  }
  return out;
}

void write_profile_csv(std::ostream& os, const ProfileFamily& family,
                       std::span<const double> s_values) {
  os << "s,chi1,chi1',chi2,chi2',chitilde2,chitilde2'\n";
  const auto old = os.precision(17);
  for (const double s : s_values) {
    os << s << ',' << family.chi1(s, 0).value << ',' << family.chi1(s, 1).value << ','
       << family.chi2(s, 0).value << ',' << family.chi2(s, 1).value << ','
       << family.chitilde2(s, 0).value << ',' << family.chitilde2(s, 1).value << '\n';
  }
  os.precision(old);
}

}  // namespace einwave
