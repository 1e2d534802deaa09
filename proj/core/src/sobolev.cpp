#include "einwave/sobolev.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "einwave/errors.hpp"
#include "einwave/metric.hpp"
#include "einwave/model_system.hpp"

namespace einwave {

namespace nm = numerics;

std::string to_string(SliceKind k) {
  switch (k) {
    case SliceKind::ball: return "ball";
    case SliceKind::bent: return "bent";
    case SliceKind::empty: return "empty";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::finite: return "finite";
    case Verdict::divergent: return "divergent";
    case Verdict::inconclusive: return "inconclusive";
    case Verdict::empty: return "empty";
  }
  return "?";
}

std::string to_string(VerdictRule r) {
  switch (r) {
    case VerdictRule::none: return "none";
    case VerdictRule::stationary: return "stationary";
    case VerdictRule::geometric: return "geometric";
    case VerdictRule::log_power: return "log_power";
    case VerdictRule::zero_measure: return "zero_measure";
  }
  return "?";
}

std::string to_string(NormKind k) { return k == NormKind::h2 ? "H2" : "dt_H1"; }

double DomainSlice::rho2_s(double s) const {
  if (kind == SliceKind::empty || s <= 0.0 || s >= s_max()) return 0.0;
  const double R = 1.0 - t;
  // (1-t)^2 - (x1-1)^2 = s (2(1-t) - s) and 4(1-t)^2 - (x1-1)^2 = (3R - s)(R + s).
  if (kind == SliceKind::ball) return std::max(0.0, s * (2.0 * R - s));
  if (s < R) return std::max(0.0, 4.0 * s * (2.0 * R - s));
  return std::max(0.0, (3.0 * R - s) * (R + s));
}

double DomainSlice::w0_s(double s) const { return std::numbers::pi * rho2_s(s); }

double DomainSlice::w2_s(double s) const {
  const double r2 = rho2_s(s);
  return 0.25 * std::numbers::pi * r2 * r2;
}

std::vector<double> DomainSlice::kinks_s() const {
  if (kind != SliceKind::bent) return {};
  const double s = 1.0 - t;
  if (s > 0.0 && s < s_max()) return {s};
  return {};
}

DomainSlice slice(SliceKind kind, double t) {
  DomainSlice out;
  out.t = t;
  if (kind == SliceKind::empty || t >= 1.0) return out;
  out.kind = kind;
  out.x1_min = t;
  out.x1_max = kind == SliceKind::ball ? 2.0 - t : 3.0 - 2.0 * t;
  return out;
}

double disc_moment(int p2, int p3, double rho2) {
  if (p2 < 0 || p3 < 0 || p2 % 2 != 0 || p3 % 2 != 0 || rho2 <= 0.0) return 0.0;
  const int a = p2 / 2;
  const int b = p3 / 2;
  const int n = a + b + 1;
  if (a == 0 && b == 0) return std::numbers::pi * rho2;
  return std::pow(rho2, n) / n * std::tgamma(a + 0.5) * std::tgamma(b + 0.5) / std::tgamma(n);
}

std::vector<double> LadderSpec::deltas() const {
  std::vector<double> d;
  for (int k = k_min; k <= k_max; ++k) d.push_back(std::ldexp(1.0, -k));
  return d;
}

std::vector<SpacetimePoint> interior_grid(SliceKind kind, int n, double t_max) {
  if (n < 1) throw ConfigError("interior grid needs n >= 1");
  if (!(t_max > 0.0 && t_max < 1.0)) throw ConfigError("interior grid needs 0 < t_max < 1");
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<SpacetimePoint> out;
  out.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double t = t_max * (i + 0.5) / n;
    const DomainSlice d = slice(kind, t);
    for (int j = 0; j < n; ++j) {
      const double s = d.s_max() * (j + 0.5) / n;
      const double rho = std::sqrt(d.rho2_s(s));
      for (int k = 0; k < n; ++k) {
        const double r = rho * (k + 0.5) / n;
        const double phi = golden * (k + n * j);
        out.push_back({t, {t + s, r * std::cos(phi), r * std::sin(phi)}});
      }
    }
  }
  return out;
}

QuadratureOutcome slice_integral(const SliceDensity& density, const DomainSlice& slice,
                                 double delta, double quad_tol) {
  QuadratureOutcome total;
  total.converged = true;
  if (slice.empty() || delta >= slice.s_max()) return total;
  nm::QuadratureOptions opts;
  opts.rel_tol = quad_tol;

  std::vector<double> cuts{delta};
  for (double k : slice.kinks_s())
    if (k > delta) cuts.push_back(k);
  cuts.push_back(slice.s_max());

  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const auto part = i == 0 ? nm::integrate_log_left(density, cuts[i], cuts[i + 1], opts)
                             : nm::integrate(density, cuts[i], cuts[i + 1], opts);
    total.value += part.value;
    total.error += part.error;
    total.evaluations += part.evaluations;
    total.intervals += part.intervals;
    total.converged = total.converged && part.converged;
  }
  return total;
}

std::vector<LadderRung> build_ladder(const SliceDensity& density, const DomainSlice& slice,
                                     const LadderSpec& spec) {
  const auto deltas = spec.deltas();
  std::vector<LadderRung> out;
  out.reserve(deltas.size());
  double value = 0.0;
  double error = 0.0;
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    double piece = 0.0;
    if (!slice.empty()) {
      QuadratureOutcome q;
      if (k == 0) {
        q = slice_integral(density, slice, deltas[0], spec.quad_tol);
      } else {
        const double hi = std::min(deltas[k - 1], slice.s_max());
        const double lo = std::min(deltas[k], hi);
        if (lo < hi) {
          nm::QuadratureOptions opts;
          opts.rel_tol = spec.quad_tol;
          q = nm::integrate_log_left(density, lo, hi, opts);
        } else {
          q.converged = true;
        }
      }
      nm::require_converged(q, "ladder rung delta = " + std::to_string(deltas[k]));
      piece = q.value;
      error += q.error;
    }
    value += piece;
    out.push_back({deltas[k], value, piece, error});
  }
  return out;
}

QuadratureOutcome reduced_integral(const ProfileFamily& family, SquaredProfile f,
                                   const DomainSlice& slice, int moment, double delta,
                                   double quad_tol) {
  if (moment != 0 && moment != 2) throw ConfigError("moment must be 0 or 2");
  if (!(delta > 0.0)) throw ConfigError("cutoff delta must be positive");
  auto density = [&](double s) {
    const double v = family.eval(f.profile, s, f.order).value;
    return v * v * (moment == 0 ? slice.w0_s(s) : slice.w2_s(s));
  };
  auto q = slice_integral(density, slice, delta, quad_tol);
  nm::require_converged(q, "reduced integral of " + to_string(f.profile));
  return q;
}

namespace {

struct Fit {
  double p = 0.0;
  double a = 0.0;
  double b = 0.0;
  double r2 = -std::numeric_limits<double>::infinity();
};

Fit fit_at(double p, std::span<const double> l, std::span<const LadderRung> rungs) {
  const std::size_t n = l.size();
  double mx = 0.0, my = 0.0;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = std::pow(l[i], p);
    mx += x[i];
    my += rungs[i].value;
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = rungs[i].value - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  Fit f;
  f.p = p;
  if (sxx <= 0.0 || syy <= 0.0) return f;
  f.b = sxy / sxx;
  f.a = my - f.b * mx;
  double res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = rungs[i].value - f.a - f.b * x[i];
    res += r * r;
  }
  f.r2 = 1.0 - res / syy;
  return f;
}

Fit best_log_power_fit(std::span<const LadderRung> rungs, double log_scale) {
  std::vector<double> l;
  for (const auto& r : rungs) l.push_back(std::log(log_scale / r.delta));
  if (std::any_of(l.begin(), l.end(), [](double v) { return !(v > 0.0); })) return {};

  Fit best;
  for (int i = -300; i <= 300; ++i) {
    if (i == 0) continue;
    const Fit f = fit_at(0.01 * i, l, rungs);
    if (f.r2 > best.r2) best = f;
  }
  // Golden-section refinement of r2 around the grid optimum, staying on one
  // side of p = 0.
  double lo = best.p - 0.01, hi = best.p + 0.01;
  if (best.p > 0.0) lo = std::max(lo, 1e-4);
  else hi = std::min(hi, -1e-4);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - g * (hi - lo), d = lo + g * (hi - lo);
  Fit fc = fit_at(c, l, rungs), fd = fit_at(d, l, rungs);
  for (int it = 0; it < 60; ++it) {
    if (fc.r2 > fd.r2) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - g * (hi - lo);
      fc = fit_at(c, l, rungs);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + g * (hi - lo);
      fd = fit_at(d, l, rungs);
    }
  }
  for (const Fit& f : {fc, fd})
    if (f.r2 > best.r2) best = f;
  return best;
}

}  // namespace

DivergenceVerdict classify(std::span<const LadderRung> ladder, const ClassifyOptions& opts) {
  if (static_cast<int>(ladder.size()) < opts.min_rungs)
    throw PreconditionError("ladder needs at least " + std::to_string(opts.min_rungs) + " rungs");
  for (std::size_t i = 1; i < ladder.size(); ++i)
    if (!(ladder[i].delta < ladder[i - 1].delta))
      throw PreconditionError("ladder cutoffs must be strictly decreasing");

  DivergenceVerdict v;
  v.ladder.assign(ladder.begin(), ladder.end());
  const double last = ladder.back().value;

  double scale = 0.0;
  for (const auto& r : ladder) scale = std::max(scale, std::abs(r.value));
  const std::size_t n = ladder.size();
  const std::size_t w = static_cast<std::size_t>(std::min<int>(opts.window, static_cast<int>(n) - 2));

  // Increments below rounding of the running value: the ladder has stopped moving.
  bool still = true;
  for (std::size_t i = n - w - 1; i < n; ++i)
    if (std::abs(ladder[i].increment) > 1e-15 * scale) still = false;
  if (still) {
    v.verdict = Verdict::finite;
    v.rule = VerdictRule::stationary;
    v.limit = last;
    return v;
  }

  bool geometric = true;
  double ratio = 0.0;
  for (std::size_t i = n - w; i < n; ++i) {
    const double prev = ladder[i - 1].increment;
    const double r = prev == 0.0 ? std::numeric_limits<double>::infinity()
                                 : std::abs(ladder[i].increment / prev);
    ratio = std::max(ratio, r);
    if (!(r <= opts.ratio_max)) geometric = false;
  }
  v.max_ratio = ratio;

  const std::size_t n_fit = std::max<std::size_t>(
      static_cast<std::size_t>(opts.min_rungs),
      static_cast<std::size_t>(std::ceil(opts.fit_fraction * static_cast<double>(n))));
  const Fit fit = best_log_power_fit(ladder.last(std::min(n, n_fit)), opts.log_scale);
  v.exponent = fit.p;
  v.amplitude = fit.b;
  v.offset = fit.a;
  v.fit_r2 = fit.r2;

  if (geometric) {
    v.verdict = Verdict::finite;
    v.rule = VerdictRule::geometric;
    v.limit = last + ladder.back().increment * ratio / (1.0 - ratio);
    return v;
  }
  if (fit.r2 >= opts.min_r2 && fit.b > 0.0 && fit.p > 0.0) {
    v.verdict = Verdict::divergent;
    v.rule = VerdictRule::log_power;
    v.limit = std::numeric_limits<double>::infinity();
    return v;
  }
  if (fit.r2 >= opts.min_r2 && fit.b < 0.0 && fit.p < 0.0) {
    v.verdict = Verdict::finite;
    v.rule = VerdictRule::log_power;
    v.limit = fit.a;
    return v;
  }
  v.verdict = Verdict::inconclusive;
  v.limit = std::numeric_limits<double>::quiet_NaN();
  return v;
}

ClassifyOptions profile_classify_options() {
  ClassifyOptions o;
  o.log_scale = 4.0;
  return o;
}

std::vector<MultiIndex> sobolev_indices(int order, bool with_dt) {
  std::vector<MultiIndex> out;
  for (int n = 0; n <= order; ++n)
    for (int a = n; a >= 0; --a)
      for (int b = n - a; b >= 0; --b) {
        const int c = n - a - b;
        out.push_back({with_dt ? 1 : 0, a, b, c});
      }
  return out;
}

double field_density(const Field& field, std::span<const MultiIndex> indices,
                     const ProfileFamily& family, const DomainSlice& slice, double s) {
  const double rho2 = slice.rho2_s(s);
  if (rho2 <= 0.0 || field.empty()) return 0.0;
  int order = 0;
  for (const auto& a : indices) order = std::max(order, a[0] + a[1]);
  const auto jets = ProfileJets::at(family, s, order);

  double total = 0.0;
  std::vector<SliceMonomial> m;
  for (const auto& a : indices) {
    m.clear();
    for (const auto& term : field.terms()) {
      const auto d = differentiate(term, a, slice.t, jets);
      if (d.coeff != 0.0) m.push_back(d);
    }
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j)
        total += m[i].coeff * m[j].coeff * disc_moment(m[i].x2 + m[j].x2, m[i].x3 + m[j].x3, rho2);
  }
  return total;
}

DivergenceVerdict classify_field(const Field& field, NormKind norm, const ProfileFamily& family,
                                 const DomainSlice& slice, const LadderSpec& spec) {
  const auto indices = norm == NormKind::h2 ? sobolev_indices(2, false) : sobolev_indices(1, true);
  if (slice.empty()) {
    DivergenceVerdict v;
    v.verdict = Verdict::empty;
    v.rule = VerdictRule::zero_measure;
    for (double d : spec.deltas()) v.ladder.push_back({d, 0.0, 0.0, 0.0});
    return v;
  }
  auto density = [&](double s) { return field_density(field, indices, family, slice, s); };
  const auto ladder = build_ladder(density, slice, spec);
  return classify(ladder, profile_classify_options());
}

const std::array<Field, 10>& coordinate_perturbation_fields() {
  static const std::array<Field, 10> fields = [] {
    // Frame components of g - m.
    // The diagonal is written as chi1 and -chi1/(1 + chi1) rather than
    // (1 + chi1)^{+-1} - 1, which would cancel catastrophically near s = 0.
    FrameFieldTable p = metric_fields();
    p[static_cast<std::size_t>(Sym4::slot(0, 1))] = Field{};
    p[static_cast<std::size_t>(Sym4::slot(2, 2))] = Field{{1.0, {}, {0, 1, 0, 0}}};
    p[static_cast<std::size_t>(Sym4::slot(3, 3))] = Field{{-1.0, {}, {-1, 1, 0, 0}}};
    // theta^Y_mu: d_t = (L + Lbar)/2, d_x1 = (L - Lbar)/2.
    constexpr double theta[4][4] = {
        {0.5, 0.5, 0.0, 0.0}, {0.5, -0.5, 0.0, 0.0}, {0.0, 0.0, 1.0, 0.0}, {0.0, 0.0, 0.0, 1.0}};
    std::array<Field, 10> out;
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = mu; nu < 4; ++nu) {
        Field f;
        for (int y = 0; y < 4; ++y)
          for (int z = 0; z < 4; ++z) {
            const double c = theta[mu][y] * theta[nu][z];
            if (c != 0.0) f.add(p[static_cast<std::size_t>(Sym4::slot(y, z))], c);
          }
        out[static_cast<std::size_t>(Sym4::slot(mu, nu))] = f;
      }
    return out;
  }();
  return fields;
}

NormReport norm_report(double t, const ProfileFamily& family, const LadderSpec& spec) {
  if (!(t > -1.0 && t < 1.0)) throw ConfigError("norm report needs -1 < t < 1");
  NormReport rep;
  rep.t = t;
  rep.kind = SliceKind::bent;
  const DomainSlice d = slice(SliceKind::bent, t);
  const auto& fields = coordinate_perturbation_fields();

  double h2 = 0.0, h1 = 0.0;
  bool h2_ok = true, h1_ok = true;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = mu; nu < 4; ++nu) {
      const Field& f = fields[static_cast<std::size_t>(Sym4::slot(mu, nu))];
      const std::string name = "g" + std::to_string(mu) + std::to_string(nu);
      const double mult = mu == nu ? 1.0 : 2.0;
      for (NormKind k : {NormKind::h2, NormKind::dt_h1}) {
        auto v = classify_field(f, k, family, d, spec);
        const bool ok = v.verdict == Verdict::finite || v.verdict == Verdict::empty;
        (k == NormKind::h2 ? h2 : h1) += mult * (ok ? v.limit : 0.0);
        (k == NormKind::h2 ? h2_ok : h1_ok) &= ok;
        rep.components.push_back({name, k, t, std::move(v)});
      }
    }
  const double inf = std::numeric_limits<double>::infinity();
  rep.h2_norm = h2_ok ? std::sqrt(std::max(h2, 0.0)) : inf;
  rep.dt_h1_norm = h1_ok ? std::sqrt(std::max(h1, 0.0)) : inf;
  rep.all_finite = h2_ok && h1_ok;
  return rep;
}

std::vector<ComponentVerdict> model_norm_profile(double t, const ProfileFamily& family,
                                                 const LadderSpec& spec) {
  if (t < 0.0) throw ConfigError("model norm profile needs t >= 0");
  const DomainSlice b = slice(SliceKind::ball, t);
  std::vector<ComponentVerdict> out;
  for (int which : {1, 2})
    out.push_back({"phi" + std::to_string(which), NormKind::h2, t,
                   classify_field(ModelSolution::field(which), NormKind::h2, family, b, spec)});
  return out;
}

}  // namespace einwave
