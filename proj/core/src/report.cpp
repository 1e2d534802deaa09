#include "einwave/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "einwave/causality.hpp"
#include "einwave/errors.hpp"
#include "einwave/gauge.hpp"
#include "einwave/geometry.hpp"
#include "einwave/metric.hpp"
#include "einwave/model_system.hpp"

namespace einwave {
namespace {

using Json = nlohmann::json;

constexpr std::array<Suite, 7> kSuites{Suite::profiles, Suite::metric, Suite::curvature, Suite::gauge,
                                       Suite::norms, Suite::causality, Suite::model};

Json num(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json point_json(const SpacetimePoint& p) { return {{"t", p.t}, {"x1", p.x[0]}, {"x2", p.x[1]}, {"x3", p.x[2]}}; }

// Portable uniform draws: the bit pattern of mt19937_64 is fixed by the
// standard, the distribution classes are not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  double uniform(double a, double b) { return a + (b - a) * static_cast<double>(g_() >> 11) * 0x1p-53; }

 private:
  std::mt19937_64 g_;
};

SpacetimePoint random_point(Rng& rng, double s_min_abs) {
  for (;;) {
    const double t = rng.uniform(0.0, 0.9);
    const double s = rng.uniform(-2.5, 2.5);
    const double x2 = rng.uniform(-1.0, 1.0);
    const double x3 = rng.uniform(-1.0, 1.0);
    if (std::abs(s) >= s_min_abs) return {t, {t + s, x2, x3}};
  }
}

FrameSymTensor2 random_sym(Rng& rng) {
  FrameSymTensor2 T;
  for (int a = 0; a < 4; ++a)
    for (int b = a; b < 4; ++b) T.comp(a, b) = rng.uniform(-1.0, 1.0);
  return T;
}

std::string fmt(double v, int precision = 3) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

std::string csv_num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

bool within(double value, double target, double rel) { return std::abs(value - target) <= rel * std::abs(target); }

struct Context {
  const RunConfig& cfg;
  const ProfileFamily& family;
  VerificationReport& rep;

  double eps() const { return cfg.params.epsilon; }
  double expected_exponent() const { return 4.0 * cfg.params.alpha - 1.0; }
  ProfileFamily half_epsilon() const {
    ProfileBuildOptions o;
    o.riccati_quadratic = cfg.riccati_quadratic;
    o.allow_out_of_range = cfg.allow_out_of_range;
    return ProfileFamily::build({0.5 * cfg.params.epsilon, cfg.params.alpha}, cfg.ode_tol, o);
  }
  void criterion(int id, std::string name, bool pass, std::string detail) {
    rep.criteria.push_back({id, std::move(name), pass, std::move(detail)});
  }
  void not_applicable(int id, std::string name) {
    rep.criteria.push_back({id, std::move(name), true, "not applicable at epsilon = 0", false});
  }
};

bool suite_profiles(Context& ctx, Json& m) {
  const auto& f = ctx.family;
  double worst = 0.0;
  for (int k = 0; k < 64; ++k) {
    const double s = -ProfileFamily::kDomain + 2.0 * ProfileFamily::kDomain * (k + 0.5) / 64.0;
    worst = std::max(worst, std::abs(f.ode_residual(s)));
  }
  const ProfileBounds b = profile_bounds(f);
  m["riccati_quadratic"] = f.riccati_quadratic();
  m["grid_step"] = f.grid_step();
  m["max_ode_residual"] = worst;
  m["max_ode_residual_build"] = f.max_ode_residual();
  m["bounds"] = {{"sup_chitilde2", b.sup_chitilde2}, {"chi1_energy", b.chi1_energy},
                 {"sup_gap", b.sup_gap}, {"pass", b.pass}};

  std::vector<double> grid;
  for (int k = -140; k <= 140; ++k)
    if (k != 0) grid.push_back(0.025 * k);
  std::ostringstream csv;
  write_profile_csv(csv, f, grid);
  ctx.rep.csv["profiles.csv"] = csv.str();
  return worst <= ctx.cfg.ode_tol && b.pass;
}

bool suite_metric(Context& ctx, Json& m) {
  Rng rng(ctx.cfg.seed);
  double det = 0.0, vol = 0.0, inv = 0.0;
  for (int i = 0; i < ctx.cfg.det_points; ++i) {
    const auto p = random_point(rng, 0.0);
    const auto d = frame_det_and_volume(p, ctx.family);
    det = std::max(det, std::abs(d.det_frame + 4.0));
    vol = std::max(vol, std::abs(d.sqrt_abs_det - 2.0));
    const Sym4 g = metric_frame(p, ctx.family).comp;
    const Sym4 gi = inverse_metric_frame(p, ctx.family).comp;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        double s = 0.0;
        for (int c = 0; c < 4; ++c) s += g(a, c) * gi(c, b);
        inv = std::max(inv, std::abs(s - (a == b ? 1.0 : 0.0)));
      }
  }
  m["points"] = ctx.cfg.det_points;
  m["max_det_deviation"] = det;
  m["max_sqrt_det_deviation"] = vol;
  m["max_inverse_deviation"] = inv;
  const bool pass = det <= 1e-13 && inv <= 1e-12;
  ctx.criterion(4, "frame determinant -4", det <= 1e-13, "max|det+4| = " + fmt(det));
  return pass;
}

bool suite_curvature(Context& ctx, Json& m) {
  const auto& cfg = ctx.cfg;
  const auto grid = interior_grid(SliceKind::bent, cfg.grid);

  ProfileBuildOptions q16_opts;
  q16_opts.riccati_quadratic = 1.0 / 16.0;
  q16_opts.allow_out_of_range = cfg.allow_out_of_range;
  const auto q16_family = ProfileFamily::build(cfg.params, cfg.ode_tol, q16_opts);
  ProfileBuildOptions neg_opts;
  neg_opts.source = RiccatiSource::chi2;
  neg_opts.allow_out_of_range = cfg.allow_out_of_range;
  const auto neg_family = ProfileFamily::build(cfg.params, cfg.ode_tol, neg_opts);

  double ric = 0.0, ric_q16 = 0.0, neg = 0.0;
  SpacetimePoint worst{};
  std::ostringstream csv;
  csv << "t,x1,x2,x3,Ric_LbarLbar,max_abs_Ric,density\n";
  for (const auto& p : grid) {
    const auto r = ricci(p, ctx.family);
    const double a = r.comp.max_abs();
    if (a > ric || ric == 0.0) {
      ric = std::max(ric, a);
      worst = p;
    }
    ric_q16 = std::max(ric_q16, ricci(p, q16_family).comp.max_abs());
    neg = std::max(neg, std::abs(ricci(p, neg_family).comp(1, 1)));
    csv << csv_num(p.t) << ',' << csv_num(p.x[0]) << ',' << csv_num(p.x[1]) << ',' << csv_num(p.x[2]) << ','
        << csv_num(r.comp(1, 1)) << ',' << csv_num(a) << ',' << csv_num(curvature_density(p, ctx.family)) << '\n';
  }
  ctx.rep.csv["curvature.csv"] = csv.str();
  m["grid_points"] = grid.size();
  m["ricci_max"] = ric;
  m["ricci_max_at"] = point_json(worst);
  m["ricci_max_quadratic_1_16"] = ric_q16;
  m["negative_control_ricci_lbar_lbar"] = neg;

  Rng rng(cfg.seed + 1);
  double chr = 0.0, chr_exact = 0.0, e_h = 0.0, e_h2 = 0.0;
  for (int i = 0; i < cfg.random_points; ++i) {
    const auto p = random_point(rng, 0.05);
    const auto closed = christoffel(p, ctx.family, ChristoffelMethod::closed);
    const auto numeric = christoffel(p, ctx.family, ChristoffelMethod::numeric);
    const auto exact = christoffel(p, ctx.family, ChristoffelMethod::exact);
    for (std::size_t k = 0; k < closed.data.size(); ++k) {
      chr = std::max(chr, std::abs(closed.data[k] - numeric.data[k]));
      chr_exact = std::max(chr_exact, std::abs(closed.data[k] - exact.data[k]));
    }
    const auto R = riemann_split(p, ctx.family);
    auto stencil_error = [&](double h) {
      const auto N = riemann_numeric(p, ctx.family, h);
      double e = 0.0;
      for (std::size_t k = 0; k < N.lin.data.size(); ++k)
        e = std::max(e, std::abs(N.lin.data[k] + N.quad.data[k] - R.lin.data[k] - R.quad.data[k]));
      return e;
    };
    e_h = std::max(e_h, stencil_error(4e-3));
    e_h2 = std::max(e_h2, stencil_error(2e-3));
  }
  const double order = (e_h > 0.0 && e_h2 > 0.0) ? std::log2(e_h / e_h2) : 2.0;
  const bool riemann_ok = e_h2 <= 1e-10 || (order >= 1.8 && order <= 2.2);
  m["christoffel_closed_vs_numeric"] = chr;
  m["christoffel_closed_vs_exact"] = chr_exact;
  m["riemann_stencil_error"] = {{"h=4e-3", e_h}, {"h=2e-3", e_h2}, {"observed_order", order}};

  Json norms = Json::array();
  bool norms_ok = true;
  bool ratio_ok = true;
  std::optional<ProfileFamily> half;
  if (ctx.eps() > 0.0) half = ctx.half_epsilon();
  std::string ratio_detail;
  for (double t : cfg.t_list) {
    if (t < 0.0 || t >= 1.0) continue;
    const auto n = curvature_l2_norm(t, ctx.family, cfg.quad_tol);
    Json row{{"t", t}, {"value", n.value}, {"constant", n.constant}, {"tail", n.tail}};
    norms_ok = norms_ok && std::isfinite(n.value);
    if (half) {
      const double ratio = curvature_l2_norm(t, *half, cfg.quad_tol).value / n.value;
      row["ratio_half_epsilon"] = ratio;
      ratio_ok = ratio_ok && within(ratio, 0.5, 0.1);
      ratio_detail += " t=" + fmt(t) + ":" + fmt(ratio, 4);
    }
    norms.push_back(row);
  }
  m["curvature_l2"] = norms;

  const bool neg_ok = ctx.eps() == 0.0 || neg > 100.0 * cfg.ricci_tol;
  ctx.criterion(1, "Ricci-flatness", ric <= cfg.ricci_tol, "max|Ric| = " + fmt(ric) + " over " +
                                                            std::to_string(grid.size()) + " points");
  ctx.criterion(3, "Christoffel and Riemann cross-checks", chr <= 1e-9 && riemann_ok,
                "closed-numeric " + fmt(chr) + ", Riemann stencil order " + fmt(order));
  if (ctx.eps() > 0.0) {
    ctx.criterion(7, "curvature L2 smallness", norms_ok && ratio_ok && !norms.empty(),
                  "norm ratio eps/2 : eps" + ratio_detail);
    ctx.criterion(10, "negative control", neg > 1e-4, "max|Ric_LbarLbar| with chi2 = " + fmt(neg));
  } else {
    ctx.not_applicable(7, "curvature L2 smallness");
    ctx.not_applicable(10, "negative control");
  }
  return ric <= cfg.ricci_tol && chr <= 1e-9 && riemann_ok && norms_ok && ratio_ok && neg_ok;
}

bool suite_gauge(Context& ctx, Json& m) {
  const auto& cfg = ctx.cfg;
  const auto grid = interior_grid(SliceKind::bent, cfg.grid);
  double d = 0.0, dl = 0.0, low = 0.0, tr = 0.0;
  for (const auto& p : grid) {
    const auto g = wave_gauge_residual(p, ctx.family);
    d = std::max(d, g.max_abs());
    dl = std::max(dl, std::abs(g.d_L));
    const auto lo = lowered_gauge_residual(p, ctx.family);
    const auto t = log_det_gradient(p, ctx.family);
    const auto ga = g.as_array();
    for (std::size_t k = 0; k < 4; ++k) {
      low = std::max(low, std::abs(lo[k] + ga[k]));
      tr = std::max(tr, std::abs(t[k]));
    }
  }
  Rng rng(cfg.seed + 2);
  double lin = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double t = rng.uniform(0.0, 0.9);
    const double r = 0.95 * (1.0 - t);
    SpacetimePoint p{t, {rng.uniform(-r, r), rng.uniform(-r, r), rng.uniform(-r, r)}};
    if (!in_ansatz_cone(p) || std::abs(p.s()) < 1e-9) continue;
    lin = std::max(lin, linearized_gauge_residual(p, ctx.family).max_abs());
  }
  double pdiff = 0.0, sym = 0.0;
  for (int i = 0; i < cfg.p_pairs; ++i) {
    const auto a = random_sym(rng), b = random_sym(rng);
    const double pa = p_form(a, b, PMethod::coordinate);
    pdiff = std::max(pdiff, std::abs(pa - p_form(a, b, PMethod::null_frame)));
    sym = std::max(sym, std::abs(pa - p_form(b, a, PMethod::coordinate)));
  }
  double red = 0.0;
  for (int i = 0; i < 10; ++i) {
    FrameSymTensor2 dh = random_sym(rng);
    dh.comp(0, 0) = dh.comp(0, 2) = dh.comp(0, 3) = 0.0;
    dh.comp(3, 3) = -dh.comp(2, 2);
    const auto r = p_semilinear_reduction(dh);
    red = std::max(red, std::abs(r.lhs - r.rhs));
  }
  const auto mk = minkowski_frame();
  const double pmm = p_form(mk, mk, PMethod::null_frame);

  m["grid_points"] = grid.size();
  m["max_abs_d"] = d;
  m["max_abs_d_L"] = dl;
  m["lowered_vs_raised"] = low;
  m["log_det_gradient"] = tr;
  m["linearized_max"] = lin;
  m["p_form_methods"] = pdiff;
  m["p_form_symmetry"] = sym;
  m["p_reduction"] = red;
  m["P(m,m)"] = pmm;

  ctx.criterion(2, "wave gauge", d <= cfg.gauge_tol && dl == 0.0,
                "max|d| = " + fmt(d) + ", max|d_L| = " + fmt(dl));
  ctx.criterion(9, "P identity", pdiff <= 1e-13 && red <= 1e-13,
                "methods " + fmt(pdiff) + ", reduction " + fmt(red));
  return d <= cfg.gauge_tol && dl == 0.0 && low <= 1e-12 && tr <= 1e-12 && lin <= 1e-12 && pdiff <= 1e-13 &&
         red <= 1e-13 && std::abs(pmm - 2.0) <= 1e-15;
}

std::string ladder_csv_rows(const ComponentVerdict& c) {
  std::ostringstream os;
  for (const auto& r : c.verdict.ladder)
    os << c.component << ',' << csv_num(c.t) << ',' << to_string(c.norm) << ',' << csv_num(r.delta) << ','
       << csv_num(r.value) << '\n';
  return os.str();
}

bool suite_norms(Context& ctx, Json& m) {
  const auto& cfg = ctx.cfg;
  const double p_expected = ctx.expected_exponent();
  bool pass = true;
  bool bound_ok = true;
  bool divergence_ok = true;
  bool t0_seen = false;
  std::string detail;
  Json per_t = Json::array();
  for (double t : cfg.t_list) {
    if (!(t > -1.0 && t < 1.0)) continue;
    const auto rep = norm_report(t, ctx.family, cfg.ladder);
    for (const auto& c : rep.components) {
      ctx.rep.verdicts.push_back(c);
    }
    Json row{{"t", t}, {"h2_norm", num(rep.h2_norm)}, {"dt_h1_norm", num(rep.dt_h1_norm)},
             {"all_finite", rep.all_finite}};
    const auto g00 = std::find_if(rep.components.begin(), rep.components.end(), [](const ComponentVerdict& c) {
      return c.component == "g00" && c.norm == NormKind::h2;
    });
    if (g00 != rep.components.end())
      row["g00_h2"] = {{"verdict", to_string(g00->verdict.verdict)}, {"exponent", g00->verdict.exponent}};

    if (t == 0.0) {
      t0_seen = true;
      const double total = rep.h2_norm + rep.dt_h1_norm;
      row["total"] = num(total);
      bool ok = rep.all_finite;
      if (ctx.eps() > 0.0) {
        const auto half = norm_report(0.0, ctx.half_epsilon(), cfg.ladder);
        const double ratio = (half.h2_norm + half.dt_h1_norm) / total;
        row["ratio_half_epsilon"] = num(ratio);
        row["constant"] = num(total / ctx.eps());
        ok = ok && within(ratio, 0.5, 0.2);
        bound_ok = total <= 5.0 * ctx.eps();
        detail += "t=0 total " + fmt(total, 4) + " (bound " + fmt(5.0 * ctx.eps()) + "), eps ratio " +
                  fmt(ratio, 4) + ";";
      } else {
        ok = ok && total == 0.0;
      }
      pass = pass && ok;
    } else if (g00 != rep.components.end()) {
      bool ok;
      if (ctx.eps() > 0.0) {
        ok = g00->verdict.verdict == Verdict::divergent && within(g00->verdict.exponent, p_expected, 0.15);
        detail += " t=" + fmt(t) + " g00 " + to_string(g00->verdict.verdict) + " p=" +
                  fmt(g00->verdict.exponent, 4) + ";";
      } else {
        ok = rep.all_finite;
      }
      divergence_ok = divergence_ok && ok;
      pass = pass && ok;
    }
    per_t.push_back(row);
  }
  m["per_t"] = per_t;
  m["expected_exponent"] = p_expected;


  if (ctx.eps() > 0.0)
    ctx.criterion(5, "norm dichotomy", t0_seen && pass && bound_ok && divergence_ok, detail);
  else
    ctx.not_applicable(5, "norm dichotomy");
  return pass;
}

bool suite_causality(Context& ctx, Json& m) {
  const auto rep = boundary_scan(ctx.cfg.scan, ctx.family);
  std::ostringstream csv;
  write_scan_csv(csv, rep);
  ctx.rep.csv["causality.csv"] = csv.str();
  m["points"] = rep.samples.size();
  m["max_q"] = rep.max_q;
  m["max_q_at"] = {{"piece", to_string(rep.max_q_at.piece)}, {"t", rep.max_q_at.t}, {"u", rep.max_q_at.u},
                   {"theta", rep.max_q_at.theta}, {"phi", rep.max_q_at.phi}};
  m["near_null"] = rep.near_null;
  m["near_null_max_abs_u"] = rep.near_null_max_abs_u;
  m["max_c2_q"] = rep.max_c2_q;
  m["max_defining_residual"] = rep.max_defining_residual;
  m["comparison_constant"] = rep.comparison_constant;
  m["c1_q_mink_deviation_from_minus_three_quarters_rho2"] = rep.max_mink_deviation;
  m["c1_expanded_form_mismatch"] = rep.max_expansion_mismatch;
  if (rep.violation)
    m["violation"] = {{"piece", to_string(rep.violation->piece)}, {"t", rep.violation->t},
                      {"u", rep.violation->u}, {"q", rep.violation->q}};
  const bool pass = rep.passed(ctx.cfg.scan) && rep.max_defining_residual <= 1e-12;
  ctx.criterion(8, "causality", rep.max_q <= ctx.cfg.scan.q_tol && rep.near_null_max_abs_u <= ctx.cfg.scan.u_window,
                "max Q = " + fmt(rep.max_q) + ", near-null max|u| = " + fmt(rep.near_null_max_abs_u) + " over " +
                    std::to_string(rep.samples.size()) + " points");
  return pass;
}

bool suite_model(Context& ctx, Json& m) {
  const auto& cfg = ctx.cfg;
  const ModelSolution sol(ctx.family);
  double r1 = 0.0, r2 = 0.0;
  std::size_t n = 0;
  for (const auto& p : interior_grid(SliceKind::ball, cfg.grid)) {
    if (!ModelSolution::in_cone(p) || std::abs(p.s()) < ModelSolution::kDefaultCutoff) continue;
    const auto r = sol.residual(p);
    r1 = std::max(r1, std::abs(r.r1));
    r2 = std::max(r2, std::abs(r.r2));
    ++n;
  }
  m["grid_points"] = n;
  m["max_abs_box_phi1"] = r1;
  m["max_abs_box_phi2_plus_source"] = r2;

  const double p_expected = ctx.expected_exponent();
  bool ladders_ok = true;
  bool phi2_t0 = false, phi2_t025 = false;
  std::string detail;
  std::ostringstream csv;
  csv << "t,delta,I_phi1,I_phi2\n";
  Json rows = Json::array();
  for (double t : cfg.t_list) {
    if (t < 0.0 || t >= 1.0) continue;
    const auto comps = model_norm_profile(t, ctx.family, cfg.ladder);
    const ComponentVerdict* phi1 = nullptr;
    const ComponentVerdict* phi2 = nullptr;
    for (const auto& c : comps) {
      ctx.rep.verdicts.push_back(c);
      (c.component == "phi1" ? phi1 : phi2) = &c;
    }
    for (std::size_t k = 0; k < phi1->verdict.ladder.size(); ++k)
      csv << csv_num(t) << ',' << csv_num(phi1->verdict.ladder[k].delta) << ','
          << csv_num(phi1->verdict.ladder[k].value) << ',' << csv_num(phi2->verdict.ladder[k].value) << '\n';
    rows.push_back({{"t", t},
                    {"phi1", to_string(phi1->verdict.verdict)},
                    {"phi2", to_string(phi2->verdict.verdict)},
                    {"phi2_exponent", phi2->verdict.exponent}});
    bool ok = phi1->verdict.verdict == Verdict::finite;
    if (t == 0.0 || ctx.eps() == 0.0) {
      ok = ok && phi2->verdict.verdict == Verdict::finite;
      if (t == 0.0) phi2_t0 = ok;
    } else {
      ok = ok && phi2->verdict.verdict == Verdict::divergent && within(phi2->verdict.exponent, p_expected, 0.15);
      if (t == 0.25) phi2_t025 = ok;
    }
    detail += " t=" + fmt(t) + " phi2 " + to_string(phi2->verdict.verdict) +
              (phi2->verdict.verdict == Verdict::divergent ? " p=" + fmt(phi2->verdict.exponent, 4) : "") + ";";
    ladders_ok = ladders_ok && ok;
  }
  m["ladders"] = rows;
  ctx.rep.csv["model.csv"] = csv.str();
  const bool res_ok = r1 <= 1e-12 && r2 <= 1e-12;
  ctx.criterion(6, "model system", res_ok && ladders_ok && phi2_t0 && (phi2_t025 || ctx.eps() == 0.0),
                "residuals " + fmt(r1) + ", " + fmt(r2) + ";" + detail);
  return res_ok && ladders_ok;
}

FailureKind classify_error(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const ProfileBlowupError*>(&e))
    return FailureKind::config;
  if (dynamic_cast<const ConvergenceError*>(&e)) return FailureKind::convergence;
  return FailureKind::verification;
}

}  // namespace

std::string to_string(Suite s) {
  switch (s) {
    case Suite::profiles: return "profiles";
    case Suite::metric: return "metric";
    case Suite::curvature: return "curvature";
    case Suite::gauge: return "gauge";
    case Suite::norms: return "norms";
    case Suite::causality: return "causality";
    case Suite::model: return "model";
  }
  return "unknown";
}

std::optional<Suite> suite_from_string(std::string_view name) {
  for (Suite s : kSuites)
    if (to_string(s) == name) return s;
  return std::nullopt;
}

const std::array<Suite, 7>& all_suites() { return kSuites; }

bool RunConfig::enabled(Suite s) const { return std::find(suites.begin(), suites.end(), s) != suites.end(); }

void RunConfig::validate() const {
  params.validate(allow_out_of_range);
  for (const auto& [name, v] : {std::pair{"ode_tol", ode_tol}, std::pair{"quad_tol", quad_tol},
                                std::pair{"gauge_tol", gauge_tol}, std::pair{"ricci_tol", ricci_tol}})
    if (!(v > 0.0)) throw ConfigError(std::string(name) + " must be positive");
  if (!(riccati_quadratic >= 0.0)) throw ConfigError("riccati_quadratic must be non-negative");
  for (double t : t_list)
    if (!(t > -1.0 && t < 1.0)) throw ConfigError("every t must lie in (-1, 1), got " + fmt(t));
  if (ladder.k_max - ladder.k_min + 1 < 8 || ladder.k_min < 1)
    throw ConfigError("the delta ladder needs at least 8 rungs starting at k >= 1");
  if (!(ladder.quad_tol > 0.0)) throw ConfigError("ladder quad_tol must be positive");
  if (grid < 2) throw ConfigError("grid must be at least 2");
  if (random_points < 1 || det_points < 1 || p_pairs < 1) throw ConfigError("sample counts must be positive");
  if (scan.t_levels < 1 || scan.radial < 2 || scan.angles < 1) throw ConfigError("invalid scan grid");
  if (suites.empty()) throw ConfigError("no suite selected");
}

Json to_json(const RunConfig& c) {
  Json suites = Json::array();
  for (Suite s : kSuites)
    if (c.enabled(s)) suites.push_back(to_string(s));
  return {{"epsilon", c.params.epsilon},
          {"alpha", c.params.alpha},
          {"riccati_quadratic", c.riccati_quadratic},
          {"ode_tol", c.ode_tol},
          {"quad_tol", c.quad_tol},
          {"gauge_tol", c.gauge_tol},
          {"ricci_tol", c.ricci_tol},
          {"t_list", c.t_list},
          {"ladder", {{"k_min", c.ladder.k_min}, {"k_max", c.ladder.k_max}, {"quad_tol", c.ladder.quad_tol}}},
          {"grid", c.grid},
          {"random_points", c.random_points},
          {"det_points", c.det_points},
          {"p_pairs", c.p_pairs},
          {"scan", {{"t_levels", c.scan.t_levels}, {"radial", c.scan.radial}, {"angles", c.scan.angles}}},
          {"seed", c.seed},
          {"allow_out_of_range", c.allow_out_of_range},
          {"suites", suites}};
}

bool VerificationReport::pass() const {
  if (golden && golden->found && !golden->pass) return false;
  if (std::any_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.applicable && !c.pass; }))
    return false;
  return !suites.empty() && std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.pass; });
}

int VerificationReport::exit_code() const {
  bool config = false, convergence = false;
  for (const auto& s : suites) {
    config = config || s.failure == FailureKind::config;
    convergence = convergence || s.failure == FailureKind::convergence;
  }
  if (config) return 2;
  if (convergence) return 3;
  return pass() ? 0 : 1;
}

VerificationReport run(const RunConfig& config) {
  config.validate();
  VerificationReport rep;
  rep.config = config;

  std::optional<ProfileFamily> family;
  try {
    ProfileBuildOptions o;
    o.riccati_quadratic = config.riccati_quadratic;
    o.allow_out_of_range = config.allow_out_of_range;
    family = ProfileFamily::build(config.params, config.ode_tol, o);
  } catch (const Error& e) {
    SuiteResult r;
    r.suite = Suite::profiles;
    r.failure = classify_error(e);
    r.error = e.what();
    rep.suites.push_back(r);
    return rep;
  }

  Context ctx{config, *family, rep};
  using Body = bool (*)(Context&, Json&);
  const std::array<std::pair<Suite, Body>, 7> bodies{{{Suite::profiles, suite_profiles},
                                                      {Suite::metric, suite_metric},
                                                      {Suite::curvature, suite_curvature},
                                                      {Suite::gauge, suite_gauge},
                                                      {Suite::norms, suite_norms},
                                                      {Suite::causality, suite_causality},
                                                      {Suite::model, suite_model}}};
  for (const auto& [suite, body] : bodies) {
    if (!config.enabled(suite)) continue;
    SuiteResult r;
    r.suite = suite;
    const auto start = std::chrono::steady_clock::now();
    try {
      r.pass = body(ctx, r.metrics);
      if (!r.pass) r.failure = FailureKind::verification;
    } catch (const std::exception& e) {
      r.pass = false;
      r.failure = classify_error(e);
      r.error = e.what();
    }
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rep.suites.push_back(std::move(r));
  }
  if (!rep.verdicts.empty()) {
    std::string ladders = "component,t,norm,delta,I\n";
    std::ostringstream vcsv;
    vcsv << "component,t,norm,verdict,rule,limit,exponent,fit_r2\n";
    for (const auto& c : rep.verdicts) {
      ladders += ladder_csv_rows(c);
      vcsv << c.component << ',' << csv_num(c.t) << ',' << to_string(c.norm) << ',' << to_string(c.verdict.verdict)
           << ',' << to_string(c.verdict.rule) << ',' << csv_num(c.verdict.limit) << ','
           << csv_num(c.verdict.exponent) << ',' << csv_num(c.verdict.fit_r2) << '\n';
    }
    rep.csv["ladders.csv"] = ladders;
    rep.csv["verdicts.csv"] = vcsv.str();
  }
  std::sort(rep.criteria.begin(), rep.criteria.end(),
            [](const CriterionResult& a, const CriterionResult& b) { return a.id < b.id; });

  if (config.golden_dir) {
    GoldenComparison g;
    const auto path = golden_file(*config.golden_dir);
    g.path = path.string();
    if (std::filesystem::exists(path)) {
      g = compare_golden(load_json(path), compute_golden());
      g.path = path.string();
    }
    rep.golden = g;
  }
  return rep;
}

Json to_json(const VerificationReport& r) {
  Json suites = Json::object();
  for (const auto& s : r.suites) {
    Json e{{"pass", s.pass}, {"metrics", s.metrics}};
    if (!s.error.empty()) e["error"] = s.error;
    suites[to_string(s.suite)] = e;
  }
  Json verdicts = Json::array();
  for (const auto& c : r.verdicts)
    verdicts.push_back({{"component", c.component},
                        {"t", c.t},
                        {"norm", to_string(c.norm)},
                        {"verdict", to_string(c.verdict.verdict)},
                        {"rule", to_string(c.verdict.rule)},
                        {"limit", num(c.verdict.limit)},
                        {"exponent", num(c.verdict.exponent)},
                        {"fit_r2", num(c.verdict.fit_r2)}});
  Json criteria = Json::array();
  for (const auto& c : r.criteria)
    criteria.push_back(
        {{"id", c.id}, {"name", c.name}, {"pass", c.pass}, {"applicable", c.applicable}, {"detail", c.detail}});
  Json golden = nullptr;
  if (r.golden)
    golden = {{"path", r.golden->path},       {"found", r.golden->found},
              {"compared", r.golden->compared}, {"missing", r.golden->missing},
              {"max_rel_drift", r.golden->max_rel_drift}, {"worst_key", r.golden->worst_key},
              {"pass", r.golden->pass}};
  return {{"config", to_json(r.config)}, {"suites", suites},   {"verdicts", verdicts},
          {"criteria", criteria},        {"golden", golden},   {"pass", r.pass()},
          {"exit_code", r.exit_code()}};
}

std::vector<std::string> validate_report_schema(const Json& j) {
  std::vector<std::string> errors;
  auto need = [&](const Json& obj, const std::string& key, auto check, const std::string& what) {
    if (!obj.is_object() || !obj.contains(key)) {
      errors.push_back("missing key '" + key + "'");
      return false;
    }
    if (!check(obj.at(key))) {
      errors.push_back("'" + key + "' must be " + what);
      return false;
    }
    return true;
  };
  const auto is_obj = [](const Json& v) { return v.is_object(); };
  const auto is_arr = [](const Json& v) { return v.is_array(); };
  const auto is_bool = [](const Json& v) { return v.is_boolean(); };
  const auto is_num = [](const Json& v) { return v.is_number(); };
  const auto is_num_or_null = [](const Json& v) { return v.is_number() || v.is_null(); };
  const auto is_str = [](const Json& v) { return v.is_string(); };

  if (!j.is_object()) return {"report must be an object"};
  if (need(j, "config", is_obj, "an object")) {
    for (const char* k : {"epsilon", "alpha", "ode_tol", "quad_tol", "gauge_tol", "ricci_tol"})
      need(j["config"], k, is_num, "a number");
    need(j["config"], "t_list", is_arr, "an array");
    need(j["config"], "suites", is_arr, "an array");
  }
  if (need(j, "suites", is_obj, "an object")) {
    for (auto it = j["suites"].begin(); it != j["suites"].end(); ++it) {
      if (!suite_from_string(it.key())) errors.push_back("unknown suite '" + it.key() + "'");
      need(it.value(), "pass", is_bool, "a boolean");
      need(it.value(), "metrics", is_obj, "an object");
      if (it.value().contains("error") && !it.value()["error"].is_string())
        errors.push_back("suite error must be a string");
    }
  }
  if (need(j, "verdicts", is_arr, "an array")) {
    for (const auto& v : j["verdicts"]) {
      need(v, "component", is_str, "a string");
      need(v, "t", is_num, "a number");
      need(v, "norm", is_str, "a string");
      if (need(v, "verdict", is_str, "a string")) {
        const auto s = v["verdict"].get<std::string>();
        if (s != "finite" && s != "divergent" && s != "inconclusive" && s != "empty")
          errors.push_back("unknown verdict '" + s + "'");
      }
      need(v, "exponent", is_num_or_null, "a number or null");
      need(v, "limit", is_num_or_null, "a number or null");
    }
  }
  if (need(j, "criteria", is_arr, "an array")) {
    for (const auto& c : j["criteria"]) {
      need(c, "id", [](const Json& v) { return v.is_number_integer(); }, "an integer");
      need(c, "pass", is_bool, "a boolean");
      need(c, "name", is_str, "a string");
    }
  }
  if (!j.contains("golden") || !(j["golden"].is_null() || j["golden"].is_object()))
    errors.push_back("'golden' must be null or an object");
  need(j, "pass", is_bool, "a boolean");
  need(j, "exit_code", [](const Json& v) { return v.is_number_integer(); }, "an integer");
  return errors;
}

std::string render_text(const VerificationReport& r) {
  std::ostringstream os;
  os << "einwave verification  epsilon=" << r.config.params.epsilon << " alpha=" << r.config.params.alpha
     << " riccati_quadratic=" << r.config.riccati_quadratic << '\n';
  for (const auto& s : r.suites) {
    os << "suite " << to_string(s.suite) << ": " << (s.pass ? "PASS" : "FAIL");
    os << " (" << fmt(s.wall_seconds, 3) << " s)";
    if (!s.error.empty()) os << "  error: " << s.error;
    os << '\n';
  }
  for (const auto& c : r.criteria)
    os << (!c.applicable ? "N/A " : c.pass ? "PASS" : "FAIL") << "  criterion " << c.id << " " << c.name << ": " << c.detail << '\n';
  if (r.golden) {
    if (!r.golden->found)
      os << "golden: no file at " << r.golden->path << '\n';
    else
      os << "golden: " << (r.golden->pass ? "PASS" : "FAIL") << " " << r.golden->compared
         << " values, max relative drift " << fmt(r.golden->max_rel_drift) << " (" << r.golden->worst_key << ")\n";
  }
  os << "overall: " << (r.pass() ? "PASS" : "FAIL") << " (exit " << r.exit_code() << ")\n";
  return os.str();
}

std::optional<Format> format_from_string(std::string_view name) {
  if (name == "json") return Format::json;
  if (name == "text") return Format::text;
  if (name == "csv") return Format::csv;
  return std::nullopt;
}

void emit(const VerificationReport& r, Format format, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create " + dir.string() + ": " + ec.message());
  auto write = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
    if (!out) throw ConfigError("cannot write " + path.string());
  };
  switch (format) {
    case Format::json:
      write(dir / "report.json", to_json(r).dump(2) + "\n");
      break;
    case Format::text:
      write(dir / "report.txt", render_text(r));
      break;
    case Format::csv:
      for (const auto& [name, text] : r.csv) write(dir / name, text);
      break;
  }
}

Json dump_point(const SpacetimePoint& p, const ProfileFamily& family) {
  Json out{{"point", point_json(p)}, {"s", p.s()}};
  out["metric"] = to_json(metric_frame(p, family));
  out["inverse"] = to_json(inverse_metric_frame(p, family));
  out["metric_coordinates"] = to_json(frame_to_coord(metric_frame(p, family)));
  const auto d = frame_det_and_volume(p, family);
  out["det_frame"] = d.det_frame;
  out["sqrt_abs_det"] = d.sqrt_abs_det;
  if (std::abs(p.s()) < ProfileFamily::kZeroWindow) {
    out["singular"] = true;
    return out;
  }
  out["singular"] = false;
  const auto G = christoffel(p, family, ChristoffelMethod::exact);
  Json chr = Json::object();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        if (G(a, b, c) != 0.0)
          chr[to_string(kFrame[static_cast<std::size_t>(a)]) + "," + to_string(kFrame[static_cast<std::size_t>(b)]) +
              "," + to_string(kFrame[static_cast<std::size_t>(c)])] = G(a, b, c);
  out["christoffel"] = chr;
  out["ricci"] = to_json(ricci(p, family));
  const auto g = wave_gauge_residual(p, family);
  out["gauge"] = {{"d_L", g.d_L}, {"d_Lbar", g.d_Lbar}, {"d_2", g.d_2}, {"d_3", g.d_3}};
  return out;
}

}  // namespace einwave
