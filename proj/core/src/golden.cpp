#include "einwave/golden.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "einwave/causality.hpp"
#include "einwave/errors.hpp"
#include "einwave/gauge.hpp"
#include "einwave/geometry.hpp"
#include "einwave/sobolev.hpp"

namespace einwave {
namespace {

std::string key(const std::string& name, double at) {
  std::ostringstream os;
  os << name << '@' << at;
  return os.str();
}

}  // namespace

nlohmann::json compute_golden() {
  constexpr double kOdeTol = 1e-12;
  constexpr double kQuadTol = 1e-12;
  const ProfileParams params{0.1, 0.4};
  const auto family = ProfileFamily::build(params, kOdeTol);

  nlohmann::json values = nlohmann::json::object();
  for (double s : {-3.0, -1.0, -0.25, -1e-3, 1e-8, 1e-3, 0.25, 1.0, 3.0}) {
    for (Profile p : {Profile::chi1, Profile::chi2, Profile::chitilde2}) {
      const std::string name = to_string(p);
      values[key(name, s)] = family.eval(p, s, 0).value;
      values[key(name + "'", s)] = family.eval(p, s, 1).value;
      values[key(name + "''", s)] = family.eval(p, s, 2).value;
    }
  }
  for (double t : {0.0, 0.25, 0.5})
    values[key("curvature_l2_squared", t)] = curvature_l2_norm(t, family, kQuadTol).squared;

  LadderSpec spec;
  spec.quad_tol = kQuadTol;
  const NormReport rep = norm_report(0.0, family, spec);
  for (const auto& c : rep.components) {
    if (c.verdict.verdict != Verdict::finite) continue;
    values[key("norm_sq/" + c.component + "/" + to_string(c.norm), 0.0)] = c.verdict.limit;
  }
  for (const auto& c : model_norm_profile(0.0, family, spec))
    if (c.verdict.verdict == Verdict::finite)
      values[key("model_sq/" + c.component, 0.0)] = c.verdict.limit;

  for (double theta : {0.3, 0.9, 1.4}) {
    const auto b1 = BoundaryPoint::on(BoundaryPiece::c1, 0.25, theta, 0.7);
    const auto b2 = BoundaryPoint::on(BoundaryPiece::c2, 0.25, theta, 0.7);
    values[key("Q/C1/t=0.25,phi=0.7", theta)] = causal_character(b1, family).q;
    values[key("Q/C2/t=0.25,phi=0.7", theta)] = causal_character(b2, family).q;
  }
  const auto m = minkowski_frame();
  values["P(m,m)"] = p_form(m, m, PMethod::coordinate);

  return {{"params", {{"epsilon", params.epsilon}, {"alpha", params.alpha}}},
          {"tolerances", {{"ode_tol", kOdeTol}, {"quad_tol", kQuadTol}}},
          {"values", values}};
}

std::filesystem::path golden_file(const std::filesystem::path& dir) { return dir / "reference.json"; }

std::filesystem::path golden_dir(const std::filesystem::path& fallback) {
  if (const char* env = std::getenv("EINWAVE_GOLDEN_DIR"); env && *env) return env;
  return fallback;
}

GoldenComparison compare_golden(const nlohmann::json& stored, const nlohmann::json& fresh,
                                double rel_tol) {
  GoldenComparison out;
  out.found = true;
  const auto& a = stored.at("values");
  const auto& b = fresh.at("values");
  for (auto it = b.begin(); it != b.end(); ++it)
    if (!a.contains(it.key())) ++out.missing;
  for (auto it = a.begin(); it != a.end(); ++it) {
    if (!b.contains(it.key())) {
      ++out.missing;
      continue;
    }
    const double x = it.value().get<double>();
    const double y = b.at(it.key()).get<double>();
    const double scale = std::max(std::abs(x), std::abs(y));
    const double drift = scale == 0.0 ? 0.0 : std::abs(x - y) / scale;
    ++out.compared;
    if (drift > out.max_rel_drift || out.worst_key.empty()) {
      out.max_rel_drift = drift;
      out.worst_key = it.key();
    }
  }
  out.pass = out.missing == 0 && out.max_rel_drift <= rel_tol;
  return out;
}

nlohmann::json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("cannot parse " + path.string() + ": " + e.what());
  }
}

void save_json(const std::filesystem::path& path, const nlohmann::json& j) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw ConfigError("write failed for " + path.string());
}

}  // namespace einwave
