#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "einwave/errors.hpp"
#include "einwave/golden.hpp"
#include "einwave/report.hpp"

#ifndef EINWAVE_DEFAULT_GOLDEN_DIR
#define EINWAVE_DEFAULT_GOLDEN_DIR "golden"
#endif

namespace {

using namespace einwave;

constexpr int kExitConfig = 2;

SpacetimePoint parse_point(const std::string& text) {
  std::vector<double> v;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("--dump-point: cannot parse '" + item + "'");
    }
  }
  if (v.size() != 4) throw ConfigError("--dump-point expects t,x1,x2,x3");
  return {v[0], {v[1], v[2], v[3]}};
}

int regen_golden(const std::filesystem::path& dir) {
  const auto path = golden_file(dir);
  const auto fresh = compute_golden();
  if (std::filesystem::exists(path)) {
    const auto cmp = compare_golden(load_json(path), fresh);
    if (!cmp.pass) {
      std::cerr << "golden drift " << cmp.max_rel_drift << " at " << cmp.worst_key << " (" << cmp.missing
                << " keys missing) exceeds 1e-8; " << path.string() << " left unchanged\n";
      return 1;
    }
    std::cout << "golden: " << cmp.compared << " values within " << cmp.max_rel_drift << " relative\n";
  }
  save_json(path, fresh);
  std::cout << "wrote " << path.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of the wave-coordinate H2 counterexample"};
  app.option_defaults()->always_capture_default();

  RunConfig cfg;
  std::vector<double> times;
  std::vector<std::string> suites;
  std::string format = "text";
  std::string out_dir;
  std::string point;
  bool regen = false;

  app.add_option("--epsilon", cfg.params.epsilon, "perturbation amplitude");
  app.add_option("--alpha", cfg.params.alpha, "log-power exponent, in (1/4, 1/2)");
  app.add_option("--t", times, "time slice (repeatable)");
  app.add_option("--suite", suites, "suite to run (repeatable)")
      ->check(CLI::IsMember({"profiles", "metric", "curvature", "gauge", "norms", "causality", "model"}));
  app.add_option("--ode-tol", cfg.ode_tol, "profile ODE tolerance");
  app.add_option("--quad-tol", cfg.quad_tol, "quadrature tolerance");
  app.add_option("--riccati-quadratic", cfg.riccati_quadratic, "quadratic coefficient of the chitilde2 equation");
  app.add_option("--grid", cfg.grid, "interior samples per axis");
  app.add_option("--seed", cfg.seed, "random sample seed");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--format", format, "json, text or csv")->check(CLI::IsMember({"json", "text", "csv"}));
  app.add_flag("--regen-golden", regen, "recompute the golden reference values");
  app.add_flag("--allow-out-of-range", cfg.allow_out_of_range, "accept alpha outside (1/4, 1/2)");
  app.add_option("--dump-point", point, "print local geometry at t,x1,x2,x3");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    const auto golden = golden_dir(EINWAVE_DEFAULT_GOLDEN_DIR);
    if (regen) return regen_golden(golden);

    if (!point.empty()) {
      cfg.params.validate(cfg.allow_out_of_range);
      ProfileBuildOptions o;
      o.riccati_quadratic = cfg.riccati_quadratic;
      o.allow_out_of_range = cfg.allow_out_of_range;
      const auto family = ProfileFamily::build(cfg.params, cfg.ode_tol, o);
      std::cout << dump_point(parse_point(point), family).dump(2) << '\n';
      return 0;
    }

    if (!times.empty()) cfg.t_list = times;
    if (!suites.empty()) {
      cfg.suites.clear();
      for (const auto& s : all_suites())
        if (std::find(suites.begin(), suites.end(), to_string(s)) != suites.end()) cfg.suites.push_back(s);
    }
    cfg.golden_dir = golden;
    const Format fmt = *format_from_string(format);
    if (fmt == Format::csv && out_dir.empty()) throw ConfigError("--format csv requires --out");

    const auto report = run(cfg);
    if (!out_dir.empty()) {
      emit(report, fmt, out_dir);
      std::cout << render_text(report);
    } else if (fmt == Format::json) {
      std::cout << to_json(report).dump(2) << '\n';
    } else {
      std::cout << render_text(report);
    }
    return report.exit_code();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ProfileBlowupError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ConvergenceError& e) {
    std::cerr << "no convergence: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
