#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "einwave/causality.hpp"
#include "einwave/fields.hpp"
#include "einwave/golden.hpp"
#include "einwave/profiles.hpp"
#include "einwave/sobolev.hpp"

namespace einwave {

/// Listed in execution order.
enum class Suite { profiles, metric, curvature, gauge, norms, causality, model };

std::string to_string(Suite s);
std::optional<Suite> suite_from_string(std::string_view name);
const std::array<Suite, 7>& all_suites();

struct RunConfig {
  ProfileParams params{0.1, 0.4};
  double riccati_quadratic = 0.125;
  double ode_tol = 1e-10;
  double quad_tol = 1e-10;
  double gauge_tol = 1e-9;
  double ricci_tol = 1e-8;
  std::vector<double> t_list{0.0, 0.1, 0.25, 0.5};
  LadderSpec ladder;
  int grid = 20;             // interior sample per axis
  int random_points = 50;    // Christoffel cross-check
  int det_points = 100;
  int p_pairs = 1000;
  ScanSpec scan;
  std::uint64_t seed = 20170605;
  bool allow_out_of_range = false;
  std::vector<Suite> suites{all_suites().begin(), all_suites().end()};
  /// Golden comparison is skipped when unset.
  std::optional<std::filesystem::path> golden_dir;

  bool enabled(Suite s) const;
  /// Throws ConfigError.
  void validate() const;
};

nlohmann::json to_json(const RunConfig& c);

enum class FailureKind { none, verification, config, convergence };

struct SuiteResult {
  Suite suite = Suite::profiles;
  bool pass = false;
  FailureKind failure = FailureKind::none;
  std::string error;
  nlohmann::json metrics = nlohmann::json::object();
  double wall_seconds = 0.0;  // text output only
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  /// False when the criterion has no content for this config (epsilon = 0).
  bool applicable = true;
};

struct VerificationReport {
  RunConfig config;
  std::vector<SuiteResult> suites;
  std::vector<ComponentVerdict> verdicts;
  std::vector<CriterionResult> criteria;
  std::optional<GoldenComparison> golden;
  /// CSV bundle: file name -> contents.
  std::map<std::string, std::string> csv;

  /// Every suite, every applicable criterion and the golden comparison pass.
  bool pass() const;
  /// 0 pass, 1 verification failure, 2 config error, 3 non-convergence.
  int exit_code() const;
};

/// Runs the enabled suites in order. Suite errors are recorded in the report;
/// only an invalid config throws (ConfigError).
VerificationReport run(const RunConfig& config);

/// {config, suites: {name: {pass, metrics[, error]}}, verdicts: [...],
///  criteria: [...], golden, pass}. Wall times are not included.
nlohmann::json to_json(const VerificationReport& r);

/// Structural check of to_json output; returns the list of violations.
std::vector<std::string> validate_report_schema(const nlohmann::json& j);

std::string render_text(const VerificationReport& r);

enum class Format { json, text, csv };

std::optional<Format> format_from_string(std::string_view name);

/// Writes report.json, report.txt or the CSV bundle under `dir`. Throws
/// ConfigError naming the path on I/O failure.
void emit(const VerificationReport& r, Format format, const std::filesystem::path& dir);

/// Metric, inverse, Christoffel symbols, Ricci tensor and gauge residual at a
/// point; second-order data is omitted on the singular line.
nlohmann::json dump_point(const SpacetimePoint& p, const ProfileFamily& family);

}  // namespace einwave
