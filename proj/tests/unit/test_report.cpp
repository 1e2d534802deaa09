#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "einwave/errors.hpp"
#include "einwave/golden.hpp"
#include "einwave/report.hpp"

using namespace einwave;
namespace fs = std::filesystem;

namespace {

const VerificationReport& default_report() {
  static const VerificationReport r = run(RunConfig{});
  return r;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("einwave_test_report_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

const CriterionResult& criterion(const VerificationReport& r, int id) {
  for (const auto& c : r.criteria)
    if (c.id == id) return c;
  FAIL("criterion " << id << " missing");
  throw;
}

}  // namespace

TEST_CASE("suite names round trip") {
  for (auto s : all_suites()) CHECK(suite_from_string(to_string(s)) == s);
  CHECK_FALSE(suite_from_string("bogus").has_value());
  CHECK(format_from_string("csv") == Format::csv);
  CHECK_FALSE(format_from_string("xml").has_value());
}

TEST_CASE("config validation") {
  RunConfig c;
  CHECK_NOTHROW(c.validate());
  c.params.alpha = 0.2;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  CHECK_THROWS_AS(run(c), ConfigError);
  c.allow_out_of_range = true;
  CHECK_NOTHROW(c.validate());
  RunConfig bad_grid;
  bad_grid.grid = 0;
  CHECK_THROWS_AS(bad_grid.validate(), ConfigError);
}

TEST_CASE("default run: every suite executes and all ten criteria are reported") {
  const auto& r = default_report();
  CHECK(r.suites.size() == all_suites().size());
  REQUIRE(r.criteria.size() == 10);
  for (int i = 0; i < 10; ++i) {
    CHECK(r.criteria[i].id == i + 1);
    CHECK(r.criteria[i].applicable);
  }
  for (int id : {1, 2, 3, 4, 6, 7, 8, 9, 10}) {
    CAPTURE(id);
    CHECK(criterion(r, id).pass);
  }
  // The t = 0 bound of 0.5 is not met by the profiles at epsilon = 0.1.
  CHECK_FALSE(criterion(r, 5).pass);
  CHECK_FALSE(r.pass());
  CHECK(r.exit_code() == 1);
}

TEST_CASE("JSON output satisfies the schema and is deterministic") {
  const auto j = to_json(default_report());
  CHECK(validate_report_schema(j).empty());
  CHECK(j.at("exit_code") == 1);
  CHECK(j.at("criteria").size() == 10);
  CHECK(to_json(run(RunConfig{})).dump() == j.dump());

  auto broken = j;
  broken.erase("criteria");
  CHECK_FALSE(validate_report_schema(broken).empty());
  broken = j;
  broken["pass"] = "yes";
  CHECK_FALSE(validate_report_schema(broken).empty());
}

TEST_CASE("text output has one line per criterion") {
  const auto text = render_text(default_report());
  const std::regex line(R"(^(PASS|FAIL|N/A ) +criterion (\d+) )");
  std::istringstream in(text);
  std::set<int> ids;
  for (std::string l; std::getline(in, l);) {
    std::smatch m;
    if (std::regex_search(l, m, line)) ids.insert(std::stoi(m[2]));
  }
  CHECK(ids.size() == 10);
  CHECK(text.find("overall: FAIL (exit 1)") != std::string::npos);
}

TEST_CASE("epsilon = 0 passes with the scaling criteria not applicable") {
  RunConfig c;
  c.params.epsilon = 0.0;
  const auto r = run(c);
  CHECK(r.pass());
  CHECK(r.exit_code() == 0);
  for (const auto& k : r.criteria) {
    CAPTURE(k.id);
    if (k.id == 5 || k.id == 7 || k.id == 10)
      CHECK_FALSE(k.applicable);
    else
      CHECK(k.pass);
  }
  CHECK(render_text(r).find("N/A   criterion 5") != std::string::npos);
}

TEST_CASE("suite selection") {
  RunConfig c;
  c.suites = {Suite::metric, Suite::gauge};
  const auto r = run(c);
  REQUIRE(r.suites.size() == 2);
  CHECK(r.suites[0].suite == Suite::metric);
  CHECK(r.suites[1].suite == Suite::gauge);
  std::set<int> ids;
  for (const auto& k : r.criteria) ids.insert(k.id);
  CHECK(ids == std::set<int>{2, 4, 9});
  CHECK(r.pass());
  CHECK(c.enabled(Suite::gauge));
  CHECK_FALSE(c.enabled(Suite::norms));
}

TEST_CASE("emitted CSV bundle is consistent") {
  const auto dir = scratch("csv");
  emit(default_report(), Format::csv, dir);
  for (const char* f : {"profiles.csv", "curvature.csv", "ladders.csv", "verdicts.csv", "causality.csv", "model.csv"})
    CHECK(fs::exists(dir / f));

  // Every verdict row has a ladder in ladders.csv.
  std::set<std::string> laddered;
  std::istringstream lad(slurp(dir / "ladders.csv"));
  std::string l;
  std::getline(lad, l);
  CHECK(l == "component,t,norm,delta,I");
  while (std::getline(lad, l)) laddered.insert(l.substr(0, l.find(',', l.find(',', l.find(',') + 1) + 1)));
  std::istringstream ver(slurp(dir / "verdicts.csv"));
  std::getline(ver, l);
  int rows = 0;
  while (std::getline(ver, l)) {
    ++rows;
    CHECK(laddered.count(l.substr(0, l.find(',', l.find(',', l.find(',') + 1) + 1))) == 1);
  }
  CHECK(rows == static_cast<int>(default_report().verdicts.size()));

  const auto jdir = scratch("json");
  emit(default_report(), Format::json, jdir);
  CHECK(validate_report_schema(load_json(jdir / "report.json")).empty());
  emit(default_report(), Format::text, jdir);
  CHECK(slurp(jdir / "report.txt") == render_text(default_report()));

  const auto blocker = scratch("blocked") / "file";
  std::ofstream(blocker) << "x";
  CHECK_THROWS_AS(emit(default_report(), Format::json, blocker / "sub"), ConfigError);
}

TEST_CASE("golden comparison detects drift") {
  RunConfig c;
  c.suites = {Suite::profiles};
  c.golden_dir = EINWAVE_TEST_GOLDEN_DIR;
  const auto ok = run(c);
  REQUIRE(ok.golden.has_value());
  CHECK(ok.golden->found);
  CHECK(ok.golden->pass);
  CHECK(ok.golden->compared > 100);

  const auto dir = scratch("golden");
  auto stored = load_json(golden_file(EINWAVE_TEST_GOLDEN_DIR));
  auto& v = stored.at("values");
  const std::string key = v.begin().key();
  v[key] = v[key].get<double>() * (1.0 + 1e-6);
  save_json(golden_file(dir), stored);
  c.golden_dir = dir;
  const auto drifted = run(c);
  REQUIRE(drifted.golden.has_value());
  CHECK_FALSE(drifted.golden->pass);
  CHECK(drifted.golden->worst_key == key);
  CHECK_FALSE(drifted.pass());
  CHECK(drifted.exit_code() == 1);

  c.golden_dir = scratch("empty");
  const auto absent = run(c);
  CHECK_FALSE(absent.golden->found);
  CHECK(absent.pass());
}

TEST_CASE("suite errors map to exit codes") {
  RunConfig c;
  c.params.epsilon = 50.0;
  c.suites = {Suite::profiles};
  const auto r = run(c);
  REQUIRE_FALSE(r.suites.empty());
  CHECK(r.suites[0].failure == FailureKind::config);
  CHECK_FALSE(r.suites[0].error.empty());
  CHECK(r.exit_code() == 2);
}

TEST_CASE("point dump") {
  const auto f = ProfileFamily::build({0.1, 0.4});
  const auto j = dump_point({0.2, {0.5, 0.1, 0.2}}, f);
  CHECK(j.at("det_frame").get<double>() == doctest::Approx(-4.0).epsilon(1e-13));
  CHECK(j.contains("ricci"));
  const auto singular = dump_point({0.2, {0.2, 0.1, 0.2}}, f);
  CHECK_FALSE(singular.contains("ricci"));
}
