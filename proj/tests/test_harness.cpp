#include <catch2/catch_amalgamated.hpp>

#include <homocone/driver.hpp>

#include <set>

using homocone::CheckReport;
using homocone::ConvexBody;
using homocone::Density;
using homocone::Mat;
using homocone::Scenario;
using homocone::Vec;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Scenario tiny_scenario(const std::string& name) {
  Scenario s;
  s.name = name;
  s.density = Density::directional(v2(0, 1), 1.0);
  Mat verts(4, 2);
  verts << 0, 0, 1, 0, 1, 1, 0, 1;
  s.body = ConvexBody::from_vertices(verts);
  s.theta = v2(1, 0);
  s.checks = {"projection_routes"};
  return s;
}

}  // namespace

TEST_CASE("scenario validation rejects incomplete instances") {
  Scenario s = tiny_scenario("ok");
  REQUIRE_NOTHROW(homocone::validate_scenario(s));

  Scenario unnamed = s;
  unnamed.name.clear();
  REQUIRE_THROWS_AS(homocone::validate_scenario(unnamed), homocone::Error);

  Scenario unknown = s;
  unknown.checks = {"not_a_check"};
  REQUIRE_THROWS_AS(homocone::validate_scenario(unknown), homocone::Error);

  Scenario missing = s;
  missing.checks = {"borell"};  // no second body present
  REQUIRE_THROWS_AS(homocone::validate_scenario(missing), homocone::Error);

  Scenario mismatched = s;
  mismatched.theta = Vec::Ones(3);
  REQUIRE_THROWS_AS(homocone::validate_scenario(mismatched), homocone::Error);

  Scenario bad_alphas = s;
  bad_alphas.checks = {"face_bound"};
  bad_alphas.basis = Mat::Identity(2, 2);
  bad_alphas.alphas = Vec::Ones(3);
  REQUIRE_THROWS_AS(homocone::validate_scenario(bad_alphas), homocone::Error);
}

TEST_CASE("bundled scenarios are well formed and uniquely named") {
  std::vector<Scenario> all = homocone::builtin_scenarios();
  REQUIRE(all.size() == 20);
  std::set<std::string> names;
  for (const auto& s : all) {
    REQUIRE_NOTHROW(homocone::validate_scenario(s));
    REQUIRE(names.insert(s.name).second);
  }
}

TEST_CASE("run_scenario stamps names and captures runtime errors") {
  Scenario s = tiny_scenario("stamp");
  std::vector<CheckReport> out = homocone::run_scenario(s);
  REQUIRE(out.size() == 1);
  REQUIRE(out[0].scenario == "stamp");
  REQUIRE(out[0].name == "projection_routes");
  REQUIRE(out[0].pass);

  // A zonotope with too many generators throws inside the check; the runner
  // records the failure instead of crashing.
  Scenario broken = tiny_scenario("broken");
  broken.checks = {"zonotope_expansion"};
  Mat dirs(13, 2);
  for (int i = 0; i < 13; ++i) {
    dirs(i, 0) = std::cos(0.1 + i);
    dirs(i, 1) = std::sin(0.1 + i);
  }
  broken.basis = dirs;  // not orthonormal, but expansion takes raw directions
  broken.alphas = Vec::Ones(13);
  std::vector<CheckReport> bad = homocone::run_scenario(broken);
  REQUIRE(bad.size() == 1);
  REQUIRE_FALSE(bad[0].pass);
  REQUIRE_FALSE(bad[0].reasons.empty());
}

TEST_CASE("parallel execution preserves input order and bytes") {
  std::vector<Scenario> list;
  for (int i = 0; i < 6; ++i) list.push_back(tiny_scenario("s" + std::to_string(i)));
  std::vector<CheckReport> serial = homocone::run_scenarios(list, 1);
  std::vector<CheckReport> parallel = homocone::run_scenarios(list, 4);
  REQUIRE(serial.size() == parallel.size());
  for (size_t i = 0; i < serial.size(); ++i) {
    REQUIRE(serial[i].scenario == parallel[i].scenario);
    REQUIRE(serial[i].lhs == parallel[i].lhs);
    REQUIRE(serial[i].rhs == parallel[i].rhs);
    REQUIRE(serial[i].ratio == parallel[i].ratio);
  }
  REQUIRE(serial[0].scenario == "s0");
  REQUIRE(serial[5].scenario == "s5");
}

TEST_CASE("fuzz scenarios are deterministic in the seed") {
  homocone::FuzzConfig cfg;
  cfg.checks = {"borell", "self_mixed"};
  cfg.count = 3;
  cfg.seed = 42;
  std::vector<Scenario> a = homocone::fuzz_scenarios(cfg);
  std::vector<Scenario> b = homocone::fuzz_scenarios(cfg);
  REQUIRE(a.size() == 6);
  REQUIRE(a[0].name == "fuzz/borell/0");
  REQUIRE(a[3].name == "fuzz/self_mixed/0");
  for (size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].name == b[i].name);
    REQUIRE(a[i].seed == b[i].seed);
    REQUIRE(a[i].body->vertices() == b[i].body->vertices());
    REQUIRE(a[i].density->forms() == b[i].density->forms());
  }

  homocone::FuzzConfig other = cfg;
  other.seed = 43;
  std::vector<Scenario> c = homocone::fuzz_scenarios(other);
  bool any_different = false;
  for (size_t i = 0; i < a.size() && !any_different; ++i)
    any_different = a[i].density->forms() != c[i].density->forms();
  REQUIRE(any_different);

  homocone::FuzzConfig empty = cfg;
  empty.count = 0;
  REQUIRE_THROWS_AS(homocone::fuzz_scenarios(empty), homocone::Error);
}

TEST_CASE("fuzz aggregation classifies reports") {
  homocone::FuzzConfig cfg;
  cfg.checks = {"borell", "self_mixed"};
  std::vector<CheckReport> reports;

  CheckReport good = CheckReport::lower_bound("borell", 2.0, 1.0, 1e-4);
  good.scenario = "fuzz/borell/0";
  reports.push_back(good);

  CheckReport shaky = CheckReport::lower_bound("borell", 0.9, 1.0, 1e-4);
  shaky.scenario = "fuzz/borell/1";
  reports.push_back(shaky);

  CheckReport skip = CheckReport::skipped("borell", "no support");
  skip.scenario = "fuzz/borell/2";
  reports.push_back(skip);

  CheckReport ident = CheckReport::identity("self_mixed", 1.0, 1.0 + 1e-2, 1e-3);
  ident.scenario = "fuzz/self_mixed/0";
  reports.push_back(ident);

  homocone::FuzzAggregate agg = homocone::fuzz_aggregate(cfg, reports);
  REQUIRE(agg.table.size() == 2);
  REQUIRE(agg.table[0].name == "borell");
  REQUIRE(agg.table[0].runs == 3);
  REQUIRE(agg.table[0].passes == 1);
  REQUIRE(agg.table[0].failures == 1);
  REQUIRE(agg.table[0].skips == 1);
  REQUIRE(agg.table[0].defects == 1);
  REQUIRE(agg.table[0].min_ratio == 0.9);
  REQUIRE(agg.table[1].runs == 1);
  REQUIRE(agg.table[1].failures == 1);
  REQUIRE(agg.table[1].defects == 1);
}

TEST_CASE("json scenarios round-trip through the parser") {
  homocone::Json j = homocone::Json::parse(R"({
    "name": "parsed",
    "density": {"type": "directional_power", "theta": [0, 1], "p": 1},
    "body": {"type": "vpolytope", "vertices": [[0,0],[1,0],[1,1],[0,1]]},
    "second": {"type": "zonotope", "generators": [[1,0],[0,1]]},
    "theta": [1, 0],
    "checks": ["projection_routes", "minkowski_first"],
    "tolerances": {"route": 1e-7}
  })");
  Scenario s = homocone::parse_scenario(j);
  REQUIRE(s.name == "parsed");
  REQUIRE(s.density->p() == 1.0);
  REQUIRE(s.body->vertices().rows() == 4);
  REQUIRE(s.checks.size() == 2);
  REQUIRE(s.options.route_tol == 1e-7);

  std::vector<CheckReport> out = homocone::run_scenario(s);
  REQUIRE(out.size() == 2);
  REQUIRE(out[0].pass);
  REQUIRE(out[1].pass);
}

TEST_CASE("json parsing surfaces usable errors") {
  using homocone::ConfigError;
  REQUIRE_THROWS_AS(homocone::parse_density(homocone::Json::parse(
                        R"({"type": "unknown", "p": 1})")),
                    ConfigError);
  REQUIRE_THROWS_AS(homocone::parse_density(homocone::Json::parse(
                        R"({"type": "directional_power", "theta": [0, 2], "p": 1})")),
                    ConfigError);
  REQUIRE_THROWS_AS(homocone::parse_body(homocone::Json::parse(
                        R"({"type": "vpolytope", "vertices": [[0,0],[1,1]]})")),
                    ConfigError);

  // Bad syntax carries line and column.
  try {
    homocone::parse_json_text("{\n  \"a\": [1,\n}", "test.json");
    FAIL("expected a parse error");
  } catch (const ConfigError& e) {
    std::string msg = e.what();
    REQUIRE(msg.find("line 3") != std::string::npos);
    REQUIRE(msg.find("test.json") != std::string::npos);
  }

  REQUIRE_THROWS_AS(homocone::load_json_file("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("run configs accept builtins, inline scenarios, and filters") {
  homocone::Json j = homocone::Json::parse(R"({
    "scenarios": ["builtin:square_ramp"],
    "checks": ["projection_routes"],
    "format": "csv",
    "jobs": 2
  })");
  homocone::RunConfig cfg = homocone::parse_run_config(j);
  REQUIRE(cfg.scenarios.size() == 1);
  REQUIRE(cfg.scenarios[0].name == "square_ramp");
  REQUIRE(cfg.check_filter == std::vector<std::string>{"projection_routes"});
  REQUIRE(cfg.format == "csv");
  REQUIRE(cfg.jobs == 2);

  REQUIRE_THROWS_AS(homocone::parse_run_config(homocone::Json::parse(
                        R"({"scenarios": ["builtin:no_such_thing"]})")),
                    homocone::ConfigError);
  REQUIRE_THROWS_AS(homocone::parse_run_config(homocone::Json::parse(
                        R"({"scenarios": ["builtin:square_ramp"], "format": "xml"})")),
                    homocone::ConfigError);
  REQUIRE_THROWS_AS(homocone::parse_run_config(homocone::Json::parse(
                        R"({"scenarios": ["builtin:square_ramp"], "checks": ["nope"]})")),
                    homocone::ConfigError);
}

TEST_CASE("reports serialize to stable json and csv") {
  CheckReport r = CheckReport::lower_bound("face_bound", 2.0, 1.0, 1e-4);
  r.scenario = "demo";
  r.metadata["face_index"] = 0.0;
  homocone::Json doc = homocone::reports_document({r});
  REQUIRE(doc["summary"]["total"] == 1);
  REQUIRE(doc["summary"]["passed"] == 1);
  REQUIRE(doc["reports"][0]["name"] == "face_bound");
  REQUIRE(doc["reports"][0]["metadata"]["face_index"] == 0.0);

  std::string csv = homocone::reports_csv({r});
  REQUIRE(csv.find("name,scenario,lhs,rhs,ratio,hypothesis_ok,pass\n") == 0);
  REQUIRE(csv.find("face_bound,demo,2,1,2,true,true\n") != std::string::npos);

  CheckReport sk = CheckReport::skipped("ball", "frame is not isotropic");
  homocone::Json doc2 = homocone::reports_document({sk});
  REQUIRE(doc2["summary"]["skipped"] == 1);
  REQUIRE(doc2["reports"][0]["reasons"][0] == "frame is not isotropic");
}
