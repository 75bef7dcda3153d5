#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fuzz.hpp"
#include "scenario.hpp"

namespace homocone {

// Bad input (malformed JSON, unknown fields, missing files) as opposed to a
// failed check; the command layer maps this to its own exit code.
struct ConfigError : Error {
  using Error::Error;
};

using Json = nlohmann::json;

struct RunConfig {
  std::vector<Scenario> scenarios;
  std::vector<std::string> check_filter;  // empty = run each scenario's own list
  std::string out_path;                   // empty = stdout
  std::string format = "json";
  int jobs = 0;                           // 0 = pick a default
};

namespace detail {

inline void json_require(bool cond, const std::string& msg) {
  if (!cond) throw ConfigError("config: " + msg);
}

inline Vec parse_vec(const Json& j, const std::string& what) {
  json_require(j.is_array() && !j.empty(), what + " must be a non-empty array");
  Vec v(static_cast<int>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) {
    json_require(j[i].is_number(), what + " must hold numbers");
    v[static_cast<int>(i)] = j[i].get<double>();
  }
  return v;
}

inline Mat parse_mat(const Json& j, const std::string& what) {
  json_require(j.is_array() && !j.empty(), what + " must be a non-empty array of rows");
  size_t cols = 0;
  for (size_t i = 0; i < j.size(); ++i) {
    json_require(j[i].is_array() && !j[i].empty(), what + " rows must be arrays");
    if (i == 0) cols = j[i].size();
    json_require(j[i].size() == cols, what + " rows must have equal length");
  }
  Mat m(static_cast<int>(j.size()), static_cast<int>(cols));
  for (size_t r = 0; r < j.size(); ++r)
    for (size_t c = 0; c < cols; ++c) {
      json_require(j[r][c].is_number(), what + " must hold numbers");
      m(static_cast<int>(r), static_cast<int>(c)) = j[r][c].get<double>();
    }
  return m;
}

}  // namespace detail

inline Density parse_density(const Json& j) {
  detail::json_require(j.is_object(), "density must be an object");
  detail::json_require(j.contains("type") && j["type"].is_string(),
                       "density needs a string 'type'");
  detail::json_require(j.contains("p") && j["p"].is_number(), "density needs a numeric 'p'");
  double p = j["p"].get<double>();
  std::string type = j["type"].get<std::string>();
  try {
    if (type == "directional_power") {
      detail::json_require(j.contains("theta"), "directional_power needs 'theta'");
      return Density::directional(detail::parse_vec(j["theta"], "theta"), p);
    }
    if (type == "min_linear_power") {
      detail::json_require(j.contains("thetas"), "min_linear_power needs 'thetas'");
      return Density::min_linear(detail::parse_mat(j["thetas"], "thetas"), p);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("config: bad density: ") + e.what());
  }
  throw ConfigError("config: unknown density type '" + type + "'");
}

inline ConvexBody parse_body(const Json& j) {
  detail::json_require(j.is_object(), "body must be an object");
  detail::json_require(j.contains("type") && j["type"].is_string(),
                       "body needs a string 'type'");
  std::string type = j["type"].get<std::string>();
  try {
    if (type == "vpolytope") {
      detail::json_require(j.contains("vertices"), "vpolytope needs 'vertices'");
      return ConvexBody::from_vertices(detail::parse_mat(j["vertices"], "vertices"));
    }
    if (type == "hpolytope") {
      detail::json_require(j.contains("normals") && j.contains("offsets"),
                           "hpolytope needs 'normals' and 'offsets'");
      return ConvexBody::from_halfspaces(detail::parse_mat(j["normals"], "normals"),
                                         detail::parse_vec(j["offsets"], "offsets"));
    }
    if (type == "zonotope") {
      detail::json_require(j.contains("generators"), "zonotope needs 'generators'");
      return ConvexBody::zonotope(detail::parse_mat(j["generators"], "generators"));
    }
    if (type == "box") {
      detail::json_require(j.contains("basis") && j.contains("alphas"),
                           "box needs 'basis' and 'alphas'");
      return ConvexBody::box(detail::parse_mat(j["basis"], "basis"),
                             detail::parse_vec(j["alphas"], "alphas"));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("config: bad body: ") + e.what());
  }
  throw ConfigError("config: unknown body type '" + type + "'");
}

inline WeightedFrame parse_frame(const Json& j) {
  detail::json_require(j.is_object() && j.contains("vectors"), "frame needs 'vectors'");
  Mat vectors = detail::parse_mat(j["vectors"], "frame vectors");
  try {
    if (j.contains("weights"))
      return WeightedFrame::make(vectors, detail::parse_vec(j["weights"], "frame weights"));
    auto weights = solve_weights(vectors);
    detail::json_require(weights.has_value(),
                         "frame weights omitted and no isotropic weights exist");
    return WeightedFrame::make(vectors, *weights);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("config: bad frame: ") + e.what());
  }
}

inline Scenario parse_scenario(const Json& j) {
  detail::json_require(j.is_object(), "scenario must be an object");
  Scenario s;
  detail::json_require(j.contains("name") && j["name"].is_string(),
                       "scenario needs a string 'name'");
  s.name = j["name"].get<std::string>();
  if (j.contains("density")) s.density = parse_density(j["density"]);
  if (j.contains("body")) s.body = parse_body(j["body"]);
  if (j.contains("second")) s.second = parse_body(j["second"]);
  if (j.contains("third")) s.third = parse_body(j["third"]);
  if (j.contains("frame")) s.frame = parse_frame(j["frame"]);
  if (j.contains("basis")) s.basis = detail::parse_mat(j["basis"], "basis");
  if (j.contains("alphas")) s.alphas = detail::parse_vec(j["alphas"], "alphas");
  if (j.contains("theta")) s.theta = detail::parse_vec(j["theta"], "theta");
  if (j.contains("lambda")) {
    detail::json_require(j["lambda"].is_number(), "lambda must be a number");
    s.lambda = j["lambda"].get<double>();
  }
  if (j.contains("face_index")) {
    detail::json_require(j["face_index"].is_number_integer(),
                         "face_index must be an integer");
    s.face_index = j["face_index"].get<int>();
  }
  if (j.contains("p_list")) {
    detail::json_require(j["p_list"].is_array() && !j["p_list"].empty(),
                         "p_list must be a non-empty array");
    s.p_list.clear();
    for (const auto& v : j["p_list"]) {
      detail::json_require(v.is_number(), "p_list must hold numbers");
      s.p_list.push_back(v.get<double>());
    }
  }
  detail::json_require(j.contains("checks") && j["checks"].is_array(),
                       "scenario needs a 'checks' array");
  for (const auto& c : j["checks"]) {
    detail::json_require(c.is_string(), "checks must be strings");
    s.checks.push_back(c.get<std::string>());
  }
  if (j.contains("seed")) {
    detail::json_require(j["seed"].is_number_unsigned() || j["seed"].is_number_integer(),
                         "seed must be an integer");
    s.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("tolerances")) {
    const Json& t = j["tolerances"];
    detail::json_require(t.is_object(), "tolerances must be an object");
    if (t.contains("inequality")) s.options.inequality_slack = t["inequality"].get<double>();
    if (t.contains("identity")) s.options.identity_tol = t["identity"].get<double>();
    if (t.contains("route")) s.options.route_tol = t["route"].get<double>();
  }
  try {
    validate_scenario(s);
  } catch (const Error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return s;
}

// Reads a whole JSON document, turning parser byte offsets into line/column
// positions for the error message.
inline Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    size_t line = 1, col = 1;
    for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError("config: " + origin + ": line " + std::to_string(line) + ", column " +
                      std::to_string(col) + ": " + e.what());
  }
}

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

// A run config's "scenarios" entries may be inline scenario objects, paths
// to scenario files ({"file": "..."}), or built-in names ("builtin:name").
inline RunConfig parse_run_config(const Json& j) {
  detail::json_require(j.is_object(), "run config must be an object");
  detail::json_require(j.contains("scenarios") && j["scenarios"].is_array() &&
                           !j["scenarios"].empty(),
                       "run config needs a non-empty 'scenarios' array");
  RunConfig cfg;
  for (const auto& entry : j["scenarios"]) {
    if (entry.is_string()) {
      std::string ref = entry.get<std::string>();
      detail::json_require(ref.rfind("builtin:", 0) == 0,
                           "string scenario entries must look like 'builtin:<name>'");
      std::string name = ref.substr(8);
      bool found = false;
      for (auto& s : builtin_scenarios())
        if (s.name == name) {
          cfg.scenarios.push_back(std::move(s));
          found = true;
          break;
        }
      detail::json_require(found, "unknown builtin scenario '" + name + "'");
    } else if (entry.is_object() && entry.contains("file")) {
      detail::json_require(entry["file"].is_string(), "'file' must be a string");
      cfg.scenarios.push_back(parse_scenario(load_json_file(entry["file"].get<std::string>())));
    } else {
      cfg.scenarios.push_back(parse_scenario(entry));
    }
  }
  if (j.contains("checks")) {
    detail::json_require(j["checks"].is_array(), "'checks' must be an array");
    for (const auto& c : j["checks"]) {
      detail::json_require(c.is_string() && known_checks().count(c.get<std::string>()) > 0,
                           "unknown check in run config filter");
      cfg.check_filter.push_back(c.get<std::string>());
    }
  }
  if (j.contains("out")) cfg.out_path = j["out"].get<std::string>();
  if (j.contains("format")) {
    cfg.format = j["format"].get<std::string>();
    detail::json_require(cfg.format == "json" || cfg.format == "csv",
                         "format must be 'json' or 'csv'");
  }
  if (j.contains("jobs")) cfg.jobs = j["jobs"].get<int>();
  return cfg;
}

inline FuzzConfig parse_fuzz_config(const Json& j) {
  detail::json_require(j.is_object(), "fuzz config must be an object");
  FuzzConfig cfg;
  if (j.contains("checks")) {
    detail::json_require(j["checks"].is_array() && !j["checks"].empty(),
                         "'checks' must be a non-empty array");
    cfg.checks.clear();
    for (const auto& c : j["checks"]) {
      detail::json_require(c.is_string() && known_checks().count(c.get<std::string>()) > 0,
                           "unknown check in fuzz config");
      cfg.checks.push_back(c.get<std::string>());
    }
  }
  if (j.contains("count")) {
    detail::json_require(j["count"].is_number_integer(), "'count' must be an integer");
    cfg.count = j["count"].get<int>();
  }
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("tolerances")) {
    const Json& t = j["tolerances"];
    if (t.contains("inequality")) cfg.options.inequality_slack = t["inequality"].get<double>();
    if (t.contains("identity")) cfg.options.identity_tol = t["identity"].get<double>();
    if (t.contains("route")) cfg.options.route_tol = t["route"].get<double>();
  }
  return cfg;
}

inline Json report_to_json(const CheckReport& r) {
  Json j;
  j["name"] = r.name;
  j["scenario"] = r.scenario;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["ratio"] = r.ratio;
  j["hypothesis_ok"] = r.hypothesis_ok;
  j["pass"] = r.pass;
  j["tolerance"] = r.tolerance;
  if (!r.reasons.empty()) j["reasons"] = r.reasons;
  if (!r.metadata.empty()) j["metadata"] = r.metadata;
  return j;
}

inline Json reports_document(const std::vector<CheckReport>& reports) {
  Json doc;
  doc["reports"] = Json::array();
  int passed = 0, failed = 0, skipped = 0;
  for (const auto& r : reports) {
    doc["reports"].push_back(report_to_json(r));
    if (!r.hypothesis_ok)
      ++skipped;
    else if (r.pass)
      ++passed;
    else
      ++failed;
  }
  doc["summary"]["total"] = reports.size();
  doc["summary"]["passed"] = passed;
  doc["summary"]["failed"] = failed;
  doc["summary"]["skipped"] = skipped;
  return doc;
}

inline Json fuzz_document(const FuzzAggregate& agg) {
  Json doc = reports_document(agg.reports);
  doc["fuzz_table"] = Json::array();
  for (const auto& row : agg.table) {
    Json r;
    r["name"] = row.name;
    r["runs"] = row.runs;
    r["passes"] = row.passes;
    r["failures"] = row.failures;
    r["skips"] = row.skips;
    r["defects"] = row.defects;
    if (std::isfinite(row.min_ratio)) r["min_ratio"] = row.min_ratio;
    doc["fuzz_table"].push_back(r);
  }
  return doc;
}

// One row per check: name, scenario, lhs, rhs, ratio, hypothesis_ok, pass.
// %.17g keeps the values round-trippable and the bytes reproducible.
inline std::string reports_csv(const std::vector<CheckReport>& reports) {
  std::string out = "name,scenario,lhs,rhs,ratio,hypothesis_ok,pass\n";
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  for (const auto& r : reports) {
    out += r.name + "," + r.scenario + "," + num(r.lhs) + "," + num(r.rhs) + "," +
           num(r.ratio) + "," + (r.hypothesis_ok ? "true" : "false") + "," +
           (r.pass ? "true" : "false") + "\n";
  }
  return out;
}

}  // namespace homocone
