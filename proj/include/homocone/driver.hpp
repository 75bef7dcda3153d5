#pragma once

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include "json_io.hpp"

namespace homocone {

inline int resolve_jobs(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("HOMOCONE_JOBS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Scenario-level worker pool. Reports land in per-scenario slots and are
// concatenated in input order, so the output is independent of scheduling.
inline std::vector<CheckReport> run_scenarios(const std::vector<Scenario>& list, int jobs) {
  std::vector<std::vector<CheckReport>> slots(list.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= list.size()) return;
      slots[i] = run_scenario(list[i]);
    }
  };
  size_t workers = std::min(static_cast<size_t>(resolve_jobs(jobs)), list.size());
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  std::vector<CheckReport> out;
  for (auto& slot : slots)
    for (auto& r : slot) out.push_back(std::move(r));
  return out;
}

namespace detail {

inline void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("config: cannot write '" + path + "'");
  out << text;
}

inline int exit_code_from(const std::vector<CheckReport>& reports) {
  for (const auto& r : reports)
    if (!r.pass) return 1;
  return 0;
}

inline std::string render(const Json& doc, const std::vector<CheckReport>& reports,
                          const std::string& format) {
  if (format == "csv") return reports_csv(reports);
  return doc.dump(2) + "\n";
}

}  // namespace detail

inline int cmd_verify(RunConfig cfg) {
  if (!cfg.check_filter.empty()) {
    std::vector<Scenario> kept;
    for (auto& s : cfg.scenarios) {
      std::vector<std::string> filtered;
      for (const auto& c : s.checks)
        if (std::find(cfg.check_filter.begin(), cfg.check_filter.end(), c) !=
            cfg.check_filter.end())
          filtered.push_back(c);
      if (!filtered.empty()) {
        s.checks = std::move(filtered);
        kept.push_back(std::move(s));
      }
    }
    if (kept.empty()) throw ConfigError("config: the check filter removed every check");
    cfg.scenarios = std::move(kept);
  }
  std::vector<CheckReport> reports = run_scenarios(cfg.scenarios, cfg.jobs);
  detail::write_output(detail::render(reports_document(reports), reports, cfg.format),
                       cfg.out_path);
  return detail::exit_code_from(reports);
}

inline int cmd_fuzz(const FuzzConfig& cfg, const std::string& out_path,
                    const std::string& format, int jobs) {
  if (cfg.count <= 0) throw ConfigError("config: fuzz count must be positive");
  std::vector<Scenario> scenarios = fuzz_scenarios(cfg);
  std::vector<CheckReport> reports = run_scenarios(scenarios, jobs);
  FuzzAggregate agg = fuzz_aggregate(cfg, std::move(reports));
  detail::write_output(detail::render(fuzz_document(agg), agg.reports, format), out_path);
  return detail::exit_code_from(agg.reports);
}

// Human-readable pass over the reference instances: the unit square, its
// diagonal-basis variant, and the rotated 120-degree triple, plus the
// axis-aligned triple that demonstrates a hypothesis skip.
inline int cmd_demo() {
  std::vector<Scenario> picks;
  for (auto& s : builtin_scenarios())
    if (s.name == "square_ramp" || s.name == "square_diagonal_basis" ||
        s.name == "triple_rotated" || s.name == "triple_axis_skip")
      picks.push_back(std::move(s));
  std::vector<CheckReport> reports = run_scenarios(picks, 0);

  std::printf("%-24s %-24s %12s %12s %10s  %s\n", "scenario", "check", "lhs", "rhs", "ratio",
              "status");
  for (const auto& r : reports) {
    const char* status = !r.hypothesis_ok ? "SKIP" : r.pass ? "PASS" : "FAIL";
    std::printf("%-24s %-24s %12.6g %12.6g %10.4g  %s\n", r.scenario.c_str(), r.name.c_str(),
                r.lhs, r.rhs, r.ratio, status);
    if (!r.reasons.empty()) std::printf("    %s\n", r.reasons.front().c_str());
  }
  int passed = 0, failed = 0, skipped = 0;
  for (const auto& r : reports) {
    if (!r.hypothesis_ok)
      ++skipped;
    else if (r.pass)
      ++passed;
    else
      ++failed;
  }
  std::printf("\n%d passed, %d failed, %d hypothesis-skipped\n", passed, failed, skipped);
  return failed == 0 ? 0 : 1;
}

}  // namespace homocone
