#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

namespace homocone {

// Result of one numerical check. Inequality checks keep the orientation of
// the statement being tested: `lower_bound` asserts lhs >= rhs and
// `upper_bound` asserts lhs <= rhs, and in both cases `ratio` is the margin
// (guaranteed-larger side over guaranteed-smaller side), so ratio >= 1 means
// the inequality holds with room and ratio < 1 - tolerance is a defect.
// Identity checks use `ratio` for the relative residual instead.
// `hypothesis_ok=false` means the check's preconditions failed on this
// instance: the check is skipped, not failed, and `reasons` says why.
struct CheckReport {
  std::string name;
  std::string scenario;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool hypothesis_ok = true;
  bool pass = false;
  double tolerance = 0.0;
  std::vector<std::string> reasons;
  std::map<std::string, double> metadata;

 private:
  static double margin(double big, double small) {
    if (small > 0.0) return big / small;
    if (small == 0.0) return big >= 0.0 ? 1.0 : 0.0;
    return big >= small ? 1.0 : 0.0;
  }

 public:
  // Asserts lhs >= rhs (e.g. a proven lower bound on a measured quantity).
  static CheckReport lower_bound(const std::string& name, double lhs, double rhs,
                                 double slack) {
    CheckReport r;
    r.name = name;
    r.lhs = lhs;
    r.rhs = rhs;
    r.tolerance = slack;
    r.ratio = margin(lhs, rhs);
    r.pass = r.ratio >= 1.0 - slack;
    return r;
  }

  // Asserts lhs <= rhs (e.g. a measured quantity against a proven cap).
  static CheckReport upper_bound(const std::string& name, double lhs, double rhs,
                                 double slack) {
    CheckReport r;
    r.name = name;
    r.lhs = lhs;
    r.rhs = rhs;
    r.tolerance = slack;
    r.ratio = margin(rhs, lhs);
    r.pass = r.ratio >= 1.0 - slack;
    return r;
  }

  static CheckReport identity(const std::string& name, double lhs, double rhs,
                              double rel_tol) {
    CheckReport r;
    r.name = name;
    r.lhs = lhs;
    r.rhs = rhs;
    r.tolerance = rel_tol;
    double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    r.ratio = std::abs(lhs - rhs) / scale;
    r.pass = r.ratio <= rel_tol;
    return r;
  }

  static CheckReport skipped(const std::string& name, const std::string& reason) {
    CheckReport r;
    r.name = name;
    r.hypothesis_ok = false;
    r.pass = true;
    r.reasons.push_back(reason);
    return r;
  }
};

}  // namespace homocone
