#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace homocone {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Tolerance defaults used across the library. Checks take overrides; these
// are the contract values.
namespace tol {
inline constexpr double unit_norm = 1e-12;        // |u|=1 validation
inline constexpr double isotropy = 1e-9;          // frame isotropy residual
inline constexpr double membership = 1e-9;        // additive halfspace slack
inline constexpr double hull_degeneracy = 1e-12;  // orientation threshold (relative)
inline constexpr double dedup = 1e-9;             // vertex/direction dedup
inline constexpr double inequality_slack = 1e-4;  // default pass slack, inequalities
inline constexpr double identity_slack = 1e-3;    // default pass slack, FD identities
}  // namespace tol

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw Error(msg);
}

inline double rel_diff(double a, double b) {
  double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

// Deterministic canonical sign: flip so the first coordinate with
// |entry| > eps is positive. Used for direction dedup; legitimate because
// every quantity we take over direction sets is even.
inline Vec canonical_sign(const Vec& u, double eps = tol::dedup) {
  for (int i = 0; i < u.size(); ++i) {
    if (std::abs(u[i]) > eps) return u[i] > 0 ? u : Vec(-u);
  }
  return u;
}

inline bool approx_same_point(const Vec& a, const Vec& b, double eps) {
  return (a - b).lpNorm<Eigen::Infinity>() <= eps;
}

// Kahan-compensated accumulator; summation order is fixed by the caller so
// results are bit-stable run to run.
struct KahanSum {
  double sum = 0.0, c = 0.0;
  void add(double x) {
    double y = x - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

}  // namespace homocone
