#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "common.hpp"
#include "rng.hpp"

namespace homocone {

enum class DensityKind { directional_power, min_linear_power };

// Density g(x) = m(x)_+^{1/p} where m is a linear form <x,theta> or a min of
// linear forms min_j <x,theta_j>. Both families are 1/p-homogeneous and
// p-concave on their support cone {m > 0}, which is the class the measure
// theory needs. m is called the "linear value" throughout.
class Density {
 public:
  static Density directional(Vec theta, double p) {
    require(p > 0, "density: p must be positive");
    require(theta.size() >= 1, "density: theta must be nonempty");
    require(std::abs(theta.norm() - 1.0) <= tol::unit_norm,
            "density: directional theta must be a unit vector");
    Mat forms(1, theta.size());
    forms.row(0) = theta.transpose();
    return Density(DensityKind::directional_power, std::move(forms), p);
  }

  static Density min_linear(Mat thetas, double p) {
    require(p > 0, "density: p must be positive");
    require(thetas.rows() >= 1 && thetas.cols() >= 1,
            "density: thetas must be a nonempty list of vectors");
    for (int j = 0; j < thetas.rows(); ++j)
      require(thetas.row(j).norm() > 0, "density: thetas must be nonzero");
    return Density(DensityKind::min_linear_power, std::move(thetas), p);
  }

  DensityKind kind() const { return kind_; }
  int dim() const { return static_cast<int>(forms_.cols()); }
  double p() const { return p_; }
  // Homogeneity degree of g; the quadrature kernel integrates m_+^s.
  double exponent() const { return 1.0 / p_; }
  int num_forms() const { return static_cast<int>(forms_.rows()); }
  const Mat& forms() const { return forms_; }

  double linear_value(const Vec& x) const {
    double m = forms_.row(0).dot(x);
    for (int j = 1; j < forms_.rows(); ++j) m = std::min(m, forms_.row(j).dot(x));
    return m;
  }

  double eval(const Vec& x) const {
    double m = linear_value(x);
    return m > 0 ? std::pow(m, 1.0 / p_) : 0.0;
  }

  double eval_symmetrized(const Vec& x) const { return eval(x) + eval(-x); }

  // \tilde g^p(x) computed without the p-th power round trip. At most one of
  // m(x), m(-x) is positive (m(x) <= <x,theta_1> and m(-x) <= -<x,theta_1>),
  // so (g(x)+g(-x))^p = m(x)_+ + m(-x)_+ exactly. Stable even at p = 1000.
  double symmetrized_power(const Vec& x) const {
    return std::max(linear_value(x), 0.0) + std::max(linear_value(-x), 0.0);
  }

  bool in_support(const Vec& x) const { return linear_value(x) > 0; }

  // Exact max of the concave piecewise-linear m along [a,b]: candidates are
  // the endpoints and pairwise breakpoints of the active pieces.
  double segment_max_value(const Vec& a, const Vec& b) const {
    Vec va = forms_ * a;
    Vec vb = forms_ * b;
    auto m_at = [&](double t) {
      double m = (1 - t) * va[0] + t * vb[0];
      for (int j = 1; j < va.size(); ++j)
        m = std::min(m, (1 - t) * va[j] + t * vb[j]);
      return m;
    };
    double best = std::max(m_at(0.0), m_at(1.0));
    for (int j = 0; j < va.size(); ++j) {
      for (int k = j + 1; k < va.size(); ++k) {
        double dj = vb[j] - va[j], dk = vb[k] - va[k];
        if (std::abs(dj - dk) < 1e-300) continue;
        double t = (va[k] - va[j]) / (dj - dk);
        if (t > 0.0 && t < 1.0) best = std::max(best, m_at(t));
      }
    }
    return best;
  }

  bool segment_meets_support(const Vec& a, const Vec& b) const {
    return segment_max_value(a, b) > 0;
  }

 private:
  Density(DensityKind kind, Mat forms, double p)
      : kind_(kind), forms_(std::move(forms)), p_(p) {}

  DensityKind kind_;
  Mat forms_;  // one form per row
  double p_;
};

// Sampled validation of the defining properties. Both return the worst
// relative violation seen; 0 means clean.

inline double max_homogeneity_violation(const Density& g, std::uint64_t seed,
                                        int trials = 256) {
  CounterRng rng(seed, 101);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    Vec x = rng.gaussian_vec(g.dim());
    double lam = rng.uniform(0.05, 2.0);
    double a = g.eval(lam * x);
    double b = std::pow(lam, g.exponent()) * g.eval(x);
    worst = std::max(worst, rel_diff(a, b));
  }
  return worst;
}

inline double max_p_concavity_violation(const Density& g, std::uint64_t seed,
                                        int trials = 256) {
  CounterRng rng(seed, 102);
  double worst = 0.0;
  int used = 0;
  while (used < trials) {
    Vec x = rng.gaussian_vec(g.dim());
    Vec y = rng.gaussian_vec(g.dim());
    if (!g.in_support(x) || !g.in_support(y)) continue;
    ++used;
    double lam = rng.uniform(0.0, 1.0);
    double lhs = std::pow(g.eval(lam * x + (1 - lam) * y), g.p());
    double rhs = lam * std::pow(g.eval(x), g.p()) + (1 - lam) * std::pow(g.eval(y), g.p());
    if (lhs < rhs) worst = std::max(worst, (rhs - lhs) / std::max(rhs, 1e-300));
  }
  return worst;
}

}  // namespace homocone
