#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "body.hpp"
#include "density.hpp"
#include "measure.hpp"
#include "quadrature.hpp"

namespace homocone {

struct MixedMeasureResult {
  double value = 0.0;
  std::string route;  // finite_difference | facet_sum | self_identity
  double error_estimate = 0.0;
  // finite-difference diagnostics: (eps, divided difference) pairs and
  // whether the differences vary monotonically in eps
  std::vector<std::pair<double, double>> fd_table;
  bool fd_monotone = true;
};

// mu_1(A,B) = lim (mu(A + eps B) - mu(A)) / eps via a halving eps schedule
// with one Richardson level. The limit is one-sided; the table is kept so a
// caller can inspect how the differences settle.
inline MixedMeasureResult mixed_measure_fd(const Density& g, const ConvexBody& A,
                                           const ConvexBody& B,
                                           const QuadratureOptions& opts = {}) {
  MixedMeasureResult r;
  r.route = "finite_difference";
  MeasureResult base = measure_body(g, A, opts);
  std::vector<double> diffs;
  for (int k = 3; k <= 10; ++k) {
    double eps = std::pow(2.0, -k);
    ConvexBody grown = minkowski_sum(A, B.scaled(eps));
    MeasureResult m = measure_body(g, grown, opts);
    double d = (m.value - base.value) / eps;
    diffs.push_back(d);
    r.fd_table.emplace_back(eps, d);
  }
  // Consecutive differences of the table decay like the step while the
  // one-sided error dominates. Once they stop decaying, the measure of the
  // grown body is no longer resolved at that step (the hull of a sum with a
  // tiny summand degrades first), so the tail is cut before extrapolating.
  size_t keep = diffs.size();
  for (size_t i = 2; i < diffs.size(); ++i) {
    double prev = std::abs(diffs[i - 1] - diffs[i - 2]);
    double cur = std::abs(diffs[i] - diffs[i - 1]);
    if (cur <= 1e-11 * (std::abs(diffs[i]) + 1e-300)) {
      keep = i + 1;
      break;
    }
    if (cur > 0.8 * prev) {
      keep = i;
      break;
    }
  }
  if (keep < 3) keep = 3;
  for (size_t i = 2; i < keep; ++i) {
    double d1 = diffs[i - 1] - diffs[i - 2];
    double d2 = diffs[i] - diffs[i - 1];
    if (d1 * d2 < 0 && std::abs(d2) > 1e-9 * std::abs(diffs[i])) r.fd_monotone = false;
  }
  size_t last = keep - 1;
  double rich = 2.0 * diffs[last] - diffs[last - 1];
  double rich_prev = 2.0 * diffs[last - 1] - diffs[last - 2];
  r.value = rich;
  r.error_estimate = std::abs(rich - rich_prev);
  return r;
}

// Surface-decomposition route: mu_1(K,B) = sum over facets F of
// h_B(nu_F) * mu_{n-1}(F), with h_B the support function of B. Exact up to
// the facet quadrature, and the reference route for polytope pairs.
inline MixedMeasureResult mixed_measure_facets(const Density& g, const ConvexBody& K,
                                               const ConvexBody& B,
                                               const QuadratureOptions& opts = {}) {
  MixedMeasureResult r;
  r.route = "facet_sum";
  KahanSum acc;
  for (const auto& f : K.faces()) {
    double h = B.support(f.normal);
    MeasureResult m = measure_face(g, f, opts);
    acc.add(h * m.value);
    r.error_estimate += std::abs(h) * m.error_estimate;
  }
  r.value = acc.value();
  return r;
}

// Same route for the segment [-theta, theta]: h_B(nu) = |<nu, theta>|.
inline MixedMeasureResult mixed_measure_segment(const Density& g, const ConvexBody& K,
                                                const Vec& theta,
                                                const QuadratureOptions& opts = {}) {
  MixedMeasureResult r;
  r.route = "facet_sum";
  KahanSum acc;
  for (const auto& f : K.faces()) {
    double h = std::abs(f.normal.dot(theta));
    if (h == 0.0) continue;
    MeasureResult m = measure_face(g, f, opts);
    acc.add(h * m.value);
    r.error_estimate += h * m.error_estimate;
  }
  r.value = acc.value();
  return r;
}

inline bool same_geometry(const ConvexBody& A, const ConvexBody& B, double eps = 1e-12) {
  if (A.dim() != B.dim() || A.vertices().rows() != B.vertices().rows()) return false;
  // vertex rows are in hull-construction order, which is input-dependent, so
  // compare as sets
  std::vector<bool> used(B.vertices().rows(), false);
  double scale = std::max(1.0, A.vertices().cwiseAbs().maxCoeff());
  for (int i = 0; i < A.vertices().rows(); ++i) {
    bool found = false;
    for (int j = 0; j < B.vertices().rows() && !found; ++j) {
      if (used[j]) continue;
      if ((A.vertices().row(i) - B.vertices().row(j)).lpNorm<Eigen::Infinity>() <=
          eps * scale) {
        used[j] = true;
        found = true;
      }
    }
    if (!found) return false;
  }
  return true;
}

// Dispatcher. Identical bodies take the homogeneity identity
// mu_1(A,A) = mu(A)/q (itself verified elsewhere against the finite
// difference); anything else takes the finite-difference definition.
inline MixedMeasureResult mixed_measure(const Density& g, const ConvexBody& A,
                                        const ConvexBody& B,
                                        const QuadratureOptions& opts = {}) {
  if (same_geometry(A, B)) {
    HomogeneityExponent h = homogeneity(A.dim(), g.p());
    MeasureResult m = measure_body(g, A, opts);
    MixedMeasureResult r;
    r.route = "self_identity";
    r.value = m.value / h.q;
    r.error_estimate = m.error_estimate / h.q;
    return r;
  }
  return mixed_measure_fd(g, A, B, opts);
}

enum class ProjectionRoute { mixed_measure, definition };

// Generalized projection P(theta) = (n/2) * integral over t in [0,1] of
// mu_1(tK, [-theta,theta]) dt. The mixed_measure route folds the integral
// through first-argument homogeneity into (qn/2) mu_1(K, [-theta,theta]);
// the definition route integrates scaled copies of K node by node
// (substituting t = tau^4 so the endpoint power is benign), which makes the
// two routes agree only if that homogeneity actually holds.
inline double projection_functional(const Density& g, const ConvexBody& K, const Vec& theta,
                                    ProjectionRoute route = ProjectionRoute::mixed_measure,
                                    const QuadratureOptions& opts = {}) {
  int n = K.dim();
  if (route == ProjectionRoute::mixed_measure) {
    HomogeneityExponent h = homogeneity(n, g.p());
    return 0.5 * h.q * n * mixed_measure_segment(g, K, theta, opts).value;
  }
  const LineRule& gl = gauss_legendre_16();
  KahanSum acc;
  for (int i = 0; i < gl.nodes.size(); ++i) {
    double tau = gl.nodes[i];
    double t = tau * tau * tau * tau;
    if (t <= 0) continue;
    double jac = 4.0 * tau * tau * tau;
    double m1 = mixed_measure_segment(g, K.scaled(t), theta, opts).value;
    acc.add(gl.weights[i] * jac * m1);
  }
  return 0.5 * n * acc.value();
}

}  // namespace homocone
