#pragma once

#include <cmath>
#include <string>

#include "body.hpp"
#include "density.hpp"
#include "quadrature.hpp"
#include "rng.hpp"

namespace homocone {

// mu(t K) = t^{1/q} mu(K) with 1/q = n + 1/p; mu is q-concave.
struct HomogeneityExponent {
  double one_over_q = 0.0;
  double q = 0.0;
};

inline HomogeneityExponent homogeneity(int n, double p) {
  HomogeneityExponent h;
  h.one_over_q = n + 1.0 / p;
  h.q = 1.0 / h.one_over_q;
  return h;
}

struct MeasureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::uint64_t evaluations = 0;
  std::string method;
};

// integral of g over one simplex (any order k <= n): the kernel needs only
// the density's form values at the vertices and the k-volume.
inline MeasureResult measure_simplex(const Density& g, const Simplex& s,
                                     const QuadratureOptions& opts = {}) {
  Mat values = g.forms() * s.vertices.transpose();
  QuadratureResult q = integrate_min_power_simplex(values, s.volume, g.exponent(), opts);
  MeasureResult r;
  r.value = q.value;
  r.error_estimate = q.error_estimate;
  r.evaluations = q.evaluations;
  r.method = "simplex_quadrature";
  return r;
}

inline MeasureResult measure_body(const Density& g, const ConvexBody& K,
                                  const QuadratureOptions& opts = {}) {
  require(g.dim() == K.dim(), "measure: density/body dimension mismatch");
  MeasureResult r;
  r.method = "simplex_quadrature";
  KahanSum acc;
  for (const auto& s : K.triangulation()) {
    MeasureResult part = measure_simplex(g, s, opts);
    acc.add(part.value);
    r.error_estimate += part.error_estimate;
    r.evaluations += part.evaluations;
  }
  r.value = acc.value();
  return r;
}

// (n-1)-dimensional measure of a facet: same kernel over the facet's own
// triangulation, volumes being (n-1)-Hausdorff. For n = 1 the facet is a
// point and the value is g there.
inline MeasureResult measure_face(const Density& g, const Face& f,
                                  const QuadratureOptions& opts = {}) {
  MeasureResult r;
  r.method = "simplex_quadrature";
  KahanSum acc;
  for (const auto& s : f.simplices) {
    MeasureResult part = measure_simplex(g, s, opts);
    acc.add(part.value);
    r.error_estimate += part.error_estimate;
    r.evaluations += part.evaluations;
  }
  r.value = acc.value();
  return r;
}

// Rejection sampling in the vertex bounding box with a counter-based stream:
// the estimate depends only on (seed, sample count), never on scheduling.
inline MeasureResult measure_body_monte_carlo(const Density& g, const ConvexBody& K,
                                              std::uint64_t seed,
                                              std::uint64_t samples = 1000000) {
  require(g.dim() == K.dim(), "measure: density/body dimension mismatch");
  int n = K.dim();
  Vec lo = K.vertices().colwise().minCoeff().transpose();
  Vec hi = K.vertices().colwise().maxCoeff().transpose();
  double box_vol = 1.0;
  for (int i = 0; i < n; ++i) box_vol *= (hi[i] - lo[i]);

  CounterRng rng(seed, 7);
  double mean = 0.0, m2 = 0.0;
  Vec x(n);
  for (std::uint64_t k = 0; k < samples; ++k) {
    for (int i = 0; i < n; ++i) x[i] = rng.uniform(lo[i], hi[i]);
    double v = K.contains(x) ? g.eval(x) : 0.0;
    double delta = v - mean;
    mean += delta / static_cast<double>(k + 1);
    m2 += delta * (v - mean);
  }
  double var = samples > 1 ? m2 / static_cast<double>(samples - 1) : 0.0;
  MeasureResult r;
  r.value = box_vol * mean;
  r.error_estimate = box_vol * std::sqrt(var / static_cast<double>(samples));
  r.evaluations = samples;
  r.method = "monte_carlo";
  return r;
}

}  // namespace homocone
