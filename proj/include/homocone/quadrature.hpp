#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "common.hpp"

namespace homocone {

// Symmetric simplex cubature (Grundmann-Moller). Index s gives degree 2s+1
// exactness on a d-simplex; weights are normalized to a unit-volume simplex
// and points are barycentric rows.
struct SimplexRule {
  Mat bary;
  Vec weights;
  int degree = 0;
};

namespace detail {

inline SimplexRule make_gm_rule(int d, int s) {
  std::vector<std::vector<double>> pts;
  std::vector<double> wts;
  double two_pow = std::pow(2.0, -2.0 * s);
  for (int i = 0; i <= s; ++i) {
    double num = std::pow(static_cast<double>(d + 1 + 2 * (s - i)), 2 * s + 1);
    double den = std::tgamma(i + 1.0) * std::tgamma(d + 2 + 2 * s - i);
    double coef = ((i % 2 == 0) ? 1.0 : -1.0) * two_pow * num / den;
    int rem = s - i;
    double denom = static_cast<double>(d + 1 + 2 * rem);
    // enumerate beta in N_0^{d+1} with |beta| = rem
    std::vector<int> beta(d + 1, 0);
    auto emit = [&]() {
      std::vector<double> lam(d + 1);
      for (int j = 0; j <= d; ++j) lam[j] = (2.0 * beta[j] + 1.0) / denom;
      pts.push_back(std::move(lam));
      wts.push_back(coef);
    };
    // recursive composition enumeration, fixed order
    auto rec = [&](auto&& self, int slot, int left) -> void {
      if (slot == d) {
        beta[slot] = left;
        emit();
        return;
      }
      for (int v = 0; v <= left; ++v) {
        beta[slot] = v;
        self(self, slot + 1, left - v);
      }
    };
    rec(rec, 0, rem);
  }
  SimplexRule rule;
  rule.degree = 2 * s + 1;
  rule.bary.resize(static_cast<int>(pts.size()), d + 1);
  rule.weights.resize(static_cast<int>(pts.size()));
  for (size_t i = 0; i < pts.size(); ++i) {
    for (int j = 0; j <= d; ++j) rule.bary(static_cast<int>(i), j) = pts[i][j];
    rule.weights[static_cast<int>(i)] = wts[i];
  }
  // The weights of a correct rule sum to 1; renormalize away the last few
  // ulps so degree-0 exactness is bit-clean.
  rule.weights /= rule.weights.sum();
  return rule;
}

}  // namespace detail

inline const SimplexRule& gm_rule(int d, int s) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, SimplexRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(d, s);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, detail::make_gm_rule(d, s)).first;
  return it->second;
}

// 16-point Gauss-Legendre on [0,1], nodes by Newton iteration on the
// Legendre recurrence.
struct LineRule {
  Vec nodes;
  Vec weights;
};

inline const LineRule& gauss_legendre_16() {
  static const LineRule rule = [] {
    constexpr int N = 16;
    LineRule r;
    r.nodes.resize(N);
    r.weights.resize(N);
    for (int i = 0; i < N; ++i) {
      double x = std::cos(M_PI * (i + 0.75) / (N + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= N; ++k) {
          double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        double dp = N * (x * p1 - p0) / (x * x - 1.0);
        double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= N; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = N * (x * p1 - p0) / (x * x - 1.0);
      r.nodes[i] = 0.5 * (x + 1.0);
      r.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
  }();
  return rule;
}

struct QuadratureOptions {
  int gm_index = 4;       // degree 9 main rule, degree 7 companion for the error estimate
  int max_depth = 48;     // dyadic refinement cap for the slab level variable
  double rel_tol = 5e-13; // slab acceptance threshold
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::uint64_t evaluations = 0;
};

namespace detail {

// A simplex reduced to value space: per-form values at each vertex (one form
// per row, one vertex per column) and the simplex volume. All splitting is
// barycentric, so ambient geometry never appears.
struct ValueSimplex {
  Mat y;
  double vol = 0.0;
};

// Split S by the affine function with per-vertex values d into the d >= 0
// and d <= 0 parts. `snap` pins the interpolated values of the new vertex so
// discrete levels stay exact through repeated cuts.
template <typename SnapFn, typename PlusFn, typename MinusFn>
inline void split_by_values(const ValueSimplex& S, Vec d, double eps, SnapFn&& snap,
                            PlusFn&& out_plus, MinusFn&& out_minus) {
  int a = -1, b = -1;
  for (int i = 0; i < d.size() && (a < 0 || b < 0); ++i) {
    if (a < 0 && d[i] > eps) a = i;
    if (b < 0 && d[i] < -eps) b = i;
  }
  if (b < 0) {
    out_plus(S);
    return;
  }
  if (a < 0) {
    out_minus(S);
    return;
  }
  double t = d[a] / (d[a] - d[b]);
  Vec cut = (1.0 - t) * S.y.col(a) + t * S.y.col(b);
  snap(cut);

  ValueSimplex child1;  // replace b by the cut point, keeps the a side
  child1.y = S.y;
  child1.y.col(b) = cut;
  child1.vol = S.vol * t;
  Vec d1 = d;
  d1[b] = 0.0;

  ValueSimplex child2;  // replace a, keeps the b side
  child2.y = S.y;
  child2.y.col(a) = cut;
  child2.vol = S.vol * (1.0 - t);
  Vec d2 = d;
  d2[a] = 0.0;

  if (child1.vol > 0)
    split_by_values(child1, std::move(d1), eps, snap, out_plus, out_minus);
  if (child2.vol > 0)
    split_by_values(child2, std::move(d2), eps, snap, out_plus, out_minus);
}

// Evaluate the GM rule of index s on a single-form leaf with vertex values y.
inline double gm_on_leaf(const Vec& y, double vol, double s_exp, int gm_index,
                         std::uint64_t& evals) {
  const SimplexRule& rule = gm_rule(static_cast<int>(y.size()) - 1, gm_index);
  double acc = 0.0;
  for (int i = 0; i < rule.bary.rows(); ++i) {
    double v = rule.bary.row(i).dot(y);
    acc += rule.weights[i] * std::pow(std::max(v, 0.0), s_exp);
  }
  evals += rule.bary.rows();
  return acc * vol;
}

struct LeafIntegrator {
  double s_exp;
  QuadratureOptions opts;
  QuadratureResult* res;

  // Leaf with vertex values at exactly two levels {lo, hi}. With m vertices
  // at hi and r at lo, the barycentric mass u on the hi vertices is
  // Beta(m, r) distributed, so the slab integral is one-dimensional:
  //   vol * int_0^1 (lo + (hi-lo)u)^s u^{m-1} (1-u)^{r-1} du / B(m, r).
  // The lo = 0 slab is the closed Beta moment of that integral. Otherwise
  // the GM pair handles the slab in one shot when the value range is mild;
  // a wide range (a slab hugging the support boundary) falls back to the
  // one-dimensional form, refined dyadically in u.
  void two_level(const ValueSimplex& S, const Vec& y, double lo, double hi) {
    int r = 0, m = 0;
    for (int i = 0; i < y.size(); ++i) (hi - y[i] > y[i] - lo ? r : m)++;
    if (m == 0) return;  // integrand vanishes
    if (r == 0) {        // flat slab
      res->value += S.vol * std::pow(hi, s_exp);
      return;
    }
    if (lo <= 1e-13 * hi) {
      // E[(sum of m Dirichlet coords)^s] = B(s+m, r) / B(m, r)
      double moment = std::beta(s_exp + m, static_cast<double>(r)) /
                      std::beta(static_cast<double>(m), static_cast<double>(r));
      res->value += S.vol * std::pow(hi, s_exp) * moment;
      return;
    }
    double coarse = gm_on_leaf(y, S.vol, s_exp, opts.gm_index - 1, res->evaluations);
    double fine = gm_on_leaf(y, S.vol, s_exp, opts.gm_index, res->evaluations);
    double err = std::abs(fine - coarse);
    if (err <= opts.rel_tol * std::abs(fine) + 1e-300) {
      res->value += fine;
      res->error_estimate += err;
      return;
    }

    double delta = hi - lo;
    auto kernel = [&](double u) {
      double w = std::pow(lo + delta * u, s_exp);
      if (m > 1) w *= std::pow(u, m - 1);
      if (r > 1) w *= std::pow(1.0 - u, r - 1);
      return w;
    };
    const LineRule& gl = gauss_legendre_16();
    auto segment = [&](double a, double b) {
      double acc = 0.0;
      for (int i = 0; i < gl.nodes.size(); ++i)
        acc += gl.weights[i] * kernel(a + (b - a) * gl.nodes[i]);
      res->evaluations += static_cast<std::uint64_t>(gl.nodes.size());
      return acc * (b - a);
    };
    double norm = S.vol / std::beta(static_cast<double>(m), static_cast<double>(r));
    double whole = segment(0.0, 1.0);
    double scale = std::abs(whole) + 1e-300;
    // Error budget proportional to interval length, so the total added error
    // stays within rel_tol of the slab value.
    auto refine = [&](auto&& self, double a, double b, double outer, int depth) -> double {
      double mid = 0.5 * (a + b);
      double left = segment(a, mid);
      double right = segment(mid, b);
      double halves = left + right;
      double gap = std::abs(halves - outer);
      if (gap <= opts.rel_tol * scale * (b - a) || depth >= opts.max_depth) {
        res->error_estimate += norm * gap;
        return halves;
      }
      return self(self, a, mid, left, depth + 1) + self(self, mid, b, right, depth + 1);
    };
    res->value += norm * refine(refine, 0.0, 1.0, whole, 0);
  }

  // Leaf with a single nonnegative form: peel distinct vertex values into
  // two-level slabs from the bottom up.
  void single_form(ValueSimplex S) {
    Vec y = S.y.row(0).transpose();
    double top = y.maxCoeff();
    if (top <= 0) return;
    for (;;) {
      y = S.y.row(0).transpose();
      std::vector<double> levels(y.data(), y.data() + y.size());
      std::sort(levels.begin(), levels.end());
      levels.erase(std::unique(levels.begin(), levels.end(),
                               [&](double a, double b) { return b - a <= 1e-13 * top; }),
                   levels.end());
      if (levels.size() == 1) {
        res->value += S.vol * std::pow(std::max(levels[0], 0.0), s_exp);
        return;
      }
      if (levels.size() == 2) {
        two_level(S, y, levels[0], levels[1]);
        return;
      }
      // cut at the second-smallest level; emit the bottom slabs, iterate on top
      double c = levels[1];
      Vec d = y.array() - c;
      std::vector<ValueSimplex> uppers;
      auto snap = [&](Vec& cut) { cut[0] = c; };
      auto up = [&](const ValueSimplex& piece) { uppers.push_back(piece); };
      auto down = [&](const ValueSimplex& piece) {
        two_level(piece, piece.y.row(0).transpose(), levels[0], c);
      };
      split_by_values(S, std::move(d), 1e-14 * top, snap, up, down);
      if (uppers.empty()) return;
      // splitting at a vertex level leaves exactly one upper piece unless
      // ties collapse; process any extras recursively
      for (size_t i = 1; i < uppers.size(); ++i) single_form(std::move(uppers[i]));
      S = std::move(uppers[0]);
    }
  }

  // Reduce a multi-form simplex to single-form leaves by splitting along
  // {form_a = form_b} kinks and dropping dominated forms.
  void reduce_forms(ValueSimplex S) {
    int m = static_cast<int>(S.y.rows());
    double scale = std::max(1.0, S.y.cwiseAbs().maxCoeff());
    for (int a = 0; a < m; ++a) {
      for (int b = a + 1; b < m; ++b) {
        Vec d = (S.y.row(a) - S.y.row(b)).transpose();
        bool a_le = (d.array() <= 1e-13 * scale).all();
        bool b_le = (d.array() >= -1e-13 * scale).all();
        if (a_le || b_le) {
          // one form dominates: drop the larger row
          int drop = a_le ? b : a;
          Mat rest(m - 1, S.y.cols());
          for (int r = 0, rr = 0; r < m; ++r)
            if (r != drop) rest.row(rr++) = S.y.row(r);
          S.y = std::move(rest);
          reduce_forms(std::move(S));
          return;
        }
        auto snap = [&](Vec& cut) {
          double v = 0.5 * (cut[a] + cut[b]);
          cut[a] = cut[b] = v;
        };
        auto either = [&](const ValueSimplex& piece) { reduce_forms(piece); };
        split_by_values(S, std::move(d), 1e-13 * scale, snap, either, either);
        return;
      }
    }
    single_form(std::move(S));
  }

  // Clip to the support {form_j >= 0 for all j}, then hand off.
  void clip_support(ValueSimplex S, int j) {
    if (S.vol <= 0) return;
    int m = static_cast<int>(S.y.rows());
    if (j == m) {
      if (m == 1)
        single_form(std::move(S));
      else
        reduce_forms(std::move(S));
      return;
    }
    double scale = std::max(1.0, S.y.cwiseAbs().maxCoeff());
    Vec d = S.y.row(j).transpose();
    for (int i = 0; i < d.size(); ++i)
      if (std::abs(d[i]) <= 1e-13 * scale) d[i] = 0.0;
    auto snap = [&](Vec& cut) { cut[j] = 0.0; };
    auto keep = [&](const ValueSimplex& piece) {
      ValueSimplex c = piece;
      for (int i = 0; i < c.y.cols(); ++i) c.y(j, i) = std::max(c.y(j, i), 0.0);
      clip_support(std::move(c), j + 1);
    };
    auto discard = [&](const ValueSimplex&) {};
    split_by_values(S, std::move(d), 1e-13 * scale, snap, keep, discard);
  }
};

}  // namespace detail

// Integral over a k-simplex of (min_j l_j(x))_+^s, given the values of each
// form l_j at the simplex vertices (row j, column i) and the k-volume. Exact
// simplicial clipping at the support boundary and the form kinks reduces the
// domain to pieces where a single nonnegative affine form is raised to s;
// each piece is integrated by level slabs, the bottom slab in closed form.
inline QuadratureResult integrate_min_power_simplex(const Mat& vertex_values, double volume,
                                                    double s,
                                                    const QuadratureOptions& opts = {}) {
  require(s > 0, "quadrature: exponent must be positive");
  require(vertex_values.rows() >= 1, "quadrature: need at least one form");
  QuadratureResult res;
  if (volume <= 0) return res;
  if (vertex_values.cols() == 1) {
    // 0-simplex: counting measure
    double v = vertex_values.col(0).minCoeff();
    res.value = volume * (v > 0 ? std::pow(v, s) : 0.0);
    return res;
  }
  detail::LeafIntegrator li{s, opts, &res};
  detail::ValueSimplex root;
  root.y = vertex_values;
  root.vol = volume;
  li.clip_support(std::move(root), 0);
  return res;
}

}  // namespace homocone
