#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "common.hpp"

namespace homocone {

// Incremental (beneath-beyond) convex hull for ambient dimension 1..4.
// Input points need no dedup: a duplicate or interior point is never strictly
// beyond any facet and is skipped. Output facets are simplicial; coplanar
// grouping into polytopal faces happens at the body layer.

struct HullFacet {
  std::vector<int> vertex_ids;  // d point indices
  Vec normal;                   // unit outward
  double offset;                // <normal, x> = offset on the plane
};

struct Hull {
  int dim = 0;
  std::vector<Vec> points;
  std::vector<int> vertex_ids;  // extreme points, sorted
  std::vector<HullFacet> facets;
};

namespace detail {

// Generalized cross product: the vector orthogonal to the rows of E
// ((d-1) x d), via cofactor expansion along the missing row.
inline Vec null_direction(const Mat& E) {
  int d = static_cast<int>(E.cols());
  Vec n(d);
  if (d == 1) {
    n[0] = 1.0;
    return n;
  }
  Mat minor(d - 1, d - 1);
  for (int i = 0; i < d; ++i) {
    for (int c = 0, cc = 0; c < d; ++c) {
      if (c == i) continue;
      minor.col(cc++) = E.col(c);
    }
    n[i] = ((i % 2 == 0) ? 1.0 : -1.0) * minor.determinant();
  }
  return n;
}

}  // namespace detail

inline Hull convex_hull(const std::vector<Vec>& pts, double eps_rel = tol::dedup) {
  require(!pts.empty(), "hull: no input points");
  int d = static_cast<int>(pts[0].size());
  require(d >= 1 && d <= 4, "hull: dimension must be 1..4");
  int N = static_cast<int>(pts.size());

  double scale = 1.0;
  for (const auto& p : pts) scale = std::max(scale, p.lpNorm<Eigen::Infinity>());
  double eps = eps_rel * scale;

  Hull h;
  h.dim = d;
  h.points = pts;

  if (d == 1) {
    int lo = 0, hi = 0;
    for (int i = 1; i < N; ++i) {
      if (pts[i][0] < pts[lo][0]) lo = i;
      if (pts[i][0] > pts[hi][0]) hi = i;
    }
    require(pts[hi][0] - pts[lo][0] > eps, "hull: input points are not full-dimensional");
    HullFacet fl{{lo}, Vec::Constant(1, -1.0), -pts[lo][0]};
    HullFacet fh{{hi}, Vec::Constant(1, 1.0), pts[hi][0]};
    h.facets = {fl, fh};
    h.vertex_ids = {std::min(lo, hi), std::max(lo, hi)};
    return h;
  }

  // Initial simplex: greedily extend an affine basis by the point farthest
  // from the current span.
  std::vector<int> init;
  {
    int v0 = 0;
    for (int i = 1; i < N; ++i) {
      for (int c = 0; c < d; ++c) {
        if (pts[i][c] < pts[v0][c] - 0.0) { v0 = i; break; }
        if (pts[i][c] > pts[v0][c]) break;
      }
    }
    init.push_back(v0);
    Mat basis(d, 0);
    while (static_cast<int>(init.size()) < d + 1) {
      Eigen::HouseholderQR<Mat> qr;
      if (basis.cols() > 0) qr.compute(basis);
      int best = -1;
      double best_dist = 0.0;
      for (int i = 0; i < N; ++i) {
        Vec r = pts[i] - pts[init[0]];
        if (basis.cols() > 0) {
          Mat q = qr.householderQ() * Mat::Identity(d, basis.cols());
          r -= q * (q.transpose() * r);
        }
        double dist = r.norm();
        if (dist > best_dist) { best_dist = dist; best = i; }
      }
      require(best >= 0 && best_dist > 1e-12 * scale,
              "hull: input points are not full-dimensional");
      init.push_back(best);
      basis.conservativeResize(d, basis.cols() + 1);
      basis.col(basis.cols() - 1) = pts[best] - pts[init[0]];
    }
  }

  Vec interior = Vec::Zero(d);
  for (int id : init) interior += pts[id];
  interior /= static_cast<double>(init.size());

  auto make_facet = [&](std::vector<int> ids) {
    HullFacet f;
    std::sort(ids.begin(), ids.end());
    f.vertex_ids = std::move(ids);
    Mat E(d - 1, d);
    for (int i = 1; i < d; ++i)
      E.row(i - 1) = (pts[f.vertex_ids[i]] - pts[f.vertex_ids[0]]).transpose();
    Vec n = detail::null_direction(E);
    double nn = n.norm();
    require(nn > 1e-300, "hull: degenerate facet");
    n /= nn;
    double off = 0.0;
    for (int id : f.vertex_ids) off += n.dot(pts[id]);
    off /= static_cast<double>(d);
    if (n.dot(interior) > off) { n = -n; off = -off; }
    f.normal = std::move(n);
    f.offset = off;
    return f;
  };

  std::vector<HullFacet> facets;
  for (int skip = 0; skip < d + 1; ++skip) {
    std::vector<int> ids;
    for (int i = 0; i < d + 1; ++i)
      if (i != skip) ids.push_back(init[i]);
    facets.push_back(make_facet(ids));
  }

  std::set<int> in_init(init.begin(), init.end());
  for (int ip = 0; ip < N; ++ip) {
    if (in_init.count(ip)) continue;
    const Vec& p = pts[ip];
    std::vector<char> visible(facets.size(), 0);
    bool any = false;
    for (size_t fi = 0; fi < facets.size(); ++fi) {
      if (facets[fi].normal.dot(p) - facets[fi].offset > eps) {
        visible[fi] = 1;
        any = true;
      }
    }
    if (!any) continue;

    // Horizon = ridges of visible facets seen exactly once.
    std::map<std::vector<int>, int> ridge_count;
    for (size_t fi = 0; fi < facets.size(); ++fi) {
      if (!visible[fi]) continue;
      const auto& ids = facets[fi].vertex_ids;
      for (int skip = 0; skip < d; ++skip) {
        std::vector<int> ridge;
        for (int i = 0; i < d; ++i)
          if (i != skip) ridge.push_back(ids[i]);
        ++ridge_count[ridge];
      }
    }

    std::vector<HullFacet> next;
    for (size_t fi = 0; fi < facets.size(); ++fi)
      if (!visible[fi]) next.push_back(std::move(facets[fi]));
    for (auto& [ridge, count] : ridge_count) {
      if (count != 1) continue;
      std::vector<int> ids = ridge;
      ids.push_back(ip);
      next.push_back(make_facet(std::move(ids)));
    }
    facets = std::move(next);
  }

  h.facets = std::move(facets);
  std::set<int> vs;
  for (const auto& f : h.facets)
    for (int id : f.vertex_ids) vs.insert(id);
  h.vertex_ids.assign(vs.begin(), vs.end());
  return h;
}

}  // namespace homocone
