#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "common.hpp"
#include "hull.hpp"

namespace homocone {

// k-simplex embedded in R^n: k+1 vertex rows. `volume` is the k-dimensional
// Hausdorff measure (for k = n the ordinary volume).
struct Simplex {
  Mat vertices;
  double volume = 0.0;
  int order() const { return static_cast<int>(vertices.rows()) - 1; }
};

inline double simplex_volume(const Mat& verts) {
  int k = static_cast<int>(verts.rows()) - 1;
  if (k <= 0) return 1.0;  // 0-dim Hausdorff measure of a point
  Mat E(k, verts.cols());
  for (int i = 1; i <= k; ++i) E.row(i - 1) = verts.row(i) - verts.row(0);
  if (k == verts.cols()) return std::abs(E.determinant()) / std::tgamma(k + 1.0);
  Mat G = E * E.transpose();
  double det = G.determinant();
  return det > 0 ? std::sqrt(det) / std::tgamma(k + 1.0) : 0.0;
}

namespace detail {

// Star triangulation from the lexicographically smallest hull vertex over
// the hull facets whose plane does not contain it. Points live in R^k with
// k = ambient dim of `pts`; returns full-dimensional simplices.
inline std::vector<Simplex> triangulate_points(const std::vector<Vec>& pts) {
  std::vector<Simplex> out;
  int k = pts.empty() ? 0 : static_cast<int>(pts[0].size());
  if (k == 0) {
    Simplex s;
    s.vertices = Mat::Zero(1, 0);
    s.volume = 1.0;
    out.push_back(std::move(s));
    return out;
  }
  Hull h = convex_hull(pts);
  double scale = 1.0;
  for (const auto& p : pts) scale = std::max(scale, p.lpNorm<Eigen::Infinity>());
  double eps = tol::dedup * scale;

  int star = h.vertex_ids[0];
  for (int id : h.vertex_ids) {
    for (int c = 0; c < k; ++c) {
      if (pts[id][c] < pts[star][c] - 0.0) { star = id; break; }
      if (pts[id][c] > pts[star][c]) break;
    }
  }
  for (const auto& f : h.facets) {
    if (std::abs(f.normal.dot(pts[star]) - f.offset) <= eps) continue;
    Simplex s;
    s.vertices.resize(k + 1, k);
    s.vertices.row(0) = pts[star].transpose();
    for (int i = 0; i < k; ++i) s.vertices.row(i + 1) = pts[f.vertex_ids[i]].transpose();
    s.volume = simplex_volume(s.vertices);
    if (s.volume > 1e-14 * std::pow(scale, k)) out.push_back(std::move(s));
  }
  return out;
}

// Orthonormal basis of the hyperplane orthogonal to unit vector n, as the
// columns of an n x (n-1) matrix. Deterministic via Householder completion.
inline Mat tangent_basis(const Vec& normal) {
  int n = static_cast<int>(normal.size());
  Mat m(n, 1);
  m.col(0) = normal;
  Eigen::HouseholderQR<Mat> qr(m);
  Mat q = qr.householderQ();
  return q.rightCols(n - 1);
}

}  // namespace detail

// A facet of the body: the polytope where <normal, x> = offset, carried with
// an orthonormal in-plane frame and its own triangulation so lower measures
// can be integrated over it directly.
struct Face {
  Vec normal;
  double offset = 0.0;
  std::vector<int> vertex_ids;  // indices into the body's vertex rows
  Vec base;                     // one point on the plane
  Mat tangent;                  // n x (n-1), orthonormal
  std::vector<Simplex> simplices;  // (n-1)-simplices in ambient coordinates
  double euclidean_area = 0.0;
};

enum class BodyKind { vpolytope, hpolytope, zonotope, box };

class ConvexBody {
 public:
  static ConvexBody from_vertices(const Mat& verts) {
    return ConvexBody(BodyKind::vpolytope, rows_of(verts));
  }

  static ConvexBody from_halfspaces(Mat normals, Vec offsets) {
    int n = static_cast<int>(normals.cols());
    int m = static_cast<int>(normals.rows());
    require(n >= 1 && n <= 4, "hpolytope: dimension must be 1..4");
    require(m == offsets.size(), "hpolytope: normals/offsets size mismatch");
    for (int i = 0; i < m; ++i) {
      double nn = normals.row(i).norm();
      require(nn > tol::unit_norm, "hpolytope: zero normal");
      normals.row(i) /= nn;
      offsets[i] /= nn;
    }
    double scale = std::max(1.0, offsets.lpNorm<Eigen::Infinity>());
    double eps = tol::membership * scale;

    Eigen::FullPivLU<Mat> lu_all(normals);
    require(lu_all.rank() == n, "hpolytope: unbounded (normals do not span)");
    check_no_recession_ray(normals, n, m);

    std::vector<Vec> cand;
    std::vector<int> idx(n);
    enumerate_subsets(m, n, idx, 0, 0, [&](const std::vector<int>& sub) {
      Mat A(n, n);
      Vec b(n);
      for (int i = 0; i < n; ++i) {
        A.row(i) = normals.row(sub[i]);
        b[i] = offsets[sub[i]];
      }
      Eigen::FullPivLU<Mat> lu(A);
      if (lu.rank() < n) return;
      Vec x = lu.solve(b);
      for (int i = 0; i < m; ++i)
        if (normals.row(i).dot(x) > offsets[i] + eps) return;
      cand.push_back(std::move(x));
    });
    require(!cand.empty(), "hpolytope: empty feasible set");
    ConvexBody b(BodyKind::hpolytope, cand);
    return b;
  }

  static ConvexBody zonotope(const Mat& generators) {
    int m = static_cast<int>(generators.rows());
    int n = static_cast<int>(generators.cols());
    require(m >= 1 && n >= 1 && n <= 4, "zonotope: need generators in dimension 1..4");
    require(m <= 12, "zonotope: too many generators");
    Eigen::FullPivLU<Mat> lu(generators);
    require(lu.rank() == n, "zonotope: generators do not span the space");
    std::vector<Vec> cloud;
    cloud.reserve(std::size_t(1) << m);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << m); ++mask) {
      Vec v = Vec::Zero(n);
      for (int i = 0; i < m; ++i)
        v += ((mask >> i) & 1 ? 1.0 : -1.0) * generators.row(i).transpose();
      cloud.push_back(std::move(v));
    }
    ConvexBody b(BodyKind::zonotope, cloud);
    b.generators_ = generators;
    return b;
  }

  static ConvexBody box(const Mat& basis, const Vec& alphas) {
    int n = static_cast<int>(basis.cols());
    require(basis.rows() == n, "box: basis must be square");
    require(alphas.size() == n, "box: one edge length per basis vector");
    Mat gram = basis * basis.transpose();
    require((gram - Mat::Identity(n, n)).lpNorm<Eigen::Infinity>() <= 1e-9,
            "box: basis must be orthonormal");
    for (int i = 0; i < n; ++i) require(alphas[i] > 0, "box: edge lengths must be positive");
    std::vector<Vec> cloud;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
      Vec v = Vec::Zero(n);
      for (int i = 0; i < n; ++i)
        v += ((mask >> i) & 1 ? 1.0 : -1.0) * alphas[i] * basis.row(i).transpose();
      cloud.push_back(std::move(v));
    }
    ConvexBody b(BodyKind::box, cloud);
    b.box_basis_ = basis;
    b.box_alphas_ = alphas;
    return b;
  }

  BodyKind kind() const { return kind_; }
  int dim() const { return dim_; }
  const Mat& vertices() const { return vertices_; }
  const std::vector<Face>& faces() const { return faces_; }
  const std::vector<Simplex>& triangulation() const { return simplices_; }
  double euclidean_volume() const { return euclidean_volume_; }
  const Mat& generators() const { return generators_; }
  const Mat& box_basis() const { return box_basis_; }
  const Vec& box_alphas() const { return box_alphas_; }

  bool contains(const Vec& x, double eps = tol::membership) const {
    double scale = std::max(1.0, x.lpNorm<Eigen::Infinity>());
    for (const auto& f : faces_)
      if (f.normal.dot(x) > f.offset + eps * scale) return false;
    return true;
  }

  double support(const Vec& u) const {
    double s = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < vertices_.rows(); ++i)
      s = std::max(s, vertices_.row(i).dot(u));
    return s;
  }

  ConvexBody scaled(double t) const {
    require(t > 0, "scaled: factor must be positive");
    ConvexBody b = *this;
    b.vertices_ *= t;
    int n = dim_;
    for (auto& f : b.faces_) {
      f.offset *= t;
      f.base *= t;
      for (auto& s : f.simplices) {
        s.vertices *= t;
        s.volume *= std::pow(t, n - 1);
      }
      f.euclidean_area *= std::pow(t, n - 1);
    }
    for (auto& s : b.simplices_) {
      s.vertices *= t;
      s.volume *= std::pow(t, n);
    }
    b.euclidean_volume_ *= std::pow(t, n);
    if (b.generators_.size() > 0) b.generators_ *= t;
    if (b.box_alphas_.size() > 0) b.box_alphas_ *= t;
    return b;
  }

 private:
  ConvexBody(BodyKind kind, const std::vector<Vec>& cloud) : kind_(kind) {
    require(!cloud.empty(), "body: no points");
    dim_ = static_cast<int>(cloud[0].size());
    require(dim_ >= 1 && dim_ <= 4, "body: dimension must be 1..4");
    build_from_cloud(cloud);
  }

  static std::vector<Vec> rows_of(const Mat& m) {
    std::vector<Vec> out;
    out.reserve(m.rows());
    for (int i = 0; i < m.rows(); ++i) out.push_back(m.row(i).transpose());
    return out;
  }

  template <typename F>
  static void enumerate_subsets(int m, int k, std::vector<int>& idx, int pos, int start,
                                F&& fn) {
    if (pos == k) {
      fn(idx);
      return;
    }
    for (int i = start; i <= m - (k - pos); ++i) {
      idx[pos] = i;
      enumerate_subsets(m, k, idx, pos + 1, i + 1, fn);
    }
  }

  static void check_no_recession_ray(const Mat& normals, int n, int m) {
    auto ray_escapes = [&](const Vec& y) {
      for (int i = 0; i < m; ++i)
        if (normals.row(i).dot(y) > 1e-9) return false;
      return true;
    };
    if (n == 1) {
      require(!ray_escapes(Vec::Constant(1, 1.0)) && !ray_escapes(Vec::Constant(1, -1.0)),
              "hpolytope: unbounded");
      return;
    }
    std::vector<int> idx(n - 1);
    bool unbounded = false;
    enumerate_subsets(m, n - 1, idx, 0, 0, [&](const std::vector<int>& sub) {
      if (unbounded) return;
      Mat A(n - 1, n);
      for (int i = 0; i < n - 1; ++i) A.row(i) = normals.row(sub[i]);
      Eigen::FullPivLU<Mat> lu(A);
      if (lu.rank() != n - 1) return;
      Mat ker = lu.kernel();
      Vec y = ker.col(0);
      if (y.norm() < 1e-12) return;
      y.normalize();
      if (ray_escapes(y) || ray_escapes(-y)) unbounded = true;
    });
    require(!unbounded, "hpolytope: unbounded");
  }

  void build_from_cloud(const std::vector<Vec>& cloud) {
    int n = dim_;
    double scale = 1.0;
    for (const auto& p : cloud) scale = std::max(scale, p.lpNorm<Eigen::Infinity>());
    double eps = tol::dedup * scale;

    Hull h = convex_hull(cloud);

    std::vector<int> remap(cloud.size(), -1);
    vertices_.resize(static_cast<int>(h.vertex_ids.size()), n);
    for (size_t i = 0; i < h.vertex_ids.size(); ++i) {
      remap[h.vertex_ids[i]] = static_cast<int>(i);
      vertices_.row(static_cast<int>(i)) = h.points[h.vertex_ids[i]].transpose();
    }

    // Group simplicial hull facets into planar faces.
    for (const auto& hf : h.facets) {
      bool merged = false;
      for (auto& f : faces_) {
        if (f.normal.dot(hf.normal) >= 1.0 - 1e-9 &&
            std::abs(f.offset - hf.offset) <= 1e-7 * scale) {
          for (int id : hf.vertex_ids) {
            int v = remap[id];
            if (std::find(f.vertex_ids.begin(), f.vertex_ids.end(), v) == f.vertex_ids.end())
              f.vertex_ids.push_back(v);
          }
          merged = true;
          break;
        }
      }
      if (merged) continue;
      Face f;
      f.normal = hf.normal;
      f.offset = hf.offset;
      for (int id : hf.vertex_ids) f.vertex_ids.push_back(remap[id]);
      faces_.push_back(std::move(f));
    }
    for (auto& f : faces_) std::sort(f.vertex_ids.begin(), f.vertex_ids.end());

    // Per-face frame and triangulation in face coordinates.
    for (auto& f : faces_) {
      f.base = vertices_.row(f.vertex_ids[0]).transpose();
      if (n == 1) {
        f.tangent = Mat::Zero(1, 0);
        Simplex s;
        s.vertices = vertices_.row(f.vertex_ids[0]);
        s.volume = 1.0;
        f.simplices.push_back(std::move(s));
        f.euclidean_area = 1.0;
        continue;
      }
      f.tangent = detail::tangent_basis(f.normal);
      std::vector<Vec> coords;
      for (int v : f.vertex_ids)
        coords.push_back(f.tangent.transpose() * (vertices_.row(v).transpose() - f.base));
      for (auto& s : detail::triangulate_points(coords)) {
        Simplex amb;
        amb.vertices.resize(s.vertices.rows(), n);
        for (int i = 0; i < s.vertices.rows(); ++i)
          amb.vertices.row(i) =
              (f.base + f.tangent * s.vertices.row(i).transpose()).transpose();
        amb.volume = s.volume;
        f.euclidean_area += s.volume;
        f.simplices.push_back(std::move(amb));
      }
    }

    // Full-dimensional triangulation: star the simplicial hull facets from
    // the lexicographically smallest vertex.
    int star_id = h.vertex_ids[0];
    for (int id : h.vertex_ids) {
      const Vec& a = h.points[id];
      const Vec& b = h.points[star_id];
      for (int c = 0; c < n; ++c) {
        if (a[c] < b[c]) { star_id = id; break; }
        if (a[c] > b[c]) break;
      }
    }
    Vec star = h.points[star_id];
    for (const auto& hf : h.facets) {
      if (std::abs(hf.normal.dot(star) - hf.offset) <= eps) continue;
      Simplex s;
      s.vertices.resize(n + 1, n);
      s.vertices.row(0) = star.transpose();
      for (int i = 0; i < n; ++i) s.vertices.row(i + 1) = h.points[hf.vertex_ids[i]].transpose();
      s.volume = simplex_volume(s.vertices);
      if (s.volume <= 1e-14 * std::pow(scale, n)) continue;
      euclidean_volume_ += s.volume;
      simplices_.push_back(std::move(s));
    }
    require(!simplices_.empty(), "body: degenerate (zero volume)");
  }

  BodyKind kind_;
  int dim_ = 0;
  Mat vertices_;
  std::vector<Face> faces_;
  std::vector<Simplex> simplices_;
  double euclidean_volume_ = 0.0;
  Mat generators_ = Mat(0, 0);
  Mat box_basis_ = Mat(0, 0);
  Vec box_alphas_ = Vec(0);
};

// Minkowski sum via the vertex-sum cloud; two zonotopes stay a zonotope.
inline ConvexBody minkowski_sum(const ConvexBody& a, const ConvexBody& b) {
  require(a.dim() == b.dim(), "minkowski_sum: dimension mismatch");
  if (a.kind() == BodyKind::zonotope && b.kind() == BodyKind::zonotope) {
    Mat g(a.generators().rows() + b.generators().rows(), a.dim());
    g.topRows(a.generators().rows()) = a.generators();
    g.bottomRows(b.generators().rows()) = b.generators();
    return ConvexBody::zonotope(g);
  }
  Mat verts(a.vertices().rows() * b.vertices().rows(), a.dim());
  int r = 0;
  for (int i = 0; i < a.vertices().rows(); ++i)
    for (int j = 0; j < b.vertices().rows(); ++j)
      verts.row(r++) = a.vertices().row(i) + b.vertices().row(j);
  return ConvexBody::from_vertices(verts);
}

inline ConvexBody minkowski_combination(double s, const ConvexBody& a, double t,
                                        const ConvexBody& b) {
  return minkowski_sum(a.scaled(s), b.scaled(t));
}

// A + eps * [-theta, theta]
inline ConvexBody add_segment(const ConvexBody& a, const Vec& theta, double eps) {
  Mat verts(2 * a.vertices().rows(), a.dim());
  for (int i = 0; i < a.vertices().rows(); ++i) {
    verts.row(2 * i) = a.vertices().row(i) + eps * theta.transpose();
    verts.row(2 * i + 1) = a.vertices().row(i) - eps * theta.transpose();
  }
  return ConvexBody::from_vertices(verts);
}

// Orthogonal projection onto theta-perp, returned in coordinates of an
// orthonormal basis E of that hyperplane (the second element). Densities are
// carried to the subspace via E^T theta_j.
inline std::pair<ConvexBody, Mat> project_body(const ConvexBody& a, const Vec& theta) {
  require(a.dim() >= 2, "project_body: need dimension >= 2");
  Vec u = theta / theta.norm();
  Mat E = detail::tangent_basis(u);
  if (a.kind() == BodyKind::zonotope) {
    // Generators project to generators; drop any that collapse onto theta.
    Mat g = a.generators() * E;
    double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
    std::vector<int> keep;
    for (int i = 0; i < g.rows(); ++i)
      if (g.row(i).norm() > 1e-12 * scale) keep.push_back(i);
    Mat gk(static_cast<int>(keep.size()), a.dim() - 1);
    for (int i = 0; i < gk.rows(); ++i) gk.row(i) = g.row(keep[i]);
    return {ConvexBody::zonotope(gk), E};
  }
  Mat verts(a.vertices().rows(), a.dim() - 1);
  for (int i = 0; i < a.vertices().rows(); ++i)
    verts.row(i) = (E.transpose() * a.vertices().row(i).transpose()).transpose();
  return {ConvexBody::from_vertices(verts), E};
}

}  // namespace homocone
