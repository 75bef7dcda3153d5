#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "common.hpp"

namespace homocone {

// Unit directions u_i with weights c_i, meant to satisfy the isotropy
// conditions sum c_i u_i u_i^T = I and sum c_i = n.
struct WeightedFrame {
  Mat vectors;  // rows, unit
  Vec weights;

  static WeightedFrame make(Mat vectors, Vec weights) {
    require(vectors.rows() >= 1, "frame: need at least one vector");
    require(vectors.rows() == weights.size(), "frame: one weight per vector");
    for (int i = 0; i < vectors.rows(); ++i) {
      double nn = vectors.row(i).norm();
      require(std::abs(nn - 1.0) <= 1e-9, "frame: vectors must be unit");
      vectors.row(i) /= nn;
      require(weights[i] > 0, "frame: weights must be positive");
    }
    return WeightedFrame{std::move(vectors), std::move(weights)};
  }

  int dim() const { return static_cast<int>(vectors.cols()); }
  int count() const { return static_cast<int>(vectors.rows()); }
};

struct IsotropyResidual {
  double matrix_residual = 0.0;  // || sum c u u^T - I ||_inf
  double trace_residual = 0.0;   // | sum c - n |
};

inline IsotropyResidual isotropy_residual(const WeightedFrame& f) {
  int n = f.dim();
  Mat acc = Mat::Zero(n, n);
  for (int i = 0; i < f.count(); ++i)
    acc += f.weights[i] * f.vectors.row(i).transpose() * f.vectors.row(i);
  IsotropyResidual r;
  r.matrix_residual = (acc - Mat::Identity(n, n)).lpNorm<Eigen::Infinity>();
  r.trace_residual = std::abs(f.weights.sum() - n);
  return r;
}

namespace detail {

// Lawson-Hanson active set NNLS: min |Ax - b| subject to x >= 0.
inline Vec nnls(const Mat& A, const Vec& b, int max_iter = 0) {
  int m = static_cast<int>(A.cols());
  if (max_iter <= 0) max_iter = 30 * (m + 1);
  Vec x = Vec::Zero(m);
  std::vector<bool> passive(m, false);
  double tol = 1e-12 * std::max(1.0, b.norm());

  auto solve_passive = [&]() {
    std::vector<int> idx;
    for (int j = 0; j < m; ++j)
      if (passive[j]) idx.push_back(j);
    Vec z = Vec::Zero(m);
    if (idx.empty()) return z;
    Mat Ap(A.rows(), static_cast<int>(idx.size()));
    for (size_t k = 0; k < idx.size(); ++k) Ap.col(static_cast<int>(k)) = A.col(idx[k]);
    Vec zp = Ap.colPivHouseholderQr().solve(b);
    for (size_t k = 0; k < idx.size(); ++k) z[idx[k]] = zp[static_cast<int>(k)];
    return z;
  };

  for (int iter = 0; iter < max_iter; ++iter) {
    Vec w = A.transpose() * (b - A * x);
    int best = -1;
    double best_w = tol;
    for (int j = 0; j < m; ++j) {
      if (!passive[j] && w[j] > best_w) {
        best_w = w[j];
        best = j;
      }
    }
    if (best < 0) break;
    passive[best] = true;

    for (int inner = 0; inner < max_iter; ++inner) {
      Vec z = solve_passive();
      bool feasible = true;
      for (int j = 0; j < m; ++j)
        if (passive[j] && z[j] <= 0) feasible = false;
      if (feasible) {
        x = z;
        break;
      }
      double alpha = 1.0;
      for (int j = 0; j < m; ++j)
        if (passive[j] && z[j] <= 0 && x[j] - z[j] > 0)
          alpha = std::min(alpha, x[j] / (x[j] - z[j]));
      x += alpha * (z - x);
      for (int j = 0; j < m; ++j)
        if (passive[j] && x[j] <= 1e-14) {
          x[j] = 0.0;
          passive[j] = false;
        }
    }
  }
  return x;
}

}  // namespace detail

// Solve sum c_i u_i u_i^T = I for nonnegative weights. Accepted only when
// the residual is small and every weight is strictly used; otherwise the
// directions do not form an isotropic system and the caller skips.
inline std::optional<Vec> solve_weights(const Mat& vectors, double residual_tol = 1e-8,
                                        double weight_floor = 1e-10) {
  int m = static_cast<int>(vectors.rows());
  int n = static_cast<int>(vectors.cols());
  int rows = n * (n + 1) / 2;
  Mat A(rows, m);
  Vec b(rows);
  int r = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      // sqrt(2) on off-diagonals makes the row inner products match the
      // Frobenius metric of the symmetric matrices
      double scale = i == j ? 1.0 : std::sqrt(2.0);
      for (int k = 0; k < m; ++k) A(r, k) = scale * vectors(k, i) * vectors(k, j);
      b[r] = i == j ? 1.0 : 0.0;
      ++r;
    }
  }
  Vec c = detail::nnls(A, b);
  double resid = (A * c - b).norm();
  if (resid > residual_tol) return std::nullopt;
  for (int k = 0; k < m; ++k)
    if (c[k] <= weight_floor) return std::nullopt;
  return c;
}

struct ProjectionFamily {
  std::vector<std::vector<Vec>> levels;  // levels[0] = frame, levels[k] = k-fold projections
  std::vector<Vec> members;              // union of all levels, sign-canonical
  std::vector<std::string> skipped;      // parallel pairs dropped during projection
  bool truncated = false;                // hit the size cap before finishing
};

namespace detail {

// Sign-canonical directions keyed by rounded coordinates so duplicates land
// in the same bucket. The tolerance stays coarse (1e-7) relative to the
// rounding grid, so near-misses across a grid boundary still need the
// neighbor probe in add().
class DirectionSet {
 public:
  explicit DirectionSet(double round = 1e7) : round_(round) {}

  bool add(const Vec& cu) {
    std::string key = key_of(cu);
    auto [it, fresh] = seen_.emplace(key, cu);
    if (!fresh) return false;
    // A value straddling a grid line can hash into the adjacent bucket, so
    // confirm against near keys before accepting.
    for (const auto& [k, v] : seen_)
      if (k != key && (v - cu).lpNorm<Eigen::Infinity>() <= 1e-9) {
        seen_.erase(it);
        return false;
      }
    return true;
  }

  size_t size() const { return seen_.size(); }

 private:
  std::string key_of(const Vec& u) const {
    std::string k;
    k.reserve(static_cast<size_t>(u.size()) * sizeof(long long));
    for (int i = 0; i < u.size(); ++i) {
      long long q = std::llround(u[i] * round_);
      k.append(reinterpret_cast<const char*>(&q), sizeof q);
    }
    return k;
  }

  double round_;
  std::map<std::string, Vec> seen_;
};

}  // namespace detail

// All directions reachable from the frame by up to n-1 rounds of projecting
// one member of the previous round onto the orthocomplement of another,
// normalized and deduplicated up to sign. Round k is generated from round
// k-1 alone. For an orthonormal basis every projection reproduces a basis
// vector, so the family is the basis itself.
inline ProjectionFamily projection_family(const Mat& vectors, double parallel_tol = 1e-9,
                                          size_t member_cap = 300000) {
  int n = static_cast<int>(vectors.cols());
  ProjectionFamily fam;
  detail::DirectionSet all;

  std::vector<Vec> current;
  detail::DirectionSet current_set;
  for (int i = 0; i < vectors.rows(); ++i) {
    Vec u = vectors.row(i).transpose();
    u /= u.norm();
    Vec cu = canonical_sign(u);
    if (current_set.add(cu)) current.push_back(cu);
    if (all.add(cu)) fam.members.push_back(cu);
  }
  fam.levels.push_back(current);

  for (int level = 1; level <= n - 1 && !fam.truncated; ++level) {
    std::vector<Vec> next;
    detail::DirectionSet next_set;
    for (size_t j = 0; j < current.size() && !fam.truncated; ++j) {
      for (size_t i = 0; i < current.size(); ++i) {
        if (i == j) continue;
        Vec v = current[i] - current[i].dot(current[j]) * current[j];
        double nn = v.norm();
        if (nn <= parallel_tol) {
          fam.skipped.push_back("level " + std::to_string(level) + ": member " +
                                std::to_string(i) + " parallel to member " +
                                std::to_string(j));
          continue;
        }
        Vec cu = canonical_sign(Vec(v / nn));
        if (next_set.add(cu)) next.push_back(cu);
        if (all.add(cu)) fam.members.push_back(cu);
        if (fam.members.size() >= member_cap) {
          fam.truncated = true;
          break;
        }
      }
    }
    fam.levels.push_back(next);
    if (next.empty()) break;
    current = std::move(next);
  }
  return fam;
}

// gamma(j,i) = |u_j - <u_i,u_j> u_i|, the length of u_j projected onto the
// orthocomplement of u_i. For an isotropic frame, sum_i c_i gamma(j,i)^2 = n-1
// for every j.
inline Mat gamma_matrix(const Mat& vectors) {
  int m = static_cast<int>(vectors.rows());
  Mat g(m, m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      double d = vectors.row(j).dot(vectors.row(i));
      g(j, i) = std::sqrt(std::max(0.0, 1.0 - d * d));
    }
  }
  return g;
}

}  // namespace homocone
