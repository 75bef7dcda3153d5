#include <catch2/catch_amalgamated.hpp>

#include <homocone/frames.hpp>
#include <homocone/rng.hpp>

#include <cmath>

using homocone::Mat;
using homocone::Vec;
using homocone::WeightedFrame;

namespace {

Mat triple(double offset_rad) {
  Mat m(3, 2);
  for (int i = 0; i < 3; ++i) {
    double a = offset_rad + i * 2.0 * M_PI / 3.0;
    m(i, 0) = std::cos(a);
    m(i, 1) = std::sin(a);
  }
  return m;
}

bool contains_direction(const std::vector<Vec>& members, const Vec& u,
                        double eps = 1e-9) {
  Vec cu = homocone::canonical_sign(u);
  for (const auto& v : members)
    if ((v - cu).norm() < eps || (v + cu).norm() < eps) return true;
  return false;
}

}  // namespace

TEST_CASE("weight solving recovers known isotropic decompositions") {
  Mat eye = Mat::Identity(3, 3);
  auto w_eye = homocone::solve_weights(eye);
  REQUIRE(w_eye.has_value());
  REQUIRE((*w_eye - Vec::Ones(3)).lpNorm<Eigen::Infinity>() < 1e-10);

  auto w_triple = homocone::solve_weights(triple(0.35));
  REQUIRE(w_triple.has_value());
  REQUIRE((*w_triple - Vec::Constant(3, 2.0 / 3.0)).lpNorm<Eigen::Infinity>() < 1e-9);

  // Vertices of a regular tetrahedron, normalized.
  Mat tetra(4, 3);
  tetra << 1, 1, 1, 1, -1, -1, -1, 1, -1, -1, -1, 1;
  tetra /= std::sqrt(3.0);
  auto w_tetra = homocone::solve_weights(tetra);
  REQUIRE(w_tetra.has_value());
  REQUIRE((*w_tetra - Vec::Constant(4, 0.75)).lpNorm<Eigen::Infinity>() < 1e-9);

  WeightedFrame f = WeightedFrame::make(tetra, *w_tetra);
  homocone::IsotropyResidual res = homocone::isotropy_residual(f);
  REQUIRE(res.matrix_residual < 1e-12);
  REQUIRE(res.trace_residual < 1e-12);
}

TEST_CASE("weight solving refuses non-isotropic direction sets") {
  // Two directions cannot resolve the identity in three dimensions.
  Mat two(2, 3);
  two << 1, 0, 0, 0, 1, 0;
  REQUIRE_FALSE(homocone::solve_weights(two).has_value());

  // Nearly parallel pair in the plane.
  Mat skew(2, 2);
  double t = 0.05;
  skew << 1, 0, std::cos(t), std::sin(t);
  REQUIRE_FALSE(homocone::solve_weights(skew).has_value());
}

TEST_CASE("merged rotated bases stay isotropic with half weights") {
  homocone::CounterRng rng(42, 9);
  Mat r1 = rng.rotation(3);
  Mat r2 = rng.rotation(3);
  Mat merged(6, 3);
  merged.topRows(3) = r1;
  merged.bottomRows(3) = r2;
  WeightedFrame f = WeightedFrame::make(merged, Vec::Constant(6, 0.5));
  homocone::IsotropyResidual res = homocone::isotropy_residual(f);
  REQUIRE(res.matrix_residual < 1e-12);
  REQUIRE(res.trace_residual < 1e-12);
}

TEST_CASE("projection family of an orthonormal basis is the basis itself") {
  for (int n = 2; n <= 4; ++n) {
    homocone::CounterRng rng(7 + n, 2);
    Mat basis = rng.rotation(n);
    homocone::ProjectionFamily fam = homocone::projection_family(basis);
    REQUIRE(fam.members.size() == static_cast<size_t>(n));
    REQUIRE_FALSE(fam.truncated);
    for (int i = 0; i < n; ++i)
      REQUIRE(contains_direction(fam.members, basis.row(i).transpose()));
    // projecting a basis vector off another lands back on the basis, so
    // every level repeats the same direction set and the union stays at n
    for (const auto& level : fam.levels)
      REQUIRE(level.size() <= static_cast<size_t>(n));
  }
}

TEST_CASE("projection family of a planar triple has six members") {
  Mat m = triple(0.25);
  homocone::ProjectionFamily fam = homocone::projection_family(m);
  REQUIRE(fam.levels.size() == 2);
  REQUIRE(fam.levels[0].size() == 3);
  REQUIRE(fam.levels[1].size() == 3);
  REQUIRE(fam.members.size() == 6);
  REQUIRE(fam.skipped.empty());
  // Level one consists of the perpendiculars of the inputs.
  for (int i = 0; i < 3; ++i) {
    Vec perp(2);
    perp << -m(i, 1), m(i, 0);
    REQUIRE(contains_direction(fam.levels[1], perp));
  }
}

TEST_CASE("duplicate directions collapse before any projection") {
  // Sign-opposite copies canonicalize to the same direction, so the level
  // starts deduplicated and the parallel-pair log stays empty: within a
  // deduplicated level two distinct unit directions are never parallel.
  Mat par(2, 2);
  par << 1, 0, -1, 0;
  homocone::ProjectionFamily collapsed = homocone::projection_family(par);
  REQUIRE(collapsed.members.size() == 1);
  REQUIRE(collapsed.skipped.empty());

  Mat m(3, 2);
  double c = std::sqrt(0.5);
  m << 1, 0, 0, 1, c, c;
  homocone::ProjectionFamily fam = homocone::projection_family(m);
  REQUIRE(fam.skipped.empty());
  // Projections of the diagonal off the axes land on the axes' partners,
  // so only the diagonal's perpendicular is new.
  REQUIRE(fam.members.size() == 4);
  Vec perp(2);
  perp << -c, c;
  REQUIRE(contains_direction(fam.members, perp));
}

TEST_CASE("the member cap marks truncation") {
  homocone::CounterRng rng(99, 4);
  Mat merged(6, 3);
  merged.topRows(3) = rng.rotation(3);
  merged.bottomRows(3) = rng.rotation(3);
  homocone::ProjectionFamily fam = homocone::projection_family(merged, 1e-9, 8);
  REQUIRE(fam.truncated);
  REQUIRE(fam.members.size() >= 8);
}

TEST_CASE("gamma matrix carries projected lengths") {
  Mat m(2, 2);
  double c = std::sqrt(0.5);
  m << 1, 0, c, c;
  Mat g = homocone::gamma_matrix(m);
  REQUIRE(g(0, 0) == 0.0);
  REQUIRE(g(1, 1) == 0.0);
  REQUIRE(g(0, 1) == Catch::Approx(c).epsilon(1e-12));
  REQUIRE(g(1, 0) == Catch::Approx(c).epsilon(1e-12));
}

TEST_CASE("isotropic frames satisfy the weighted gamma identity") {
  struct Case {
    Mat vectors;
    Vec weights;
  };
  std::vector<Case> cases;
  cases.push_back({Mat::Identity(2, 2), Vec::Ones(2)});
  cases.push_back({triple(1.1), Vec::Constant(3, 2.0 / 3.0)});
  Mat tetra(4, 3);
  tetra << 1, 1, 1, 1, -1, -1, -1, 1, -1, -1, -1, 1;
  tetra /= std::sqrt(3.0);
  cases.push_back({tetra, Vec::Constant(4, 0.75)});
  for (const auto& c : cases) {
    int n = static_cast<int>(c.vectors.cols());
    Mat g = homocone::gamma_matrix(c.vectors);
    for (int j = 0; j < c.vectors.rows(); ++j) {
      double acc = 0.0;
      for (int i = 0; i < c.vectors.rows(); ++i)
        acc += c.weights[i] * g(j, i) * g(j, i);
      REQUIRE(std::abs(acc - (n - 1)) < 1e-9);
    }
  }
}
