#include <catch2/catch_amalgamated.hpp>

#include <homocone/quadrature.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "oracle.hpp"

using homocone::Mat;
using homocone::Vec;

namespace {

double rel(double a, double b) {
  double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

// All exponent vectors alpha >= 0 of the given length with |alpha| <= cap.
void compositions(int length, int cap, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == length) {
    out.push_back(cur);
    return;
  }
  for (int k = 0; k <= cap; ++k) {
    cur.push_back(k);
    compositions(length, cap - k, cur, out);
    cur.pop_back();
  }
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

TEST_CASE("simplex rules integrate barycentric monomials exactly") {
  for (int d = 1; d <= 3; ++d) {
    for (int s = 0; s <= 4; ++s) {
      const homocone::SimplexRule& rule = homocone::gm_rule(d, s);
      int degree = 2 * s + 1;
      REQUIRE(rule.degree == degree);
      std::vector<std::vector<int>> alphas;
      std::vector<int> cur;
      compositions(d + 1, degree, cur, alphas);
      for (const auto& alpha : alphas) {
        int total = 0;
        for (int a : alpha) total += a;
        // integral of prod lambda_i^alpha_i over a unit-volume d-simplex
        double exact = factorial(d);
        for (int a : alpha) exact *= factorial(a);
        exact /= factorial(d + total);
        double got = 0.0;
        for (int i = 0; i < rule.bary.rows(); ++i) {
          double term = rule.weights[i];
          for (int j = 0; j <= d; ++j)
            term *= std::pow(rule.bary(i, j), alpha[static_cast<size_t>(j)]);
          got += term;
        }
        INFO("d=" << d << " s=" << s << " degree " << total);
        REQUIRE(std::abs(got - exact) <= 1e-13 + 1e-12 * std::abs(exact));
      }
    }
  }
}

TEST_CASE("sixteen-point line rule integrates high-degree monomials") {
  const homocone::LineRule& rule = homocone::gauss_legendre_16();
  REQUIRE(rule.nodes.size() == 16);
  REQUIRE(rel(rule.weights.sum(), 1.0) < 1e-14);
  for (int k = 0; k <= 31; ++k) {
    double got = 0.0;
    for (int i = 0; i < 16; ++i) got += rule.weights[i] * std::pow(rule.nodes[i], k);
    REQUIRE(std::abs(got - 1.0 / (k + 1)) < 1e-13);
  }
}

TEST_CASE("single-form integrals match the divided-difference closed form") {
  std::mt19937_64 rng(20240819);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const double exps[] = {0.5, 1.0, 2.0, 3.7, 0.001};
  for (int n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 40; ++trial) {
      Eigen::MatrixXd verts(n + 1, n);
      for (int i = 0; i <= n; ++i)
        for (int j = 0; j < n; ++j) verts(i, j) = unif(rng);
      if (oracle::simplex_volume(verts) < 1e-3) continue;
      Eigen::VectorXd theta(n);
      for (int j = 0; j < n; ++j) theta[j] = unif(rng);
      for (double s : exps) {
        double exact = oracle::affine_power_integral(verts, theta, 0.0, s);
        Mat values = (verts * theta).transpose();
        homocone::QuadratureResult got = homocone::integrate_min_power_simplex(
            values, oracle::simplex_volume(verts), s);
        INFO("n=" << n << " trial=" << trial << " s=" << s);
        REQUIRE(rel(got.value, exact) < 1e-10);
      }
    }
  }
}

TEST_CASE("affine forms with offsets are clipped correctly") {
  // (x - 1/2)_+^s over the triangle (0,0),(1,0),(0,1): the form is negative
  // on most of the triangle, so the clip logic is what is being exercised.
  Eigen::MatrixXd verts(3, 2);
  verts << 0, 0, 1, 0, 0, 1;
  Eigen::VectorXd theta(2);
  theta << 1, 0;
  for (double s : {0.5, 1.0, 2.0}) {
    double exact = oracle::affine_power_integral(verts, theta, -0.5, s);
    Mat values(1, 3);
    values << -0.5, 0.5, -0.5;
    homocone::QuadratureResult got =
        homocone::integrate_min_power_simplex(values, 0.5, s);
    REQUIRE(rel(got.value, exact) < 1e-10);
  }
  // Fully clipped: all values negative integrates to zero.
  Mat values(1, 3);
  values << -1.0, -0.5, -2.0;
  REQUIRE(homocone::integrate_min_power_simplex(values, 0.5, 1.0).value == 0.0);
}

TEST_CASE("two-form minimum splits across the kink") {
  // min(x,y)_+^s over the unit square, done triangle by triangle. On the
  // triangle below the diagonal the minimum is y, above it the minimum is x,
  // so the exact value is twice the single-form integral over one half.
  Eigen::MatrixXd lowerv(3, 2), upperv(3, 2);
  lowerv << 0, 0, 1, 0, 1, 1;
  upperv << 0, 0, 1, 1, 0, 1;
  Eigen::VectorXd e1(2), e2(2);
  e1 << 1, 0;
  e2 << 0, 1;
  for (double s : {0.5, 1.0, 2.0, 3.0}) {
    double exact = oracle::affine_power_integral(lowerv, e2, 0.0, s) +
                   oracle::affine_power_integral(upperv, e1, 0.0, s);
    double got = 0.0;
    for (const Eigen::MatrixXd& verts : {lowerv, upperv}) {
      Mat values(2, 3);
      for (int j = 0; j < 3; ++j) {
        values(0, j) = verts(j, 0);
        values(1, j) = verts(j, 1);
      }
      got += homocone::integrate_min_power_simplex(values, 0.5, s).value;
    }
    REQUIRE(rel(got, exact) < 1e-10);
  }
}

TEST_CASE("three-form minimum agrees with Monte Carlo") {
  // min(x, y, (x+y)/1.4)_+^1 over the triangle (0,0),(2,0),(0,2).
  Eigen::MatrixXd verts(3, 2);
  verts << 0, 0, 2, 0, 0, 2;
  Eigen::MatrixXd forms(3, 2);
  forms << 1, 0, 0, 1, 1.0 / 1.4, 1.0 / 1.4;

  Mat values = forms * verts.transpose();
  homocone::QuadratureResult got =
      homocone::integrate_min_power_simplex(values, 2.0, 1.0);

  Eigen::VectorXd lo(2), hi(2);
  lo << 0, 0;
  hi << 2, 2;
  auto inside = [](const Eigen::VectorXd& x) { return x[0] + x[1] <= 2.0; };
  auto f = [&](const Eigen::VectorXd& x) {
    double m = std::min({x[0], x[1], (x[0] + x[1]) / 1.4});
    return std::max(m, 0.0);
  };
  oracle::McEstimate mc = oracle::mc_integral(lo, hi, inside, f, 400000, 7);
  REQUIRE(std::abs(got.value - mc.value) < 4.0 * mc.std_error);
  REQUIRE(got.error_estimate < 1e-8 * std::max(got.value, 1.0));
}

TEST_CASE("degenerate inputs are handled") {
  Mat values(1, 3);
  values << 1.0, 2.0, 3.0;
  REQUIRE(homocone::integrate_min_power_simplex(values, 0.0, 1.0).value == 0.0);
  REQUIRE_THROWS_AS(homocone::integrate_min_power_simplex(values, 1.0, 0.0),
                    homocone::Error);
  REQUIRE_THROWS_AS(homocone::integrate_min_power_simplex(values, 1.0, -1.0),
                    homocone::Error);
}
