#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "body.hpp"
#include "density.hpp"
#include "frames.hpp"
#include "measure.hpp"
#include "mixed.hpp"
#include "report.hpp"
#include "rng.hpp"

namespace homocone {

struct CheckOptions {
  double inequality_slack = 1e-4;  // one-sided bounds, relative
  double identity_tol = 1e-3;      // identities that lean on finite differences
  double route_tol = 1e-6;         // projection-functional route agreement
  double isotropy_tol = 1e-9;
  double gamma_tol = 1e-9;
  double exact_tol = 1e-9;         // checks with no quadrature error to hide behind
  QuadratureOptions quad;
};

namespace detail {

// Symmetrized density powers over a set of directions (rows). Returns the
// per-direction values of (g(u)+g(-u))^p; since the support of g never
// contains an antipodal pair, this equals g(u)^p + g(-u)^p and is exact.
inline Vec symmetrized_powers(const Density& g, const Mat& dirs) {
  Vec w(dirs.rows());
  for (int i = 0; i < dirs.rows(); ++i) w[i] = g.symmetrized_power(dirs.row(i).transpose());
  return w;
}

inline bool orthonormal_rows(const Mat& m, double eps = 1e-9) {
  if (m.rows() != m.cols()) return false;
  Mat gram = m * m.transpose();
  return (gram - Mat::Identity(m.rows(), m.cols())).lpNorm<Eigen::Infinity>() <= eps;
}

}  // namespace detail

// mu(lambda E + (1-lambda) F) >= (lambda mu(E)^q + (1-lambda) mu(F)^q)^(1/q):
// the measure's concavity under Minkowski combinations.
inline CheckReport check_borell(const Density& g, const ConvexBody& E, const ConvexBody& F,
                                double lambda, const CheckOptions& opts = {}) {
  require(lambda >= 0.0 && lambda <= 1.0, "borell: lambda must lie in [0,1]");
  double q = homogeneity(E.dim(), g.p()).q;
  double mu_e = measure_body(g, E, opts.quad).value;
  double mu_f = measure_body(g, F, opts.quad).value;
  // The power-mean bound needs mass on both sides: with mu(E) = 0 the mean
  // degenerates and translates of F can leave the support, so nothing holds.
  if (mu_e <= 0.0 || mu_f <= 0.0) {
    CheckReport r =
        CheckReport::skipped("borell", "a side carries no mass in the density support");
    r.metadata["mu_e"] = mu_e;
    r.metadata["mu_f"] = mu_f;
    return r;
  }
  double lhs;
  if (lambda == 0.0) {
    lhs = mu_f;
  } else if (lambda == 1.0) {
    lhs = mu_e;
  } else {
    ConvexBody comb = minkowski_combination(lambda, E, 1.0 - lambda, F);
    lhs = measure_body(g, comb, opts.quad).value;
  }
  double rhs = std::pow(lambda * std::pow(mu_e, q) + (1.0 - lambda) * std::pow(mu_f, q),
                        1.0 / q);
  CheckReport r = CheckReport::lower_bound("borell", lhs, rhs, opts.inequality_slack);
  r.metadata["lambda"] = lambda;
  r.metadata["mu_e"] = mu_e;
  r.metadata["mu_f"] = mu_f;
  return r;
}

// mu(A)^(1-q) mu(B)^q <= q mu_1(A,B): the first-variation form of the
// concavity above. mu_1 is taken over the facet route, which is exact for
// polytope pairs; route agreement with the finite-difference definition is a
// separate identity check.
inline CheckReport check_minkowski_first(const Density& g, const ConvexBody& A,
                                         const ConvexBody& B, const CheckOptions& opts = {}) {
  double q = homogeneity(A.dim(), g.p()).q;
  double mu_a = measure_body(g, A, opts.quad).value;
  double mu_b = measure_body(g, B, opts.quad).value;
  if (mu_a <= 0.0 || mu_b <= 0.0) {
    CheckReport r = CheckReport::skipped("minkowski_first",
                                         "a side carries no mass in the density support");
    r.metadata["mu_a"] = mu_a;
    r.metadata["mu_b"] = mu_b;
    return r;
  }
  double m1 = mixed_measure_facets(g, A, B, opts.quad).value;
  double lhs = std::pow(mu_a, 1.0 - q) * std::pow(mu_b, q);
  double rhs = q * m1;
  CheckReport r = CheckReport::upper_bound("minkowski_first", lhs, rhs, opts.inequality_slack);
  r.metadata["mu_a"] = mu_a;
  r.metadata["mu_b"] = mu_b;
  r.metadata["mixed"] = m1;
  return r;
}

// Weighted area of the face of the box sum(alpha_j [-u_j, u_j]) that touches
// alpha_i u_i, against its closed-form lower bound. If g vanishes at u_i but
// not at -u_i the opposite face carries the bound; the box is symmetric, so
// that face exists with the same data.
inline CheckReport check_face_bound(const Density& g, const Mat& basis, const Vec& alphas,
                                    int face_index, const CheckOptions& opts = {}) {
  int n = static_cast<int>(basis.rows());
  require(face_index >= 0 && face_index < n, "face_bound: face index out of range");
  if (!detail::orthonormal_rows(basis))
    return CheckReport::skipped("face_bound", "basis is not orthonormal");

  double p = g.p();
  Vec w = detail::symmetrized_powers(g, basis);
  for (int j = 0; j < n; ++j) {
    if (w[j] <= 0.0) {
      CheckReport r = CheckReport::skipped(
          "face_bound", "segment through basis vector " + std::to_string(j) +
                            " misses the density support");
      return r;
    }
  }

  ConvexBody box = ConvexBody::box(basis, alphas);
  Vec u = basis.row(face_index).transpose();
  Vec face_dir = g.eval(u) > 0.0 ? u : Vec(-u);
  const Face* face = nullptr;
  for (const auto& f : box.faces()) {
    if (f.normal.dot(face_dir) >= 1.0 - 1e-9) {
      face = &f;
      break;
    }
  }
  require(face != nullptr, "face_bound: box face not found for the requested direction");

  double lhs = measure_face(g, *face, opts.quad).value;

  double s = w.sum();
  double rhs = std::pow(p * n / (p * n + 1.0), static_cast<double>(n));
  rhs *= 1.0 + w[face_index] / (p * s);
  rhs *= std::pow(s, 1.0 / p);
  rhs /= alphas[face_index];
  for (int j = 0; j < n; ++j) rhs *= std::pow(alphas[j], 1.0 + w[j] / (p * s));

  CheckReport r = CheckReport::lower_bound("face_bound", lhs, rhs, opts.inequality_slack);
  r.metadata["face_index"] = face_index;
  r.metadata["sym_power_sum"] = s;
  return r;
}

// mu(Z) for the zonotope Z = sum(alpha_i [-u_i, u_i]) against its product
// lower bound. Requires an isotropic frame and a density positive somewhere
// along every direction of the frame's projection family.
inline CheckReport check_zonotope_bound(const Density& g, const WeightedFrame& frame,
                                        const Vec& alphas, const CheckOptions& opts = {}) {
  int n = frame.dim();
  int m = frame.count();
  require(alphas.size() == m, "zonotope_bound: one length per frame vector");

  IsotropyResidual res = isotropy_residual(frame);
  if (res.matrix_residual > 1e-8 || res.trace_residual > 1e-8)
    return CheckReport::skipped("zonotope_bound", "frame is not isotropic");

  ProjectionFamily fam = projection_family(frame.vectors);
  if (fam.truncated)
    return CheckReport::skipped("zonotope_bound", "projection family exceeded the size cap");
  double inf_sym = std::numeric_limits<double>::infinity();
  for (const auto& u : fam.members) inf_sym = std::min(inf_sym, g.eval_symmetrized(u));
  if (!(inf_sym > 0.0))
    return CheckReport::skipped("zonotope_bound",
                                "projection family contains a direction with vanishing "
                                "symmetrized density");

  Mat gens(m, n);
  for (int i = 0; i < m; ++i) gens.row(i) = alphas[i] * frame.vectors.row(i);
  ConvexBody z = ConvexBody::zonotope(gens);
  double lhs = measure_body(g, z, opts.quad).value;

  double p = g.p();
  double rhs = inf_sym;
  for (int k = 1; k <= n; ++k) rhs *= static_cast<double>(k) / (k + 1.0 / p);
  for (int i = 0; i < m; ++i)
    rhs *= std::pow(alphas[i] / frame.weights[i],
                    frame.weights[i] * (1.0 + 1.0 / (p * n)));

  CheckReport r = CheckReport::lower_bound("zonotope_bound", lhs, rhs, opts.inequality_slack);
  r.metadata["inf_symmetrized"] = inf_sym;
  r.metadata["family_size"] = static_cast<double>(fam.members.size());
  return r;
}

namespace detail {

struct TheoremSides {
  double lhs = 0.0;
  double rhs = 0.0;
  double mu = 0.0;
  std::vector<double> projections;
  bool hypothesis_ok = true;
  std::string reason;
};

// Shared evaluation for the two product inequalities: mu(K)^(n+1/p-1) on the
// left, a constant times a weighted product of generalized projections on
// the right. `exponents` are the per-direction powers on P(u_i); `constant`
// is everything in front of the product.
inline TheoremSides product_bound_sides(const Density& g, const ConvexBody& K,
                                        const Mat& dirs, const Vec& exponents,
                                        double constant, const CheckOptions& opts) {
  TheoremSides out;
  int n = K.dim();
  double p = g.p();
  out.mu = measure_body(g, K, opts.quad).value;
  out.lhs = std::pow(out.mu, n + 1.0 / p - 1.0);
  out.rhs = constant;
  for (int i = 0; i < dirs.rows(); ++i) {
    double proj = projection_functional(g, K, dirs.row(i).transpose(),
                                        ProjectionRoute::mixed_measure, opts.quad);
    out.projections.push_back(proj);
    out.rhs *= std::pow(proj, exponents[i]);
  }
  return out;
}

}  // namespace detail

// mu(K)^(n+1/p-1) <= 2^(n+1/p) (1+1/(pn))^n (sum_k w_k)^(-1/p)
//                    prod_i P(u_i)^(1 + w_i / (p sum_k w_k))
// over an orthonormal basis, with w_i the symmetrized density power at u_i.
inline CheckReport check_loomis_whitney(const Density& g, const ConvexBody& K,
                                        const Mat& basis, const CheckOptions& opts = {}) {
  int n = K.dim();
  require(basis.rows() == n && basis.cols() == n,
          "loomis_whitney: need one basis vector per dimension");
  if (!detail::orthonormal_rows(basis))
    return CheckReport::skipped("loomis_whitney", "basis is not orthonormal");

  double p = g.p();
  Vec w = detail::symmetrized_powers(g, basis);
  for (int i = 0; i < n; ++i)
    if (w[i] <= 0.0)
      return CheckReport::skipped("loomis_whitney",
                                  "symmetrized density vanishes at basis vector " +
                                      std::to_string(i));

  double s = w.sum();
  double constant = std::pow(2.0, n + 1.0 / p);
  constant *= std::pow(1.0 + 1.0 / (p * n), static_cast<double>(n));
  constant *= std::pow(s, -1.0 / p);
  Vec exponents(n);
  for (int i = 0; i < n; ++i) exponents[i] = 1.0 + w[i] / (p * s);

  detail::TheoremSides sides = detail::product_bound_sides(g, K, basis, exponents, constant, opts);
  CheckReport r =
      CheckReport::upper_bound("loomis_whitney", sides.lhs, sides.rhs, opts.inequality_slack);
  r.metadata["mu"] = sides.mu;
  for (int i = 0; i < n; ++i)
    r.metadata["projection_" + std::to_string(i)] = sides.projections[i];
  return r;
}

// mu(K)^(n+1/p-1) <= 2^(n+1/p) (inf over the projection family of the
// symmetrized density)^(-1) prod_k (1+1/(kp)) prod_i P(u_i)^(c_i (1+1/(pn)))
// over an isotropic frame with weights c_i.
inline CheckReport check_ball(const Density& g, const ConvexBody& K, const WeightedFrame& frame,
                              const CheckOptions& opts = {}) {
  int n = K.dim();
  require(frame.dim() == n, "ball: frame dimension must match the body");

  IsotropyResidual res = isotropy_residual(frame);
  if (res.matrix_residual > 1e-8 || res.trace_residual > 1e-8)
    return CheckReport::skipped("ball", "frame is not isotropic");

  ProjectionFamily fam = projection_family(frame.vectors);
  if (fam.truncated)
    return CheckReport::skipped("ball", "projection family exceeded the size cap");
  double inf_sym = std::numeric_limits<double>::infinity();
  for (const auto& u : fam.members) inf_sym = std::min(inf_sym, g.eval_symmetrized(u));
  if (!(inf_sym > 0.0))
    return CheckReport::skipped(
        "ball", "projection family contains a direction with vanishing symmetrized density");

  double p = g.p();
  double constant = std::pow(2.0, n + 1.0 / p) / inf_sym;
  for (int k = 1; k <= n; ++k) constant *= 1.0 + 1.0 / (k * p);
  Vec exponents(frame.count());
  for (int i = 0; i < frame.count(); ++i)
    exponents[i] = frame.weights[i] * (1.0 + 1.0 / (p * n));

  detail::TheoremSides sides =
      detail::product_bound_sides(g, K, frame.vectors, exponents, constant, opts);
  CheckReport r = CheckReport::upper_bound("ball", sides.lhs, sides.rhs, opts.inequality_slack);
  r.metadata["mu"] = sides.mu;
  r.metadata["inf_symmetrized"] = inf_sym;
  r.metadata["family_size"] = static_cast<double>(fam.members.size());
  for (int i = 0; i < frame.count(); ++i)
    r.metadata["projection_" + std::to_string(i)] = sides.projections[i];
  return r;
}

// mu_1(Z,Z) = mu(Z)/q, with the left side from the finite-difference route
// so the identity actually exercises the limit definition. The facet-sum
// value is recorded alongside as corroboration.
inline CheckReport check_self_mixed(const Density& g, const ConvexBody& Z,
                                    const CheckOptions& opts = {}) {
  double q = homogeneity(Z.dim(), g.p()).q;
  MixedMeasureResult fd = mixed_measure_fd(g, Z, Z, opts.quad);
  double mu = measure_body(g, Z, opts.quad).value;
  double rhs = mu / q;
  CheckReport r = CheckReport::identity("self_mixed", fd.value, rhs, opts.identity_tol);
  r.metadata["facet_route"] = mixed_measure_facets(g, Z, Z, opts.quad).value;
  r.metadata["fd_error_estimate"] = fd.error_estimate;
  r.metadata["fd_monotone"] = fd.fd_monotone ? 1.0 : 0.0;
  return r;
}

// mu_1(K, Z) = (2/(nq)) sum_i alpha_i P(u_i) for Z = sum alpha_i [-u_i,u_i]:
// linearity of the mixed measure in its second argument, paired with the
// projection functional's normalization. Left side over finite differences.
inline CheckReport check_zonotope_expansion(const Density& g, const ConvexBody& K,
                                            const Mat& dirs, const Vec& alphas,
                                            const CheckOptions& opts = {}) {
  int n = K.dim();
  require(dirs.cols() == n, "zonotope_expansion: direction dimension mismatch");
  require(dirs.rows() == alphas.size(), "zonotope_expansion: one length per direction");
  double q = homogeneity(n, g.p()).q;

  Mat gens(dirs.rows(), n);
  for (int i = 0; i < dirs.rows(); ++i) gens.row(i) = alphas[i] * dirs.row(i);
  ConvexBody z = ConvexBody::zonotope(gens);
  MixedMeasureResult fd = mixed_measure_fd(g, K, z, opts.quad);

  KahanSum acc;
  for (int i = 0; i < dirs.rows(); ++i) {
    double proj = projection_functional(g, K, dirs.row(i).transpose(),
                                        ProjectionRoute::mixed_measure, opts.quad);
    acc.add(alphas[i] * proj);
  }
  double rhs = 2.0 / (n * q) * acc.value();
  double tol = std::max(opts.identity_tol,
                        fd.error_estimate / std::max({std::abs(fd.value), std::abs(rhs), 1e-300}));
  CheckReport r = CheckReport::identity("zonotope_expansion", fd.value, rhs, tol);
  r.metadata["fd_error_estimate"] = fd.error_estimate;
  return r;
}

// mu_1(A, .) is Minkowski-linear: additive over sums of second arguments and
// 1-homogeneous in scaling. Both sides from finite differences.
inline CheckReport check_mixed_linearity(const Density& g, const ConvexBody& A,
                                         const ConvexBody& B, const ConvexBody& C,
                                         const CheckOptions& opts = {}) {
  double m_b = mixed_measure_fd(g, A, B, opts.quad).value;
  double m_c = mixed_measure_fd(g, A, C, opts.quad).value;
  double m_sum = mixed_measure_fd(g, A, minkowski_sum(B, C), opts.quad).value;
  double m_scaled = mixed_measure_fd(g, A, B.scaled(2.0), opts.quad).value;

  double scale = std::max({std::abs(m_sum), std::abs(m_b) + std::abs(m_c), 1e-300});
  double additivity = std::abs(m_sum - m_b - m_c) / scale;
  double homogeneity_resid = std::abs(m_scaled - 2.0 * m_b) /
                             std::max({std::abs(m_scaled), 2.0 * std::abs(m_b), 1e-300});

  CheckReport r = CheckReport::identity("mixed_linearity", m_sum, m_b + m_c, opts.identity_tol);
  r.ratio = std::max(additivity, homogeneity_resid);
  r.pass = r.ratio <= opts.identity_tol;
  r.metadata["additivity_residual"] = additivity;
  r.metadata["scaling_residual"] = homogeneity_resid;
  return r;
}

// The two routes to P(theta): folding the dilation integral through
// homogeneity versus integrating it node by node. Agreement is quadrature
// grade, so the tolerance is tight.
inline CheckReport check_projection_routes(const Density& g, const ConvexBody& K,
                                           const Vec& theta, const CheckOptions& opts = {}) {
  double via_mixed =
      projection_functional(g, K, theta, ProjectionRoute::mixed_measure, opts.quad);
  double via_definition =
      projection_functional(g, K, theta, ProjectionRoute::definition, opts.quad);
  return CheckReport::identity("projection_routes", via_mixed, via_definition, opts.route_tol);
}

// mu_1(Z, [-u_i, u_i]) >= mu_{n-1} of the projection of Z onto the
// hyperplane orthogonal to u_i, the projected measure taken with the density
// restricted to that hyperplane.
inline CheckReport check_projection_lower_bound(const Density& g, const WeightedFrame& frame,
                                                const Vec& alphas, int index,
                                                const CheckOptions& opts = {}) {
  int n = frame.dim();
  int m = frame.count();
  require(index >= 0 && index < m, "projection_lower_bound: index out of range");
  require(alphas.size() == m, "projection_lower_bound: one length per frame vector");
  if (n < 2)
    return CheckReport::skipped("projection_lower_bound", "needs dimension >= 2");

  Vec u = frame.vectors.row(index).transpose();
  if (g.symmetrized_power(u) <= 0.0)
    return CheckReport::skipped("projection_lower_bound",
                                "segment through the chosen direction misses the support");

  Mat gens(m, n);
  for (int i = 0; i < m; ++i) gens.row(i) = alphas[i] * frame.vectors.row(i);
  ConvexBody z = ConvexBody::zonotope(gens);
  double lhs = mixed_measure_segment(g, z, u, opts.quad).value;

  auto [pz, E] = project_body(z, u);
  Mat restricted = g.forms() * E;
  double rhs = 0.0;
  bool degenerate = false;
  for (int j = 0; j < restricted.rows(); ++j)
    if (restricted.row(j).norm() <= 1e-12) degenerate = true;
  if (!degenerate) {
    Density g_restricted = Density::min_linear(restricted, g.p());
    rhs = measure_body(g_restricted, pz, opts.quad).value;
  }

  CheckReport r =
      CheckReport::lower_bound("projection_lower_bound", lhs, rhs, opts.inequality_slack);
  r.metadata["index"] = index;
  return r;
}

// For a direction u inside the support, moving any base point further along
// u never decreases the density.
inline CheckReport check_directional_monotonicity(const Density& g, std::uint64_t seed,
                                                  int trials = 200,
                                                  const CheckOptions& opts = {}) {
  int n = g.dim();
  CounterRng rng(seed, 11);

  Vec u = Vec::Zero(n);
  for (int j = 0; j < g.forms().rows(); ++j) u += g.forms().row(j).transpose();
  if (u.norm() > 0) u /= u.norm();
  if (g.eval(u) <= 0.0) {
    bool found = false;
    for (int k = 0; k < 512 && !found; ++k) {
      Vec cand = rng.unit_vec(n);
      if (g.eval(cand) > 0.0) {
        u = cand;
        found = true;
      }
    }
    if (!found)
      return CheckReport::skipped("directional_monotonicity",
                                  "no support direction found by sampling");
  }

  double worst = 0.0;
  double scale = std::max(g.eval(u), 1e-300);
  for (int k = 0; k < trials; ++k) {
    Vec w = 2.0 * rng.gaussian_vec(n);
    double t2 = rng.uniform(0.0, 2.0);
    double t1 = t2 + rng.uniform(0.0, 2.0);
    double lo = g.eval(w + t2 * u);
    double hi = g.eval(w + t1 * u);
    worst = std::max(worst, (lo - hi) / std::max({hi, lo, scale}));
  }

  CheckReport r;
  r.name = "directional_monotonicity";
  r.lhs = worst;
  r.rhs = 0.0;
  r.ratio = worst;
  r.tolerance = opts.exact_tol;
  r.pass = worst <= opts.exact_tol;
  r.metadata["trials"] = trials;
  return r;
}

// Frame conditions: sum c_i u_i u_i^T = I and sum c_i = n.
inline CheckReport check_isotropy(const WeightedFrame& frame, const CheckOptions& opts = {}) {
  IsotropyResidual res = isotropy_residual(frame);
  double worst = std::max(res.matrix_residual, res.trace_residual);
  CheckReport r;
  r.name = "isotropy";
  r.lhs = res.matrix_residual;
  r.rhs = res.trace_residual;
  r.ratio = worst;
  r.tolerance = opts.isotropy_tol;
  r.pass = worst <= opts.isotropy_tol;
  return r;
}

// For an isotropic frame, sum_i c_i |u_j - <u_i,u_j> u_i|^2 = n-1 for every
// j: the diagonal terms vanish and the rest average out by isotropy.
inline CheckReport check_gamma_identity(const WeightedFrame& frame,
                                        const CheckOptions& opts = {}) {
  int n = frame.dim();
  Mat gamma = gamma_matrix(frame.vectors);
  double worst = 0.0;
  for (int j = 0; j < frame.count(); ++j) {
    double acc = 0.0;
    for (int i = 0; i < frame.count(); ++i)
      acc += frame.weights[i] * gamma(j, i) * gamma(j, i);
    worst = std::max(worst, std::abs(acc - (n - 1)) / std::max(1.0, double(n - 1)));
  }
  CheckReport r;
  r.name = "gamma_identity";
  r.lhs = worst;
  r.rhs = 0.0;
  r.ratio = worst;
  r.tolerance = opts.gamma_tol;
  r.pass = worst <= opts.gamma_tol;
  return r;
}

// Ratio invariance of the product inequality under scaling of the body:
// both sides pick up the same power of t, so rhs/lhs must not move.
inline CheckReport check_scale_invariance(const Density& g, const ConvexBody& K,
                                          const Mat& basis, const CheckOptions& opts = {}) {
  CheckReport base = check_loomis_whitney(g, K, basis, opts);
  if (!base.hypothesis_ok) {
    CheckReport r = CheckReport::skipped("scale_invariance", base.reasons.front());
    return r;
  }
  double worst = 0.0;
  for (double t : {0.5, 2.0}) {
    CheckReport scaled = check_loomis_whitney(g, K.scaled(t), basis, opts);
    double r0 = base.rhs / base.lhs;
    double r1 = scaled.rhs / scaled.lhs;
    worst = std::max(worst, std::abs(r1 - r0) / std::max({r0, r1, 1e-300}));
  }
  CheckReport r;
  r.name = "scale_invariance";
  r.lhs = worst;
  r.rhs = 0.0;
  r.ratio = worst;
  r.tolerance = opts.route_tol;
  r.pass = worst <= opts.route_tol;
  return r;
}

// Limit study: as p grows, the product inequality for g = <x,theta>_+^(1/p)
// approaches the classical projection-product inequality inflated by 2^n.
// Emits one report per p plus the classical-product, constant-monotonicity,
// and limit-gap reports.
inline std::vector<CheckReport> lebesgue_limit_study(const ConvexBody& K, const Mat& basis,
                                                     const std::vector<double>& p_list,
                                                     const Vec& theta,
                                                     const CheckOptions& opts = {}) {
  int n = K.dim();
  require(n >= 2, "lebesgue_limit: needs dimension >= 2");
  require(!p_list.empty(), "lebesgue_limit: p_list must not be empty");
  for (size_t i = 1; i < p_list.size(); ++i)
    require(p_list[i] > p_list[i - 1], "lebesgue_limit: p_list must increase");
  std::vector<CheckReport> out;

  for (int i = 0; i < n; ++i) {
    if (std::abs(basis.row(i).dot(theta.transpose())) <= 1e-9) {
      out.push_back(CheckReport::skipped(
          "lebesgue_limit", "theta orthogonal to basis vector " + std::to_string(i)));
      return out;
    }
  }

  // Classical projection product: |K|^(n-1) <= prod_i |P_i K| with Lebesgue
  // volumes, an equality exactly when K is a box aligned with the basis.
  double vol = K.euclidean_volume();
  double proj_product = 1.0;
  for (int i = 0; i < n; ++i) {
    auto [pk, E] = project_body(K, basis.row(i).transpose());
    proj_product *= pk.euclidean_volume();
  }
  double classical_lhs = std::pow(vol, n - 1.0);
  {
    CheckReport r = CheckReport::upper_bound("classical_projection_product", classical_lhs,
                                             proj_product, 1e-9);
    out.push_back(r);
  }

  double limit_ratio = std::pow(2.0, n) * proj_product / classical_lhs;
  std::vector<double> ratios;
  std::vector<double> constants;
  for (double p : p_list) {
    Density g = Density::directional(theta, p);
    CheckReport point = check_loomis_whitney(g, K, basis, opts);
    point.name = "lebesgue_limit_point";
    point.metadata["p"] = p;
    point.metadata["limit_ratio"] = limit_ratio;
    double ratio = point.lhs > 0 ? point.rhs / point.lhs : 0.0;
    point.metadata["product_ratio"] = ratio;
    ratios.push_back(ratio);
    constants.push_back(std::pow(2.0, n + 1.0 / p) *
                        std::pow(1.0 + 1.0 / (p * n), static_cast<double>(n)));
    out.push_back(point);
  }

  {
    double worst = 0.0;
    for (size_t i = 1; i < constants.size(); ++i)
      worst = std::max(worst, constants[i] / constants[i - 1]);
    CheckReport r;
    r.name = "limit_constant_monotone";
    r.lhs = constants.back();
    r.rhs = constants.front();
    r.ratio = worst;
    r.tolerance = 1e-12;
    r.pass = worst <= 1.0 + 1e-12;
    out.push_back(r);
  }

  {
    CheckReport r = CheckReport::identity("lebesgue_limit_trend", ratios.back(), limit_ratio,
                                          0.25);
    for (size_t i = 0; i < ratios.size(); ++i)
      r.metadata["gap_p" + std::to_string(static_cast<long long>(p_list[i]))] =
          std::abs(ratios[i] - limit_ratio) / limit_ratio;
    out.push_back(r);
  }
  return out;
}

}  // namespace homocone
