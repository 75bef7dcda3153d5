#pragma once

#include <limits>
#include <string>
#include <vector>

#include "scenario.hpp"

namespace homocone {

struct FuzzConfig {
  std::vector<std::string> checks = {"borell",         "minkowski_first", "face_bound",
                                     "zonotope_bound", "loomis_whitney",  "ball"};
  int count = 100;
  std::uint64_t seed = 42;
  CheckOptions options;
};

namespace detail {

// All fuzz randomness flows through one CounterRng per instance, seeded from
// the master seed and the instance's (check, index) position, so the
// generated scenario list is a pure function of the config.

inline Vec random_alphas(CounterRng& rng, int m) {
  Vec a(m);
  for (int i = 0; i < m; ++i) a[i] = rng.uniform(0.3, 2.0);
  return a;
}

// Directional density whose symmetrized value stays above `floor` on every
// row of `dirs`. Well-conditioned instances only, per the generator policy.
inline Density rejected_directional(CounterRng& rng, const Mat& dirs, double p,
                                    double floor = 1e-6) {
  int n = static_cast<int>(dirs.cols());
  for (int attempt = 0; attempt < 500; ++attempt) {
    Vec theta = rng.unit_vec(n);
    Density g = Density::directional(theta, p);
    bool ok = true;
    for (int i = 0; i < dirs.rows() && ok; ++i)
      ok = g.eval_symmetrized(dirs.row(i).transpose()) >= floor;
    if (ok) return g;
  }
  throw Error("fuzz: could not place a density clear of the given directions");
}

// Either a directional density or a narrow bundle of linear forms around a
// random axis; the bundle stays within ~25 degrees so the support cone is
// wide and instances stay well-conditioned.
inline Density random_density(CounterRng& rng, int n, double p) {
  if (n == 1 || rng.uniform() < 0.5) {
    return Density::directional(rng.unit_vec(n), p);
  }
  int forms = 2 + static_cast<int>(rng.uniform_index(2));
  Vec axis = rng.unit_vec(n);
  Mat rows(forms, n);
  for (int j = 0; j < forms; ++j) {
    Vec f = axis + 0.4 * rng.gaussian_vec(n);
    if (f.norm() < 0.2) f = axis;
    rows.row(j) = f.transpose() * rng.uniform(0.5, 1.5);
  }
  return Density::min_linear(rows, p);
}

inline Vec density_axis(const Density& g) {
  Vec u = Vec::Zero(g.dim());
  for (int j = 0; j < g.forms().rows(); ++j) u += g.forms().row(j).transpose();
  double nn = u.norm();
  return nn > 0 ? Vec(u / nn) : u;
}

// One of three shapes: a rotated box, a small vertex cloud on a sphere, or a
// zonotope. Mostly shifted toward the density's axis so the measure is
// positive, with some straddling instances kept to exercise the support
// clipping.
inline ConvexBody random_body(CounterRng& rng, int n, const Density& g) {
  Vec center = 0.8 * rng.gaussian_vec(n);
  if (rng.uniform() < 0.7) center += 1.5 * density_axis(g);

  double kind = rng.uniform();
  if (n == 1) {
    double a = rng.uniform(0.3, 1.5);
    if (kind < 0.5) {
      Mat v(2, 1);
      v(0, 0) = center[0] - a;
      v(1, 0) = center[0] + a;
      return ConvexBody::from_vertices(v);
    }
    return ConvexBody::zonotope(a * Mat::Ones(1, 1));
  }
  if (kind < 0.4) {
    Mat r = rng.rotation(n);
    Mat verts(1 << n, n);
    Vec half(n);
    for (int i = 0; i < n; ++i) half[i] = rng.uniform(0.3, 1.2);
    for (int mask = 0; mask < (1 << n); ++mask) {
      Vec corner(n);
      for (int i = 0; i < n; ++i) corner[i] = (mask >> i) & 1 ? half[i] : -half[i];
      verts.row(mask) = (r.transpose() * corner + center).transpose();
    }
    return ConvexBody::from_vertices(verts);
  }
  if (kind < 0.7) {
    for (int attempt = 0; attempt < 50; ++attempt) {
      int k = n + 2 + static_cast<int>(rng.uniform_index(4));
      Mat verts(k, n);
      double radius = rng.uniform(0.5, 1.5);
      for (int i = 0; i < k; ++i)
        verts.row(i) = (center + radius * rng.unit_vec(n)).transpose();
      try {
        return ConvexBody::from_vertices(verts);
      } catch (const Error&) {
        // nearly-flat sample; draw again
      }
    }
    throw Error("fuzz: sphere cloud kept collapsing");
  }
  int m = n + static_cast<int>(rng.uniform_index(3 - (n > 2 ? 2 : 0)));
  Mat gens(m, n);
  Mat r = rng.rotation(n);
  for (int i = 0; i < m; ++i) {
    Vec gen = i < n ? Vec(r.row(i).transpose()) : rng.unit_vec(n);
    gens.row(i) = rng.uniform(0.3, 1.2) * gen.transpose();
  }
  return ConvexBody::zonotope(gens);
}

// Isotropic frames: a rotated orthonormal basis, a rotated 120-degree triple
// (n=2) or regular-simplex frame (n=3), or a merger of two rotated bases
// with half weights.
inline WeightedFrame random_frame(CounterRng& rng, int n) {
  double kind = rng.uniform();
  if (n == 1) return WeightedFrame::make(Mat::Ones(1, 1), Vec::Ones(1));
  if (kind < 0.4) {
    return WeightedFrame::make(rng.rotation(n), Vec::Ones(n));
  }
  if (kind < 0.7) {
    if (n == 2) {
      double off = rng.uniform(0.0, 120.0);
      Mat v(3, 2);
      for (int k = 0; k < 3; ++k) {
        double a = (off + 120.0 * k) * M_PI / 180.0;
        v(k, 0) = std::cos(a);
        v(k, 1) = std::sin(a);
      }
      return WeightedFrame::make(v, Vec::Constant(3, 2.0 / 3.0));
    }
    Mat base = mrows({{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}}) / std::sqrt(3.0);
    Mat r = rng.rotation(3);
    return WeightedFrame::make(base * r, Vec::Constant(4, 0.75));
  }
  Mat v(2 * n, n);
  v.topRows(n) = rng.rotation(n);
  v.bottomRows(n) = rng.rotation(n);
  return WeightedFrame::make(v, Vec::Constant(2 * n, 0.5));
}

// Density clear of the whole projection family of the frame, so the
// inequalities that quantify over the family have valid hypotheses.
inline Density density_for_family(CounterRng& rng, const WeightedFrame& frame, double p) {
  ProjectionFamily fam = projection_family(frame.vectors);
  require(!fam.truncated, "fuzz: projection family unexpectedly large");
  Mat dirs(fam.members.size(), frame.dim());
  for (size_t i = 0; i < fam.members.size(); ++i) dirs.row(i) = fam.members[i].transpose();
  return rejected_directional(rng, dirs, p);
}

inline double random_p(CounterRng& rng) {
  double choices[3] = {0.5, 1.0, 2.0};
  return choices[rng.uniform_index(3)];
}

inline int random_dim(CounterRng& rng, bool allow_one) {
  if (allow_one && rng.uniform() < 0.2) return 1;
  return 2 + static_cast<int>(rng.uniform_index(2));
}

}  // namespace detail

// Builds the full deterministic list of fuzz scenarios for a config. The
// driver may run them in any order; reports are keyed back to this order.
inline std::vector<Scenario> fuzz_scenarios(const FuzzConfig& cfg) {
  require(cfg.count > 0, "fuzz: count must be positive");
  for (const auto& c : cfg.checks)
    require(known_checks().count(c) > 0, "fuzz: unknown check '" + c + "'");

  std::vector<Scenario> out;
  for (size_t ci = 0; ci < cfg.checks.size(); ++ci) {
    const std::string& check = cfg.checks[ci];
    for (int i = 0; i < cfg.count; ++i) {
      std::uint64_t instance_seed = derive_seed(cfg.seed, ci * 1000003 + i);
      CounterRng rng(instance_seed, 1);
      Scenario s;
      s.name = "fuzz/" + check + "/" + std::to_string(i);
      s.seed = instance_seed;
      s.checks = {check};
      s.options = cfg.options;

      if (check == "borell") {
        int n = detail::random_dim(rng, true);
        double p = detail::random_p(rng);
        s.density = detail::random_density(rng, n, p);
        s.body = detail::random_body(rng, n, *s.density);
        s.second = detail::random_body(rng, n, *s.density);
        double pick = rng.uniform();
        s.lambda = pick < 0.1 ? 0.0 : pick < 0.2 ? 1.0 : rng.uniform();
      } else if (check == "minkowski_first" || check == "mixed_linearity") {
        int n = detail::random_dim(rng, true);
        double p = detail::random_p(rng);
        s.density = detail::random_density(rng, n, p);
        s.body = detail::random_body(rng, n, *s.density);
        s.second = detail::random_body(rng, n, *s.density).scaled(0.6);
        if (check == "mixed_linearity")
          s.third = detail::random_body(rng, n, *s.density).scaled(0.4);
      } else if (check == "face_bound") {
        int n = detail::random_dim(rng, false);
        double p = detail::random_p(rng);
        s.basis = rng.rotation(n);
        s.alphas = detail::random_alphas(rng, n);
        s.face_index = static_cast<int>(rng.uniform_index(n));
        s.density = detail::rejected_directional(rng, *s.basis, p);
      } else if (check == "zonotope_bound" || check == "projection_lower_bound") {
        int n = detail::random_dim(rng, false);
        double p = detail::random_p(rng);
        s.frame = detail::random_frame(rng, n);
        s.alphas = detail::random_alphas(rng, s.frame->count());
        s.face_index = static_cast<int>(rng.uniform_index(s.frame->count()));
        s.density = detail::density_for_family(rng, *s.frame, p);
      } else if (check == "loomis_whitney" || check == "scale_invariance") {
        int n = detail::random_dim(rng, false);
        double p = detail::random_p(rng);
        s.basis = rng.rotation(n);
        s.density = detail::rejected_directional(rng, *s.basis, p);
        s.body = detail::random_body(rng, n, *s.density);
      } else if (check == "ball") {
        int n = detail::random_dim(rng, false);
        double p = detail::random_p(rng);
        s.frame = detail::random_frame(rng, n);
        s.density = detail::density_for_family(rng, *s.frame, p);
        s.body = detail::random_body(rng, n, *s.density);
      } else if (check == "self_mixed" || check == "projection_routes") {
        int n = detail::random_dim(rng, check == "self_mixed");
        double p = detail::random_p(rng);
        s.density = detail::random_density(rng, n, p);
        s.body = detail::random_body(rng, n, *s.density);
        s.theta = rng.unit_vec(n);
      } else if (check == "zonotope_expansion") {
        int n = detail::random_dim(rng, false);
        double p = detail::random_p(rng);
        s.basis = rng.rotation(n);
        s.alphas = detail::random_alphas(rng, n);
        s.density = detail::random_density(rng, n, p);
        s.body = detail::random_body(rng, n, *s.density);
      } else if (check == "directional_monotonicity") {
        int n = detail::random_dim(rng, true);
        double p = detail::random_p(rng);
        s.density = detail::random_density(rng, n, p);
      } else if (check == "isotropy" || check == "gamma_identity") {
        int n = detail::random_dim(rng, false);
        s.frame = detail::random_frame(rng, n);
        s.density = Density::directional(rng.unit_vec(n), 1.0);
      } else if (check == "lebesgue_limit") {
        int n = detail::random_dim(rng, false);
        s.basis = rng.rotation(n);
        Density marker = Density::directional(rng.unit_vec(n), 1.0);
        for (int attempt = 0; attempt < 500; ++attempt) {
          Vec theta = rng.unit_vec(n);
          bool ok = true;
          for (int j = 0; j < n && ok; ++j)
            ok = std::abs(s.basis->row(j).dot(theta.transpose())) >= 0.05;
          if (ok) {
            s.theta = theta;
            break;
          }
        }
        require(s.theta.has_value(), "fuzz: no workable study direction found");
        Mat r = rng.rotation(n);
        Vec center = *s.theta * 2.0;
        Mat verts(1 << n, n);
        Vec half(n);
        for (int j = 0; j < n; ++j) half[j] = rng.uniform(0.3, 1.0);
        for (int mask = 0; mask < (1 << n); ++mask) {
          Vec corner(n);
          for (int j = 0; j < n; ++j) corner[j] = (mask >> j) & 1 ? half[j] : -half[j];
          verts.row(mask) = (r.transpose() * corner + center).transpose();
        }
        s.body = ConvexBody::from_vertices(verts);
        s.density = marker;
      }
      validate_scenario(s);
      out.push_back(std::move(s));
    }
  }
  return out;
}

struct FuzzCheckSummary {
  std::string name;
  int runs = 0;
  int passes = 0;
  int failures = 0;
  int skips = 0;
  int defects = 0;  // margin below 1 - 1e-3, or a failed identity
  double min_ratio = std::numeric_limits<double>::infinity();
};

struct FuzzAggregate {
  std::vector<CheckReport> reports;
  std::vector<FuzzCheckSummary> table;
};

// Identity-style reports carry a residual in `ratio`; margins carry a
// guaranteed-larger over guaranteed-smaller quotient. The defect rule is
// margin < 1 - 1e-3 for the latter and pass=false for the former.
inline bool is_margin_check(const std::string& name) {
  static const std::set<std::string> margins = {
      "borell",       "minkowski_first",        "face_bound",
      "zonotope_bound", "loomis_whitney",       "ball",
      "projection_lower_bound", "classical_projection_product", "lebesgue_limit_point"};
  return margins.count(name) > 0;
}

inline FuzzAggregate fuzz_aggregate(const FuzzConfig& cfg,
                                    std::vector<CheckReport> reports) {
  FuzzAggregate agg;
  agg.reports = std::move(reports);
  for (const auto& name : cfg.checks) {
    FuzzCheckSummary row;
    row.name = name;
    agg.table.push_back(row);
  }
  for (const auto& r : agg.reports) {
    FuzzCheckSummary* row = nullptr;
    for (auto& t : agg.table)
      if (r.name == t.name ||
          r.scenario.rfind("fuzz/" + t.name + "/", 0) == 0) {
        row = &t;
        break;
      }
    if (row == nullptr) continue;
    row->runs += 1;
    if (!r.hypothesis_ok) {
      row->skips += 1;
      continue;
    }
    if (r.pass)
      row->passes += 1;
    else
      row->failures += 1;
    if (is_margin_check(r.name)) {
      row->min_ratio = std::min(row->min_ratio, r.ratio);
      if (r.ratio < 1.0 - 1e-3) row->defects += 1;
    } else if (!r.pass) {
      row->defects += 1;
    }
  }
  return agg;
}

}  // namespace homocone
