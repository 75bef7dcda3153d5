#pragma once

#include <initializer_list>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "checks.hpp"

namespace homocone {

// One named problem instance: a density, some bodies, and the frame or basis
// the checks need, plus the list of checks to run on it. Which fields must
// be present depends on the checks; validate_scenario enforces that before
// anything runs.
struct Scenario {
  std::string name;
  std::optional<Density> density;
  std::optional<ConvexBody> body;      // the primary body (K, A, E, or Z)
  std::optional<ConvexBody> second;    // the partner body (B or F)
  std::optional<ConvexBody> third;     // second partner for linearity checks
  std::optional<WeightedFrame> frame;
  std::optional<Mat> basis;            // orthonormal rows
  std::optional<Vec> alphas;
  std::optional<Vec> theta;
  double lambda = 0.5;
  int face_index = 0;
  std::vector<double> p_list = {1.0, 10.0, 100.0, 1000.0};
  std::vector<std::string> checks;
  std::uint64_t seed = 1;
  CheckOptions options;
};

inline const std::set<std::string>& known_checks() {
  static const std::set<std::string> names = {
      "borell",
      "minkowski_first",
      "face_bound",
      "zonotope_bound",
      "loomis_whitney",
      "ball",
      "self_mixed",
      "zonotope_expansion",
      "mixed_linearity",
      "projection_routes",
      "projection_lower_bound",
      "directional_monotonicity",
      "isotropy",
      "gamma_identity",
      "scale_invariance",
      "lebesgue_limit",
  };
  return names;
}

namespace detail {

inline void need(bool cond, const std::string& scenario, const std::string& check,
                 const std::string& what) {
  require(cond, "scenario '" + scenario + "', check '" + check + "': missing " + what);
}

}  // namespace detail

// Rejects unknown check names and missing ingredients up front, so a bad
// config fails at load time rather than mid-run.
inline void validate_scenario(const Scenario& s) {
  require(!s.name.empty(), "scenario: name must not be empty");
  require(!s.checks.empty(), "scenario '" + s.name + "': no checks listed");
  int dim = -1;
  auto see_dim = [&](int d, const std::string& what) {
    if (dim == -1) dim = d;
    require(d == dim, "scenario '" + s.name + "': " + what + " has dimension " +
                          std::to_string(d) + ", expected " + std::to_string(dim));
  };
  if (s.density) see_dim(s.density->dim(), "density");
  if (s.body) see_dim(s.body->dim(), "body");
  if (s.second) see_dim(s.second->dim(), "second body");
  if (s.third) see_dim(s.third->dim(), "third body");
  if (s.frame) see_dim(s.frame->dim(), "frame");
  if (s.basis) see_dim(static_cast<int>(s.basis->cols()), "basis");
  if (s.theta) see_dim(static_cast<int>(s.theta->size()), "theta");

  for (const auto& c : s.checks) {
    require(known_checks().count(c) > 0, "scenario '" + s.name + "': unknown check '" + c + "'");
    bool needs_density = c != "isotropy" && c != "gamma_identity" && c != "lebesgue_limit";
    if (needs_density) detail::need(s.density.has_value(), s.name, c, "density");
    if (c == "borell" || c == "minkowski_first" || c == "mixed_linearity")
      detail::need(s.second.has_value(), s.name, c, "second body");
    if (c == "mixed_linearity") detail::need(s.third.has_value(), s.name, c, "third body");
    if (c == "borell")
      require(s.lambda >= 0.0 && s.lambda <= 1.0,
              "scenario '" + s.name + "': lambda must lie in [0,1]");
    if (c == "face_bound" || c == "scale_invariance" || c == "loomis_whitney" ||
        c == "lebesgue_limit")
      detail::need(s.basis.has_value(), s.name, c, "basis");
    if (c == "face_bound" || c == "zonotope_bound" || c == "zonotope_expansion" ||
        c == "projection_lower_bound")
      detail::need(s.alphas.has_value(), s.name, c, "alphas");
    if (c == "zonotope_bound" || c == "ball" || c == "projection_lower_bound" ||
        c == "isotropy" || c == "gamma_identity")
      detail::need(s.frame.has_value(), s.name, c, "frame");
    if (c == "zonotope_expansion")
      detail::need(s.frame.has_value() || s.basis.has_value(), s.name, c, "frame or basis");
    if (c == "projection_routes" || c == "lebesgue_limit")
      detail::need(s.theta.has_value(), s.name, c, "theta");
    bool needs_body = c == "borell" || c == "minkowski_first" || c == "loomis_whitney" ||
                      c == "ball" || c == "self_mixed" || c == "zonotope_expansion" ||
                      c == "mixed_linearity" || c == "projection_routes" ||
                      c == "scale_invariance" || c == "lebesgue_limit";
    if (needs_body) detail::need(s.body.has_value(), s.name, c, "body");
    if (c == "face_bound" || c == "zonotope_expansion") {
      const auto& dirs = c == "face_bound" ? *s.basis
                         : s.frame          ? s.frame->vectors
                                            : *s.basis;
      detail::need(s.alphas->size() == dirs.rows(), s.name, c,
                   "one alpha per direction (count mismatch)");
    }
    if (c == "zonotope_bound" || c == "projection_lower_bound")
      detail::need(s.alphas->size() == s.frame->count(), s.name, c,
                   "one alpha per frame vector (count mismatch)");
  }
}

inline std::vector<CheckReport> run_scenario(const Scenario& s) {
  std::vector<CheckReport> out;
  for (const auto& c : s.checks) {
    std::vector<CheckReport> batch;
    try {
      if (c == "borell") {
        batch.push_back(check_borell(*s.density, *s.body, *s.second, s.lambda, s.options));
      } else if (c == "minkowski_first") {
        batch.push_back(check_minkowski_first(*s.density, *s.body, *s.second, s.options));
      } else if (c == "face_bound") {
        batch.push_back(check_face_bound(*s.density, *s.basis, *s.alphas, s.face_index,
                                         s.options));
      } else if (c == "zonotope_bound") {
        batch.push_back(check_zonotope_bound(*s.density, *s.frame, *s.alphas, s.options));
      } else if (c == "loomis_whitney") {
        batch.push_back(check_loomis_whitney(*s.density, *s.body, *s.basis, s.options));
      } else if (c == "ball") {
        batch.push_back(check_ball(*s.density, *s.body, *s.frame, s.options));
      } else if (c == "self_mixed") {
        batch.push_back(check_self_mixed(*s.density, *s.body, s.options));
      } else if (c == "zonotope_expansion") {
        const Mat& dirs = s.frame ? s.frame->vectors : *s.basis;
        batch.push_back(check_zonotope_expansion(*s.density, *s.body, dirs, *s.alphas,
                                                 s.options));
      } else if (c == "mixed_linearity") {
        batch.push_back(check_mixed_linearity(*s.density, *s.body, *s.second, *s.third,
                                              s.options));
      } else if (c == "projection_routes") {
        batch.push_back(check_projection_routes(*s.density, *s.body, *s.theta, s.options));
      } else if (c == "projection_lower_bound") {
        batch.push_back(check_projection_lower_bound(*s.density, *s.frame, *s.alphas,
                                                     s.face_index, s.options));
      } else if (c == "directional_monotonicity") {
        batch.push_back(check_directional_monotonicity(*s.density, s.seed, 200, s.options));
      } else if (c == "isotropy") {
        batch.push_back(check_isotropy(*s.frame, s.options));
      } else if (c == "gamma_identity") {
        batch.push_back(check_gamma_identity(*s.frame, s.options));
      } else if (c == "scale_invariance") {
        batch.push_back(check_scale_invariance(*s.density, *s.body, *s.basis, s.options));
      } else if (c == "lebesgue_limit") {
        batch = lebesgue_limit_study(*s.body, *s.basis, s.p_list, *s.theta, s.options);
      }
    } catch (const Error& e) {
      CheckReport r;
      r.name = c;
      r.pass = false;
      r.reasons.push_back(e.what());
      batch.push_back(r);
    }
    for (auto& r : batch) {
      r.scenario = s.name;
      out.push_back(std::move(r));
    }
  }
  return out;
}

namespace detail {

inline Mat mrows(std::initializer_list<std::initializer_list<double>> rows) {
  int r = static_cast<int>(rows.size());
  int c = static_cast<int>(rows.begin()->size());
  Mat m(r, c);
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline Vec mkvec(std::initializer_list<double> vals) {
  Vec v(static_cast<int>(vals.size()));
  int i = 0;
  for (double x : vals) v[i++] = x;
  return v;
}

inline Mat rot2(double degrees) {
  double a = degrees * M_PI / 180.0;
  return mrows({{std::cos(a), std::sin(a)}, {-std::sin(a), std::cos(a)}});
}

// Vertices of the axis box [lo, hi], one row per corner.
inline Mat corner_box(const Vec& lo, const Vec& hi) {
  int n = static_cast<int>(lo.size());
  Mat verts(1 << n, n);
  for (int mask = 0; mask < (1 << n); ++mask)
    for (int i = 0; i < n; ++i) verts(mask, i) = (mask >> i) & 1 ? hi[i] : lo[i];
  return verts;
}

inline Mat shift_rows(Mat verts, const Vec& offset) {
  for (int i = 0; i < verts.rows(); ++i) verts.row(i) += offset.transpose();
  return verts;
}

inline Vec unit(std::initializer_list<double> vals) {
  Vec v = mkvec(vals);
  return v / v.norm();
}

// Three unit vectors 120 degrees apart, the first at `offset_deg` from the
// y-axis, with the equal weights that make them isotropic in the plane.
inline WeightedFrame triple_frame(double offset_deg) {
  Mat v(3, 2);
  for (int k = 0; k < 3; ++k) {
    double a = (90.0 + offset_deg + 120.0 * k) * M_PI / 180.0;
    v(k, 0) = std::cos(a);
    v(k, 1) = std::sin(a);
  }
  return WeightedFrame::make(v, Vec::Constant(3, 2.0 / 3.0));
}

}  // namespace detail

// The bundled instances. They span dimensions 1 through 3, the exponent
// range {0.5, 1, 2, 1000}, both density families, and frames from aligned
// bases to 120-degree triples and merged-basis frames, so the identity
// checks run against every code path the fuzzer exercises.
inline std::vector<Scenario> builtin_scenarios() {
  using detail::corner_box;
  using detail::mkvec;
  using detail::mrows;
  using detail::rot2;
  using detail::shift_rows;
  using detail::triple_frame;
  using detail::unit;

  std::vector<Scenario> all;
  Mat i2 = Mat::Identity(2, 2);
  Mat i3 = Mat::Identity(3, 3);
  Mat diag45 = mrows({{M_SQRT1_2, M_SQRT1_2}, {-M_SQRT1_2, M_SQRT1_2}});

  {
    // The unit square with the vertical ramp density: every reference value
    // has a short closed form, so this instance anchors the test suite.
    Scenario s;
    s.name = "square_ramp";
    s.density = Density::directional(mkvec({0, 1}), 1.0);
    s.body = ConvexBody::from_vertices(corner_box(mkvec({0, 0}), mkvec({1, 1})));
    s.second = ConvexBody::zonotope(i2);
    s.third = ConvexBody::zonotope(0.7 * diag45);
    s.basis = i2;
    s.frame = WeightedFrame::make(i2, Vec::Ones(2));
    s.alphas = mkvec({1, 1});
    s.theta = mkvec({1, 0});
    s.checks = {"self_mixed",   "zonotope_expansion", "mixed_linearity",
                "projection_routes", "borell",        "minkowski_first",
                "loomis_whitney"};
    all.push_back(std::move(s));
  }
  {
    // Same square and density, diagonal basis: the product inequalities have
    // hand-computable sides here.
    Scenario s;
    s.name = "square_diagonal_basis";
    s.density = Density::directional(mkvec({0, 1}), 1.0);
    s.body = ConvexBody::from_vertices(corner_box(mkvec({0, 0}), mkvec({1, 1})));
    s.second = ConvexBody::box(diag45, mkvec({1, 1}));
    s.third = ConvexBody::zonotope(0.5 * i2);
    s.basis = diag45;
    s.frame = WeightedFrame::make(diag45, Vec::Ones(2));
    s.alphas = mkvec({1, 1});
    s.theta = mkvec({M_SQRT1_2, M_SQRT1_2});
    s.checks = {"loomis_whitney",  "ball",          "face_bound",
                "zonotope_bound",  "self_mixed",    "zonotope_expansion",
                "mixed_linearity", "projection_routes", "scale_invariance",
                "minkowski_first", "borell",        "projection_lower_bound",
                "isotropy",        "gamma_identity"};
    all.push_back(std::move(s));
  }
  {
    // 120-degree triple rotated off the axes so no projection-family member
    // is orthogonal to the density direction.
    Scenario s;
    s.name = "triple_rotated";
    s.density = Density::directional(mkvec({0, 1}), 1.0);
    s.frame = triple_frame(15.0);
    s.alphas = mkvec({1.0, 0.8, 1.2});
    Mat gens(3, 2);
    for (int i = 0; i < 3; ++i) gens.row(i) = (*s.alphas)[i] * s.frame->vectors.row(i);
    s.body = ConvexBody::zonotope(gens);
    s.second = ConvexBody::zonotope(0.4 * i2);
    s.third = ConvexBody::zonotope(0.3 * diag45);
    s.theta = unit({0.2, 1.0});
    s.checks = {"ball",        "zonotope_bound", "projection_lower_bound",
                "self_mixed",  "zonotope_expansion", "mixed_linearity",
                "projection_routes", "isotropy",  "gamma_identity"};
    all.push_back(std::move(s));
  }
  {
    // Axis-aligned triple: projecting the tilted vectors off (0,1) lands
    // exactly on (1,0), where the symmetrized density vanishes, so the frame
    // checks legitimately skip on hypothesis grounds.
    Scenario s;
    s.name = "triple_axis_skip";
    s.density = Density::directional(mkvec({0, 1}), 1.0);
    double sq3h = std::sqrt(3.0) / 2.0;
    s.frame = WeightedFrame::make(mrows({{0, 1}, {-sq3h, -0.5}, {sq3h, -0.5}}),
                                  Vec::Constant(3, 2.0 / 3.0));
    s.alphas = mkvec({1, 1, 1});
    Mat gens(3, 2);
    for (int i = 0; i < 3; ++i) gens.row(i) = s.frame->vectors.row(i);
    s.body = ConvexBody::zonotope(gens);
    s.second = ConvexBody::zonotope(0.5 * i2);
    s.third = ConvexBody::zonotope(0.25 * i2);
    s.theta = unit({1.0, 0.3});
    s.checks = {"ball", "zonotope_bound", "self_mixed", "mixed_linearity",
                "projection_routes", "isotropy", "gamma_identity"};
    all.push_back(std::move(s));
  }
  {
    // Dimension one, where the zonotope bound is an equality.
    Scenario s;
    s.name = "segment_base";
    s.density = Density::directional(mkvec({1}), 1.0);
    s.frame = WeightedFrame::make(Mat::Ones(1, 1), Vec::Ones(1));
    s.alphas = mkvec({1.3});
    s.body = ConvexBody::zonotope(1.3 * Mat::Ones(1, 1));
    s.second = ConvexBody::zonotope(0.5 * Mat::Ones(1, 1));
    s.third = ConvexBody::zonotope(0.25 * Mat::Ones(1, 1));
    s.theta = mkvec({1});
    s.checks = {"zonotope_bound", "self_mixed", "zonotope_expansion", "mixed_linearity",
                "projection_routes", "minkowski_first", "borell",
                "directional_monotonicity"};
    all.push_back(std::move(s));
  }
  {
    // Unit cube with a diagonal density, standard basis.
    Scenario s;
    s.name = "cube_diagonal_density";
    s.density = Density::directional(unit({1, 1, 1}), 1.0);
    s.body = ConvexBody::from_vertices(corner_box(mkvec({0, 0, 0}), mkvec({1, 1, 1})));
    s.second = ConvexBody::zonotope(i3);
    s.third = ConvexBody::zonotope(0.5 * i3);
    s.basis = i3;
    s.frame = WeightedFrame::make(i3, Vec::Ones(3));
    s.alphas = mkvec({1, 1, 1});
    s.theta = unit({1, 0.5, 0.25});
    s.checks = {"loomis_whitney", "ball",       "self_mixed", "zonotope_expansion",
                "mixed_linearity", "projection_routes", "face_bound"};
    all.push_back(std::move(s));
  }
  {
    // Simplex body, square-root growth (p = 2), fractional quadrature powers.
    Scenario s;
    s.name = "simplex_sqrt";
    s.density = Density::directional(unit({1, 1, 1}), 2.0);
    s.body = ConvexBody::from_vertices(
        mrows({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
    s.second = ConvexBody::from_vertices(
        mrows({{0.1, 0.1, 0.1}, {0.6, 0.2, 0.2}, {0.2, 0.6, 0.2}, {0.2, 0.2, 0.6}}));
    s.third = ConvexBody::zonotope(0.3 * i3);
    s.basis = i3;
    s.theta = unit({0.3, 1, 0.5});
    s.checks = {"loomis_whitney", "borell", "minkowski_first", "projection_routes",
                "self_mixed", "mixed_linearity"};
    all.push_back(std::move(s));
  }
  {
    // Min-of-linear-forms density over a shifted square.
    Scenario s;
    s.name = "wedge_square";
    s.density = Density::min_linear(mrows({{1, 0.2}, {0.1, 1}}), 1.0);
    s.body = ConvexBody::from_vertices(corner_box(mkvec({0.5, 0.5}), mkvec({1.5, 1.5})));
    s.second = ConvexBody::zonotope(0.4 * i2);
    s.third = ConvexBody::zonotope(0.2 * diag45);
    s.basis = i2;
    s.frame = WeightedFrame::make(i2, Vec::Ones(2));
    s.alphas = mkvec({1, 1});
    s.theta = unit({1, 1});
    s.checks = {"loomis_whitney", "face_bound", "self_mixed", "zonotope_expansion",
                "mixed_linearity", "projection_routes", "borell",
                "directional_monotonicity"};
    all.push_back(std::move(s));
  }
  {
    // Three linear forms, p = 1/2, pentagon body inside the support cone.
    Scenario s;
    s.name = "cone_pentagon";
    s.density = Density::min_linear(mrows({{1, 0.1}, {0.2, 1}, {0.8, 0.6}}), 0.5);
    Mat pent(5, 2);
    for (int k = 0; k < 5; ++k) {
      double a = 2.0 * M_PI * k / 5.0;
      pent(k, 0) = 2.0 + 0.8 * std::cos(a);
      pent(k, 1) = 2.0 + 0.8 * std::sin(a);
    }
    s.body = ConvexBody::from_vertices(pent);
    s.second = ConvexBody::zonotope(0.3 * i2);
    s.third = ConvexBody::zonotope(0.2 * i2);
    s.theta = unit({0.6, 0.8});
    s.checks = {"borell", "minkowski_first", "self_mixed", "projection_routes",
                "mixed_linearity", "directional_monotonicity"};
    all.push_back(std::move(s));
  }
  {
    // Rotated box scenario for the large-p limit study (misaligned basis).
    Scenario s;
    s.name = "limit_misaligned";
    Mat r = rot2(20.0);
    Mat verts = corner_box(mkvec({0, 0}), mkvec({0.8, 1.3})) * r;
    s.body = ConvexBody::from_vertices(shift_rows(verts, mkvec({1.5, 1.8})));
    s.basis = i2;
    s.theta = unit({0.3, 1});
    s.checks = {"lebesgue_limit"};
    all.push_back(std::move(s));
  }
  {
    // Aligned box for the limit study: the classical projection product is
    // an exact equality here.
    Scenario s;
    s.name = "limit_aligned";
    s.body = ConvexBody::from_vertices(corner_box(mkvec({0.5, 0.5}), mkvec({1.5, 2.5})));
    s.basis = i2;
    s.theta = unit({0.4, 1});
    s.checks = {"lebesgue_limit"};
    all.push_back(std::move(s));
  }
  {
    // Halfspace-described triangle.
    Scenario s;
    s.name = "halfspace_triangle";
    s.density = Density::directional(unit({0.6, 0.8}), 1.0);
    s.body = ConvexBody::from_halfspaces(mrows({{-1, 0}, {0, -1}, {M_SQRT1_2, M_SQRT1_2}}),
                                         mkvec({0, 0, M_SQRT2}));
    s.second = ConvexBody::zonotope(0.3 * i2);
    s.third = ConvexBody::zonotope(0.15 * diag45);
    s.theta = unit({1, 0.2});
    s.checks = {"self_mixed", "minkowski_first", "projection_routes", "borell",
                "mixed_linearity"};
    all.push_back(std::move(s));
  }
  {
    // Merged pair of rotated orthonormal bases, four-vector frame.
    Scenario s;
    s.name = "merged_bases";
    Mat r50 = rot2(50.0);
    Mat v(4, 2);
    v.topRows(2) = i2;
    v.bottomRows(2) = r50;
    s.frame = WeightedFrame::make(v, Vec::Constant(4, 0.5));
    s.alphas = mkvec({0.5, 1.0, 0.7, 1.2});
    Mat gens(4, 2);
    for (int i = 0; i < 4; ++i) gens.row(i) = (*s.alphas)[i] * v.row(i);
    s.body = ConvexBody::zonotope(gens);
    s.second = ConvexBody::zonotope(0.4 * i2);
    s.third = ConvexBody::zonotope(0.3 * r50);
    s.density = Density::directional(unit({0.3, 1}), 1.0);
    s.theta = unit({0.3, 1});
    s.checks = {"ball", "zonotope_bound", "isotropy", "gamma_identity",
                "projection_lower_bound", "self_mixed", "zonotope_expansion",
                "mixed_linearity", "projection_routes"};
    all.push_back(std::move(s));
  }
  {
    // Regular-simplex frame in three dimensions.
    Scenario s;
    s.name = "simplex_frame";
    Mat v = mrows({{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}}) / std::sqrt(3.0);
    s.frame = WeightedFrame::make(v, Vec::Constant(4, 0.75));
    s.alphas = mkvec({1.0, 0.9, 1.1, 0.8});
    Mat gens(4, 3);
    for (int i = 0; i < 4; ++i) gens.row(i) = (*s.alphas)[i] * v.row(i);
    s.body = ConvexBody::zonotope(gens);
    s.second = ConvexBody::zonotope(0.4 * i3);
    s.density = Density::directional(unit({1.0, 0.9, 1.1}), 1.0);
    s.theta = unit({1.0, 0.9, 1.1});
    s.checks = {"ball", "zonotope_bound", "isotropy", "gamma_identity", "self_mixed",
                "zonotope_expansion", "projection_routes"};
    all.push_back(std::move(s));
  }
  {
    // Box face bound in three dimensions with a min-linear density.
    Scenario s;
    s.name = "box_face_wedge";
    s.density = Density::min_linear(mrows({{1, 0.2, 0.1}, {0.15, 1, 0.2}, {0.1, 0.1, 1}}),
                                    1.0);
    s.basis = i3;
    s.alphas = mkvec({1.0, 0.7, 1.4});
    s.face_index = 2;
    s.body = ConvexBody::from_vertices(corner_box(mkvec({0.4, 0.4, 0.4}),
                                                  mkvec({1.4, 1.1, 1.8})));
    s.theta = unit({1, 1, 1});
    s.checks = {"face_bound", "loomis_whitney", "scale_invariance", "self_mixed",
                "projection_routes", "directional_monotonicity"};
    all.push_back(std::move(s));
  }
  {
    // Centered diamond with p = 2: the support halfspace cuts through the
    // body, stressing the clipped quadrature path.
    Scenario s;
    s.name = "diamond_clipped";
    s.density = Density::directional(unit({0.4, 1}), 2.0);
    s.body = ConvexBody::box(diag45, mkvec({1, 1}));
    s.second = ConvexBody::box(diag45, mkvec({1.7, 1.7}));
    s.third = ConvexBody::zonotope(0.5 * i2);
    s.theta = unit({1, 0.5});
    s.checks = {"self_mixed", "projection_routes", "borell", "mixed_linearity",
                "minkowski_first"};
    all.push_back(std::move(s));
  }
  {
    // p = 1000: the density is nearly an indicator and the integrand's power
    // is tiny; every route must stay stable.
    Scenario s;
    s.name = "near_indicator";
    s.density = Density::directional(unit({0.3, 1}), 1000.0);
    Mat r = rot2(20.0);
    Mat verts = corner_box(mkvec({0, 0}), mkvec({0.8, 1.3})) * r;
    s.body = ConvexBody::from_vertices(shift_rows(verts, mkvec({1.5, 1.8})));
    s.second = ConvexBody::zonotope(0.4 * i2);
    s.third = ConvexBody::zonotope(0.2 * i2);
    s.basis = i2;
    s.frame = WeightedFrame::make(i2, Vec::Ones(2));
    s.alphas = mkvec({1, 1});
    s.theta = unit({0.3, 1});
    s.checks = {"loomis_whitney", "self_mixed", "projection_routes", "minkowski_first",
                "zonotope_expansion", "mixed_linearity"};
    all.push_back(std::move(s));
  }
  {
    // Hexagonal zonotope from an equiangular triple of generators.
    Scenario s;
    s.name = "hexagon";
    Mat v(3, 2);
    double angles[3] = {15.0, 75.0, 135.0};
    for (int k = 0; k < 3; ++k) {
      double a = angles[k] * M_PI / 180.0;
      v(k, 0) = std::cos(a);
      v(k, 1) = std::sin(a);
    }
    s.frame = WeightedFrame::make(v, Vec::Constant(3, 2.0 / 3.0));
    s.alphas = mkvec({1.0, 0.8, 1.2});
    Mat gens(3, 2);
    for (int i = 0; i < 3; ++i) gens.row(i) = (*s.alphas)[i] * v.row(i);
    s.body = ConvexBody::zonotope(gens);
    s.second = ConvexBody::zonotope(0.3 * i2);
    s.third = ConvexBody::zonotope(0.2 * i2);
    // Both forms point near 60 degrees, so the support cone is wide enough
    // to give every projection-family direction a positive symmetrized value.
    s.density = Density::min_linear(mrows({{0.643, 0.766}, {0.342, 0.940}}), 1.0);
    s.theta = unit({0.8, 1});
    s.checks = {"zonotope_bound", "ball", "projection_lower_bound", "self_mixed",
                "zonotope_expansion", "gamma_identity", "isotropy", "mixed_linearity",
                "projection_routes"};
    all.push_back(std::move(s));
  }
  {
    // Off-center tetrahedron with an asymmetric ramp.
    Scenario s;
    s.name = "tetra_offset";
    s.density = Density::directional(unit({1, 2, 2}), 1.0);
    s.body = ConvexBody::from_vertices(mrows({{0.2, 0.2, 0.2},
                                              {1.2, 0.3, 0.3},
                                              {0.3, 1.2, 0.3},
                                              {0.3, 0.3, 1.2}}));
    s.second = ConvexBody::from_vertices(mrows({{0.3, 0.3, 0.3},
                                                {0.8, 0.35, 0.35},
                                                {0.35, 0.8, 0.35},
                                                {0.35, 0.35, 0.8}}));
    s.third = ConvexBody::zonotope(0.25 * i3);
    s.basis = i3;
    s.alphas = mkvec({1, 1, 1});
    s.theta = unit({0.5, 1, 0.7});
    s.checks = {"loomis_whitney", "face_bound", "minkowski_first", "projection_routes",
                "borell", "self_mixed", "mixed_linearity"};
    all.push_back(std::move(s));
  }
  {
    // Rotated cube and frame in three dimensions, p = 1/2, centered at the
    // origin so the support boundary passes through the body.
    Scenario s;
    s.name = "rotated_cube_sqrt";
    CounterRng rng(20240817, 3);
    Mat r = rng.rotation(3);
    s.density = Density::directional(unit({0.9, 1.0, 1.1}), 0.5);
    s.frame = WeightedFrame::make(r, Vec::Ones(3));
    s.alphas = mkvec({0.9, 1.1, 1.0});
    Mat gens(3, 3);
    for (int i = 0; i < 3; ++i) gens.row(i) = (*s.alphas)[i] * r.row(i);
    s.body = ConvexBody::zonotope(gens);
    s.second = ConvexBody::zonotope(0.4 * i3);
    s.third = ConvexBody::zonotope(0.3 * r);
    s.theta = unit({1, 0.2, 0.4});
    s.checks = {"ball", "self_mixed", "zonotope_expansion", "mixed_linearity",
                "projection_routes", "zonotope_bound", "isotropy"};
    all.push_back(std::move(s));
  }

  for (size_t i = 0; i < all.size(); ++i) all[i].seed = derive_seed(977, i);
  return all;
}

}  // namespace homocone
