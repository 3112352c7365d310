#pragma once

// Matrix groups near the identity, flattened row-major into R^{n²} with the Frobenius
// inner product. The Lie algebra is recovered as the linear hull of the upper tangent
// cone at E.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "conelab/classify.hpp"
#include "conelab/cones.hpp"
#include "conelab/error.hpp"
#include "conelab/exterior.hpp"
#include "conelab/sampled_set.hpp"
#include "conelab/subspaces.hpp"

namespace conelab {

/// Row-major flattening of an n×n matrix.
inline Vec flatten(const Mat& m) {
  Vec v(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  }
  return v;
}

inline Mat unflatten(const Vec& v, int n) {
  if (v.size() != static_cast<Eigen::Index>(n) * n) throw DimensionError("unflatten: size is not n²");
  Mat m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = v(i * n + j);
  }
  return m;
}

inline const std::vector<std::string>& group_names() {
  static const std::vector<std::string> names{"SO2", "SO3", "diag_pos", "unipotent_upper", "custom"};
  return names;
}

/// Frobenius-normalized generators of the analytic Lie algebra.
inline std::vector<Mat> analytic_generators(const std::string& name, int n) {
  std::vector<Mat> g;
  const auto unit = [n](int i, int j) {
    Mat m = Mat::Zero(n, n);
    m(i, j) = 1.0;
    return m;
  };
  if (name == "SO2" || name == "SO3") {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) g.push_back((unit(j, i) - unit(i, j)) / std::sqrt(2.0));
    }
  } else if (name == "diag_pos") {
    for (int i = 0; i < n; ++i) g.push_back(unit(i, i));
  } else if (name == "unipotent_upper") {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) g.push_back(unit(i, j));
    }
  } else {
    throw CatalogError("unknown matrix group: " + name);
  }
  return g;
}

/// Orthonormal basis (columns in R^{n²}) of the span of the given matrices.
inline Subspace algebra_subspace(const std::vector<Mat>& gens, int n) {
  Mat cols(static_cast<Eigen::Index>(n) * n, static_cast<Eigen::Index>(gens.size()));
  for (std::size_t j = 0; j < gens.size(); ++j) cols.col(static_cast<Eigen::Index>(j)) = flatten(gens[j]);
  return Subspace::span(cols);
}

struct GroupSampleParams {
  /// Rays exp(tξ) for t in a geometric ladder from t_max down to t_min.
  double t_max = 0.2;
  double t_min = 1e-5;
  /// Ratio between consecutive ray radii.
  double ray_ratio = std::pow(2.0, 1.0 / 16.0);
  /// Random unit algebra directions added to the generator frame, per algebra dimension.
  int random_per_dim = 2;
  /// Non-identity anchors A, each with its own rays A·exp(tξ) and those of A⁻¹.
  int anchors = 5;
  double anchor_radius = 0.5;
  /// Dense lattice exp(Σ cᵢξᵢ), |cᵢ| ≤ core_radius, for algebras of dimension ≤ 3.
  double core_radius = 0.04;
  double core_spacing = 1e-3;
  std::uint64_t seed = kDefaultSeed;
  /// Generators for the "custom" group.
  std::vector<Mat> custom;
};

struct MatrixGroupSample {
  std::string name;
  int n = 0;
  SampledSet set;
  /// Analytic (or user-declared) algebra basis.
  std::vector<Mat> generators;
  /// Ray directions: the frame followed by random unit algebra elements.
  std::vector<Mat> ray_generators;
  std::vector<double> radii;
  std::vector<Mat> anchors;
  bool has_core = false;
};

/// A·exp(tξ) for the given anchor, all ray generators and ±radii.
inline void append_rays(std::vector<Vec>& out, const Mat& a, const std::vector<Mat>& gens,
                        const std::vector<double>& radii) {
  for (const Mat& xi : gens) {
    for (double t : radii) {
      for (double s : {t, -t}) {
        const Mat e = (s * xi).exp();
        out.push_back(flatten(a * e));
      }
    }
  }
}

inline MatrixGroupSample sample_group(const std::string& name, int n, const GroupSampleParams& p = {}) {
  MatrixGroupSample g;
  g.name = name;
  if (name == "SO2") n = 2;
  if (name == "SO3" || name == "unipotent_upper") n = name == "SO3" ? 3 : std::max(n, 2);
  if (n < 1) throw InputError("matrix size must be positive");
  g.n = n;
  if (name == "custom") {
    if (p.custom.empty()) throw InputError("custom group needs generators");
    for (const Mat& m : p.custom) {
      if (m.rows() != n || m.cols() != n) throw DimensionError("custom generator has the wrong shape");
      g.generators.push_back(m / m.norm());
    }
  } else {
    g.generators = analytic_generators(name, n);
  }
  const auto m = static_cast<int>(g.generators.size());

  std::mt19937_64 rng(p.seed);
  std::normal_distribution<double> gauss;
  g.ray_generators = g.generators;
  for (int r = 0; r < p.random_per_dim * m; ++r) {
    Mat xi = Mat::Zero(n, n);
    for (const Mat& b : g.generators) xi += gauss(rng) * b;
    if (xi.norm() > 0.0) g.ray_generators.push_back(xi / xi.norm());
  }
  for (double t = p.t_max; t >= p.t_min; t /= p.ray_ratio) g.radii.push_back(t);

  std::vector<Vec> pts;
  const Mat e = Mat::Identity(n, n);
  pts.push_back(flatten(e));
  append_rays(pts, e, g.ray_generators, g.radii);

  for (int a = 0; a < p.anchors; ++a) {
    Mat zeta = Mat::Zero(n, n);
    for (const Mat& b : g.generators) zeta += gauss(rng) * b;
    const Mat anchor = (p.anchor_radius * zeta / zeta.norm()).exp();
    g.anchors.push_back(anchor);
    pts.push_back(flatten(anchor));
    append_rays(pts, anchor, g.ray_generators, g.radii);
    // Inverses: (A exp(tξ))⁻¹ = A⁻¹ exp(−t AξA⁻¹).
    const Mat inv = anchor.inverse();
    std::vector<Mat> conj;
    for (const Mat& xi : g.ray_generators) conj.push_back(anchor * xi * inv);
    pts.push_back(flatten(inv));
    append_rays(pts, inv, conj, g.radii);
  }

  // δ: covering radius of the core lattice, or the radial gap of the rays at t_min.
  double delta = p.t_min * (p.ray_ratio - 1.0);
  if (m <= 3 && p.core_spacing > 0.0) {
    g.has_core = true;
    const int steps = static_cast<int>(std::ceil(p.core_radius / p.core_spacing));
    std::vector<int> idx(static_cast<std::size_t>(m), -steps);
    while (true) {
      Mat x = Mat::Zero(n, n);
      for (int i = 0; i < m; ++i) x += (idx[static_cast<std::size_t>(i)] * p.core_spacing) * g.generators[i];
      pts.push_back(flatten(x.exp()));
      int k = 0;
      while (k < m && ++idx[static_cast<std::size_t>(k)] > steps) idx[static_cast<std::size_t>(k++)] = -steps;
      if (k == m) break;
    }
    // exp is 1.1-Lipschitz on the core ball for these unit generators.
    delta = 1.1 * p.core_spacing * std::sqrt(static_cast<double>(m)) / 2.0;
  }

  SetMetadata meta;
  meta.generator_id = "group:" + name;
  meta.matrix_shape = std::make_pair(n, n);
  meta.test_points = flatten(e);
  Mat cols(static_cast<Eigen::Index>(n) * n, static_cast<Eigen::Index>(pts.size()));
  for (std::size_t j = 0; j < pts.size(); ++j) cols.col(static_cast<Eigen::Index>(j)) = pts[j];
  g.set = SampledSet(std::move(cols), delta, Region{flatten(e), p.core_radius}, 0.2, meta);
  return g;
}

struct GroupParams {
  double lambda0 = 0.02;
  double ratio = 0.5;
  int max_scales = 10;
  double tau = kDefaultTau;
  int max_bases = kDefaultMaxBases;
  double sigma_tol = kDefaultSigmaTol;
  std::uint64_t seed = kDefaultSeed;
};

inline ScaleLadder group_ladder(const MatrixGroupSample& g, const GroupParams& p) {
  return ScaleLadder::fit(p.lambda0, p.ratio, p.max_scales, g.set.delta());
}

/// Random grid in R^{n²} plus the secant directions (A·exp(tξ) − A)/‖·‖ for the radii
/// that fall inside the ladder.
inline std::shared_ptr<const DirectionGrid> group_grid(const MatrixGroupSample& g, const Mat& a,
                                                       const ScaleLadder& ladder, std::uint64_t seed) {
  std::vector<Vec> extra;
  for (const Mat& xi : g.ray_generators) {
    for (double t : g.radii) {
      if (t > ladder.lambda0 || t < ladder.smallest() / 2.0) continue;
      for (double s : {t, -t}) {
        const Vec d = flatten(a * (s * xi).exp() - a);
        extra.push_back(d / d.norm());
      }
    }
  }
  const int dim = g.n * g.n;
  Mat cols(dim, static_cast<Eigen::Index>(extra.size()));
  for (std::size_t j = 0; j < extra.size(); ++j) cols.col(static_cast<Eigen::Index>(j)) = extra[j];
  return std::make_shared<const DirectionGrid>(DirectionGrid::default_for(dim, seed).with_directions(cols));
}

struct TangentSpaceEstimate {
  Vec base_point;
  ConeEstimate cone;
  Subspace hull;
};

/// Linear hull of Tan⁺ at the element `a` (flattened sample point).
inline TangentSpaceEstimate tangent_space_at(const MatrixGroupSample& g, const Mat& a, const GroupParams& p = {}) {
  const ScaleLadder ladder = group_ladder(g, p);
  const auto grid = group_grid(g, a, ladder, p.seed);
  const Vec x = flatten(a);
  TangentSpaceEstimate t{x, estimate_cone(g.set, x, ConeKind::UpperTangent, ladder, grid, p.tau, 0), {}};
  t.hull = linear_hull(t.cone, p.sigma_tol);
  return t;
}

/// The candidate Lie algebra: hull of Tan⁺(G, E).
inline TangentSpaceEstimate estimate_infinitesimal_group(const MatrixGroupSample& g, const GroupParams& p = {}) {
  return tangent_space_at(g, Mat::Identity(g.n, g.n), p);
}

/// max over basis pairs of dist([X, Y], J) / (‖X‖‖Y‖).
inline double bracket_closure_check(const Subspace& j, int n) {
  if (j.dim() < 1) throw InputError("bracket check needs a subspace of dimension at least 1");
  if (j.ambient_dim() != n * n) throw DimensionError("bracket check: subspace is not in R^{n²}");
  double worst = 0.0;
  for (int a = 0; a < j.dim(); ++a) {
    for (int b = a + 1; b < j.dim(); ++b) {
      const Mat x = unflatten(j.basis().col(a), n);
      const Mat y = unflatten(j.basis().col(b), n);
      const Vec br = flatten(x * y - y * x);
      worst = std::max(worst, dist_to_subspace(br, j) / (x.norm() * y.norm()));
    }
  }
  return worst;
}

/// Angle between hull Tan⁺(G, A) and A·hull Tan⁺(G, E); π/2 when the dimensions differ.
inline double translation_covariance_check(const MatrixGroupSample& g, const Mat& a, const Subspace& algebra,
                                           const GroupParams& p = {}) {
  const Subspace at = tangent_space_at(g, a, p).hull;
  Mat moved(algebra.ambient_dim(), algebra.dim());
  for (int j = 0; j < algebra.dim(); ++j) moved.col(j) = flatten(a * unflatten(algebra.basis().col(j), g.n));
  const Subspace translated = Subspace::span(moved);
  if (translated.dim() != at.dim() || at.dim() == 0) return std::numbers::pi / 2;
  if (at.dim() == at.ambient_dim()) return 0.0;
  return subspace_angle(at, translated);
}

struct IdentityConeReport {
  std::array<int, 4> member_counts{};
  std::array<int, 4> hull_dims{};
  double defect_para = 0.0;  // pTan⁺ vs pTan⁻
  double defect_tan = 0.0;   // Tan⁺ vs Tan⁻
  double defect_tol = 0.0;
  Verdict verdict = Verdict::Pass;
};

inline IdentityConeReport four_cones_check_at_identity(const MatrixGroupSample& g, const GroupParams& p = {}) {
  const ScaleLadder ladder = group_ladder(g, p);
  const Mat e = Mat::Identity(g.n, g.n);
  const auto grid = group_grid(g, e, ladder, p.seed);
  const auto cones = estimate_all_cones(g.set, flatten(e), ladder, grid, p.tau, p.max_bases);
  IdentityConeReport r;
  for (std::size_t i = 0; i < 4; ++i) {
    r.member_counts[i] = static_cast<int>(cones[i].member_indices().size());
    r.hull_dims[i] = linear_hull(cones[i], p.sigma_tol).dim();
  }
  r.defect_para = coincidence_defect(cones[3], cones[0]);
  r.defect_tan = coincidence_defect(cones[2], cones[1]);
  r.defect_tol = 2.0 * grid->mesh() + 0.05;
  r.verdict = r.defect_para <= r.defect_tol ? Verdict::Pass : Verdict::Fail;
  return r;
}

}  // namespace conelab
