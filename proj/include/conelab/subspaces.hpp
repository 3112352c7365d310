#pragma once

// Linear hulls of cone estimates, the vector-space test for cones, and continuity
// of subspace-valued maps measured by subspace angles.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "conelab/cones.hpp"
#include "conelab/error.hpp"
#include "conelab/exterior.hpp"

namespace conelab {

/// Singular values below this fraction of the largest do not count toward a hull dimension.
inline constexpr double kDefaultSigmaTol = 0.25;
/// Slack on τ when checking that a cone fills its hull.
inline constexpr double kDefaultVectorSpaceTol = 0.05;

/// Singular values of the member-direction matrix, largest first (empty if no members).
inline Vec hull_singular_values(const Mat& members) {
  if (members.cols() == 0) return Vec(0);
  return Eigen::JacobiSVD<Mat>(members).singularValues();
}

/// Span of a set of unit directions (columns), thresholded at σ_tol·σ_max.
inline Subspace linear_hull(const Mat& members, int ambient_dim, double sigma_tol = kDefaultSigmaTol) {
  if (members.cols() == 0) return Subspace::zero(ambient_dim);
  return Subspace::span(members, sigma_tol);
}

inline Subspace linear_hull(const ConeEstimate& cone, double sigma_tol = kDefaultSigmaTol) {
  return linear_hull(cone.member_directions(), cone.grid->dim(), sigma_tol);
}

/// Grid directions within half a mesh of `hull` (all of them when the hull is the whole space).
inline std::vector<int> grid_trace(const DirectionGrid& grid, const Subspace& hull) {
  std::vector<int> out;
  if (hull.dim() == 0) return out;
  const double half = grid.mesh() / 2.0;
  for (int j = 0; j < grid.size(); ++j) {
    if (angle_to_subspace(grid.direction(j), hull) <= half + 1e-12) out.push_back(j);
  }
  return out;
}

struct VectorSpaceCheck {
  bool is_space = true;
  /// Largest score excess over τ + tol among the checked directions (≤ 0 when passing).
  double margin = -std::numeric_limits<double>::infinity();
  /// Largest score among the checked directions (0 when none).
  double worst_score = 0.0;
  int hull_dim = 0;
  int checked = 0;
};

/// Whether the cone estimate fills its own linear hull.
inline VectorSpaceCheck is_vector_space(const ConeEstimate& cone, double tol = kDefaultVectorSpaceTol,
                                        double sigma_tol = kDefaultSigmaTol) {
  VectorSpaceCheck r;
  const Subspace hull = linear_hull(cone, sigma_tol);
  r.hull_dim = hull.dim();
  const auto trace = grid_trace(*cone.grid, hull);
  r.checked = static_cast<int>(trace.size());
  for (int j : trace) r.worst_score = std::max(r.worst_score, cone.scores(j));
  r.margin = r.worst_score - (cone.tau + tol);
  if (trace.empty()) r.margin = -tol;
  r.is_space = r.margin <= 0.0;
  return r;
}

/// A map x ↦ V(x) sampled at finitely many base points.
struct SubspaceField {
  Mat points;  // columns
  std::vector<Subspace> spaces;

  [[nodiscard]] int ambient_dim() const { return static_cast<int>(points.rows()); }
  [[nodiscard]] int size() const { return static_cast<int>(spaces.size()); }

  void push_back(const Vec& p, Subspace s) {
    if (points.cols() == 0) points.resize(p.size(), 0);
    if (p.size() != points.rows() || s.ambient_dim() != p.size()) {
      throw DimensionError("subspace field entries must share the ambient dimension");
    }
    points.conservativeResize(Eigen::NoChange, points.cols() + 1);
    points.col(points.cols() - 1) = p;
    spaces.push_back(std::move(s));
  }
};

struct ContinuityDefect {
  /// max angle between V(y) and V(x) over neighbors y within the probe radius.
  double defect = 0.0;
  double radius = 0.0;
  int neighbors = 0;
  bool dim_mismatch = false;
};

/// Angle defect of the field at entry `at` over neighbors within `radius`.
inline ContinuityDefect field_continuity(const SubspaceField& field, int at, double radius) {
  if (at < 0 || at >= field.size()) throw InputError("field_continuity: index out of range");
  ContinuityDefect r;
  r.radius = radius;
  const Vec x = field.points.col(at);
  const Subspace& vx = field.spaces[static_cast<std::size_t>(at)];
  for (int i = 0; i < field.size(); ++i) {
    if (i == at || (field.points.col(i) - x).norm() > radius) continue;
    ++r.neighbors;
    const Subspace& vy = field.spaces[static_cast<std::size_t>(i)];
    if (vy.dim() != vx.dim()) {
      r.dim_mismatch = true;
      continue;
    }
    if (vx.dim() == 0 || vx.dim() == vx.ambient_dim()) continue;
    r.defect = std::max(r.defect, subspace_angle(vy, vx));
  }
  if (r.neighbors == 0) throw InsufficientDataError("field_continuity: no other field point within the probe radius");
  return r;
}

// Kuratowski limits of a finite tail of subspaces, measured by distances.

/// max over an orthonormal basis b of V of dist(b, V_m): small iff V ⊂ Li V_m along the tail.
inline double lower_limit_gap(const Subspace& vm, const Subspace& v) {
  double g = 0.0;
  for (Eigen::Index j = 0; j < v.basis().cols(); ++j) g = std::max(g, dist_to_subspace(v.basis().col(j), vm));
  return g;
}

/// max over an orthonormal basis u of V_m of dist(u, V): small iff Ls V_m ⊂ V along the tail.
inline double upper_limit_gap(const Subspace& vm, const Subspace& v) { return lower_limit_gap(v, vm); }

}  // namespace conelab
