#pragma once

// Simple k-vectors (blades) and the Grassmannian quantities derived from them:
// Gram inner products, k-volumes, distance to a subspace and the angle between
// two equi-dimensional subspaces. Blades are kept as their spanning vectors;
// nothing is ever expanded into binomial(n, k) coordinates.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "conelab/error.hpp"

namespace conelab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Relative tolerance below which a blade counts as degenerate.
inline constexpr double kRankTolerance = 1e-10;
/// Allowed deviation of basisᵀ·basis from the identity.
inline constexpr double kOrthoTolerance = 1e-10;

/// The simple k-vector v₁ ∧ … ∧ v_k, stored as the n×k matrix of its factors.
class Blade {
 public:
  Blade() = default;
  explicit Blade(Mat vectors) : vectors_(std::move(vectors)) {
    if (vectors_.cols() < 1 || vectors_.cols() > vectors_.rows()) {
      throw DimensionError("blade grade must satisfy 1 <= k <= n, got k=" +
                           std::to_string(vectors_.cols()) + " n=" + std::to_string(vectors_.rows()));
    }
  }

  [[nodiscard]] int grade() const { return static_cast<int>(vectors_.cols()); }
  [[nodiscard]] int ambient_dim() const { return static_cast<int>(vectors_.rows()); }
  [[nodiscard]] const Mat& vectors() const { return vectors_; }

  /// v₁ ∧ … ∧ v_k ∧ x
  [[nodiscard]] Blade wedge(const Vec& x) const {
    if (x.size() != vectors_.rows()) throw DimensionError("wedge: ambient dimension mismatch");
    Mat m(vectors_.rows(), vectors_.cols() + 1);
    m << vectors_, x;
    return Blade(std::move(m));
  }

 private:
  Mat vectors_;
};

/// ⟨∧vᵢ, ∧wᵢ⟩ = det(⟨vᵢ, wⱼ⟩).
inline double gram_inner(const Blade& a, const Blade& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionError("gram_inner: ambient dimension mismatch");
  if (a.grade() != b.grade()) throw GradeError("gram_inner: grade mismatch");
  const Mat gram = a.vectors().transpose() * b.vectors();
  return gram.partialPivLu().determinant();
}

/// k-volume of the parallelepiped spanned by the factors.
///
/// Evaluated as |∏ Rᵢᵢ| from a Householder QR of the factor matrix, which equals
/// sqrt(gram_inner(a, a)) but keeps full relative accuracy when the blade is close
/// to degenerate. Returns exactly 0 when the volume is below kRankTolerance times
/// the product of the factor norms.
inline double blade_norm(const Blade& a) {
  const Mat& v = a.vectors();
  double scale = 1.0;
  for (Eigen::Index j = 0; j < v.cols(); ++j) scale *= v.col(j).norm();
  if (scale == 0.0) return 0.0;
  const Eigen::HouseholderQR<Mat> qr(v);
  const Mat& r = qr.matrixQR();
  double vol = 1.0;
  for (Eigen::Index j = 0; j < v.cols(); ++j) vol *= std::abs(r(j, j));
  return vol < kRankTolerance * scale ? 0.0 : vol;
}

/// A linear subspace of Rⁿ carried by an orthonormal basis (n×d, d may be 0).
class Subspace {
 public:
  Subspace() = default;

  /// Takes ownership of an orthonormal basis; throws if basisᵀ·basis ≠ I.
  static Subspace from_orthonormal(Mat basis) {
    const Eigen::Index d = basis.cols();
    if (d > 0) {
      const Mat gram = basis.transpose() * basis;
      if ((gram - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > kOrthoTolerance) {
        throw DimensionError("subspace basis is not orthonormal");
      }
    }
    Subspace s;
    s.basis_ = std::move(basis);
    return s;
  }

  /// Span of the columns of `vectors`; singular directions below rel_tol times the
  /// largest singular value are dropped.
  static Subspace span(const Mat& vectors, double rel_tol = kRankTolerance) {
    const auto n = vectors.rows();
    if (vectors.cols() == 0 || vectors.norm() == 0.0) return zero(static_cast<int>(n));
    Eigen::JacobiSVD<Mat> svd(vectors, Eigen::ComputeThinU);
    const Vec& sv = svd.singularValues();
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > rel_tol * sv(0)) ++rank;
    Subspace s;
    s.basis_ = svd.matrixU().leftCols(rank);
    return s;
  }

  static Subspace zero(int n) {
    Subspace s;
    s.basis_ = Mat(n, 0);
    return s;
  }

  static Subspace whole(int n) { return from_orthonormal(Mat::Identity(n, n)); }

  [[nodiscard]] int ambient_dim() const { return static_cast<int>(basis_.rows()); }
  [[nodiscard]] int dim() const { return static_cast<int>(basis_.cols()); }
  [[nodiscard]] const Mat& basis() const { return basis_; }
  [[nodiscard]] Blade blade() const { return Blade(basis_); }

  [[nodiscard]] Vec project(const Vec& x) const { return basis_ * (basis_.transpose() * x); }

 private:
  Mat basis_;
};

/// dist(x, V) = ‖(∧vᵢ) ∧ x‖ / ‖∧vᵢ‖. A zero-dimensional V gives ‖x‖, V = Rⁿ gives 0.
inline double dist_to_subspace(const Vec& x, const Subspace& v) {
  if (x.size() != v.ambient_dim()) throw DimensionError("dist_to_subspace: ambient dimension mismatch");
  if (v.dim() == 0) return x.norm();
  if (x.norm() == 0.0 || v.dim() == v.ambient_dim()) return 0.0;
  const Blade b = v.blade();
  return blade_norm(b.wedge(x)) / blade_norm(b);
}

namespace detail {
inline void require_same_grassmannian(const Subspace& v, const Subspace& w, const char* op) {
  if (v.ambient_dim() != w.ambient_dim() || v.dim() != w.dim()) {
    throw DimensionError(std::string(op) + ": subspaces must share ambient dimension and dimension");
  }
  if (v.dim() == 0) throw DimensionError(std::string(op) + ": undefined for zero-dimensional subspaces");
}
}  // namespace detail

/// cos of the angle between V and W: |⟨∧vᵢ, ∧wᵢ⟩| / (‖∧vᵢ‖ ‖∧wᵢ‖), clamped to [0, 1].
inline double projection_factor(const Subspace& v, const Subspace& w) {
  detail::require_same_grassmannian(v, w, "projection_factor");
  const Blade bv = v.blade();
  const Blade bw = w.blade();
  const double c = std::abs(gram_inner(bv, bw)) / (blade_norm(bv) * blade_norm(bw));
  return std::clamp(c, 0.0, 1.0);
}

/// ang(V, W) in [0, π/2] for equi-dimensional V, W with dim ≥ 1.
inline double subspace_angle(const Subspace& v, const Subspace& w) {
  return std::acos(projection_factor(v, w));
}

/// Angle in [0, π/2] between the lines spanned by two non-zero vectors.
inline double line_angle(const Vec& a, const Vec& b) {
  const double c = std::abs(a.dot(b)) / (a.norm() * b.norm());
  return std::acos(std::clamp(c, 0.0, 1.0));
}

/// Angle in [0, π] between two non-zero vectors.
inline double vector_angle(const Vec& a, const Vec& b) {
  const double c = a.dot(b) / (a.norm() * b.norm());
  return std::acos(std::clamp(c, -1.0, 1.0));
}

/// Angle in [0, π/2] between a non-zero vector and a subspace (π/2 for the zero subspace).
inline double angle_to_subspace(const Vec& x, const Subspace& v) {
  if (v.dim() == 0) return std::numbers::pi / 2;
  const double s = dist_to_subspace(x, v) / x.norm();
  return std::asin(std::clamp(s, 0.0, 1.0));
}

}  // namespace conelab
