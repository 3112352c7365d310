#pragma once

#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "conelab/error.hpp"
#include "conelab/exterior.hpp"
#include "conelab/kdtree.hpp"

namespace conelab {

/// Ball inside which the declared resolution holds.
struct Region {
  Vec center;
  double radius = 1.0;
};

/// Optional annotations carried alongside the samples.
struct SetMetadata {
  std::optional<std::string> generator_id;
  /// For graphs of functions: the first `graph_domain_dim` coordinates are the domain.
  std::optional<int> graph_domain_dim;
  /// For matrix-group samples flattened row-major into R^{rows·cols}.
  std::optional<std::pair<int, int>> matrix_shape;
  /// Hypotheses of the manifold theorems that samples cannot certify.
  bool locally_compact = true;
  bool topological_manifold = true;
  /// Points of interest chosen by the generator (columns); may be empty.
  Mat test_points;
};

/// A finite, immutable point sample of a set F ⊂ Rⁿ with exact distance queries.
///
/// `delta` bounds the distance from any point of the intended set inside `region`
/// to the nearest sample. `scale` is the characteristic length used to seed scale
/// ladders (the first blow-up scale defaults to 0.1·scale).
class SampledSet {
 public:
  /// Below this many samples distance queries scan every point.
  static constexpr Eigen::Index kExhaustiveLimit = 5000;

  SampledSet() = default;

  SampledSet(Mat points, double delta, Region region, double scale, SetMetadata meta = {})
      : delta_(delta), region_(std::move(region)), scale_(scale), meta_(std::move(meta)) {
    if (points.cols() == 0) throw EmptySetError("sampled set has no points");
    if (!(delta > 0.0) || !std::isfinite(delta)) throw InputError("resolution delta must be positive and finite");
    if (!(scale > 0.0)) throw InputError("length scale must be positive");
    if (!points.allFinite()) throw InputError("sample coordinates must be finite");
    if (region_.center.size() == 0) region_.center = Vec::Zero(points.rows());
    if (region_.center.size() != points.rows()) throw DimensionError("region center dimension mismatch");
    storage_ = std::make_shared<Storage>(std::move(points));
  }

  [[nodiscard]] int ambient_dim() const { return storage_ ? static_cast<int>(storage_->points.rows()) : 0; }
  [[nodiscard]] Eigen::Index size() const { return storage_ ? storage_->points.cols() : 0; }
  [[nodiscard]] bool empty() const { return size() == 0; }
  [[nodiscard]] const Mat& points() const { return storage_->points; }
  [[nodiscard]] Vec point(Eigen::Index i) const { return storage_->points.col(i); }
  [[nodiscard]] double delta() const { return delta_; }
  [[nodiscard]] const Region& region() const { return region_; }
  [[nodiscard]] double scale() const { return scale_; }
  [[nodiscard]] const SetMetadata& metadata() const { return meta_; }

  /// Copy with replaced metadata; shares the sample storage.
  [[nodiscard]] SampledSet with_metadata(SetMetadata meta) const {
    SampledSet s = *this;
    s.meta_ = std::move(meta);
    return s;
  }

  /// dist(x, F) = min over samples of ‖x − p‖.
  [[nodiscard]] double dist_query(const Eigen::Ref<const Vec>& x) const {
    require_query(x);
    const Mat& pts = storage_->points;
    if (pts.cols() < kExhaustiveLimit) {
      return std::sqrt((pts.colwise() - x).colwise().squaredNorm().minCoeff());
    }
    return std::sqrt(storage_->tree.nearest_squared(x));
  }

  /// Indices of all samples p with ‖p − x‖ ≤ radius, ascending.
  [[nodiscard]] std::vector<int> neighbor_indices(const Eigen::Ref<const Vec>& x, double radius) const {
    require_query(x);
    if (radius < 0.0) return {};
    const Mat& pts = storage_->points;
    if (pts.cols() < kExhaustiveLimit) {
      std::vector<int> out;
      const double r2 = radius * radius;
      for (Eigen::Index i = 0; i < pts.cols(); ++i) {
        if ((pts.col(i) - x).squaredNorm() <= r2) out.push_back(static_cast<int>(i));
      }
      return out;
    }
    return storage_->tree.within(x, radius);
  }

  /// All samples within `radius` of x, as columns.
  [[nodiscard]] Mat neighbors_within(const Eigen::Ref<const Vec>& x, double radius) const {
    const auto idx = neighbor_indices(x, radius);
    Mat out(ambient_dim(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t j = 0; j < idx.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = storage_->points.col(idx[j]);
    return out;
  }

  /// Index of a sample closest to x (lowest index on ties).
  [[nodiscard]] int nearest_index(const Eigen::Ref<const Vec>& x) const {
    const double d = dist_query(x);
    const auto idx = neighbor_indices(x, d * (1.0 + 1e-12) + 1e-300);
    if (idx.empty()) throw EmptySetError("nearest_index: no sample found");
    int best = idx.front();
    double best_d = (storage_->points.col(best) - x).squaredNorm();
    for (int i : idx) {
      const double di = (storage_->points.col(i) - x).squaredNorm();
      if (di < best_d) {
        best = i;
        best_d = di;
      }
    }
    return best;
  }

 private:
  struct Storage {
    explicit Storage(Mat p) : points(std::move(p)), tree(points) {}
    Storage(const Storage&) = delete;
    Storage& operator=(const Storage&) = delete;
    Mat points;
    KdTree tree;
  };

  void require_query(const Eigen::Ref<const Vec>& x) const {
    if (!storage_) throw EmptySetError("query against an empty sampled set");
    if (x.size() != storage_->points.rows()) throw DimensionError("query dimension does not match the set");
  }

  std::shared_ptr<const Storage> storage_;
  double delta_ = 1.0;
  Region region_;
  double scale_ = 1.0;
  SetMetadata meta_;
};

}  // namespace conelab
