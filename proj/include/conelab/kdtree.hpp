#pragma once

// Exact nearest-distance and fixed-radius queries over a static point set.
// Points are copied into tree order; each node keeps its bounding box so that
// pruning uses the true distance from the query to the box.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace conelab {

class KdTree {
 public:
  static constexpr int kLeafSize = 8;

  KdTree() = default;

  /// Points are the columns of `points`.
  explicit KdTree(const Eigen::MatrixXd& points) : dim_(static_cast<int>(points.rows())) {
    const auto count = static_cast<int>(points.cols());
    index_.resize(count);
    std::iota(index_.begin(), index_.end(), 0);
    if (count == 0) return;
    nodes_.reserve(2 * static_cast<std::size_t>(count / kLeafSize + 1));
    build(points, 0, count);
    coords_.resize(static_cast<std::size_t>(count) * dim_);
    for (int i = 0; i < count; ++i) {
      for (int d = 0; d < dim_; ++d) coords_[static_cast<std::size_t>(i) * dim_ + d] = points(d, index_[i]);
    }
  }

  /// Squared distance from q to the closest point.
  [[nodiscard]] double nearest_squared(const Eigen::Ref<const Eigen::VectorXd>& q) const {
    double best = std::numeric_limits<double>::infinity();
    if (nodes_.empty()) return best;
    nearest(0, q.data(), box_distance(0, q.data()), best);
    return best;
  }

  /// Column indices of all points p with ‖p − q‖ ≤ radius, in ascending index order.
  [[nodiscard]] std::vector<int> within(const Eigen::Ref<const Eigen::VectorXd>& q, double radius) const {
    std::vector<int> out;
    if (!nodes_.empty()) collect(0, q.data(), radius * radius, out);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  struct Node {
    int begin = 0;
    int end = 0;
    int left = -1;
    int right = -1;
    std::size_t box = 0;  // offset of [lo..., hi...] in boxes_
  };

  int build(const Eigen::MatrixXd& pts, int begin, int end) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(Node{begin, end, -1, -1, boxes_.size()});
    boxes_.resize(boxes_.size() + 2 * static_cast<std::size_t>(dim_));
    double* lo = &boxes_[nodes_[id].box];
    double* hi = lo + dim_;
    for (int d = 0; d < dim_; ++d) {
      lo[d] = std::numeric_limits<double>::infinity();
      hi[d] = -lo[d];
    }
    for (int i = begin; i < end; ++i) {
      for (int d = 0; d < dim_; ++d) {
        const double v = pts(d, index_[i]);
        lo[d] = std::min(lo[d], v);
        hi[d] = std::max(hi[d], v);
      }
    }
    if (end - begin <= kLeafSize) return id;
    int split_dim = 0;
    double spread = -1.0;
    for (int d = 0; d < dim_; ++d) {
      if (hi[d] - lo[d] > spread) {
        spread = hi[d] - lo[d];
        split_dim = d;
      }
    }
    if (spread <= 0.0) return id;  // all coincident
    const int mid = begin + (end - begin) / 2;
    std::nth_element(index_.begin() + begin, index_.begin() + mid, index_.begin() + end,
                     [&](int a, int b) { return pts(split_dim, a) < pts(split_dim, b); });
    const int left = build(pts, begin, mid);
    const int right = build(pts, mid, end);
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
  }

  [[nodiscard]] double box_distance(int id, const double* q) const {
    const double* lo = &boxes_[nodes_[id].box];
    const double* hi = lo + dim_;
    double s = 0.0;
    for (int d = 0; d < dim_; ++d) {
      const double e = q[d] < lo[d] ? lo[d] - q[d] : (q[d] > hi[d] ? q[d] - hi[d] : 0.0);
      s += e * e;
    }
    return s;
  }

  [[nodiscard]] double point_distance(int i, const double* q) const {
    const double* p = &coords_[static_cast<std::size_t>(i) * dim_];
    double s = 0.0;
    for (int d = 0; d < dim_; ++d) {
      const double e = p[d] - q[d];
      s += e * e;
    }
    return s;
  }

  void nearest(int id, const double* q, double box_d, double& best) const {
    if (box_d >= best) return;
    const Node& node = nodes_[id];
    if (node.left < 0) {
      for (int i = node.begin; i < node.end; ++i) best = std::min(best, point_distance(i, q));
      return;
    }
    const double dl = box_distance(node.left, q);
    const double dr = box_distance(node.right, q);
    if (dl <= dr) {
      nearest(node.left, q, dl, best);
      nearest(node.right, q, dr, best);
    } else {
      nearest(node.right, q, dr, best);
      nearest(node.left, q, dl, best);
    }
  }

  void collect(int id, const double* q, double r2, std::vector<int>& out) const {
    if (box_distance(id, q) > r2) return;
    const Node& node = nodes_[id];
    if (node.left < 0) {
      for (int i = node.begin; i < node.end; ++i) {
        if (point_distance(i, q) <= r2) out.push_back(index_[i]);
      }
      return;
    }
    collect(node.left, q, r2, out);
    collect(node.right, q, r2, out);
  }

  int dim_ = 0;
  std::vector<int> index_;
  std::vector<double> coords_;
  std::vector<double> boxes_;
  std::vector<Node> nodes_;
};

}  // namespace conelab
