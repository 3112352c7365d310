#pragma once

// Multiscale estimation of the four tangent cones of a sampled set at a base point.
//
// For a direction v and a blow-up scale λ the basic quantity is the normalized
// distance q(y, v, λ) = dist(y + λv, F) / λ. Over a geometric ladder λ₀ > λ₁ > … :
//
//   upper tangent        Tan⁺ : min_k q(x, v, λ_k)
//   lower tangent        Tan⁻ : max_k q(x, v, λ_k)
//   upper paratangent   pTan⁺ : min_k min_{y ∈ B_k} q(y, v, λ_k)
//   lower paratangent   pTan⁻ : max_k max_{y ∈ B_k} q(y, v, λ_k)
//
// where B_k holds x together with samples within ρ_k = sqrt(λ₀ λ_k) of x. Since x
// belongs to every B_k the four scores are ordered for every direction, so the
// member sets {v : score(v) ≤ τ} always satisfy pTan⁻ ⊂ Tan⁻ ⊂ Tan⁺ ⊂ pTan⁺.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "conelab/error.hpp"
#include "conelab/exterior.hpp"
#include "conelab/sampled_set.hpp"

namespace conelab {

/// Smallest admissible ratio λ_min / δ.
inline constexpr double kFloorFactor = 8.0;
inline constexpr double kDefaultTau = 0.15;
/// Base points y ≠ x per scale for the paratangent cones.
inline constexpr int kDefaultMaxBases = 16;
inline constexpr std::uint64_t kDefaultSeed = 20240917ULL;

enum class ConeKind { LowerParatangent, LowerTangent, UpperTangent, UpperParatangent };

inline constexpr std::array<ConeKind, 4> kAllConeKinds = {ConeKind::LowerParatangent, ConeKind::LowerTangent,
                                                          ConeKind::UpperTangent, ConeKind::UpperParatangent};

inline std::string_view to_string(ConeKind kind) {
  switch (kind) {
    case ConeKind::LowerParatangent: return "pTan-";
    case ConeKind::LowerTangent: return "Tan-";
    case ConeKind::UpperTangent: return "Tan+";
    case ConeKind::UpperParatangent: return "pTan+";
  }
  return "?";
}

inline ConeKind cone_kind_from_string(std::string_view s) {
  for (ConeKind k : kAllConeKinds) {
    if (s == to_string(k)) return k;
  }
  if (s == "lower-paratangent" || s == "clarke") return ConeKind::LowerParatangent;
  if (s == "lower-tangent" || s == "adjacent") return ConeKind::LowerTangent;
  if (s == "upper-tangent" || s == "contingent") return ConeKind::UpperTangent;
  if (s == "upper-paratangent" || s == "paratingent") return ConeKind::UpperParatangent;
  throw InputError("unknown cone kind: " + std::string(s));
}

/// Geometric blow-up scales λ_k = λ₀ rᵏ, k = 0 … K−1.
struct ScaleLadder {
  double lambda0 = 0.1;
  double ratio = 0.5;
  int count = 10;

  [[nodiscard]] double scale(int k) const { return lambda0 * std::pow(ratio, k); }
  [[nodiscard]] double smallest() const { return scale(count - 1); }

  [[nodiscard]] std::vector<double> scales() const {
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) out[static_cast<std::size_t>(k)] = scale(k);
    return out;
  }

  /// Base points for the paratangent cones range over the ball of radius ρ_k = λ₀ at
  /// every scale, so tangencies of order λ_k ≈ ‖y − x‖² are still seen at small λ_k.
  [[nodiscard]] std::vector<double> base_radii() const {
    return std::vector<double>(static_cast<std::size_t>(count), lambda0);
  }

  /// Throws ScaleError unless the ladder is well formed and λ_min ≥ kFloorFactor·δ.
  void validate(double delta) const {
    if (!(lambda0 > 0.0) || !(ratio > 0.0 && ratio < 1.0) || count < 2) {
      throw ScaleError("scale ladder needs lambda0 > 0, ratio in (0,1) and at least two scales");
    }
    if (smallest() < kFloorFactor * delta * (1.0 - 1e-12)) {
      throw ScaleError("smallest scale " + std::to_string(smallest()) + " is below " +
                       std::to_string(kFloorFactor) + " x resolution " + std::to_string(delta));
    }
  }

  /// Longest ladder with at most `max_count` scales that respects the resolution floor.
  static ScaleLadder fit(double lambda0, double ratio, int max_count, double delta) {
    ScaleLadder ladder{lambda0, ratio, 1};
    while (ladder.count < max_count && ladder.scale(ladder.count) >= kFloorFactor * delta) ++ladder.count;
    ladder.validate(delta);
    return ladder;
  }
};

enum class GridScheme { Signs1d, Angular2d, Fibonacci3d, RandomNd, Custom };

inline std::string_view to_string(GridScheme s) {
  switch (s) {
    case GridScheme::Signs1d: return "signs-1d";
    case GridScheme::Angular2d: return "angular-2d";
    case GridScheme::Fibonacci3d: return "fibonacci-3d";
    case GridScheme::RandomNd: return "random-quasi-uniform-nd";
    case GridScheme::Custom: return "custom";
  }
  return "?";
}

/// Finite set of unit directions with a bound on the angular gap between neighbours.
class DirectionGrid {
 public:
  DirectionGrid() = default;
  DirectionGrid(Mat dirs, GridScheme scheme, double mesh) : dirs_(std::move(dirs)), scheme_(scheme), mesh_(mesh) {}

  static DirectionGrid signs_1d() {
    Mat d(1, 2);
    d << 1.0, -1.0;
    return {std::move(d), GridScheme::Signs1d, std::numbers::pi};
  }

  /// N equally spaced angles; N even keeps ±v pairs.
  static DirectionGrid angular_2d(int count = 720) {
    Mat d(2, count);
    for (int j = 0; j < count; ++j) {
      const double a = 2.0 * std::numbers::pi * j / count;
      d(0, j) = std::cos(a);
      d(1, j) = std::sin(a);
    }
    return {std::move(d), GridScheme::Angular2d, 2.0 * std::numbers::pi / count};
  }

  /// Golden-spiral points on S².
  static DirectionGrid fibonacci_3d(int count = 2000) {
    Mat d(3, count);
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int j = 0; j < count; ++j) {
      const double z = 1.0 - (2.0 * j + 1.0) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      d(0, j) = r * std::cos(golden * j);
      d(1, j) = r * std::sin(golden * j);
      d(2, j) = z;
    }
    return {d, GridScheme::Fibonacci3d, 2.0 * covering_angle(d, kDefaultSeed)};
  }

  /// Normalized Gaussian directions from a fixed seed (count defaults to 50·n²).
  static DirectionGrid random_nd(int n, int count = 0, std::uint64_t seed = kDefaultSeed) {
    if (count <= 0) count = 50 * n * n;
    Mat d(n, count);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    for (int j = 0; j < count; ++j) {
      Vec v(n);
      do {
        for (int i = 0; i < n; ++i) v(i) = gauss(rng);
      } while (v.norm() < 1e-8);
      d.col(j) = v.normalized();
    }
    return {d, GridScheme::RandomNd, 2.0 * covering_angle(d, seed ^ 0x9e3779b97f4a7c15ULL)};
  }

  /// The documented default for ambient dimension n.
  static DirectionGrid default_for(int n, std::uint64_t seed = kDefaultSeed) {
    switch (n) {
      case 1: return signs_1d();
      case 2: return angular_2d();
      case 3: return fibonacci_3d();
      default: return random_nd(n, 0, seed);
    }
  }

  /// Appends extra directions (normalized, with their negatives). The mesh bound can only improve.
  [[nodiscard]] DirectionGrid with_directions(const Mat& extra) const {
    std::vector<Vec> added;
    for (Eigen::Index j = 0; j < extra.cols(); ++j) {
      const double nrm = extra.col(j).norm();
      if (nrm == 0.0) continue;
      added.emplace_back(extra.col(j) / nrm);
      added.emplace_back(-extra.col(j) / nrm);
    }
    Mat d(dirs_.rows(), dirs_.cols() + static_cast<Eigen::Index>(added.size()));
    d.leftCols(dirs_.cols()) = dirs_;
    for (std::size_t j = 0; j < added.size(); ++j) d.col(dirs_.cols() + static_cast<Eigen::Index>(j)) = added[j];
    return {std::move(d), scheme_, mesh_};
  }

  [[nodiscard]] int dim() const { return static_cast<int>(dirs_.rows()); }
  [[nodiscard]] int size() const { return static_cast<int>(dirs_.cols()); }
  [[nodiscard]] const Mat& directions() const { return dirs_; }
  [[nodiscard]] Vec direction(int j) const { return dirs_.col(j); }
  [[nodiscard]] GridScheme scheme() const { return scheme_; }
  /// Maximal angular gap between neighbouring directions, in radians.
  [[nodiscard]] double mesh() const { return mesh_; }

  /// Index of the grid direction closest in angle to v.
  [[nodiscard]] int nearest(const Vec& v) const {
    Eigen::Index best = 0;
    (dirs_.transpose() * v.normalized()).maxCoeff(&best);
    return static_cast<int>(best);
  }

 private:
  /// Largest angle from a probe direction to its nearest grid direction, estimated
  /// with deterministic random probes.
  static double covering_angle(const Mat& d, std::uint64_t seed) {
    const auto n = d.rows();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    constexpr int kProbes = 4000;
    Mat probes(n, kProbes);
    for (int j = 0; j < kProbes; ++j) {
      Vec v(n);
      do {
        for (Eigen::Index i = 0; i < n; ++i) v(i) = gauss(rng);
      } while (v.norm() < 1e-8);
      probes.col(j) = v.normalized();
    }
    const Mat cosines = d.transpose() * probes;
    const double worst = cosines.colwise().maxCoeff().minCoeff();
    return std::acos(std::clamp(worst, -1.0, 1.0));
  }

  Mat dirs_;
  GridScheme scheme_ = GridScheme::Custom;
  double mesh_ = std::numbers::pi;
};

/// Knobs shared by all cone estimators.
struct ConeParams {
  /// First blow-up scale; 0 selects 0.1 × the set's length scale.
  double lambda0 = 0.0;
  double ratio = 0.5;
  /// Upper bound on the number of scales; the ladder is truncated at the resolution floor.
  int max_scales = 10;
  double tau = kDefaultTau;
  /// At most this many base points y ≠ x per scale for the paratangent cones.
  int max_bases = kDefaultMaxBases;
};

inline ScaleLadder make_ladder(const SampledSet& f, const ConeParams& p) {
  const double l0 = p.lambda0 > 0.0 ? p.lambda0 : 0.1 * f.scale();
  return ScaleLadder::fit(l0, p.ratio, p.max_scales, f.delta());
}

/// Scores of one direction for the four cones.
struct ChainScores {
  double lower_paratangent = 0.0;
  double lower_tangent = 0.0;
  double upper_tangent = 0.0;
  double upper_paratangent = 0.0;

  [[nodiscard]] double get(ConeKind k) const {
    switch (k) {
      case ConeKind::LowerParatangent: return lower_paratangent;
      case ConeKind::LowerTangent: return lower_tangent;
      case ConeKind::UpperTangent: return upper_tangent;
      case ConeKind::UpperParatangent: return upper_paratangent;
    }
    return 0.0;
  }
};

/// Precomputed blow-up context at one base point: scales plus base points per scale.
class ConeScorer {
 public:
  ConeScorer(const SampledSet& f, const Vec& x, ScaleLadder ladder, int max_bases = kDefaultMaxBases)
      : f_(&f), x_(x), ladder_(ladder) {
    if (x.size() != f.ambient_dim()) throw DimensionError("base point dimension does not match the set");
    ladder_.validate(f.delta());
    scales_ = ladder_.scales();
    radii_ = ladder_.base_radii();
    bases_.reserve(scales_.size());
    for (double rho : radii_) bases_.push_back(select_bases(rho, max_bases));
  }

  [[nodiscard]] const ScaleLadder& ladder() const { return ladder_; }
  [[nodiscard]] const Vec& base_point() const { return x_; }
  [[nodiscard]] const std::vector<double>& base_radii() const { return radii_; }
  /// Base points used at scale k (the first column is always x).
  [[nodiscard]] const Mat& bases(int k) const { return bases_[static_cast<std::size_t>(k)]; }

  /// dist(y + λ_k v, F) / λ_k
  [[nodiscard]] double quotient(const Eigen::Ref<const Vec>& y, const Vec& v, int k) const {
    const double lambda = scales_[static_cast<std::size_t>(k)];
    return f_->dist_query(y + lambda * v) / lambda;
  }

  [[nodiscard]] double upper_tangent(const Vec& v) const {
    double s = std::numeric_limits<double>::infinity();
    for (int k = 0; k < ladder_.count; ++k) s = std::min(s, quotient(x_, v, k));
    return s;
  }

  [[nodiscard]] double lower_tangent(const Vec& v) const {
    double s = 0.0;
    for (int k = 0; k < ladder_.count; ++k) s = std::max(s, quotient(x_, v, k));
    return s;
  }

  [[nodiscard]] double upper_paratangent(const Vec& v) const {
    double s = std::numeric_limits<double>::infinity();
    for (int k = 0; k < ladder_.count; ++k) {
      const Mat& b = bases(k);
      for (Eigen::Index j = 0; j < b.cols(); ++j) s = std::min(s, quotient(b.col(j), v, k));
    }
    return s;
  }

  [[nodiscard]] double lower_paratangent(const Vec& v) const {
    double s = 0.0;
    for (int k = 0; k < ladder_.count; ++k) {
      const Mat& b = bases(k);
      for (Eigen::Index j = 0; j < b.cols(); ++j) s = std::max(s, quotient(b.col(j), v, k));
    }
    return s;
  }

  [[nodiscard]] double score(ConeKind kind, const Vec& v) const {
    switch (kind) {
      case ConeKind::LowerParatangent: return lower_paratangent(v);
      case ConeKind::LowerTangent: return lower_tangent(v);
      case ConeKind::UpperTangent: return upper_tangent(v);
      case ConeKind::UpperParatangent: return upper_paratangent(v);
    }
    return 0.0;
  }

  /// All four scores from one pass over scales and base points.
  [[nodiscard]] ChainScores chain(const Vec& v) const {
    ChainScores c;
    c.lower_paratangent = 0.0;
    c.lower_tangent = 0.0;
    c.upper_tangent = std::numeric_limits<double>::infinity();
    c.upper_paratangent = std::numeric_limits<double>::infinity();
    for (int k = 0; k < ladder_.count; ++k) {
      const Mat& b = bases(k);
      const double at_x = quotient(b.col(0), v, k);
      c.lower_tangent = std::max(c.lower_tangent, at_x);
      c.upper_tangent = std::min(c.upper_tangent, at_x);
      double lo = at_x;
      double hi = at_x;
      for (Eigen::Index j = 1; j < b.cols(); ++j) {
        const double q = quotient(b.col(j), v, k);
        lo = std::min(lo, q);
        hi = std::max(hi, q);
      }
      c.lower_paratangent = std::max(c.lower_paratangent, hi);
      c.upper_paratangent = std::min(c.upper_paratangent, lo);
    }
    return c;
  }

 private:
  // x first, then up to max_bases other samples within rho, spread evenly in distance from x.
  Mat select_bases(double rho, int max_bases) const {
    const auto idx = f_->neighbor_indices(x_, rho);
    std::vector<std::pair<double, int>> cand;
    cand.reserve(idx.size());
    for (int i : idx) {
      const double d = (f_->points().col(i) - x_).norm();
      if (d > 0.0) cand.emplace_back(d, i);
    }
    std::sort(cand.begin(), cand.end());
    std::vector<int> chosen;
    const auto m = static_cast<int>(cand.size());
    if (m <= max_bases) {
      for (const auto& c : cand) chosen.push_back(c.second);
    } else if (max_bases >= 1) {
      // Nearest candidate to each of the target distances ρ·j/max_bases, j = 1..max_bases.
      std::size_t lo = 0;
      for (int j = 1; j <= max_bases; ++j) {
        const double target = rho * j / max_bases;
        while (lo + 1 < cand.size() && cand[lo + 1].first <= target) ++lo;
        std::size_t pick = lo;
        if (lo + 1 < cand.size() && cand[lo + 1].first - target < target - cand[lo].first) pick = lo + 1;
        if (chosen.empty() || chosen.back() != cand[pick].second) chosen.push_back(cand[pick].second);
      }
    }
    Mat b(x_.size(), static_cast<Eigen::Index>(chosen.size()) + 1);
    b.col(0) = x_;
    for (std::size_t j = 0; j < chosen.size(); ++j) b.col(static_cast<Eigen::Index>(j) + 1) = f_->points().col(chosen[j]);
    return b;
  }

  const SampledSet* f_;
  Vec x_;
  ScaleLadder ladder_;
  std::vector<double> scales_;
  std::vector<double> radii_;
  std::vector<Mat> bases_;
};

// Single-direction scorers.

inline double score_upper_tangent(const SampledSet& f, const Vec& x, const Vec& v, const ScaleLadder& ladder) {
  return ConeScorer(f, x, ladder, 0).upper_tangent(v);
}

inline double score_lower_tangent(const SampledSet& f, const Vec& x, const Vec& v, const ScaleLadder& ladder) {
  return ConeScorer(f, x, ladder, 0).lower_tangent(v);
}

inline double score_upper_paratangent(const SampledSet& f, const Vec& x, const Vec& v, const ScaleLadder& ladder,
                                      int max_bases = kDefaultMaxBases) {
  return ConeScorer(f, x, ladder, max_bases).upper_paratangent(v);
}

inline double score_lower_paratangent(const SampledSet& f, const Vec& x, const Vec& v, const ScaleLadder& ladder,
                                      int max_bases = kDefaultMaxBases) {
  return ConeScorer(f, x, ladder, max_bases).lower_paratangent(v);
}

/// A scored direction grid approximating one cone at a base point.
struct ConeEstimate {
  Vec base_point;
  ConeKind kind = ConeKind::UpperTangent;
  double tau = kDefaultTau;
  ScaleLadder ladder;
  /// Integer blow-up window, set only by integer_scale_lower_cone.
  std::optional<std::pair<int, int>> integer_window;
  std::shared_ptr<const DirectionGrid> grid;
  Vec scores;

  [[nodiscard]] bool is_member(int j) const { return scores(j) <= tau; }

  [[nodiscard]] std::vector<int> member_indices() const {
    std::vector<int> out;
    for (Eigen::Index j = 0; j < scores.size(); ++j) {
      if (scores(j) <= tau) out.push_back(static_cast<int>(j));
    }
    return out;
  }

  [[nodiscard]] Mat member_directions() const {
    const auto idx = member_indices();
    Mat out(grid->dim(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t j = 0; j < idx.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = grid->direction(idx[j]);
    return out;
  }

  /// Same scores, different threshold.
  [[nodiscard]] ConeEstimate rethreshold(double new_tau) const {
    ConeEstimate c = *this;
    c.tau = new_tau;
    return c;
  }
};

/// Scores every grid direction with the scorer for `kind`.
inline ConeEstimate estimate_cone(const SampledSet& f, const Vec& x, ConeKind kind, const ScaleLadder& ladder,
                                  std::shared_ptr<const DirectionGrid> grid, double tau = kDefaultTau,
                                  int max_bases = kDefaultMaxBases) {
  if (grid->dim() != f.ambient_dim()) throw DimensionError("direction grid dimension does not match the set");
  const bool para = kind == ConeKind::LowerParatangent || kind == ConeKind::UpperParatangent;
  const ConeScorer scorer(f, x, ladder, para ? max_bases : 0);
  ConeEstimate est{x, kind, tau, ladder, std::nullopt, grid, Vec(grid->size())};
  for (int j = 0; j < grid->size(); ++j) est.scores(j) = scorer.score(kind, grid->direction(j));
  return est;
}

/// The four cones at x from a single scoring pass, ordered pTan⁻, Tan⁻, Tan⁺, pTan⁺.
inline std::array<ConeEstimate, 4> estimate_all_cones(const SampledSet& f, const Vec& x, const ScaleLadder& ladder,
                                                      std::shared_ptr<const DirectionGrid> grid,
                                                      double tau = kDefaultTau, int max_bases = kDefaultMaxBases) {
  if (grid->dim() != f.ambient_dim()) throw DimensionError("direction grid dimension does not match the set");
  const ConeScorer scorer(f, x, ladder, max_bases);
  std::array<ConeEstimate, 4> out;
  for (std::size_t i = 0; i < 4; ++i) {
    out[i] = ConeEstimate{x, kAllConeKinds[i], tau, ladder, std::nullopt, grid, Vec(grid->size())};
  }
  for (int j = 0; j < grid->size(); ++j) {
    const ChainScores c = scorer.chain(grid->direction(j));
    for (std::size_t i = 0; i < 4; ++i) out[i].scores(j) = c.get(kAllConeKinds[i]);
  }
  return out;
}

/// Default integer window start: ⌈1/λ₀⌉ with λ₀ = 0.1 × the set's length scale.
inline int default_integer_window_start(const SampledSet& f) {
  return std::max(1, static_cast<int>(std::ceil(1.0 / (0.1 * f.scale()) - 1e-9)));
}

/// Lower tangent cone through integer blow-ups: score(v) = max_{m_lo ≤ m ≤ m_max} m·dist(x + v/m, F).
inline ConeEstimate integer_scale_lower_cone(const SampledSet& f, const Vec& x, int m_max,
                                             std::shared_ptr<const DirectionGrid> grid, double tau = kDefaultTau,
                                             int m_lo = 0) {
  if (m_lo <= 0) m_lo = default_integer_window_start(f);
  if (m_max < 2) throw ScaleError("integer window needs m_max >= 2");
  if (m_max < m_lo) throw ScaleError("integer window is empty: m_max < m_lo");
  if (1.0 / m_max < kFloorFactor * f.delta() * (1.0 - 1e-12)) {
    throw ScaleError("integer window reaches 1/m_max below the resolution floor");
  }
  if (grid->dim() != f.ambient_dim()) throw DimensionError("direction grid dimension does not match the set");
  ConeEstimate est{x, ConeKind::LowerTangent, tau, ScaleLadder{1.0 / m_lo, 0.5, 2}, std::pair{m_lo, m_max}, grid,
                   Vec(grid->size())};
  for (int j = 0; j < grid->size(); ++j) {
    const Vec v = grid->direction(j);
    double s = 0.0;
    for (int m = m_lo; m <= m_max; ++m) s = std::max(s, m * f.dist_query(x + v / m));
    est.scores(j) = s;
  }
  return est;
}

/// Ratio tolerance matching threshold τ: a gap ratio r gives a worst midpoint blow-up
/// quotient (1 − r)/(1 + r), which stays ≤ τ exactly when 1 − r ≤ 2τ/(1 + τ).
inline double ratio_tolerance_for(double tau) { return 2.0 * tau / (1.0 + tau); }

/// Whether the tail ratios x_{m+1}/x_m of a strictly decreasing positive sequence are
/// within `tolerance` of 1. The tail is the terms with value in [lo, hi] (default: the
/// second half of the sequence).
inline bool ratio_test_1d(const std::vector<double>& terms, double tolerance = ratio_tolerance_for(kDefaultTau),
                          double lo = 0.0, double hi = 0.0) {
  if (terms.size() < 4) throw InsufficientDataError("ratio test needs at least 4 terms");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (!(terms[i] > 0.0)) throw InputError("ratio test needs positive terms");
    if (i > 0 && !(terms[i] < terms[i - 1])) throw InputError("ratio test needs strictly decreasing terms");
  }
  std::size_t first = terms.size() / 2;
  std::size_t last = terms.size() - 1;
  if (hi > lo) {
    first = 0;
    while (first < terms.size() && terms[first] > hi) ++first;
    // keep the pair that straddles hi
    if (first > 0) --first;
    last = first;
    while (last + 1 < terms.size() && terms[last] >= lo) ++last;
  }
  if (last <= first) throw InsufficientDataError("ratio test window holds fewer than two terms");
  double worst = 1.0;
  for (std::size_t i = first; i < last; ++i) worst = std::min(worst, terms[i + 1] / terms[i]);
  return 1.0 - worst <= tolerance;
}

}  // namespace conelab
