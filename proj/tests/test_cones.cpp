#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "conelab/catalog.hpp"
#include "conelab/cones.hpp"

using namespace conelab;

namespace {

std::shared_ptr<const DirectionGrid> shared(DirectionGrid g) { return std::make_shared<const DirectionGrid>(std::move(g)); }

// Blow-up quotient straight from the definition, by scanning every sample.
double brute_quotient(const Mat& pts, const Vec& y, const Vec& v, double lambda) {
  return (pts.colwise() - (y + lambda * v)).colwise().norm().minCoeff() / lambda;
}

struct BruteScores {
  double ptan_minus = 0.0;
  double tan_minus = 0.0;
  double tan_plus = std::numeric_limits<double>::infinity();
  double ptan_plus = std::numeric_limits<double>::infinity();
};

// All four scores with every sample in the ball of radius λ₀ used as a base point.
BruteScores brute_scores(const Mat& pts, const Vec& x, const Vec& v, const ScaleLadder& l) {
  BruteScores s;
  for (int k = 0; k < l.count; ++k) {
    const double lambda = l.lambda0 * std::pow(l.ratio, k);
    const double qx = brute_quotient(pts, x, v, lambda);
    s.tan_minus = std::max(s.tan_minus, qx);
    s.tan_plus = std::min(s.tan_plus, qx);
    double hi = qx;
    double lo = qx;
    for (Eigen::Index j = 0; j < pts.cols(); ++j) {
      if ((pts.col(j) - x).norm() > l.lambda0) continue;
      const double q = brute_quotient(pts, pts.col(j), v, lambda);
      hi = std::max(hi, q);
      lo = std::min(lo, q);
    }
    s.ptan_minus = std::max(s.ptan_minus, hi);
    s.ptan_plus = std::min(s.ptan_plus, lo);
  }
  return s;
}

SampledSet random_cloud(std::mt19937_64& rng, int n, int count, double spread) {
  std::normal_distribution<double> g;
  Mat m(n, count);
  for (int j = 0; j < count; ++j) {
    for (int i = 0; i < n; ++i) m(i, j) = spread * g(rng);
  }
  m.col(0).setZero();
  return {m, 1e-4, Region{}, 1.0};
}

}  // namespace

// ---------------------------------------------------------------------------
// Ladders

TEST(Ladder, FitStopsAtResolutionFloor) {
  // oracle: λ₀ rᵏ ≥ 8δ  ⇔  k ≤ log(λ₀ / 8δ) / log(1/r)
  for (double delta : {1e-6, 1e-5, 3e-4, 1e-3}) {
    const ScaleLadder l = ScaleLadder::fit(0.1, 0.5, 50, delta);
    const int expected = static_cast<int>(std::floor(std::log(0.1 / (8 * delta)) / std::log(2.0) + 1e-12)) + 1;
    EXPECT_EQ(l.count, std::min(50, expected)) << delta;
    EXPECT_GE(l.smallest(), 8 * delta * (1 - 1e-12));
  }
  EXPECT_EQ(ScaleLadder::fit(0.1, 0.5, 10, 1e-9).count, 10);
}

TEST(Ladder, RejectsInconsistentScales) {
  EXPECT_THROW(ScaleLadder::fit(0.1, 0.5, 10, 0.01), ScaleError);  // second scale 0.05 < 0.08
  EXPECT_THROW((ScaleLadder{0.1, 1.5, 4}.validate(1e-6)), ScaleError);
  EXPECT_THROW((ScaleLadder{0.1, 0.5, 10}.validate(1e-4)), ScaleError);
  EXPECT_NO_THROW((ScaleLadder{0.1, 0.5, 10}.validate(1e-5)));
}

TEST(Ladder, DefaultsFromSetScale) {
  const SampledSet f(Mat::Zero(1, 1), 1e-9, Region{}, 2.0);
  const ScaleLadder l = make_ladder(f, ConeParams{});
  EXPECT_DOUBLE_EQ(l.lambda0, 0.2);
  EXPECT_EQ(l.count, 10);
  EXPECT_DOUBLE_EQ(l.ratio, 0.5);
}

// ---------------------------------------------------------------------------
// Direction grids

TEST(Grid, SizesAndUnitLength) {
  EXPECT_EQ(DirectionGrid::signs_1d().size(), 2);
  EXPECT_EQ(DirectionGrid::angular_2d().size(), 720);
  EXPECT_EQ(DirectionGrid::fibonacci_3d().size(), 2000);
  EXPECT_EQ(DirectionGrid::random_nd(4).size(), 800);
  for (const auto& g : {DirectionGrid::angular_2d(), DirectionGrid::fibonacci_3d(), DirectionGrid::random_nd(5)}) {
    EXPECT_NEAR((g.directions().colwise().norm().array() - 1.0).abs().maxCoeff(), 0.0, 1e-12);
  }
}

TEST(Grid, MeshBoundsDistanceToNearestDirection) {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g;
  for (int n = 2; n <= 5; ++n) {
    const DirectionGrid grid = DirectionGrid::default_for(n);
    for (int t = 0; t < 500; ++t) {
      Vec v(n);
      for (int i = 0; i < n; ++i) v(i) = g(rng);
      v.normalize();
      const double best = std::acos(std::min(1.0, (grid.directions().transpose() * v).maxCoeff()));
      // the angular grid's covering radius is exact; higher-dimensional meshes carry a factor 2 margin
      EXPECT_LE(best, (n == 2 ? grid.mesh() / 2 : grid.mesh()) + 1e-12) << "n=" << n;
      EXPECT_NEAR(std::acos(std::min(1.0, grid.direction(grid.nearest(v)).dot(v))), best, 1e-12);
    }
  }
}

TEST(Grid, RandomGridIsSeeded) {
  EXPECT_EQ(DirectionGrid::random_nd(4, 100, 5).directions(), DirectionGrid::random_nd(4, 100, 5).directions());
  EXPECT_NE(DirectionGrid::random_nd(4, 100, 5).directions(), DirectionGrid::random_nd(4, 100, 6).directions());
}

TEST(Grid, WithDirectionsAppendsBothSigns) {
  Mat extra(2, 1);
  extra << 3.0, 4.0;
  const DirectionGrid g = DirectionGrid::angular_2d(8).with_directions(extra);
  EXPECT_EQ(g.size(), 10);
  EXPECT_NEAR((g.direction(8) + g.direction(9)).norm(), 0.0, 1e-15);
  EXPECT_NEAR(g.direction(8)(0), 0.6, 1e-15);
  EXPECT_LE(g.mesh(), DirectionGrid::angular_2d(8).mesh());
}

// ---------------------------------------------------------------------------
// Scores against the definition

TEST(Scores, MatchBruteForceOnSmallClouds) {
  std::mt19937_64 rng(22);
  for (int n = 1; n <= 3; ++n) {
    const SampledSet f = random_cloud(rng, n, 40, 0.2);
    const ScaleLadder l{0.04, 0.5, 4};
    // at most 16 other samples within λ₀ so every one of them is a base point
    const auto near = f.neighbor_indices(Vec::Zero(n), l.lambda0);
    ASSERT_LE(near.size(), static_cast<std::size_t>(kDefaultMaxBases + 1)) << n;
    const auto grid = shared(DirectionGrid::default_for(n));
    const auto cones = estimate_all_cones(f, Vec::Zero(n), l, grid);
    for (int j = 0; j < grid->size(); j += 7) {
      const BruteScores b = brute_scores(f.points(), Vec::Zero(n), grid->direction(j), l);
      EXPECT_NEAR(cones[0].scores(j), b.ptan_minus, 1e-12);
      EXPECT_NEAR(cones[1].scores(j), b.tan_minus, 1e-12);
      EXPECT_NEAR(cones[2].scores(j), b.tan_plus, 1e-12);
      EXPECT_NEAR(cones[3].scores(j), b.ptan_plus, 1e-12);
    }
  }
}

TEST(Scores, SingleKindEstimatesMatchChainPass) {
  const SampledSet f = build_example("cusp-y3x2", Json{{"delta", 1e-4}});
  const ScaleLadder l = make_ladder(f, ConeParams{});
  const auto grid = shared(DirectionGrid::angular_2d(72));
  const auto all = estimate_all_cones(f, Vec::Zero(2), l, grid);
  for (std::size_t i = 0; i < 4; ++i) {
    const ConeEstimate one = estimate_cone(f, Vec::Zero(2), kAllConeKinds[i], l, grid);
    EXPECT_EQ(one.scores, all[i].scores) << to_string(kAllConeKinds[i]);
  }
}

TEST(Scores, HalfLineClosedForm) {
  // F = [0, 2]: at 0, dist(λ, F) = 0 and dist(−λ, F) = λ, so Tan scores are 0 and 1.
  const SampledSet f = build_example("half-line");
  const ScaleLadder l = make_ladder(f, ConeParams{});
  const auto grid = shared(DirectionGrid::signs_1d());
  const auto c = estimate_all_cones(f, Vec::Zero(1), l, grid);
  EXPECT_NEAR(c[2].scores(0), 0.0, 1e-12);
  EXPECT_NEAR(c[2].scores(1), 1.0, 1e-12);
  EXPECT_NEAR(c[1].scores(1), 1.0, 1e-12);
  // a base point y > 0 in F sees −λ inside F
  EXPECT_NEAR(c[3].scores(1), 0.0, 1e-12);
}

TEST(Scores, RejectDimensionMismatch) {
  const SampledSet f = build_example("half-line");
  const ScaleLadder l = make_ladder(f, ConeParams{});
  EXPECT_THROW(estimate_cone(f, Vec::Zero(1), ConeKind::UpperTangent, l, shared(DirectionGrid::angular_2d(8))),
               DimensionError);
  EXPECT_THROW(estimate_cone(f, Vec::Zero(2), ConeKind::UpperTangent, l, shared(DirectionGrid::signs_1d())),
               DimensionError);
}

// ---------------------------------------------------------------------------
// Invariants

TEST(ScoreProperty, ChainHoldsOnRandomCloudsAndPoints) {
  std::mt19937_64 rng(23);
  for (int n = 1; n <= 4; ++n) {
    const SampledSet f = random_cloud(rng, n, 3000, 0.2);
    const auto grid = shared(DirectionGrid::default_for(n));
    const ScaleLadder l{0.1, 0.5, 5};
    for (int p = 0; p < 3; ++p) {
      const auto c = estimate_all_cones(f, f.point(p * 17), l, grid);
      for (int j = 0; j < grid->size(); ++j) {
        ASSERT_GE(c[0].scores(j), c[1].scores(j));
        ASSERT_GE(c[1].scores(j), c[2].scores(j));
        ASSERT_GE(c[2].scores(j), c[3].scores(j));
      }
    }
  }
}

TEST(ScoreProperty, RigidMotionInvariance) {
  std::mt19937_64 rng(24);
  const SampledSet f = build_example("two-parabolas", Json{{"delta", 1e-4}});
  const double angle = 0.7;
  Mat rot(2, 2);
  rot << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  const Vec shift = (Vec(2) << 0.3, -1.1).finished();
  const SampledSet g((rot * f.points()).colwise() + shift, f.delta(), Region{}, f.scale());
  const ScaleLadder l = make_ladder(f, ConeParams{});
  const auto grid = shared(DirectionGrid::angular_2d(36));
  const auto moved = shared(DirectionGrid(rot * grid->directions(), GridScheme::Custom, grid->mesh()));
  const auto a = estimate_all_cones(f, Vec::Zero(2), l, grid);
  const auto b = estimate_all_cones(g, shift, l, moved);
  for (std::size_t i = 1; i < 3; ++i) EXPECT_LT((a[i].scores - b[i].scores).cwiseAbs().maxCoeff(), 1e-9);
  // paratangent base points are chosen by distance targets, so rounding can swap a few of them
  for (std::size_t i : {0u, 3u}) EXPECT_LT((a[i].scores - b[i].scores).cwiseAbs().maxCoeff(), 0.05);
}

TEST(ScoreProperty, ScaleInvariance) {
  const SampledSet f = build_example("cusp-y3x2", Json{{"delta", 1e-4}});
  const double c = 4.0;
  const SampledSet g(c * f.points(), c * f.delta(), Region{}, c * f.scale());
  const auto grid = shared(DirectionGrid::angular_2d(36));
  const auto a = estimate_all_cones(f, Vec::Zero(2), make_ladder(f, ConeParams{}), grid);
  const auto b = estimate_all_cones(g, Vec::Zero(2), make_ladder(g, ConeParams{}), grid);
  for (std::size_t i = 1; i < 3; ++i) EXPECT_LT((a[i].scores - b[i].scores).cwiseAbs().maxCoeff(), 1e-9);
  // paratangent base points are chosen by distance targets, so rounding can swap a few of them
  for (std::size_t i : {0u, 3u}) EXPECT_LT((a[i].scores - b[i].scores).cwiseAbs().maxCoeff(), 0.05);
}

TEST(ScoreProperty, MembershipIsMonotoneInTau) {
  const SampledSet f = build_example("two-parabolas", Json{{"delta", 1e-4}});
  const auto grid = shared(DirectionGrid::angular_2d());
  const ConeEstimate e = estimate_cone(f, Vec::Zero(2), ConeKind::UpperParatangent, make_ladder(f, ConeParams{}), grid);
  std::size_t prev = 0;
  for (double tau : {0.0, 0.05, 0.1, 0.2, 0.4, 1.0}) {
    const auto m = e.rethreshold(tau).member_indices();
    EXPECT_GE(m.size(), prev);
    prev = m.size();
  }
  EXPECT_EQ(e.rethreshold(1.0).member_indices().size(), 720u);
}

TEST(ScoreProperty, ScoresAreBoundedByOne) {
  // x itself lies in F, so dist(x + λv, F) ≤ λ for every unit v
  std::mt19937_64 rng(25);
  const SampledSet f = random_cloud(rng, 3, 2000, 0.3);
  const auto c = estimate_all_cones(f, Vec::Zero(3), ScaleLadder{0.1, 0.5, 4}, shared(DirectionGrid::fibonacci_3d(300)));
  EXPECT_LE(c[1].scores.maxCoeff(), 1.0 + 1e-12);
  EXPECT_GE(c[3].scores.minCoeff(), 0.0);
}

// ---------------------------------------------------------------------------
// Integer blow-ups and the ratio criterion

TEST(IntegerCone, MatchesDirectEvaluation) {
  auto [t, d] = sequence_terms("geometric", 200, 1e-9, 1.5);
  const SampledSet f = gen::sequence_set(t, true, d, "g");
  const auto grid = shared(DirectionGrid::signs_1d());
  const ConeEstimate e = integer_scale_lower_cone(f, Vec::Zero(1), 300, grid, 0.15, 10);
  EXPECT_EQ(e.integer_window->first, 10);
  double expected = 0.0;
  for (int m = 10; m <= 300; ++m) {
    double best = 1.0 / m;  // distance to the sample at 0
    for (double v : t) best = std::min(best, std::abs(v - 1.0 / m));
    expected = std::max(expected, m * best);
  }
  EXPECT_NEAR(e.scores(0), expected, 1e-12);
  EXPECT_NEAR(e.scores(1), 1.0, 1e-12);
}

TEST(IntegerCone, RejectsBadWindows) {
  auto [t, d] = sequence_terms("harmonic", 100, 0.0);
  const SampledSet f = gen::sequence_set(t, true, d, "h");  // δ ≈ 0.005
  const auto grid = shared(DirectionGrid::signs_1d());
  EXPECT_THROW(integer_scale_lower_cone(f, Vec::Zero(1), 1, grid), ScaleError);
  EXPECT_THROW(integer_scale_lower_cone(f, Vec::Zero(1), 30, grid, 0.15, 5), ScaleError);  // 1/30 < 8δ
  EXPECT_THROW(integer_scale_lower_cone(f, Vec::Zero(1), 5, grid, 0.15, 10), ScaleError);
}

TEST(RatioTest, ToleranceMatchesMidpointQuotient) {
  // worst point of the gap [r, 1] is its midpoint: quotient (1 − r)/(1 + r)
  for (double tau : {0.05, 0.15, 0.3}) {
    const double r = 1.0 - ratio_tolerance_for(tau);
    EXPECT_NEAR((1.0 - r) / (1.0 + r), tau, 1e-12);
  }
}

TEST(RatioTest, GeometricSequencesByRatio) {
  const double tol = ratio_tolerance_for(0.15);
  for (double a : {1.05, 1.2, 1.3, 1.5, 2.0, 4.0}) {
    std::vector<double> terms;
    for (int m = 1; m <= 60; ++m) terms.push_back(std::pow(a, -m));
    EXPECT_EQ(ratio_test_1d(terms, tol), 1.0 - 1.0 / a <= tol) << a;
  }
}

TEST(RatioTest, ValidatesInput) {
  EXPECT_THROW(ratio_test_1d({1.0, 0.5, 0.25}), InsufficientDataError);
  EXPECT_THROW(ratio_test_1d({1.0, 0.5, 0.5, 0.25}), InputError);
  EXPECT_THROW(ratio_test_1d({1.0, 0.5, 0.25, -0.1}), InputError);
}

TEST(RatioTest, AgreesWithIntegerConeOnSequenceFamily) {
  const auto grid = shared(DirectionGrid::signs_1d());
  for (double a : {1.02, 1.1, 1.25, 1.6, 3.0}) {
    auto [t, d] = sequence_terms("geometric", 100000, 1e-6, a);
    const SampledSet f = gen::sequence_set(t, true, d, "g");
    const bool by_ratio = ratio_test_1d(t, ratio_tolerance_for(0.15), 1e-3, 1e-2);
    const ConeEstimate e = integer_scale_lower_cone(f, Vec::Zero(1), 1000, grid, 0.15, 100);
    EXPECT_EQ(by_ratio, e.is_member(0)) << a;
  }
}

TEST(ConeKinds, NamesRoundTrip) {
  for (ConeKind k : kAllConeKinds) EXPECT_EQ(cone_kind_from_string(to_string(k)), k);
  EXPECT_THROW(cone_kind_from_string("Tan"), Error);
}
