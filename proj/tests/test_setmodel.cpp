#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "conelab/catalog.hpp"
#include "conelab/kdtree.hpp"
#include "conelab/report.hpp"
#include "conelab/sampled_set.hpp"

using namespace conelab;

namespace {

Mat uniform_cloud(std::mt19937_64& rng, int n, int count) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat m(n, count);
  for (int j = 0; j < count; ++j) {
    for (int i = 0; i < n; ++i) m(i, j) = u(rng);
  }
  return m;
}

double brute_nearest(const Mat& pts, const Vec& q) { return (pts.colwise() - q).colwise().norm().minCoeff(); }

std::vector<int> brute_within(const Mat& pts, const Vec& q, double r) {
  std::vector<int> out;
  for (Eigen::Index j = 0; j < pts.cols(); ++j) {
    if ((pts.col(j) - q).norm() <= r) out.push_back(static_cast<int>(j));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Spatial index

TEST(KdTree, NearestAndRadiusMatchBruteForce) {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 5; ++n) {
    const Mat pts = uniform_cloud(rng, n, 3000);
    const KdTree tree(pts);
    const Mat queries = 1.3 * uniform_cloud(rng, n, 200);
    for (int q = 0; q < queries.cols(); ++q) {
      const Vec x = queries.col(q);
      EXPECT_NEAR(std::sqrt(tree.nearest_squared(x)), brute_nearest(pts, x), 1e-14);
      EXPECT_EQ(tree.within(x, 0.3), brute_within(pts, x, 0.3));
    }
  }
}

TEST(KdTree, DuplicatePointsAndEmptyTree) {
  const Mat pts = Mat::Ones(2, 50);
  const KdTree tree(pts);
  EXPECT_NEAR(tree.nearest_squared(Vec::Zero(2)), 2.0, 1e-15);
  EXPECT_EQ(tree.within(Vec::Ones(2), 0.0).size(), 50u);
  const KdTree empty(Mat(2, 0));
  EXPECT_TRUE(std::isinf(empty.nearest_squared(Vec::Zero(2))));
}

// ---------------------------------------------------------------------------
// Sampled sets

TEST(SampledSet, ValidatesConstruction) {
  EXPECT_THROW(SampledSet(Mat(2, 0), 0.1, Region{}, 1.0), EmptySetError);
  EXPECT_THROW(SampledSet(Mat::Zero(2, 3), 0.0, Region{}, 1.0), InputError);
  EXPECT_THROW(SampledSet(Mat::Zero(2, 3), 0.1, Region{}, -1.0), InputError);
  Mat bad = Mat::Zero(2, 3);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(SampledSet(bad, 0.1, Region{}, 1.0), InputError);
  EXPECT_THROW(SampledSet(Mat::Zero(2, 3), 0.1, Region{Vec::Zero(3), 1.0}, 1.0), DimensionError);
}

TEST(SampledSet, QueriesAgreeAcrossExhaustiveAndIndexedPaths) {
  std::mt19937_64 rng(12);
  const Mat big = uniform_cloud(rng, 3, 20000);
  const SampledSet large(big, 0.05, Region{}, 1.0);
  const SampledSet small(big.leftCols(4000), 0.05, Region{}, 1.0);
  const Mat queries = uniform_cloud(rng, 3, 100);
  for (int q = 0; q < queries.cols(); ++q) {
    const Vec x = queries.col(q);
    EXPECT_NEAR(large.dist_query(x), brute_nearest(big, x), 1e-14);
    EXPECT_NEAR(small.dist_query(x), brute_nearest(big.leftCols(4000), x), 1e-14);
    EXPECT_EQ(large.neighbor_indices(x, 0.1), brute_within(big, x, 0.1));
    const int i = large.nearest_index(x);
    EXPECT_NEAR((large.point(i) - x).norm(), brute_nearest(big, x), 1e-14);
  }
  EXPECT_THROW(static_cast<void>(large.dist_query(Vec::Zero(2))), DimensionError);
}

TEST(SampledSet, MetadataIsCarriedAlong) {
  SetMetadata meta;
  meta.generator_id = "x";
  meta.graph_domain_dim = 1;
  const SampledSet s(Mat::Zero(2, 1), 0.1, Region{}, 1.0, meta);
  EXPECT_EQ(*s.metadata().generator_id, "x");
  SetMetadata other;
  other.locally_compact = false;
  const SampledSet t = s.with_metadata(other);
  EXPECT_FALSE(t.metadata().locally_compact);
  EXPECT_EQ(t.size(), 1);
}

// ---------------------------------------------------------------------------
// Sequences

TEST(Sequences, TermsMatchClosedForms) {
  auto [h, hd] = sequence_terms("harmonic", 10, 0.0);
  ASSERT_EQ(h.size(), 10u);
  EXPECT_DOUBLE_EQ(h[3], 0.25);
  EXPECT_DOUBLE_EQ(hd, 1.0 / 11.0);
  auto [f, fd] = sequence_terms("factorial", 100, 1e-4);
  ASSERT_EQ(f.size(), 7u);  // 1/7! = 1.98e-4, 1/8! = 2.48e-5
  EXPECT_NEAR(f[4], 1.0 / 120.0, 1e-16);
  EXPECT_NEAR(fd, 1.0 / 40320.0, 1e-18);
  auto [g, gd] = sequence_terms("geometric", 5, 0.0, 3.0);
  EXPECT_NEAR(g[2], 1.0 / 27.0, 1e-16);
  EXPECT_NEAR(gd, std::pow(3.0, -6), 1e-18);
  EXPECT_THROW(sequence_terms("nope", 5, 0.0), CatalogError);
}

TEST(Sequences, SetResolutionCoversDroppedTail) {
  auto [t, dropped] = sequence_terms("harmonic", 1000, 0.0);
  const SampledSet s = gen::sequence_set(t, true, dropped, "h");
  EXPECT_EQ(s.size(), 1001);
  // every dropped term 1/m, m > 1000, is within δ of {0, 1/1000}
  for (int m = 1001; m < 100000; m += 997) {
    EXPECT_LE(s.dist_query(Vec::Constant(1, 1.0 / m)), s.delta() + 1e-15);
  }
}

// ---------------------------------------------------------------------------
// Catalog: resolution certificates against the analytic sets.

namespace {

template <class F>
void expect_covered(const SampledSet& s, F&& analytic_point, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < trials; ++i) worst = std::max(worst, s.dist_query(analytic_point(u(rng), u(rng))));
  EXPECT_LE(worst, s.delta() * (1.0 + 1e-9));
}

}  // namespace

TEST(Catalog, HasAtLeastFifteenEntries) {
  EXPECT_GE(catalog_names().size(), 15u);
  EXPECT_THROW(build_example("no-such-set"), CatalogError);
}

TEST(Catalog, CircleCoversAnalyticCircle) {
  const SampledSet s = build_example("circle", Json{{"delta", 1e-3}, {"radius", 2.0}});
  expect_covered(
      s, [](double a, double) { return Vec((Vec(2) << 2 * std::cos(2 * std::numbers::pi * a), 2 * std::sin(2 * std::numbers::pi * a)).finished()); },
      5000, 1);
  EXPECT_EQ(s.metadata().test_points.cols(), 16);
}

TEST(Catalog, CurvesCoverTheirParametrizations) {
  const SampledSet cusp = build_example("cusp-y3x2", Json{{"delta", 1e-4}});
  expect_covered(
      cusp, [](double a, double) { const double t = 2 * a - 1; return Vec((Vec(2) << t * t * t, t * t).finished()); },
      5000, 2);
  const SampledSet par = build_example("two-parabolas", Json{{"delta", 1e-4}});
  expect_covered(
      par,
      [](double a, double b) { const double x = 2 * a - 1; return Vec((Vec(2) << x, (b < 0.5 ? 1.0 : 2.0) * x * x).finished()); },
      5000, 3);
  const SampledSet tsin = build_example("t-sin-1-over-t", Json{{"delta", 1e-4}, {"t_max", 0.05}});
  expect_covered(
      tsin,
      [](double a, double b) {
        const double t = (b < 0.5 ? -1 : 1) * (5e-5 + a * (0.05 - 5e-5));
        return Vec((Vec(2) << t, t * std::sin(1 / t)).finished());
      },
      5000, 4);
}

TEST(Catalog, GraphsCoverTheirFunctions) {
  for (const auto& name : graph_function_names()) {
    const GraphFunction gf = graph_function(name);
    const SampledSet s =
        build_example("graph-of-custom-function", Json{{"function", name}, {"delta", gf.domain_dim == 1 ? 1e-3 : 2e-2}});
    EXPECT_EQ(*s.metadata().graph_domain_dim, gf.domain_dim);
    expect_covered(
        s,
        [&](double a, double b) {
          Vec x(gf.domain_dim);
          x(0) = 2 * a - 1;
          if (gf.domain_dim == 2) x(1) = 2 * b - 1;
          Vec q(gf.domain_dim + 1);
          q << x, gf.f(x);
          return q;
        },
        2000, 5);
  }
}

TEST(Catalog, SphereCoversFocusBalls) {
  const SampledSet s = build_example("sphere", Json{{"focus_count", 3}, {"delta", 4e-3}});
  const Mat& focus = s.metadata().test_points;
  ASSERT_EQ(focus.cols(), 3);
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g;
  double worst = 0.0;
  for (int i = 0; i < 3000; ++i) {
    // random sphere point within 0.1 of a focus point
    const Vec c = focus.col(i % 3);
    Vec p = c + 0.05 * Vec((Vec(3) << g(rng), g(rng), g(rng)).finished());
    p.normalize();
    if ((p - c).norm() > 0.1) continue;
    worst = std::max(worst, s.dist_query(p));
  }
  EXPECT_LE(worst, s.delta());
  for (int j = 0; j < focus.cols(); ++j) EXPECT_NEAR(focus.col(j).norm(), 1.0, 1e-12);
}

TEST(Catalog, PinchedTorusSatisfiesItsEquation) {
  const SampledSet s = build_example("pinched-torus", Json{{"focus_count", 2}, {"delta", 1e-2}, {"coarse", 0.1}});
  double worst = 0.0;
  for (Eigen::Index j = 0; j < s.size(); j += 97) {
    const Vec p = s.point(j);
    const double r2 = p.squaredNorm();
    worst = std::max(worst, std::abs(r2 * r2 - 4.0 * (p(0) * p(0) + p(1) * p(1))));
  }
  EXPECT_LT(worst, 1e-12);
  EXPECT_EQ(s.metadata().test_points.col(0).norm(), 0.0);
}

TEST(Catalog, ConcentricSpheresRadiiAreReciprocals) {
  const SampledSet s = build_example("concentric-spheres", Json{{"delta", 2e-2}, {"focus_count", 2}});
  for (Eigen::Index j = 1; j < s.size(); j += 53) {
    const double r = s.point(j).norm();
    EXPECT_NEAR(1.0 / r, std::round(1.0 / r), 1e-9);
  }
  // spheres beyond k_max are within δ of the origin sample
  EXPECT_LE(1.0 / (std::ceil(1.0 / 2e-2) + 1.0), s.delta());
}

TEST(Catalog, TestPointsLieOnTheirSets) {
  for (const auto& name : catalog_names()) {
    Json params = Json::object();
    if (name == "sphere" || name == "pinched-torus" || name == "concentric-spheres") {
      params = Json{{"delta", 2e-2}, {"focus_count", 3}};
    }
    const SampledSet s = build_example(name, params);
    const Mat& tp = s.metadata().test_points;
    ASSERT_GT(tp.cols(), 0) << name;
    for (Eigen::Index j = 0; j < tp.cols(); ++j) EXPECT_LE(s.dist_query(tp.col(j)), s.delta()) << name;
  }
}

// ---------------------------------------------------------------------------
// Generator recipes

TEST(Generate, ExplicitUnionProductAndSequence) {
  const Json pts{{"kind", "explicit-points"}, {"points", {{0.0, 0.0}, {1.0, 0.0}}}, {"delta", 0.1}};
  const SampledSet a = generate(pts);
  EXPECT_EQ(a.size(), 2);
  const Json uni{{"kind", "union"}, {"parts", {pts, {{"kind", "explicit-points"}, {"points", {{0.0, 1.0}}}, {"delta", 0.2}}}}};
  const SampledSet u = generate(uni);
  EXPECT_EQ(u.size(), 3);
  EXPECT_DOUBLE_EQ(u.delta(), 0.2);
  const Json prod{{"kind", "product"}, {"left", pts}, {"right", {{"kind", "explicit-points"}, {"points", {{5.0}, {6.0}}}, {"delta", 0.1}}}};
  const SampledSet p = generate(prod);
  EXPECT_EQ(p.ambient_dim(), 3);
  EXPECT_EQ(p.size(), 4);
  EXPECT_NEAR(p.delta(), std::hypot(0.1, 0.1), 1e-15);
  const SampledSet seq = generate(Json{{"kind", "sequence-1d"}, {"sequence", "harmonic"}, {"count", 50}, {"symmetric", true}});
  EXPECT_EQ(seq.size(), 101);
}

TEST(Generate, RejectsBadSpecs) {
  EXPECT_THROW(generate(Json{{"points", 1}}), InputError);
  EXPECT_THROW(generate(Json{{"kind", "whatever"}}), CatalogError);
  EXPECT_THROW(generate(Json{{"kind", "explicit-points"}, {"points", {{0.0}}}}), InputError);  // no delta
  EXPECT_THROW(generate(Json{{"kind", "explicit-points"}, {"points", Json::array()}, {"delta", 0.1}}), EmptySetError);
}

// ---------------------------------------------------------------------------
// Point-cloud I/O

TEST(PointIo, CsvRoundTripWithHeaderAndComments) {
  std::istringstream in("x,y\n# comment\n1,2\n\n3.5,-4e-3\n");
  const Mat m = read_points_csv(in);
  ASSERT_EQ(m.cols(), 2);
  EXPECT_DOUBLE_EQ(m(1, 1), -4e-3);
  std::ostringstream out;
  write_points_csv(out, m);
  std::istringstream back(out.str());
  EXPECT_EQ(read_points_csv(back), m);
}

TEST(PointIo, MalformedCsvIsRejected) {
  std::istringstream bad("1,2\n3,x\n");
  EXPECT_THROW(read_points_csv(bad), InputError);
  std::istringstream ragged("1,2\n3\n");
  EXPECT_THROW(read_points_csv(ragged), InputError);
  std::istringstream empty("# nothing\n");
  EXPECT_THROW(read_points_csv(empty), EmptySetError);
}

TEST(PointIo, JsonRoundTripKeepsMetadata) {
  const SampledSet s = build_example("graph-of-custom-function", Json{{"function", "abs"}, {"delta", 0.05}});
  const Json j = to_json(s);
  const SampledSet t = point_set_from_json(j);
  EXPECT_EQ(t.points(), s.points());
  EXPECT_EQ(t.delta(), s.delta());
  EXPECT_EQ(*t.metadata().graph_domain_dim, 1);
  EXPECT_EQ(to_json(t).dump(), j.dump());
  EXPECT_THROW(point_set_from_json(Json{{"points", {{1.0, 2.0}, {3.0}}}}), InputError);
}
