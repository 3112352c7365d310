#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include "conelab/exterior.hpp"

using namespace conelab;

namespace {

Mat gaussian(std::mt19937_64& rng, int r, int c) {
  std::normal_distribution<double> g;
  Mat m(r, c);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < c; ++j) m(i, j) = g(rng);
  }
  return m;
}

// Leibniz expansion; fine for k <= 5.
double leibniz_det(const Mat& a) {
  const auto k = static_cast<int>(a.rows());
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  double total = 0.0;
  do {
    int inversions = 0;
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) inversions += perm[i] > perm[j] ? 1 : 0;
    }
    double term = inversions % 2 ? -1.0 : 1.0;
    for (int i = 0; i < k; ++i) term *= a(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// Residual of the normal-equations least-squares fit.
double normal_equation_residual(const Mat& a, const Vec& x) {
  const Vec c = (a.transpose() * a).ldlt().solve(a.transpose() * x);
  return (x - a * c).norm();
}

// Product of the cosines of the principal angles.
double principal_cosine_product(const Mat& b1, const Mat& b2) {
  return Eigen::JacobiSVD<Mat>(b1.transpose() * b2).singularValues().prod();
}

Subspace random_subspace(std::mt19937_64& rng, int n, int d) { return Subspace::span(gaussian(rng, n, d)); }

}  // namespace

TEST(Blade, RejectsGradeOutsideOneToN) {
  EXPECT_THROW(Blade(Mat(3, 0)), DimensionError);
  EXPECT_THROW(Blade(Mat::Identity(2, 3)), DimensionError);
  EXPECT_NO_THROW(Blade(Mat::Identity(3, 3)));
}

TEST(Blade, GramInnerMatchesLeibnizDeterminant) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 6;
    const int k = 1 + trial % std::min(n, 4);
    const Mat a = gaussian(rng, n, k);
    const Mat b = gaussian(rng, n, k);
    EXPECT_NEAR(gram_inner(Blade(a), Blade(b)), leibniz_det(a.transpose() * b), 1e-10);
  }
}

TEST(Blade, GramInnerRejectsMismatchedGrades) {
  EXPECT_THROW(gram_inner(Blade(Mat::Identity(3, 2)), Blade(Mat::Identity(3, 1))), GradeError);
  EXPECT_THROW(gram_inner(Blade(Mat::Identity(3, 2)), Blade(Mat::Identity(4, 2))), DimensionError);
}

TEST(Blade, NormIsSquareRootOfGramDeterminant) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 6;
    const int k = 1 + trial % std::min(n, 4);
    const Mat a = gaussian(rng, n, k);
    EXPECT_NEAR(blade_norm(Blade(a)), std::sqrt(leibniz_det(a.transpose() * a)), 1e-9);
  }
}

TEST(Blade, NormOfDependentFactorsIsZero) {
  Mat a(3, 2);
  a << 1, 2, 1, 2, 0, 0;
  EXPECT_EQ(blade_norm(Blade(a)), 0.0);
  EXPECT_EQ(blade_norm(Blade(Mat::Zero(3, 1))), 0.0);
}

TEST(Blade, NormOfUnitSquareAndScaling) {
  EXPECT_NEAR(blade_norm(Blade(Mat::Identity(4, 2))), 1.0, 1e-15);
  Mat a = Mat::Identity(4, 2);
  a.col(0) *= 3.0;
  a.col(1) *= -0.5;
  EXPECT_NEAR(blade_norm(Blade(a)), 1.5, 1e-14);
}

TEST(Blade, WedgeAppendsFactor) {
  const Blade b(Mat::Identity(3, 1));
  const Vec e2 = Vec::Unit(3, 1);
  const Blade w = b.wedge(e2);
  EXPECT_EQ(w.grade(), 2);
  EXPECT_NEAR(blade_norm(w), 1.0, 1e-15);
  EXPECT_THROW(b.wedge(Vec::Zero(2)), DimensionError);
}

TEST(Subspace, SpanDetectsRank) {
  Mat a(4, 3);
  a << 1, 2, 3, 0, 0, 0, 1, 2, 3, 0, 1, 1;
  const Subspace s = Subspace::span(a);
  EXPECT_EQ(s.dim(), 2);
  EXPECT_EQ(s.ambient_dim(), 4);
  EXPECT_NEAR((s.basis().transpose() * s.basis() - Mat::Identity(2, 2)).norm(), 0.0, 1e-12);
  EXPECT_EQ(Subspace::span(Mat::Zero(3, 2)).dim(), 0);
}

TEST(Subspace, FromOrthonormalRejectsNonOrthonormal) {
  Mat a = Mat::Identity(3, 2);
  a(0, 1) = 0.5;
  EXPECT_THROW(Subspace::from_orthonormal(a), DimensionError);
}

TEST(Subspace, ProjectionIsIdempotentAndOrthogonal) {
  std::mt19937_64 rng(3);
  const Subspace s = random_subspace(rng, 6, 3);
  const Vec x = gaussian(rng, 6, 1);
  const Vec p = s.project(x);
  EXPECT_NEAR((s.project(p) - p).norm(), 0.0, 1e-12);
  EXPECT_NEAR((s.basis().transpose() * (x - p)).norm(), 0.0, 1e-12);
}

TEST(Distance, MatchesNormalEquationResidual) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 7;
    const int d = 1 + trial % std::min(n - 1, 4);
    const Mat a = gaussian(rng, n, d);
    const Vec x = gaussian(rng, n, 1);
    EXPECT_NEAR(dist_to_subspace(x, Subspace::span(a)), normal_equation_residual(a, x), 1e-9);
  }
}

TEST(Distance, EdgeCases) {
  const Vec x = (Vec(3) << 3, 4, 12).finished();
  EXPECT_DOUBLE_EQ(dist_to_subspace(x, Subspace::zero(3)), 13.0);
  EXPECT_DOUBLE_EQ(dist_to_subspace(x, Subspace::whole(3)), 0.0);
  EXPECT_DOUBLE_EQ(dist_to_subspace(Vec::Zero(3), Subspace::span(Mat::Identity(3, 1))), 0.0);
  EXPECT_NEAR(dist_to_subspace(x, Subspace::span(Mat::Identity(3, 2))), 12.0, 1e-12);
  EXPECT_THROW(dist_to_subspace(Vec::Zero(2), Subspace::whole(3)), DimensionError);
}

TEST(DistanceProperty, PythagorasHomogeneityAndTranslation) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + trial % 5;
    const Subspace v = random_subspace(rng, n, 1 + trial % (n - 1));
    const Vec x = gaussian(rng, n, 1);
    const double d = dist_to_subspace(x, v);
    EXPECT_NEAR(d * d + v.project(x).squaredNorm(), x.squaredNorm(), 1e-9);
    EXPECT_LE(d, x.norm() + 1e-12);
    EXPECT_NEAR(dist_to_subspace(-2.5 * x, v), 2.5 * d, 1e-9);
    const Vec inside = v.basis() * gaussian(rng, v.dim(), 1);
    EXPECT_NEAR(dist_to_subspace(x + inside, v), d, 1e-9);
  }
}

TEST(Angle, MatchesPrincipalAngles) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 7;
    const int d = 1 + trial % std::min(n, 4);
    const Subspace v = random_subspace(rng, n, d);
    const Subspace w = random_subspace(rng, n, d);
    EXPECT_NEAR(std::cos(subspace_angle(v, w)), principal_cosine_product(v.basis(), w.basis()), 1e-9);
    EXPECT_NEAR(projection_factor(v, w), std::abs((v.basis().transpose() * w.basis()).determinant()), 1e-9);
  }
}

TEST(Angle, ClosedFormTilt) {
  for (double theta : {0.0, 0.1, 0.7, 1.2, std::numbers::pi / 2}) {
    Mat b(3, 2);
    b << 1, 0, 0, std::cos(theta), 0, std::sin(theta);
    EXPECT_NEAR(subspace_angle(Subspace::span(Mat::Identity(3, 2)), Subspace::span(b)), theta, 1e-7);
  }
}

TEST(Angle, RequiresSameGrassmannian) {
  EXPECT_THROW(subspace_angle(Subspace::whole(3), Subspace::span(Mat::Identity(3, 2))), DimensionError);
  EXPECT_THROW(subspace_angle(Subspace::zero(3), Subspace::zero(3)), DimensionError);
}

TEST(AngleProperty, SymmetricBoundedAndBasisInvariant) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + trial % 5;
    const int d = 1 + trial % (n - 1);
    const Mat a = gaussian(rng, n, d);
    const Mat b = gaussian(rng, n, d);
    const Subspace v = Subspace::span(a);
    const Subspace w = Subspace::span(b);
    const double ang = subspace_angle(v, w);
    EXPECT_GE(ang, 0.0);
    EXPECT_LE(ang, std::numbers::pi / 2 + 1e-15);
    EXPECT_NEAR(ang, subspace_angle(w, v), 1e-12);
    // a different spanning set of the same subspace
    const Mat mix = gaussian(rng, d, d) + 3.0 * Mat::Identity(d, d);
    EXPECT_NEAR(ang, subspace_angle(Subspace::span(a * mix), w), 1e-7);
    // a common rotation of the ambient space
    const Mat q = Eigen::HouseholderQR<Mat>(gaussian(rng, n, n)).householderQ();
    EXPECT_NEAR(ang, subspace_angle(Subspace::span(q * a), Subspace::span(q * b)), 1e-7);
    EXPECT_NEAR(subspace_angle(v, v), 0.0, 1e-6);
  }
}

TEST(AngleProperty, ComplementDimensionDetectsOrthogonality) {
  // any subspace containing a direction orthogonal to W is at π/2 from W
  Mat a(4, 2);
  a << 1, 0, 0, 0, 0, 1, 0, 0;
  Mat b(4, 2);
  b << 1, 0, 0, 1, 0, 0, 0, 0;
  EXPECT_NEAR(subspace_angle(Subspace::span(a), Subspace::span(b)), std::numbers::pi / 2, 1e-12);
}

TEST(Lines, LineAndVectorAngles) {
  const Vec a = (Vec(2) << 1, 1).finished();
  EXPECT_NEAR(line_angle(a, -a), 0.0, 1e-7);
  EXPECT_NEAR(vector_angle(a, -a), std::numbers::pi, 1e-7);
  EXPECT_NEAR(vector_angle(a, Vec::Unit(2, 0)), std::numbers::pi / 4, 1e-12);
  EXPECT_NEAR(angle_to_subspace(a, Subspace::span(Mat::Identity(2, 1))), std::numbers::pi / 4, 1e-12);
  EXPECT_NEAR(angle_to_subspace(a, Subspace::zero(2)), std::numbers::pi / 2, 1e-15);
}
