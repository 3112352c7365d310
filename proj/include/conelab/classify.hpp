#pragma once

// Point-level tests behind the C¹-manifold characterizations. Every test returns a
// tri-state verdict with the measured quantity, its tolerance and the signed excess
// (measured minus tolerance for upper-bound tests, so positive excess means failure).

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "conelab/cones.hpp"
#include "conelab/error.hpp"
#include "conelab/exterior.hpp"
#include "conelab/sampled_set.hpp"
#include "conelab/subspaces.hpp"

namespace conelab {

enum class Verdict { Pass, Fail, Inconclusive };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

/// Fail dominates inconclusive, which dominates pass.
inline Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::Fail || b == Verdict::Fail) return Verdict::Fail;
  if (a == Verdict::Inconclusive || b == Verdict::Inconclusive) return Verdict::Inconclusive;
  return Verdict::Pass;
}

/// Multiplier C in the inconclusive band C·δ/λ_min around each tolerance.
inline constexpr double kBudgetFactor = 0.1;
inline constexpr double kDefaultInjectivityTol = 0.5;

struct ClassifierParams {
  ConeParams cones;
  /// Direction grid; the default grid for the ambient dimension when null.
  std::shared_ptr<const DirectionGrid> grid;
  std::uint64_t seed = kDefaultSeed;
  double sigma_tol = kDefaultSigmaTol;
  double vector_space_tol = kDefaultVectorSpaceTol;
  /// Tolerances left at 0 are derived from the grid: 2·mesh + 0.05.
  double defect_tol = 0.0;
  double angle_tol = 0.0;
  double injectivity_tol = kDefaultInjectivityTol;
  /// Radius of sample balls for secant-based tests; 0 means λ₀.
  double probe_radius = 0.0;
  double budget_factor = kBudgetFactor;
};

/// Outcome of one numeric test.
struct TestResult {
  std::string name;
  Verdict verdict = Verdict::Pass;
  double measured = 0.0;
  double tolerance = 0.0;
  double excess = 0.0;
  std::string note;
};

/// Upper-bound test measured ≤ tol with an inconclusive band of half-width `budget`.
inline TestResult bound_test(std::string name, double measured, double tol, double budget) {
  TestResult r{std::move(name), Verdict::Pass, measured, tol, measured - tol, {}};
  if (r.excess > budget) {
    r.verdict = Verdict::Fail;
  } else if (r.excess > -budget) {
    r.verdict = Verdict::Inconclusive;
  }
  return r;
}

/// Exact integer equality test (no discretization band).
inline TestResult equality_test(std::string name, int measured, int expected) {
  TestResult r{std::move(name), measured == expected ? Verdict::Pass : Verdict::Fail, static_cast<double>(measured),
               static_cast<double>(expected), std::abs(measured - expected) * 1.0, {}};
  return r;
}

struct PointReport {
  int index = 0;
  Vec point;
  std::array<int, 4> member_counts{};
  std::array<int, 4> hull_dims{};
  /// Coincidence defects: "pTan+|pTan-", "Tan+|Tan-", "pTan+|Tan+".
  std::map<std::string, double> defects;
  /// Angle between hull(Tan⁺) and hull(pTan⁺); absent when their dimensions differ.
  std::optional<double> hull_angle;
  std::vector<TestResult> tests;
  Verdict verdict = Verdict::Pass;
};

struct ClassificationReport {
  std::string theorem;
  std::optional<int> dim;
  ScaleLadder ladder;
  double tau = kDefaultTau;
  double mesh = 0.0;
  double defect_tol = 0.0;
  double budget = 0.0;
  std::string grid_scheme;
  int grid_size = 0;
  std::vector<PointReport> points;
  Verdict verdict = Verdict::Pass;
};

/// max over members of `larger` of the angle to the nearest member of `smaller`.
/// Zero when `larger` has no members, π when only `smaller` is empty.
inline double coincidence_defect(const ConeEstimate& larger, const ConeEstimate& smaller) {
  const Mat a = larger.member_directions();
  const Mat b = smaller.member_directions();
  if (a.cols() == 0) return 0.0;
  if (b.cols() == 0) return std::numbers::pi;
  const Mat dots = a.transpose() * b;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < dots.rows(); ++i) {
    const double best = std::clamp(dots.row(i).maxCoeff(), -1.0, 1.0);
    worst = std::max(worst, std::acos(best));
  }
  return worst;
}

namespace detail {

struct Context {
  const SampledSet* f = nullptr;
  ScaleLadder ladder;
  std::shared_ptr<const DirectionGrid> grid;
  ClassifierParams p;
  double defect_tol = 0.0;
  double angle_tol = 0.0;
  double budget = 0.0;
  double probe = 0.0;
};

inline Context make_context(const SampledSet& f, const ClassifierParams& params) {
  Context c;
  c.f = &f;
  c.p = params;
  c.ladder = make_ladder(f, params.cones);
  c.grid = params.grid ? params.grid
                       : std::make_shared<const DirectionGrid>(DirectionGrid::default_for(f.ambient_dim(), params.seed));
  if (c.grid->dim() != f.ambient_dim()) throw DimensionError("direction grid dimension does not match the set");
  const double derived = 2.0 * c.grid->mesh() + 0.05;
  c.defect_tol = params.defect_tol > 0.0 ? params.defect_tol : derived;
  c.angle_tol = params.angle_tol > 0.0 ? params.angle_tol : derived;
  c.budget = params.budget_factor * f.delta() / c.ladder.smallest();
  c.probe = params.probe_radius > 0.0 ? params.probe_radius : c.ladder.lambda0;
  return c;
}

inline void require_on_set(const SampledSet& f, const Vec& x) {
  if (x.size() != f.ambient_dim()) throw DimensionError("test point dimension does not match the set");
  if (f.dist_query(x) > f.delta()) throw PointNotOnSetError("test point is farther than delta from the samples");
}

inline ClassificationReport start_report(const Context& c, std::string theorem) {
  ClassificationReport r;
  r.theorem = std::move(theorem);
  r.ladder = c.ladder;
  r.tau = c.p.cones.tau;
  r.mesh = c.grid->mesh();
  r.defect_tol = c.defect_tol;
  r.budget = c.budget;
  r.grid_scheme = std::string(to_string(c.grid->scheme()));
  r.grid_size = c.grid->size();
  return r;
}

/// All four cone estimates at x plus the summary fields shared by every report.
struct ConeBundle {
  std::array<ConeEstimate, 4> cones;
  std::array<Subspace, 4> hulls;

  [[nodiscard]] const ConeEstimate& get(ConeKind k) const { return cones[static_cast<std::size_t>(k)]; }
  [[nodiscard]] const Subspace& hull(ConeKind k) const { return hulls[static_cast<std::size_t>(k)]; }
};

inline ConeBundle bundle_at(const Context& c, const Vec& x) {
  ConeBundle b{estimate_all_cones(*c.f, x, c.ladder, c.grid, c.p.cones.tau, c.p.cones.max_bases), {}};
  for (std::size_t i = 0; i < 4; ++i) b.hulls[i] = linear_hull(b.cones[i], c.p.sigma_tol);
  return b;
}

inline PointReport point_summary(int index, const Vec& x, const ConeBundle& b) {
  PointReport pr;
  pr.index = index;
  pr.point = x;
  for (std::size_t i = 0; i < 4; ++i) {
    pr.member_counts[i] = static_cast<int>(b.cones[i].member_indices().size());
    pr.hull_dims[i] = b.hulls[i].dim();
  }
  pr.defects["pTan+|pTan-"] = coincidence_defect(b.get(ConeKind::UpperParatangent), b.get(ConeKind::LowerParatangent));
  pr.defects["Tan+|Tan-"] = coincidence_defect(b.get(ConeKind::UpperTangent), b.get(ConeKind::LowerTangent));
  pr.defects["pTan+|Tan+"] = coincidence_defect(b.get(ConeKind::UpperParatangent), b.get(ConeKind::UpperTangent));
  const Subspace& ht = b.hull(ConeKind::UpperTangent);
  const Subspace& hp = b.hull(ConeKind::UpperParatangent);
  if (ht.dim() == hp.dim() && ht.dim() > 0) pr.hull_angle = subspace_angle(ht, hp);
  return pr;
}

inline void finish_point(PointReport& pr) {
  pr.verdict = Verdict::Pass;
  for (const auto& t : pr.tests) pr.verdict = combine(pr.verdict, t.verdict);
}

inline void finish_report(ClassificationReport& r) {
  r.verdict = Verdict::Pass;
  for (const auto& p : r.points) r.verdict = combine(r.verdict, p.verdict);
}

template <class PerPoint>
ClassificationReport run_points(const SampledSet& f, const Mat& test_points, const ClassifierParams& params,
                                std::string theorem, PerPoint&& per_point) {
  const Context c = make_context(f, params);
  ClassificationReport r = start_report(c, std::move(theorem));
  for (Eigen::Index i = 0; i < test_points.cols(); ++i) {
    const Vec x = test_points.col(i);
    require_on_set(f, x);
    const ConeBundle b = bundle_at(c, x);
    PointReport pr = point_summary(static_cast<int>(i), x, b);
    per_point(c, x, b, pr);
    finish_point(pr);
    r.points.push_back(std::move(pr));
  }
  finish_report(r);
  return r;
}

/// Tierno hull condition: the pTan⁺ hull agrees with the Tan⁺ hull.
inline TestResult hull_agreement(const Context& c, const ConeBundle& b) {
  const Subspace& ht = b.hull(ConeKind::UpperTangent);
  const Subspace& hp = b.hull(ConeKind::UpperParatangent);
  if (ht.dim() != hp.dim()) {
    TestResult t = equality_test("pLTan+ = LTan+ (dim)", hp.dim(), ht.dim());
    t.note = "hull dimensions differ";
    return t;
  }
  if (ht.dim() == 0 || ht.dim() == ht.ambient_dim()) return bound_test("pLTan+ = LTan+ (angle)", 0.0, c.angle_tol, 0.0);
  return bound_test("pLTan+ = LTan+ (angle)", subspace_angle(ht, hp), c.angle_tol, c.budget);
}

/// Up to `cap` samples within `radius` of x, thinned by a fixed stride.
inline Mat ball_samples(const SampledSet& f, const Vec& x, double radius, int cap) {
  const auto idx = f.neighbor_indices(x, radius);
  const std::size_t m = idx.size();
  const std::size_t keep = std::min<std::size_t>(m, static_cast<std::size_t>(cap));
  Mat out(f.ambient_dim(), static_cast<Eigen::Index>(keep));
  for (std::size_t j = 0; j < keep; ++j) {
    const std::size_t pick = keep == m ? j : j * m / keep;
    out.col(static_cast<Eigen::Index>(j)) = f.points().col(idx[pick]);
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Theorem-level classifiers.

/// Four-cones coincidence at each test point: pTan⁻ and pTan⁺ agree.
inline ClassificationReport four_cones_classify(const SampledSet& f, const Mat& test_points,
                                                const ClassifierParams& params = {}) {
  return detail::run_points(f, test_points, params, "four-cones",
                            [](const detail::Context& c, const Vec&, const detail::ConeBundle& b, PointReport& pr) {
                              pr.tests.push_back(bound_test("pTan- = pTan+", pr.defects.at("pTan+|pTan-"),
                                                            c.defect_tol, c.budget));
                              // Local-version side condition, reported but not part of the verdict.
                              const auto vs = is_vector_space(b.get(ConeKind::UpperParatangent),
                                                              c.p.vector_space_tol, c.p.sigma_tol);
                              TestResult t = bound_test("pTan+ = pLTan+", vs.worst_score,
                                                        c.p.cones.tau + c.p.vector_space_tol, 0.0);
                              t.note = "informational";
                              pr.tests.push_back(t);
                              pr.tests.back().verdict = Verdict::Pass;
                            });
}

/// Tierno: Tan⁺ is a d-dimensional vector space whose hull also carries pTan⁺.
inline ClassificationReport tierno_classify(const SampledSet& f, const Mat& test_points, int d,
                                            const ClassifierParams& params = {}) {
  if (d < 0 || d > f.ambient_dim()) throw InputError("tierno: dimension out of range");
  auto r = detail::run_points(
      f, test_points, params, "tierno",
      [d](const detail::Context& c, const Vec&, const detail::ConeBundle& b, PointReport& pr) {
        const auto vs = is_vector_space(b.get(ConeKind::UpperTangent), c.p.vector_space_tol, c.p.sigma_tol);
        pr.tests.push_back(
            bound_test("Tan+ = LTan+", vs.worst_score, c.p.cones.tau + c.p.vector_space_tol, c.budget));
        pr.tests.push_back(equality_test("dim LTan+ = d", b.hull(ConeKind::UpperTangent).dim(), d));
        pr.tests.push_back(detail::hull_agreement(c, b));
      });
  r.dim = d;
  return r;
}

/// Shchepin–Repovš: Tan⁺ = pTan⁺ and dim LTan⁺ = d.
inline ClassificationReport shchepin_repovs_classify(const SampledSet& f, const Mat& test_points, int d,
                                                     const ClassifierParams& params = {}) {
  if (d < 0 || d > f.ambient_dim()) throw InputError("shchepin-repovs: dimension out of range");
  auto r = detail::run_points(
      f, test_points, params, "shchepin-repovs",
      [d](const detail::Context& c, const Vec&, const detail::ConeBundle& b, PointReport& pr) {
        pr.tests.push_back(bound_test("Tan+ = pTan+", pr.defects.at("pTan+|Tan+"), c.defect_tol, c.budget));
        pr.tests.push_back(equality_test("dim LTan+ = d", b.hull(ConeKind::UpperTangent).dim(), d));
      });
  r.dim = d;
  return r;
}

// ---------------------------------------------------------------------------
// Point tests.

/// Orthogonal projection onto LTan⁺ is injective on the samples near x:
/// min over pairs with ‖p − q‖ > 2δ of ‖P(p − q)‖ / ‖p − q‖ must stay above injectivity_tol.
inline TestResult valiron_test(const detail::Context& c, const Vec& x, const Subspace& hull) {
  if (hull.dim() == 0) {
    TestResult t{"valiron", Verdict::Inconclusive, 0.0, c.p.injectivity_tol, 0.0, "LTan+ is zero-dimensional"};
    return t;
  }
  const Mat pts = detail::ball_samples(*c.f, x, c.probe, 1500);
  const Mat proj = hull.basis().transpose() * pts;
  double worst = 1.0;
  const double sep = 2.0 * c.f->delta();
  for (Eigen::Index i = 0; i < pts.cols(); ++i) {
    for (Eigen::Index j = i + 1; j < pts.cols(); ++j) {
      const double d = (pts.col(i) - pts.col(j)).norm();
      if (d <= sep) continue;
      worst = std::min(worst, (proj.col(i) - proj.col(j)).norm() / d);
    }
  }
  // Lower-bound test: report excess as tol − measured.
  TestResult t = bound_test("valiron", -worst, -c.p.injectivity_tol, c.budget);
  t.measured = worst;
  t.tolerance = c.p.injectivity_tol;
  return t;
}

inline TestResult valiron_condition(const SampledSet& f, const Vec& x, const ClassifierParams& params = {}) {
  const auto c = detail::make_context(f, params);
  detail::require_on_set(f, x);
  const ConeEstimate tan = estimate_cone(f, x, ConeKind::UpperTangent, c.ladder, c.grid, params.cones.tau,
                                         params.cones.max_bases);
  return valiron_test(c, x, linear_hull(tan, params.sigma_tol));
}

/// dim pLTan⁺ ≤ d; measured is the relative singular value σ_{d+1}/σ₁ against σ_tol.
inline TestResult severi_test(const detail::Context& c, const ConeEstimate& ptan, int d) {
  const Vec sv = hull_singular_values(ptan.member_directions());
  const double rel = (sv.size() > d && sv(0) > 0.0) ? sv(d) / sv(0) : 0.0;
  return bound_test("severi", rel, c.p.sigma_tol, 0.0);
}

inline TestResult severi_simplicity(const SampledSet& f, const Vec& x, int d, const ClassifierParams& params = {}) {
  const auto c = detail::make_context(f, params);
  detail::require_on_set(f, x);
  const ConeEstimate ptan = estimate_cone(f, x, ConeKind::UpperParatangent, c.ladder, c.grid, params.cones.tau,
                                          params.cones.max_bases);
  return severi_test(c, ptan, d);
}

/// True when the unit directions can be covered by two caps of angular radius `cap`.
inline bool two_clusters(const Mat& dirs, double cap) {
  if (dirs.cols() <= 2) return true;
  const Vec c1 = dirs.col(0);
  Eigen::Index far = 0;
  (dirs.transpose() * c1).minCoeff(&far);
  const Vec c2 = dirs.col(far);
  for (Eigen::Index j = 0; j < dirs.cols(); ++j) {
    const double a = std::min(vector_angle(dirs.col(j), c1), vector_angle(dirs.col(j), c2));
    if (a > cap) return false;
  }
  return true;
}

struct GluckResult {
  TestResult result;
  std::vector<double> radii;
  std::vector<double> defects;
  Vec limit_line;
};

/// Secant lines through sample pairs in three nested balls against the principal
/// pTan⁺ direction. Supported only where Tan⁺ looks one-dimensional (at most two rays).
inline GluckResult gluck_test(const detail::Context& c, const Vec& x, const detail::ConeBundle& b) {
  GluckResult g;
  const Mat tan = b.get(ConeKind::UpperTangent).member_directions();
  const Mat ptan = b.get(ConeKind::UpperParatangent).member_directions();
  const double cap = 2.0 * std::asin(std::min(1.0, c.p.cones.tau)) + 2.0 * c.grid->mesh();
  if (tan.cols() == 0 || ptan.cols() == 0 || !two_clusters(tan, cap)) {
    g.result = TestResult{"gluck", Verdict::Inconclusive, 0.0, c.defect_tol, 0.0, "unsupported: not a curve here"};
    return g;
  }
  Eigen::JacobiSVD<Mat> svd(ptan, Eigen::ComputeThinU);
  g.limit_line = svd.matrixU().col(0);
  const double sep = 2.0 * c.f->delta();
  for (int j = 0; j < 3; ++j) {
    const double r = c.probe / std::pow(2.0, j);
    const Mat pts = detail::ball_samples(*c.f, x, r, 400);
    double worst = 0.0;
    for (Eigen::Index a = 0; a < pts.cols(); ++a) {
      for (Eigen::Index bb = a + 1; bb < pts.cols(); ++bb) {
        const Vec s = pts.col(a) - pts.col(bb);
        if (s.norm() <= sep) continue;
        worst = std::max(worst, line_angle(s, g.limit_line));
      }
    }
    g.radii.push_back(r);
    g.defects.push_back(worst);
  }
  g.result = bound_test("gluck", g.defects.back(), c.defect_tol, c.budget);
  if (g.defects.back() > g.defects.front() + c.budget && g.result.verdict == Verdict::Pass) {
    g.result.verdict = Verdict::Inconclusive;
    g.result.note = "secant defect not decreasing";
  }
  return g;
}

inline GluckResult gluck_secant_test(const SampledSet& f, const Vec& x, const ClassifierParams& params = {}) {
  const auto c = detail::make_context(f, params);
  detail::require_on_set(f, x);
  return gluck_test(c, x, detail::bundle_at(c, x));
}

/// Every grid direction is a pTan⁻ member (x is interior).
inline TestResult open_set_test(const SampledSet& f, const Vec& x, const ClassifierParams& params = {}) {
  const auto c = detail::make_context(f, params);
  detail::require_on_set(f, x);
  const ConeEstimate e = estimate_cone(f, x, ConeKind::LowerParatangent, c.ladder, c.grid, params.cones.tau,
                                       params.cones.max_bases);
  return bound_test("open-set", e.scores.maxCoeff(), params.cones.tau, 0.0);
}

namespace detail {

inline int require_graph(const SampledSet& f) {
  const auto k = f.metadata().graph_domain_dim;
  if (!k || *k < 1 || *k >= f.ambient_dim()) throw InputError("graph test needs a declared domain/codomain split");
  return *k;
}

/// {0} × R^m inside R^{k+m}.
inline Subspace vertical_subspace(int k, int n) {
  Mat b = Mat::Zero(n, n - k);
  b.bottomRows(n - k) = Mat::Identity(n - k, n - k);
  return Subspace::from_orthonormal(b);
}

}  // namespace detail

/// No pTan⁺ member lies within angle_tol of the vertical subspace.
inline TestResult no_vertical_test(const detail::Context& c, const ConeEstimate& ptan, int k) {
  const Subspace vert = detail::vertical_subspace(k, c.f->ambient_dim());
  const Mat m = ptan.member_directions();
  double closest = std::numbers::pi / 2;
  for (Eigen::Index j = 0; j < m.cols(); ++j) closest = std::min(closest, angle_to_subspace(m.col(j), vert));
  TestResult t = bound_test("no-vertical-lines", -closest, -c.angle_tol, c.budget);
  t.measured = closest;
  t.tolerance = c.angle_tol;
  return t;
}

inline TestResult no_vertical_lines_test(const SampledSet& f, const Vec& x, const ClassifierParams& params = {}) {
  const int k = detail::require_graph(f);
  const auto c = detail::make_context(f, params);
  detail::require_on_set(f, x);
  const ConeEstimate ptan = estimate_cone(f, x, ConeKind::UpperParatangent, c.ladder, c.grid, params.cones.tau,
                                          params.cones.max_bases);
  return no_vertical_test(c, ptan, k);
}

struct StrictDiffResult {
  Verdict verdict = Verdict::Pass;
  std::vector<TestResult> tests;
  /// Linear map whose graph is pLTan⁺ (m×k); empty when the hull is not a graph.
  Mat differential;
  /// Oscillation of the codomain coordinates over shrinking domain balls.
  std::vector<double> radii;
  std::vector<double> oscillation;
};

/// Strict differentiability of a sampled graph at x.
inline StrictDiffResult strict_differentiability_test(const SampledSet& f, const Vec& x,
                                                      const ClassifierParams& params = {}) {
  const int k = detail::require_graph(f);
  const auto c = detail::make_context(f, params);
  detail::require_on_set(f, x);
  const int n = f.ambient_dim();
  StrictDiffResult out;

  // Continuity: the codomain oscillation must shrink with the domain radius.
  for (int j = 0; j < 4; ++j) {
    const double r = c.probe / std::pow(2.0, j);
    const Mat& pts = f.points();
    double osc = 0.0;
    for (Eigen::Index i = 0; i < pts.cols(); ++i) {
      if ((pts.col(i).head(k) - x.head(k)).norm() > r) continue;
      osc = std::max(osc, (pts.col(i).tail(n - k) - x.tail(n - k)).norm());
    }
    out.radii.push_back(r);
    out.oscillation.push_back(osc);
  }
  const double ratio = out.oscillation.front() > 0.0 ? out.oscillation.back() / out.oscillation.front() : 0.0;
  TestResult cont = bound_test("continuity", ratio, 0.5, 0.0);
  if (out.oscillation.back() <= 10.0 * f.delta()) cont.verdict = Verdict::Pass;
  out.tests.push_back(cont);

  const ConeEstimate ptan = estimate_cone(f, x, ConeKind::UpperParatangent, c.ladder, c.grid, params.cones.tau,
                                          params.cones.max_bases);
  const Subspace hull = linear_hull(ptan, params.sigma_tol);
  out.tests.push_back(equality_test("dim pLTan+ = domain dim", hull.dim(), k));
  out.tests.push_back(no_vertical_test(c, ptan, k));

  if (hull.dim() == k) {
    const Mat b = hull.basis();
    const Mat dom = b.topRows(k);
    const Eigen::FullPivLU<Mat> lu(dom);
    if (lu.isInvertible()) out.differential = b.bottomRows(n - k) * lu.inverse();
  }
  for (const auto& t : out.tests) out.verdict = combine(out.verdict, t.verdict);
  return out;
}

struct AngleConditionRow {
  double radius = 0.0;
  double fixed_center = 0.0;
  double moving_center = 0.0;
};

struct AngleConditionScores {
  std::vector<AngleConditionRow> rows;
  double fixed_center_score = 0.0;
  double moving_center_score = 0.0;
  /// max angle between LTan⁺ at the moving centers and LTan⁺ at x̂ (π/2 on dimension change).
  double ls_alignment = 0.0;
};

/// Secant-to-tangent-space ratios over three shrinking balls around x̂.
inline AngleConditionScores angle_condition_scores(const SampledSet& f, const Vec& xhat,
                                                   const ClassifierParams& params = {}, int centers = 8) {
  const auto c = detail::make_context(f, params);
  detail::require_on_set(f, xhat);
  const auto hull_at = [&](const Vec& x) {
    return linear_hull(
        estimate_cone(f, x, ConeKind::UpperTangent, c.ladder, c.grid, params.cones.tau, params.cones.max_bases),
        params.sigma_tol);
  };
  const Subspace h0 = hull_at(xhat);
  AngleConditionScores out;
  const double sep = 2.0 * f.delta();
  for (int j = 0; j < 3; ++j) {
    const double r = c.probe / std::pow(2.0, j);
    const Mat pts = detail::ball_samples(f, xhat, r, 300);
    AngleConditionRow row{r, 0.0, 0.0};
    for (Eigen::Index a = 0; a < pts.cols(); ++a) {
      for (Eigen::Index b = 0; b < pts.cols(); ++b) {
        const Vec s = pts.col(b) - pts.col(a);
        if (s.norm() <= sep) continue;
        row.fixed_center = std::max(row.fixed_center, dist_to_subspace(s, h0) / s.norm());
      }
    }
    const Eigen::Index step = std::max<Eigen::Index>(1, pts.cols() / centers);
    for (Eigen::Index a = 0; a < pts.cols(); a += step) {
      const Vec x = pts.col(a);
      const Subspace hx = hull_at(x);
      for (Eigen::Index b = 0; b < pts.cols(); ++b) {
        const Vec s = pts.col(b) - x;
        if (s.norm() <= sep) continue;
        row.moving_center = std::max(row.moving_center, dist_to_subspace(s, hx) / s.norm());
      }
      if (j == 2) {
        const double ang = (hx.dim() == h0.dim() && h0.dim() > 0 && h0.dim() < h0.ambient_dim())
                               ? subspace_angle(hx, h0)
                               : (hx.dim() == h0.dim() ? 0.0 : std::numbers::pi / 2);
        out.ls_alignment = std::max(out.ls_alignment, ang);
      }
    }
    out.rows.push_back(row);
  }
  out.fixed_center_score = out.rows.back().fixed_center;
  out.moving_center_score = out.rows.back().moving_center;
  return out;
}

// ---------------------------------------------------------------------------
// Point-test classifiers over many points, for the command line.

inline ClassificationReport valiron_classify(const SampledSet& f, const Mat& test_points,
                                             const ClassifierParams& params = {}) {
  return detail::run_points(f, test_points, params, "valiron",
                            [](const detail::Context& c, const Vec& x, const detail::ConeBundle& b, PointReport& pr) {
                              pr.tests.push_back(valiron_test(c, x, b.hull(ConeKind::UpperTangent)));
                            });
}

inline ClassificationReport severi_classify(const SampledSet& f, const Mat& test_points, int d,
                                            const ClassifierParams& params = {}) {
  auto r = detail::run_points(f, test_points, params, "severi",
                              [d](const detail::Context& c, const Vec&, const detail::ConeBundle& b, PointReport& pr) {
                                pr.tests.push_back(severi_test(c, b.get(ConeKind::UpperParatangent), d));
                              });
  r.dim = d;
  return r;
}

inline ClassificationReport gluck_classify(const SampledSet& f, const Mat& test_points,
                                           const ClassifierParams& params = {}) {
  return detail::run_points(f, test_points, params, "gluck",
                            [](const detail::Context& c, const Vec& x, const detail::ConeBundle& b, PointReport& pr) {
                              pr.tests.push_back(gluck_test(c, x, b).result);
                            });
}

}  // namespace conelab
