#pragma once

// The regression corpus: eleven end-to-end checks over the catalog, each compared with
// an independently computed expectation. Criterion 11 (repeatability of the whole run)
// needs two separate processes and is checked by the caller.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "conelab/catalog.hpp"
#include "conelab/classify.hpp"
#include "conelab/cones.hpp"
#include "conelab/exterior.hpp"
#include "conelab/liegroup.hpp"
#include "conelab/report.hpp"
#include "conelab/subspaces.hpp"

namespace conelab::corpus {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string summary;
  Json details = Json::object();
};

inline Json to_json(const CriterionResult& r) {
  return Json{{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"summary", r.summary}, {"details", r.details}};
}

namespace detail {

inline std::string fmt(double v, int precision = 4) {
  std::ostringstream s;
  s.precision(precision);
  s << v;
  return s.str();
}

inline std::shared_ptr<const DirectionGrid> shared(DirectionGrid g) {
  return std::make_shared<const DirectionGrid>(std::move(g));
}

/// Signs of the members of a 1-D cone estimate, encoded as "{0}", "R+", "-R+" or "R".
inline std::string cone_name_1d(const ConeEstimate& e) {
  bool plus = false;
  bool minus = false;
  for (int j : e.member_indices()) (e.grid->direction(j)(0) > 0 ? plus : minus) = true;
  if (plus && minus) return "R";
  if (plus) return "R+";
  if (minus) return "-R+";
  return "{0}";
}

/// Random d-dimensional subspace of R^n as an orthonormal basis.
inline Mat random_orthonormal(std::mt19937_64& rng, int n, int d) {
  std::normal_distribution<double> g;
  Mat a(n, d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) a(i, j) = g(rng);
  }
  return Eigen::HouseholderQR<Mat>(a).householderQ() * Mat::Identity(n, d);
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline CriterionResult criterion_examples_1d() {
  struct Case {
    const char* example;
    const char* set;
    std::array<const char*, 4> expected;  // pTan-, Tan-, Tan+, pTan+
  };
  const std::vector<Case> cases{
      {"Example 1", "factorial-sequence", {"{0}", "{0}", "R+", "R"}},
      {"Example 2", "half-line", {"R+", "R+", "R+", "R"}},
      {"Example 3", "singleton", {"{0}", "{0}", "{0}", "{0}"}},
      {"Example 4", "harmonic-sequence", {"{0}", "R+", "R+", "R"}},
      {"Example 5", "symmetric-harmonic", {"{0}", "R", "R", "R"}},
      {"Example 6", "factorial-plus-harmonic", {"{0}", "-R+", "R", "R"}},
  };
  CriterionResult r{1, "one-dimensional examples: four cones at 0", true, "", Json::array()};
  const auto grid = detail::shared(DirectionGrid::signs_1d());
  int matched = 0;
  for (const auto& c : cases) {
    const SampledSet f = build_example(c.set);
    const ScaleLadder ladder = make_ladder(f, ConeParams{});
    const auto cones = estimate_all_cones(f, Vec::Zero(1), ladder, grid, kDefaultTau);
    Json got = Json::object();
    Json want = Json::object();
    bool ok = true;
    for (std::size_t i = 0; i < 4; ++i) {
      const std::string name = detail::cone_name_1d(cones[i]);
      got[std::string(to_string(kAllConeKinds[i]))] = name;
      want[std::string(to_string(kAllConeKinds[i]))] = c.expected[i];
      ok = ok && name == c.expected[i];
    }
    matched += ok ? 1 : 0;
    r.passed = r.passed && ok;
    r.details.push_back(Json{{"example", c.example}, {"set", c.set}, {"scales", ladder.count}, {"estimated", got},
                             {"expected", want}, {"match", ok}});
  }
  r.summary = std::to_string(matched) + "/6 examples match";
  return r;
}

inline CriterionResult criterion_t_sin() {
  CriterionResult r{2, "t sin(1/t): lower tangent cone is the double cone |k| <= |h|", true, "", Json::object()};
  const SampledSet f = build_example("t-sin-1-over-t", Json{{"delta", 5e-6}, {"t_max", 0.02}, {"scale", 0.04}});
  ConeParams p;
  p.max_scales = 4;
  p.tau = 0.02;
  const ScaleLadder ladder = make_ladder(f, p);
  const auto grid = detail::shared(DirectionGrid::angular_2d());
  const ConeEstimate e = estimate_cone(f, Vec::Zero(2), ConeKind::LowerTangent, ladder, grid, p.tau);
  int inner = 0;
  int outer = 0;
  int inner_bad = 0;
  int outer_bad = 0;
  double worst_inner = 0.0;
  double best_outer = std::numeric_limits<double>::infinity();
  for (int j = 0; j < grid->size(); ++j) {
    const Vec v = grid->direction(j);
    const double h = std::abs(v(0));
    const double k = std::abs(v(1));
    if (k <= 0.95 * h) {
      ++inner;
      worst_inner = std::max(worst_inner, e.scores(j));
      inner_bad += e.is_member(j) ? 0 : 1;
    } else if (k >= 1.05 * h) {
      ++outer;
      best_outer = std::min(best_outer, e.scores(j));
      outer_bad += e.is_member(j) ? 1 : 0;
    }
  }
  r.passed = inner_bad == 0 && outer_bad == 0;
  r.summary = std::to_string(inner - inner_bad) + "/" + std::to_string(inner) + " inner members, " +
              std::to_string(outer - outer_bad) + "/" + std::to_string(outer) + " outer non-members";
  r.details = Json{{"samples", f.size()},  {"delta", f.delta()},       {"tau", p.tau},
                   {"scales", ladder.count}, {"inner_directions", inner}, {"inner_non_members", inner_bad},
                   {"outer_directions", outer}, {"outer_members", outer_bad}, {"worst_inner_score", worst_inner},
                   {"best_outer_score", best_outer}};
  return r;
}

inline CriterionResult criterion_ray_diagonal() {
  CriterionResult r{3, "ray plus diagonal sequence: lower tangent cone is two rays", true, "", Json::object()};
  const SampledSet f = build_example("ray-plus-diagonal-sequence");
  const double tau = 0.01;
  const ScaleLadder ladder = make_ladder(f, ConeParams{});
  const auto grid = detail::shared(DirectionGrid::angular_2d());
  const ConeEstimate e = estimate_cone(f, Vec::Zero(2), ConeKind::LowerTangent, ladder, grid, tau);
  Mat targets(2, 2);
  targets << 1, -1, 1, 1;
  targets /= std::sqrt(2.0);
  const double mesh = grid->mesh();
  int stray = 0;
  std::array<bool, 2> hit{false, false};
  Json members = Json::array();
  for (int j : e.member_indices()) {
    const Vec v = grid->direction(j);
    members.push_back(std::atan2(v(1), v(0)) * 180.0 / std::numbers::pi);
    bool near = false;
    for (int t = 0; t < 2; ++t) {
      if (std::acos(std::clamp(v.dot(targets.col(t)), -1.0, 1.0)) <= mesh + 1e-12) {
        near = true;
        hit[static_cast<std::size_t>(t)] = true;
      }
    }
    stray += near ? 0 : 1;
  }
  r.passed = stray == 0 && hit[0] && hit[1];
  r.summary = std::to_string(members.size()) + " members, " + std::to_string(stray) + " away from the two rays";
  r.details = Json{{"tau", tau}, {"scales", ladder.count}, {"mesh", mesh}, {"member_angles_deg", members},
                   {"stray", stray}, {"ray_45_found", hit[0]}, {"ray_135_found", hit[1]}};
  return r;
}

inline CriterionResult criterion_ratio() {
  CriterionResult r{4, "ratio criterion vs integer blow-up membership of +1", true, "", Json::array()};
  struct Seq {
    const char* name;
    double param;
    bool member;
  };
  const std::vector<Seq> seqs{
      {"harmonic", 0, true},          {"power", 0.75, true},          {"shifted-harmonic", 30, true},
      {"power", 1.25, true},          {"power", 1.5, true},           {"power", 2.0, true},
      {"shifted-harmonic", 3, true},  {"shifted-harmonic", 10, true}, {"m-log-m", 0, true},
      {"m-log2-m", 0, true},          {"factorial", 0, false},        {"geometric", 2, false},
      {"geometric", 3, false},        {"geometric", 1.5, false},      {"fibonacci", 0, false},
      {"m-geometric", 0, false},      {"factorial-squared", 0, false}, {"m-to-m", 0, false},
      {"gaussian", 0, false},         {"stretched-exp", 0, false},
  };
  const int m_lo = 100;
  const int m_max = 1000;
  const double floor = 1e-5;
  const double tau = kDefaultTau;
  const auto grid = detail::shared(DirectionGrid::signs_1d());
  int agree = 0;
  int expected_ok = 0;
  for (const auto& s : seqs) {
    auto [terms, dropped] = sequence_terms(s.name, 2000000, floor, s.param);
    const SampledSet f = gen::sequence_set(terms, true, dropped, s.name);
    const bool by_ratio = ratio_test_1d(terms, ratio_tolerance_for(tau), 1.0 / m_max, 1.0 / m_lo);
    const ConeEstimate e = integer_scale_lower_cone(f, Vec::Zero(1), m_max, grid, tau, m_lo);
    const bool by_cone = e.is_member(grid->nearest(Vec::Ones(1)));
    agree += by_ratio == by_cone ? 1 : 0;
    expected_ok += by_cone == s.member ? 1 : 0;
    r.details.push_back(Json{{"sequence", s.name},        {"param", s.param},           {"terms", terms.size()},
                             {"ratio_test", by_ratio},     {"integer_cone", by_cone},    {"expected", s.member},
                             {"score", e.scores(grid->nearest(Vec::Ones(1)))}});
  }
  const int n = static_cast<int>(seqs.size());
  r.passed = agree == n && expected_ok == n;
  r.summary = std::to_string(agree) + "/" + std::to_string(n) + " agree, " + std::to_string(expected_ok) + "/" +
              std::to_string(n) + " as expected";
  return r;
}

inline CriterionResult criterion_four_cones() {
  CriterionResult r{5, "four-cones classifier separates manifolds from cusps", true, "", Json::array()};
  struct Case {
    const char* set;
    Json params;
    bool manifold;
  };
  const std::vector<Case> cases{{"circle", Json{{"delta", 1e-5}}, true},
                                {"sphere", Json::object(), true},
                                {"cusp-y3x2", Json::object(), false},
                                {"two-parabolas", Json::object(), false}};
  std::vector<std::string> parts;
  for (const auto& c : cases) {
    const SampledSet f = build_example(c.set, c.params);
    const Mat pts = c.manifold ? f.metadata().test_points : Mat(Mat::Zero(f.ambient_dim(), 1));
    const ClassificationReport rep = four_cones_classify(f, pts);
    int passes = 0;
    double worst_defect = 0.0;
    for (const auto& p : rep.points) {
      passes += p.verdict == Verdict::Pass ? 1 : 0;
      worst_defect = std::max(worst_defect, p.defects.at("pTan+|pTan-"));
    }
    bool ok = false;
    const double margin = worst_defect - rep.defect_tol;
    if (c.manifold) {
      ok = passes == static_cast<int>(rep.points.size());
      parts.push_back(std::string(c.set) + " " + std::to_string(passes) + "/" + std::to_string(rep.points.size()));
    } else {
      ok = rep.points.front().verdict == Verdict::Fail && margin >= 2.0 * rep.defect_tol;
      parts.push_back(std::string(c.set) + " margin " + detail::fmt(margin / rep.defect_tol, 3) + "x tol");
    }
    r.passed = r.passed && ok;
    r.details.push_back(Json{{"set", c.set},
                             {"samples", f.size()},
                             {"points", rep.points.size()},
                             {"passing_points", passes},
                             {"worst_defect", worst_defect},
                             {"defect_tol", rep.defect_tol},
                             {"margin", margin},
                             {"expected_manifold", c.manifold},
                             {"ok", ok}});
  }
  for (std::size_t i = 0; i < parts.size(); ++i) r.summary += (i ? ", " : "") + parts[i];
  return r;
}

inline CriterionResult criterion_tierno() {
  CriterionResult r{6, "Tierno counterexamples fail only at the origin", true, "", Json::array()};
  struct Case {
    const char* set;
    int expected_origin_dim;
  };
  const std::vector<Case> cases{{"concentric-spheres", 3}, {"pinched-torus", 1}};
  for (const auto& c : cases) {
    const SampledSet f = build_example(c.set);
    const ClassificationReport rep = tierno_classify(f, f.metadata().test_points, 2);
    const PointReport& origin = rep.points.front();
    const int origin_dim = origin.hull_dims[2];  // hull of Tan+
    int others_pass = 0;
    for (std::size_t i = 1; i < rep.points.size(); ++i) others_pass += rep.points[i].verdict == Verdict::Pass ? 1 : 0;
    const int others = static_cast<int>(rep.points.size()) - 1;
    const bool ok = origin.point.norm() == 0.0 && origin.verdict == Verdict::Fail &&
                    origin_dim == c.expected_origin_dim && others == 10 && others_pass == others;
    r.passed = r.passed && ok;
    r.summary += std::string(r.summary.empty() ? "" : ", ") + c.set + " origin " + std::string(to_string(origin.verdict)) +
                 " (hull dim " + std::to_string(origin_dim) + "), " + std::to_string(others_pass) + "/" +
                 std::to_string(others) + " others pass";
    r.details.push_back(Json{{"set", c.set},
                             {"origin_verdict", std::string(to_string(origin.verdict))},
                             {"origin_hull_dim", origin_dim},
                             {"expected_origin_hull_dim", c.expected_origin_dim},
                             {"other_points", others},
                             {"other_points_passing", others_pass},
                             {"ok", ok}});
  }
  return r;
}

inline CriterionResult criterion_exterior(std::uint64_t seed) {
  CriterionResult r{7, "subspace angle and distance agree with SVD and projection", true, "", Json::object()};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim_n(2, 8);
  std::normal_distribution<double> g;
  double worst_cos = 0.0;
  double worst_det = 0.0;
  double worst_dist = 0.0;
  const int pairs = 200;
  for (int i = 0; i < pairs; ++i) {
    const int n = dim_n(rng);
    const int d = std::uniform_int_distribution<int>(1, std::min(4, n))(rng);
    const Mat b1 = detail::random_orthonormal(rng, n, d);
    const Mat b2 = detail::random_orthonormal(rng, n, d);
    const Subspace s1 = Subspace::from_orthonormal(b1);
    const Subspace s2 = Subspace::from_orthonormal(b2);
    const double c = std::cos(subspace_angle(s1, s2));
    // product of principal-angle cosines
    const Vec sv = Eigen::JacobiSVD<Mat>(b1.transpose() * b2).singularValues();
    worst_cos = std::max(worst_cos, std::abs(c - sv.prod()));
    worst_det = std::max(worst_det, std::abs(c - std::abs((b1.transpose() * b2).determinant())));
    // distance from a random vector to the span of a random (non-orthonormal) frame
    Mat a(n, d);
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < d; ++q) a(p, q) = g(rng);
    }
    Vec x(n);
    for (int p = 0; p < n; ++p) x(p) = g(rng);
    const Vec coef = a.colPivHouseholderQr().solve(x);
    const double residual = (x - a * coef).norm();
    worst_dist = std::max(worst_dist, std::abs(dist_to_subspace(x, Subspace::span(a)) - residual));
  }
  r.passed = worst_cos <= 1e-9 && worst_det <= 1e-9 && worst_dist <= 1e-9;
  r.summary = "max |cos - prod cos| " + detail::fmt(worst_cos, 3) + ", max |dist - residual| " +
              detail::fmt(worst_dist, 3);
  r.details = Json{{"pairs", pairs},
                   {"max_cos_vs_svd", worst_cos},
                   {"max_cos_vs_det", worst_det},
                   {"max_dist_vs_residual", worst_dist},
                   {"tolerance", 1e-9}};
  return r;
}

inline CriterionResult criterion_chain(std::uint64_t seed) {
  CriterionResult r{8, "score chain pTan- >= Tan- >= Tan+ >= pTan+ on the catalog", true, "", Json::array()};
  long long checked = 0;
  long long violations = 0;
  for (const auto& name : catalog_names()) {
    const SampledSet f = build_example(name);
    const auto grid = detail::shared(DirectionGrid::default_for(f.ambient_dim(), seed));
    const ScaleLadder ladder = make_ladder(f, ConeParams{});
    const Mat& pts = f.metadata().test_points;
    long long bad = 0;
    for (Eigen::Index i = 0; i < pts.cols(); ++i) {
      const auto c = estimate_all_cones(f, pts.col(i), ladder, grid, kDefaultTau);
      for (int j = 0; j < grid->size(); ++j) {
        const bool ok =
            c[0].scores(j) >= c[1].scores(j) && c[1].scores(j) >= c[2].scores(j) && c[2].scores(j) >= c[3].scores(j);
        bad += ok ? 0 : 1;
      }
    }
    const long long n = static_cast<long long>(pts.cols()) * grid->size();
    checked += n;
    violations += bad;
    r.details.push_back(Json{{"set", name}, {"points", pts.cols()}, {"directions", grid->size()}, {"violations", bad}});
  }
  r.passed = violations == 0;
  r.summary = std::to_string(violations) + " violations in " + std::to_string(checked) + " direction scores over " +
              std::to_string(catalog_names().size()) + " sets";
  return r;
}

inline CriterionResult criterion_lie(std::uint64_t seed) {
  CriterionResult r{9, "Lie algebras of matrix groups", true, "", Json::array()};
  struct Case {
    const char* group;
    int n;
    int dim;
  };
  const std::vector<Case> cases{{"SO2", 2, 1},      {"SO3", 3, 3},      {"diag_pos", 2, 2},
                                {"diag_pos", 3, 3}, {"diag_pos", 4, 4}, {"unipotent_upper", 3, 3}};
  const double tol = 0.05;
  int ok_count = 0;
  for (const auto& c : cases) {
    GroupSampleParams sp;
    sp.seed = seed;
    GroupParams gp;
    gp.seed = seed;
    const MatrixGroupSample g = sample_group(c.group, c.n, sp);
    const TangentSpaceEstimate est = estimate_infinitesimal_group(g, gp);
    // analytic generators, independent of the sampler's ray directions
    const Subspace analytic = algebra_subspace(analytic_generators(c.group, c.n), c.n);
    const bool dim_ok = est.hull.dim() == c.dim && analytic.dim() == c.dim;
    const double angle = dim_ok ? subspace_angle(est.hull, analytic) : std::numbers::pi / 2;
    const double bracket = est.hull.dim() > 0 ? bracket_closure_check(est.hull, c.n) : 1.0;
    double cov = 0.0;
    for (const Mat& a : g.anchors) cov = std::max(cov, translation_covariance_check(g, a, est.hull, gp));
    const bool ok = dim_ok && angle <= tol && bracket <= tol && cov <= tol && g.anchors.size() == 5;
    ok_count += ok ? 1 : 0;
    r.passed = r.passed && ok;
    r.details.push_back(Json{{"group", c.group},
                             {"n", c.n},
                             {"samples", g.set.size()},
                             {"dim", est.hull.dim()},
                             {"expected_dim", c.dim},
                             {"angle_to_analytic", angle},
                             {"bracket_residual", bracket},
                             {"translation_covariance", cov},
                             {"elements", g.anchors.size()},
                             {"ok", ok}});
  }
  r.summary = std::to_string(ok_count) + "/" + std::to_string(cases.size()) + " groups within 0.05";
  return r;
}

inline CriterionResult criterion_strict_diff() {
  CriterionResult r{10, "strict differentiability of sampled graphs", true, "", Json::array()};
  struct Case {
    const char* function;
    bool expected;
  };
  const std::vector<Case> cases{{"square", true}, {"sine", true}, {"abs", false}, {"pow23", false}};
  const std::vector<double> probes{-0.6, -0.3, 0.2, 0.45, 0.7};
  double worst_err = 0.0;
  std::string verdicts;
  for (const auto& c : cases) {
    const SampledSet f = build_example("graph-of-custom-function", Json{{"function", c.function}, {"delta", 1e-4}});
    const GraphFunction gf = graph_function(c.function);
    const StrictDiffResult at0 = strict_differentiability_test(f, f.metadata().test_points.col(0));
    const bool verdict_ok = (at0.verdict == Verdict::Pass) == c.expected;
    verdicts += std::string(verdicts.empty() ? "" : ", ") + c.function + " " + std::string(to_string(at0.verdict));
    Json pts = Json::array();
    bool diff_ok = true;
    for (double t : probes) {
      const Vec target = (Vec(2) << t, gf.f((Vec(1) << t).finished())).finished();
      const Vec x = f.point(f.nearest_index(target));
      const StrictDiffResult res = strict_differentiability_test(f, x);
      // central difference of the analytic function at the sample's abscissa
      const double h = 1e-6;
      const double exact =
          (gf.f((Vec(1) << x(0) + h).finished()) - gf.f((Vec(1) << x(0) - h).finished())) / (2.0 * h);
      const double err = res.differential.size() == 1 ? std::abs(res.differential(0, 0) - exact)
                                                       : std::numeric_limits<double>::infinity();
      worst_err = std::max(worst_err, err);
      diff_ok = diff_ok && err <= 1e-2 && res.verdict == Verdict::Pass;
      pts.push_back(Json{{"x", x(0)}, {"differential", res.differential.size() == 1 ? number(res.differential(0, 0)) : Json(nullptr)},
                         {"analytic", exact}, {"verdict", std::string(to_string(res.verdict))}});
    }
    const bool ok = verdict_ok && diff_ok;
    r.passed = r.passed && ok;
    Json tests = Json::array();
    for (const auto& t : at0.tests) tests.push_back(to_json(t));
    r.details.push_back(Json{{"function", c.function},
                             {"verdict_at_0", std::string(to_string(at0.verdict))},
                             {"expected_pass", c.expected},
                             {"tests_at_0", tests},
                             {"differentials", pts},
                             {"ok", ok}});
  }
  r.summary = verdicts + "; max differential error " + detail::fmt(worst_err, 3);
  return r;
}

struct Criterion {
  int id;
  std::function<CriterionResult(std::uint64_t)> run;
};

/// Criteria 1 to 10 in order.
inline std::vector<Criterion> criteria() {
  return {
      {1, [](std::uint64_t) { return criterion_examples_1d(); }},
      {2, [](std::uint64_t) { return criterion_t_sin(); }},
      {3, [](std::uint64_t) { return criterion_ray_diagonal(); }},
      {4, [](std::uint64_t) { return criterion_ratio(); }},
      {5, [](std::uint64_t) { return criterion_four_cones(); }},
      {6, [](std::uint64_t) { return criterion_tierno(); }},
      {7, [](std::uint64_t s) { return criterion_exterior(s); }},
      {8, [](std::uint64_t s) { return criterion_chain(s); }},
      {9, [](std::uint64_t s) { return criterion_lie(s); }},
      {10, [](std::uint64_t) { return criterion_strict_diff(); }},
  };
}

/// Runs a criterion, turning a library exception into a failed result.
inline CriterionResult run_guarded(const Criterion& c, std::uint64_t seed) {
  try {
    return c.run(seed);
  } catch (const std::exception& e) {
    return CriterionResult{c.id, "criterion " + std::to_string(c.id), false, std::string("error: ") + e.what(),
                           Json::object()};
  }
}

}  // namespace conelab::corpus
