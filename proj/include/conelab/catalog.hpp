#pragma once

// Sample generators and the catalog of named example sets.
//
// Every generator certifies its resolution δ by construction: sequences are exact
// up to a truncation whose tail lies within δ of the kept samples, curves are cut
// into pieces whose chords are at most δ, and surfaces into parameter cells whose
// images have diameter at most δ. Surfaces take optional focus points: inside the
// focus balls the sampling is at the declared δ, elsewhere it is coarser.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "conelab/error.hpp"
#include "conelab/exterior.hpp"
#include "conelab/sampled_set.hpp"
#include "json.hpp"

namespace conelab {

using Json = nlohmann::json;

namespace gen {

/// Columns from a list of vectors.
inline Mat to_matrix(const std::vector<Vec>& pts, int n) {
  Mat m(n, static_cast<Eigen::Index>(pts.size()));
  for (std::size_t j = 0; j < pts.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = pts[j];
  return m;
}

/// 1-D set {0} ∪ {terms}; `tail_bound` is the largest value of any dropped term.
inline SampledSet sequence_set(const std::vector<double>& terms, bool include_zero, double tail_bound,
                               std::string id, double scale = 1.0) {
  std::vector<double> vals(terms);
  if (include_zero) vals.push_back(0.0);
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  Mat m(1, static_cast<Eigen::Index>(vals.size()));
  for (std::size_t j = 0; j < vals.size(); ++j) m(0, static_cast<Eigen::Index>(j)) = vals[j];
  // Dropped terms sit between 0 and the smallest kept term of their sign.
  const double delta = std::max(tail_bound / 2.0, 1e-15);
  SetMetadata meta;
  meta.generator_id = std::move(id);
  meta.test_points = Mat::Zero(1, 1);
  return {std::move(m), delta, Region{Vec::Zero(1), 1.0}, scale, meta};
}

/// Points γ(t) along [a, b] such that consecutive samples are at most h apart.
/// The initial partition must be fine enough to resolve any oscillation.
inline std::vector<Vec> sample_curve(const std::function<Vec(double)>& gamma, double a, double b, double h,
                                     int initial_steps = 64, const std::function<double(const Vec&)>& local_h = {}) {
  std::vector<Vec> out;
  const auto target = [&](const Vec& p) { return local_h ? local_h(p) : h; };
  std::function<void(double, const Vec&, double, const Vec&, int)> refine =
      [&](double t0, const Vec& p0, double t1, const Vec& p1, int depth) {
        if (depth < 48 && (p1 - p0).norm() > std::min(target(p0), target(p1))) {
          const double tm = 0.5 * (t0 + t1);
          const Vec pm = gamma(tm);
          refine(t0, p0, tm, pm, depth + 1);
          refine(tm, pm, t1, p1, depth + 1);
          return;
        }
        out.push_back(p1);
      };
  Vec prev = gamma(a);
  out.push_back(prev);
  for (int i = 1; i <= initial_steps; ++i) {
    const double t0 = a + (b - a) * (i - 1) / initial_steps;
    const double t1 = a + (b - a) * i / initial_steps;
    const Vec p1 = gamma(t1);
    refine(t0, prev, t1, p1, 0);
    prev = p1;
  }
  return out;
}

/// Spacing rule for surfaces: `fine` inside focus balls, `coarse` elsewhere.
struct FocusSpacing {
  std::vector<Vec> focus;
  double focus_radius = 0.0;
  double fine = 1e-2;
  double coarse = 1e-2;

  [[nodiscard]] double at(const Vec& p, double slack) const {
    for (const Vec& f : focus) {
      if ((p - f).norm() <= focus_radius + slack) return fine;
    }
    return coarse;
  }
};

/// Corners of a quadtree over [u0,u1]×[v0,v1] refined until each leaf cell image has
/// diameter at most twice the local spacing. Duplicate corners are dropped.
inline std::vector<Vec> sample_surface(const std::function<Vec(double, double)>& sigma, double u0, double u1,
                                       double v0, double v1, int init_u, int init_v, const FocusSpacing& spacing) {
  struct KeyHash {
    std::size_t operator()(const std::pair<double, double>& k) const {
      return std::hash<double>()(k.first) * 1000003u ^ std::hash<double>()(k.second);
    }
  };
  std::unordered_set<std::pair<double, double>, KeyHash> seen;
  std::vector<Vec> out;
  const auto emit = [&](double u, double v, const Vec& p) {
    if (seen.emplace(u, v).second) out.push_back(p);
  };
  std::function<void(double, double, double, double, int)> cell = [&](double a0, double a1, double b0, double b1,
                                                                      int depth) {
    const Vec p00 = sigma(a0, b0);
    const Vec p10 = sigma(a1, b0);
    const Vec p01 = sigma(a0, b1);
    const Vec p11 = sigma(a1, b1);
    const Vec pc = sigma(0.5 * (a0 + a1), 0.5 * (b0 + b1));
    double diam = std::max({(p00 - p11).norm(), (p10 - p01).norm(), (p00 - p10).norm(), (p00 - p01).norm(),
                            (p11 - p10).norm(), (p11 - p01).norm()});
    diam = std::max({diam, 2.0 * (pc - p00).norm(), 2.0 * (pc - p11).norm(), 2.0 * (pc - p10).norm(),
                     2.0 * (pc - p01).norm()});
    // Any point of a cell lies within diam/2 of one of its corners.
    if (depth < 30 && diam > 2.0 * spacing.at(pc, diam)) {
      const double am = 0.5 * (a0 + a1);
      const double bm = 0.5 * (b0 + b1);
      cell(a0, am, b0, bm, depth + 1);
      cell(am, a1, b0, bm, depth + 1);
      cell(a0, am, bm, b1, depth + 1);
      cell(am, a1, bm, b1, depth + 1);
      return;
    }
    emit(a0, b0, p00);
    emit(a1, b0, p10);
    emit(a0, b1, p01);
    emit(a1, b1, p11);
  };
  for (int i = 0; i < init_u; ++i) {
    for (int j = 0; j < init_v; ++j) {
      cell(u0 + (u1 - u0) * i / init_u, u0 + (u1 - u0) * (i + 1) / init_u, v0 + (v1 - v0) * j / init_v,
           v0 + (v1 - v0) * (j + 1) / init_v, 0);
    }
  }
  return out;
}

inline Vec sphere_point(double radius, double theta, double phi) {
  Vec p(3);
  p << radius * std::sin(theta) * std::cos(phi), radius * std::sin(theta) * std::sin(phi), radius * std::cos(theta);
  return p;
}

/// Uniformly random point on the sphere of given radius, from a seeded engine.
inline Vec random_sphere_point(std::mt19937_64& rng, double radius) {
  std::normal_distribution<double> g;
  Vec v(3);
  do {
    v << g(rng), g(rng), g(rng);
  } while (v.norm() < 1e-8);
  return radius * v.normalized();
}

inline std::vector<Vec> parse_points(const Json& arr, int n) {
  std::vector<Vec> out;
  for (const auto& p : arr) {
    if (!p.is_array() || static_cast<int>(p.size()) != n) throw InputError("focus/explicit point has wrong dimension");
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = p.at(static_cast<std::size_t>(i)).get<double>();
    out.push_back(v);
  }
  return out;
}

}  // namespace gen

// ---------------------------------------------------------------------------
// Named scalar functions for graph samples.

struct GraphFunction {
  int domain_dim = 1;
  std::function<double(const Vec&)> f;
};

inline GraphFunction graph_function(const std::string& name) {
  if (name == "square") return {1, [](const Vec& x) { return x(0) * x(0); }};
  if (name == "sine") return {1, [](const Vec& x) { return std::sin(x(0)); }};
  if (name == "abs") return {1, [](const Vec& x) { return std::abs(x(0)); }};
  if (name == "pow23") return {1, [](const Vec& x) { return std::cbrt(x(0) * x(0)); }};
  if (name == "cube") return {1, [](const Vec& x) { return x(0) * x(0) * x(0); }};
  if (name == "paraboloid") return {2, [](const Vec& x) { return x(0) * x(0) + x(1) * x(1); }};
  if (name == "step2d") return {2, [](const Vec& x) { return x(0) >= 0.0 ? 0.0 : 1.0; }};
  throw CatalogError("unknown graph function: " + name);
}

inline const std::vector<std::string>& graph_function_names() {
  static const std::vector<std::string> names{"square", "sine", "abs", "pow23", "cube", "paraboloid", "step2d"};
  return names;
}

// ---------------------------------------------------------------------------
// Sequence terms.

/// Terms of a named decreasing sequence x_1 > x_2 > …, stopping below `floor` or at
/// `max_terms`. Returns the terms and the value of the first dropped term.
inline std::pair<std::vector<double>, double> sequence_terms(const std::string& name, int max_terms, double floor,
                                                             double param = 0.0) {
  std::function<double(int)> term;
  if (name == "harmonic") {
    term = [](int m) { return 1.0 / m; };
  } else if (name == "factorial") {
    term = [](int m) { return 1.0 / std::tgamma(m + 1.0); };
  } else if (name == "geometric") {
    const double a = param > 1.0 ? param : 2.0;
    term = [a](int m) { return std::pow(a, -m); };
  } else if (name == "power") {
    const double p = param > 0.0 ? param : 2.0;
    term = [p](int m) { return std::pow(static_cast<double>(m), -p); };
  } else if (name == "m-log-m") {
    term = [](int m) { return 1.0 / ((m + 1.0) * std::log(m + 1.0)); };
  } else if (name == "m-log2-m") {
    term = [](int m) { return 1.0 / ((m + 1.0) * std::pow(std::log(m + 1.0), 2)); };
  } else if (name == "factorial-squared") {
    term = [](int m) { return std::pow(std::tgamma(m + 1.0), -2); };
  } else if (name == "m-to-m") {
    term = [](int m) { return std::pow(static_cast<double>(m), -static_cast<double>(m)); };
  } else if (name == "gaussian") {
    term = [](int m) { return std::exp(-static_cast<double>(m) * m / 4.0); };
  } else if (name == "m-geometric") {
    term = [](int m) { return std::pow(2.0, -m) / m; };
  } else if (name == "fibonacci") {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    term = [phi](int m) { return std::pow(phi, -m); };
  } else if (name == "power-log") {
    term = [](int m) { return 1.0 / (m * m * std::log(m + 1.0)); };
  } else if (name == "stretched-exp") {
    term = [](int m) { return std::exp(-std::pow(static_cast<double>(m), 1.5)); };
  } else if (name == "shifted-harmonic") {
    const double s = param > 0.0 ? param : 3.0;
    term = [s](int m) { return 1.0 / (m + s); };
  } else {
    throw CatalogError("unknown sequence: " + name);
  }
  std::vector<double> out;
  double dropped = 0.0;
  for (int m = 1;; ++m) {
    const double v = term(m);
    if (m > max_terms || !(v >= floor) || !std::isfinite(v)) {
      dropped = std::isfinite(v) ? std::max(v, 0.0) : 0.0;
      break;
    }
    out.push_back(v);
  }
  return {out, dropped};
}

// ---------------------------------------------------------------------------
// Catalog.

namespace detail {

template <class T>
T param_or(const Json& p, const char* key, T fallback) {
  if (p.is_object() && p.contains(key)) return p.at(key).get<T>();
  return fallback;
}

inline SampledSet make_curve_set(const std::vector<Vec>& pts, int n, double delta, double scale, std::string id,
                                 double region_radius = 1.0) {
  SetMetadata meta;
  meta.generator_id = std::move(id);
  meta.test_points = Mat::Zero(n, 1);
  return {gen::to_matrix(pts, n), delta, Region{Vec::Zero(n), region_radius}, scale, meta};
}

inline SampledSet signed_sequences(const std::string& pos, const std::string& neg, const Json& p, std::string id) {
  const int count = param_or(p, "count", 100000);
  const int fact_max = param_or(p, "m_max", 12);
  const auto terms_for = [&](const std::string& name) {
    return name == "factorial" ? sequence_terms(name, fact_max, 0.0) : sequence_terms(name, count, 0.0);
  };
  std::vector<double> all;
  double tail = 0.0;
  if (!pos.empty()) {
    auto [t, d] = terms_for(pos);
    all.insert(all.end(), t.begin(), t.end());
    tail = std::max(tail, d);
  }
  if (!neg.empty()) {
    auto [t, d] = terms_for(neg);
    for (double v : t) all.push_back(-v);
    tail = std::max(tail, d);
  }
  return gen::sequence_set(all, true, tail, std::move(id));
}

}  // namespace detail

inline const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names{
      "singleton",       "factorial-sequence",         "harmonic-sequence",     "half-line",
      "symmetric-harmonic", "factorial-plus-harmonic", "t-sin-1-over-t",        "ray-plus-diagonal-sequence",
      "cusp-y3x2",       "two-parabolas",              "circle",                "sphere",
      "pinched-torus",   "concentric-spheres",         "graph-of-custom-function", "geometric-sequence",
      "box",             "polyline-corner"};
  return names;
}

/// One of the named example sets. `params` is a JSON object of entry-specific options.
inline SampledSet build_example(const std::string& name, const Json& params = Json::object()) {
  using detail::param_or;
  const Json& p = params;

  if (name == "singleton") {
    const int n = param_or(p, "dim", 1);
    SetMetadata meta;
    meta.generator_id = name;
    meta.test_points = Mat::Zero(n, 1);
    return {Mat::Zero(n, 1), param_or(p, "delta", 1e-9), Region{Vec::Zero(n), 1.0}, 1.0, meta};
  }
  if (name == "factorial-sequence") return detail::signed_sequences("factorial", "", p, name);
  if (name == "harmonic-sequence") return detail::signed_sequences("harmonic", "", p, name);
  if (name == "symmetric-harmonic") return detail::signed_sequences("harmonic", "harmonic", p, name);
  if (name == "factorial-plus-harmonic") return detail::signed_sequences("factorial", "harmonic", p, name);
  if (name == "geometric-sequence") {
    const double a = param_or(p, "base", 2.0);
    auto [t, d] = sequence_terms("geometric", 1000, 1e-13, a);
    return gen::sequence_set(t, true, d, name);
  }
  if (name == "half-line") {
    const double spacing = param_or(p, "spacing", 1e-5);
    const double length = param_or(p, "length", 2.0);
    const auto count = static_cast<Eigen::Index>(std::llround(length / spacing)) + 1;
    Mat m(1, count);
    for (Eigen::Index i = 0; i < count; ++i) m(0, i) = static_cast<double>(i) * spacing;
    SetMetadata meta;
    meta.generator_id = name;
    meta.test_points = Mat::Zero(1, 1);
    return {std::move(m), spacing / 2.0, Region{Vec::Zero(1), 1.0}, 1.0, meta};
  }
  if (name == "t-sin-1-over-t") {
    // {(t, t sin(1/t)) : t ≠ 0} ∪ {(0,0)}, sampled in the phase u = 1/t.
    const double delta = param_or(p, "delta", 2e-5);
    const double t_max = param_or(p, "t_max", 0.2);
    const double t_min = delta / 2.0;
    std::vector<Vec> pts;
    pts.push_back(Vec::Zero(2));
    for (double sgn : {1.0, -1.0}) {
      const auto gamma = [sgn](double u) {
        Vec q(2);
        const double t = sgn / u;
        q << t, t * std::sin(1.0 / t);
        return q;
      };
      const double u0 = 1.0 / t_max;
      const double u1 = 1.0 / t_min;
      const int steps = static_cast<int>(std::ceil((u1 - u0) / 0.25));
      auto piece = gen::sample_curve(gamma, u0, u1, delta, steps);
      pts.insert(pts.end(), piece.begin(), piece.end());
    }
    return detail::make_curve_set(pts, 2, delta, param_or(p, "scale", 0.1), name);
  }
  if (name == "ray-plus-diagonal-sequence") {
    // {(t, −t) : t < 0} ∪ {(1/m, 1/m)} ∪ {(0,0)}
    const double spacing = param_or(p, "spacing", 1e-6);
    const double length = param_or(p, "length", 0.05);
    const int count = param_or(p, "count", 200000);
    std::vector<Vec> pts;
    for (double t = 0.0; t <= length; t += spacing) {
      Vec q(2);
      q << -t, t;
      pts.push_back(q);
    }
    for (int m = 1; m <= count; ++m) {
      Vec q(2);
      q << 1.0 / m, 1.0 / m;
      pts.push_back(q);
    }
    const double delta = std::max(spacing / 2.0 * std::sqrt(2.0), std::sqrt(2.0) / (count + 1.0));
    return detail::make_curve_set(pts, 2, delta, param_or(p, "scale", 0.1), name);
  }
  if (name == "cusp-y3x2") {
    // y³ = x² parametrized by (t³, t²)
    const double delta = param_or(p, "delta", 1e-5);
    const double t_max = param_or(p, "t_max", 1.0);
    const auto gamma = [](double t) {
      Vec q(2);
      q << t * t * t, t * t;
      return q;
    };
    auto pts = gen::sample_curve(gamma, -t_max, t_max, delta, 2000);
    return detail::make_curve_set(pts, 2, delta, param_or(p, "scale", 0.1), name);
  }
  if (name == "two-parabolas") {
    // (y − x²)(y − 2x²) = 0
    const double delta = param_or(p, "delta", 1e-5);
    const double x_max = param_or(p, "x_max", 1.0);
    std::vector<Vec> pts;
    for (double c : {1.0, 2.0}) {
      const auto gamma = [c](double t) {
        Vec q(2);
        q << t, c * t * t;
        return q;
      };
      auto piece = gen::sample_curve(gamma, -x_max, x_max, delta, 2000);
      pts.insert(pts.end(), piece.begin(), piece.end());
    }
    return detail::make_curve_set(pts, 2, delta, param_or(p, "scale", 0.1), name);
  }
  if (name == "circle") {
    const double delta = param_or(p, "delta", 1e-3);
    const double r = param_or(p, "radius", 1.0);
    const auto count = static_cast<Eigen::Index>(std::ceil(2.0 * std::numbers::pi * r / delta));
    Mat m(2, count);
    for (Eigen::Index i = 0; i < count; ++i) {
      const double a = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(count);
      m(0, i) = r * std::cos(a);
      m(1, i) = r * std::sin(a);
    }
    SetMetadata meta;
    meta.generator_id = name;
    // Sixteen evenly spaced samples.
    const int tests = param_or(p, "test_count", 16);
    meta.test_points.resize(2, tests);
    for (int i = 0; i < tests; ++i) meta.test_points.col(i) = m.col(count * i / tests);
    const double scale = param_or(p, "scale", std::max(0.1 * r, 200.0 * delta));
    return {std::move(m), delta, Region{Vec::Zero(2), r}, scale, meta};
  }
  if (name == "polyline-corner") {
    // Two unit segments meeting at the origin with the given opening angle.
    const double delta = param_or(p, "delta", 1e-5);
    const double angle = param_or(p, "angle", std::numbers::pi / 2);
    std::vector<Vec> pts;
    for (double t = 0.0; t <= 1.0; t += delta) {
      Vec a(2);
      a << t, 0.0;
      Vec b(2);
      b << t * std::cos(angle), t * std::sin(angle);
      pts.push_back(a);
      if (t > 0.0) pts.push_back(b);
    }
    return detail::make_curve_set(pts, 2, delta, param_or(p, "scale", 0.1), name);
  }
  if (name == "box") {
    const double spacing = param_or(p, "spacing", 2e-3);
    const double half = param_or(p, "half_width", 0.2);
    const auto steps = static_cast<int>(std::llround(2.0 * half / spacing));
    Mat m(2, static_cast<Eigen::Index>(steps + 1) * (steps + 1));
    Eigen::Index c = 0;
    for (int i = 0; i <= steps; ++i) {
      for (int j = 0; j <= steps; ++j) {
        m(0, c) = -half + i * spacing;
        m(1, c) = -half + j * spacing;
        ++c;
      }
    }
    SetMetadata meta;
    meta.generator_id = name;
    meta.test_points = Mat::Zero(2, 1);
    return {std::move(m), spacing / std::sqrt(2.0), Region{Vec::Zero(2), half}, param_or(p, "scale", 0.5), meta};
  }
  if (name == "graph-of-custom-function") {
    const std::string fname = param_or<std::string>(p, "function", "square");
    const GraphFunction gf = graph_function(fname);
    const double delta = param_or(p, "delta", gf.domain_dim == 1 ? 1e-4 : 5e-3);
    const double half = param_or(p, "half_width", 1.0);
    std::vector<Vec> pts;
    if (gf.domain_dim == 1) {
      const auto gamma = [&gf](double t) {
        Vec x(1);
        x << t;
        Vec q(2);
        q << t, gf.f(x);
        return q;
      };
      pts = gen::sample_curve(gamma, -half, half, delta, 2000);
    } else {
      const auto steps = static_cast<int>(std::ceil(2.0 * half / (delta / std::sqrt(2.0))));
      const double h = 2.0 * half / steps;
      for (int i = 0; i <= steps; ++i) {
        for (int j = 0; j <= steps; ++j) {
          Vec x(2);
          x << -half + i * h, -half + j * h;
          Vec q(3);
          q << x(0), x(1), gf.f(x);
          pts.push_back(q);
        }
      }
    }
    const int n = gf.domain_dim + 1;
    SetMetadata meta;
    meta.generator_id = name + ":" + fname;
    meta.graph_domain_dim = gf.domain_dim;
    meta.test_points = Mat::Zero(n, 1);
    meta.test_points(n - 1, 0) = gf.f(Vec::Zero(gf.domain_dim));
    return {gen::to_matrix(pts, n), delta, Region{Vec::Zero(n), half}, param_or(p, "scale", 0.1), meta};
  }

  // Surfaces with focus refinement.
  const auto focus_setup = [&](int default_count, std::uint64_t default_seed,
                               const std::function<Vec(std::mt19937_64&)>& draw) {
    std::vector<Vec> focus;
    if (p.is_object() && p.contains("focus")) {
      focus = gen::parse_points(p.at("focus"), 3);
    } else {
      std::mt19937_64 rng(param_or<std::uint64_t>(p, "focus_seed", default_seed));
      const int count = param_or(p, "focus_count", default_count);
      for (int i = 0; i < count; ++i) focus.push_back(draw(rng));
    }
    return focus;
  };

  if (name == "sphere") {
    const double delta = param_or(p, "delta", 2e-3);
    const double coarse = param_or(p, "coarse", 0.05);
    const double r = 1.0;
    gen::FocusSpacing sp;
    sp.focus = focus_setup(64, 7, [r](std::mt19937_64& rng) { return gen::random_sphere_point(rng, r); });
    sp.focus_radius = param_or(p, "focus_radius", 0.12);
    sp.fine = delta;
    sp.coarse = sp.focus.empty() ? delta : std::max(coarse, delta);
    const auto sigma = [r](double th, double ph) { return gen::sphere_point(r, th, ph); };
    auto pts = gen::sample_surface(sigma, 0.0, std::numbers::pi, 0.0, 2.0 * std::numbers::pi, 16, 32, sp);
    // Snap focus points onto the sample so they can serve as test points.
    for (const Vec& f : sp.focus) pts.push_back(f);
    SetMetadata meta;
    meta.generator_id = name;
    meta.test_points = gen::to_matrix(sp.focus, 3);
    return {gen::to_matrix(pts, 3), delta, Region{Vec::Zero(3), r}, param_or(p, "scale", 0.4), meta};
  }
  if (name == "pinched-torus") {
    // (x²+y²+z²)² = 4(x²+y²): the circle (y−1)² + z² = 1 turned about the z-axis.
    const double delta = param_or(p, "delta", 2e-3);
    const double coarse = param_or(p, "coarse", 0.05);
    const auto sigma = [](double u, double phi) {
      const double rho = 1.0 + std::cos(u);
      Vec q(3);
      q << rho * std::cos(phi), rho * std::sin(phi), std::sin(u);
      return q;
    };
    gen::FocusSpacing sp;
    sp.focus = focus_setup(10, 11, [&sigma](std::mt19937_64& rng) {
      std::uniform_real_distribution<double> uu(-2.0 * std::numbers::pi / 3.0, 2.0 * std::numbers::pi / 3.0);
      std::uniform_real_distribution<double> pp(0.0, 2.0 * std::numbers::pi);
      const double u = uu(rng);
      return sigma(u, pp(rng));
    });
    if (param_or(p, "focus_origin", true)) sp.focus.insert(sp.focus.begin(), Vec::Zero(3));
    sp.focus_radius = param_or(p, "focus_radius", 0.12);
    sp.fine = delta;
    sp.coarse = std::max(coarse, delta);
    auto pts = gen::sample_surface(sigma, 0.0, 2.0 * std::numbers::pi, 0.0, 2.0 * std::numbers::pi, 32, 32, sp);
    for (const Vec& f : sp.focus) pts.push_back(f);
    SetMetadata meta;
    meta.generator_id = name;
    meta.test_points = gen::to_matrix(sp.focus, 3);
    return {gen::to_matrix(pts, 3), delta, Region{Vec::Zero(3), 2.0}, param_or(p, "scale", 0.4), meta};
  }
  if (name == "concentric-spheres") {
    // {0} ∪ {x : 1/‖x‖ ∈ N}. Spheres inside the core ball are sampled at δ; outer
    // spheres only inside the focus balls.
    const double delta = param_or(p, "delta", 2e-3);
    const double coarse = param_or(p, "coarse", 0.1);
    const double core = param_or(p, "core_radius", 0.2);
    const int k_max = param_or(p, "k_max", static_cast<int>(std::ceil(1.0 / delta)));
    std::vector<Vec> focus = focus_setup(10, 13, [](std::mt19937_64& rng) {
      std::uniform_int_distribution<int> which(1, 2);
      return gen::random_sphere_point(rng, 1.0 / which(rng));
    });
    std::vector<Vec> pts;
    pts.push_back(Vec::Zero(3));
    for (int k = 1; k <= k_max; ++k) {
      const double r = 1.0 / k;
      gen::FocusSpacing sp;
      sp.focus = focus;
      sp.focus_radius = param_or(p, "focus_radius", 0.12);
      sp.fine = delta;
      sp.coarse = r <= core ? delta : std::max(coarse * r, delta);
      const auto sigma = [r](double th, double ph) { return gen::sphere_point(r, th, ph); };
      const int init = std::max(4, static_cast<int>(std::ceil(r * 16)));
      auto piece = gen::sample_surface(sigma, 0.0, std::numbers::pi, 0.0, 2.0 * std::numbers::pi, init, 2 * init, sp);
      pts.insert(pts.end(), piece.begin(), piece.end());
    }
    for (const Vec& f : focus) pts.push_back(f);
    SetMetadata meta;
    meta.generator_id = name;
    focus.insert(focus.begin(), Vec::Zero(3));
    meta.test_points = gen::to_matrix(focus, 3);
    // Spheres with k > k_max lie within 1/(k_max+1) of the origin sample.
    const double dlt = std::max(delta, 1.0 / (k_max + 1.0));
    return {gen::to_matrix(pts, 3), dlt, Region{Vec::Zero(3), 1.0}, param_or(p, "scale", 0.4), meta};
  }
  throw CatalogError("unknown catalog entry: " + name);
}

// ---------------------------------------------------------------------------
// Generator recipes: {"kind": ..., ...} objects as accepted on the command line.

inline SampledSet generate(const Json& recipe);

namespace detail {

inline SampledSet explicit_points(const Json& recipe) {
  const auto& arr = recipe.at("points");
  if (!arr.is_array() || arr.empty()) throw EmptySetError("explicit-points needs a non-empty points array");
  const int n = static_cast<int>(arr.at(0).size());
  const auto pts = gen::parse_points(arr, n);
  SetMetadata meta;
  meta.generator_id = param_or<std::string>(recipe, "id", "explicit-points");
  return {gen::to_matrix(pts, n), recipe.at("delta").get<double>(), Region{Vec::Zero(n), param_or(recipe, "radius", 1.0)},
          param_or(recipe, "scale", 1.0), meta};
}

inline SampledSet union_of(const Json& recipe) {
  std::vector<SampledSet> parts;
  for (const auto& s : recipe.at("parts")) parts.push_back(generate(s));
  if (parts.empty()) throw EmptySetError("union needs at least one part");
  const int n = parts.front().ambient_dim();
  Eigen::Index total = 0;
  double delta = 0.0;
  double scale = parts.front().scale();
  for (const auto& s : parts) {
    if (s.ambient_dim() != n) throw DimensionError("union parts must share the ambient dimension");
    total += s.size();
    delta = std::max(delta, s.delta());
    scale = std::min(scale, s.scale());
  }
  Mat m(n, total);
  Eigen::Index c = 0;
  for (const auto& s : parts) {
    m.middleCols(c, s.size()) = s.points();
    c += s.size();
  }
  SetMetadata meta;
  meta.generator_id = "union";
  return {std::move(m), delta, parts.front().region(), scale, meta};
}

inline SampledSet product_of(const Json& recipe) {
  const SampledSet a = generate(recipe.at("left"));
  const SampledSet b = generate(recipe.at("right"));
  const Eigen::Index total = a.size() * b.size();
  if (total > 20'000'000) throw InputError("product set too large");
  const int n = a.ambient_dim() + b.ambient_dim();
  Mat m(n, total);
  Eigen::Index c = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    for (Eigen::Index j = 0; j < b.size(); ++j) {
      m.col(c).head(a.ambient_dim()) = a.points().col(i);
      m.col(c).tail(b.ambient_dim()) = b.points().col(j);
      ++c;
    }
  }
  Vec center(n);
  center << a.region().center, b.region().center;
  SetMetadata meta;
  meta.generator_id = "product";
  return {std::move(m), std::hypot(a.delta(), b.delta()),
          Region{center, std::hypot(a.region().radius, b.region().radius)}, std::min(a.scale(), b.scale()), meta};
}

inline SampledSet sequence_1d(const Json& recipe) {
  const std::string name = recipe.at("sequence").get<std::string>();
  const int count = param_or(recipe, "count", 100000);
  const double floor = param_or(recipe, "floor", 1e-12);
  auto [t, d] = sequence_terms(name, count, floor, param_or(recipe, "param", 0.0));
  if (param_or(recipe, "symmetric", false)) {
    const std::size_t m = t.size();
    for (std::size_t i = 0; i < m; ++i) t.push_back(-t[i]);
  }
  return gen::sequence_set(t, param_or(recipe, "include_zero", true), d, "sequence-1d:" + name);
}

inline SampledSet parametric_curve(const Json& recipe) {
  const std::string curve = recipe.at("curve").get<std::string>();
  Json params = param_or(recipe, "params", Json::object());
  if (curve == "circle" || curve == "cusp-y3x2" || curve == "two-parabolas" || curve == "t-sin-1-over-t" ||
      curve == "polyline-corner") {
    return build_example(curve, params);
  }
  throw CatalogError("unknown parametric curve: " + curve);
}

inline SampledSet implicit_sampler(const Json& recipe) {
  const std::string surface = recipe.at("surface").get<std::string>();
  Json params = param_or(recipe, "params", Json::object());
  if (surface == "sphere" || surface == "pinched-torus" || surface == "concentric-spheres") {
    return build_example(surface, params);
  }
  throw CatalogError("unknown implicit surface: " + surface);
}

}  // namespace detail

/// Builds a sampled set from a generator recipe object.
inline SampledSet generate(const Json& recipe) {
  if (!recipe.is_object() || !recipe.contains("kind")) throw InputError("generator recipe needs a \"kind\" field");
  const std::string kind = recipe.at("kind").get<std::string>();
  try {
    if (kind == "explicit-points") return detail::explicit_points(recipe);
    if (kind == "sequence-1d") return detail::sequence_1d(recipe);
    if (kind == "parametric-curve") return detail::parametric_curve(recipe);
    if (kind == "graph-of-function") {
      Json params = detail::param_or(recipe, "params", Json::object());
      params["function"] = recipe.at("function");
      return build_example("graph-of-custom-function", params);
    }
    if (kind == "implicit-sampler") return detail::implicit_sampler(recipe);
    if (kind == "product") return detail::product_of(recipe);
    if (kind == "union") return detail::union_of(recipe);
    if (kind == "catalog") return build_example(recipe.at("name").get<std::string>(),
                                                detail::param_or(recipe, "params", Json::object()));
  } catch (const Json::exception& e) {
    throw InputError(std::string("generator recipe: ") + e.what());
  }
  throw CatalogError("unknown generator kind: " + kind);
}

}  // namespace conelab
