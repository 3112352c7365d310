#pragma once

// JSON and CSV forms of the library's results, and point-cloud input.
// Keys are emitted in sorted order and doubles in shortest round-trip form, so equal
// results always serialize to identical bytes.

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "conelab/classify.hpp"
#include "conelab/cones.hpp"
#include "conelab/error.hpp"
#include "conelab/liegroup.hpp"
#include "conelab/sampled_set.hpp"
#include "conelab/subspaces.hpp"
#include "json.hpp"

namespace conelab {

using Json = nlohmann::json;

inline constexpr const char* kConeSchema = "conelab.cone-estimate/1";
inline constexpr const char* kClassificationSchema = "conelab.classification/1";
inline constexpr const char* kFieldSchema = "conelab.subspace-field/1";
inline constexpr const char* kAlgebraSchema = "conelab.lie-algebra/1";
inline constexpr const char* kPointSetSchema = "conelab.point-set/1";

/// Non-finite values become null.
inline Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

inline Json to_json(const Vec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(number(v(i)));
  return a;
}

/// Rows of a matrix as nested arrays.
inline Json rows_json(const Mat& m) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(to_json(Vec(m.row(i).transpose())));
  return a;
}

inline Json to_json(const ScaleLadder& l) {
  return Json{{"lambda0", l.lambda0}, {"ratio", l.ratio}, {"count", l.count}, {"scales", l.scales()}};
}

inline Json to_json(const ConeEstimate& e, bool members_only = false) {
  Json dirs = Json::array();
  for (int j = 0; j < e.grid->size(); ++j) {
    if (members_only && !e.is_member(j)) continue;
    dirs.push_back(Json{{"v", to_json(e.grid->direction(j))}, {"score", number(e.scores(j))}, {"member", e.is_member(j)}});
  }
  Json j{{"schema", kConeSchema},
         {"base_point", to_json(e.base_point)},
         {"kind", std::string(to_string(e.kind))},
         {"tau", e.tau},
         {"ladder", to_json(e.ladder)},
         {"grid", Json{{"scheme", std::string(to_string(e.grid->scheme()))},
                       {"size", e.grid->size()},
                       {"mesh", e.grid->mesh()}}},
         {"member_count", static_cast<int>(e.member_indices().size())},
         {"directions", dirs}};
  if (e.integer_window) j["integer_window"] = Json{e.integer_window->first, e.integer_window->second};
  return j;
}

inline Json to_json(const Subspace& s) {
  return Json{{"dim", s.dim()}, {"ambient_dim", s.ambient_dim()}, {"basis", rows_json(s.basis())}};
}

inline Json to_json(const TestResult& t) {
  Json j{{"name", t.name},
         {"verdict", std::string(to_string(t.verdict))},
         {"measured", number(t.measured)},
         {"tolerance", number(t.tolerance)},
         {"excess", number(t.excess)}};
  if (!t.note.empty()) j["note"] = t.note;
  return j;
}

inline Json to_json(const PointReport& p) {
  Json counts = Json::object();
  Json dims = Json::object();
  for (std::size_t i = 0; i < 4; ++i) {
    const std::string k(to_string(kAllConeKinds[i]));
    counts[k] = p.member_counts[i];
    dims[k] = p.hull_dims[i];
  }
  Json defects = Json::object();
  for (const auto& [k, v] : p.defects) defects[k] = number(v);
  Json tests = Json::array();
  for (const auto& t : p.tests) tests.push_back(to_json(t));
  Json j{{"index", p.index},
         {"point", to_json(p.point)},
         {"member_counts", counts},
         {"hull_dims", dims},
         {"defects", defects},
         {"tests", tests},
         {"verdict", std::string(to_string(p.verdict))}};
  j["hull_angle"] = p.hull_angle ? number(*p.hull_angle) : Json(nullptr);
  return j;
}

inline Json to_json(const ClassificationReport& r) {
  Json pts = Json::array();
  for (const auto& p : r.points) pts.push_back(to_json(p));
  Json j{{"schema", kClassificationSchema},
         {"theorem", r.theorem},
         {"ladder", to_json(r.ladder)},
         {"tau", r.tau},
         {"grid", Json{{"scheme", r.grid_scheme}, {"size", r.grid_size}, {"mesh", r.mesh}}},
         {"defect_tol", r.defect_tol},
         {"budget", r.budget},
         {"points", pts},
         {"verdict", std::string(to_string(r.verdict))}};
  j["dim"] = r.dim ? Json(*r.dim) : Json(nullptr);
  return j;
}

/// One row per (point, test): point index, coordinates joined by ';', test, verdict, excess.
inline std::string to_csv(const ClassificationReport& r) {
  std::ostringstream out;
  out.precision(17);
  out << "point_index,point,test,verdict,measured,tolerance,excess\n";
  for (const auto& p : r.points) {
    std::ostringstream coords;
    coords.precision(17);
    for (Eigen::Index i = 0; i < p.point.size(); ++i) coords << (i ? ";" : "") << p.point(i);
    for (const auto& t : p.tests) {
      out << p.index << ',' << coords.str() << ',' << t.name << ',' << to_string(t.verdict) << ',' << t.measured
          << ',' << t.tolerance << ',' << t.excess << '\n';
    }
  }
  return out.str();
}

inline Json to_json(const SubspaceField& f) {
  Json entries = Json::array();
  for (int i = 0; i < f.size(); ++i) {
    const Subspace& s = f.spaces[static_cast<std::size_t>(i)];
    entries.push_back(Json{{"point", to_json(Vec(f.points.col(i)))}, {"dim", s.dim()}, {"basis", rows_json(s.basis())}});
  }
  return Json{{"schema", kFieldSchema}, {"ambient_dim", f.ambient_dim()}, {"entries", entries}};
}

/// Lie-algebra basis as n×n matrices.
inline Json algebra_json(const Subspace& j, int n) {
  Json mats = Json::array();
  for (int a = 0; a < j.dim(); ++a) mats.push_back(rows_json(unflatten(j.basis().col(a), n)));
  return mats;
}

// ---------------------------------------------------------------------------
// Point-set input and output.

inline Json to_json(const SampledSet& s) {
  Json pts = Json::array();
  for (Eigen::Index i = 0; i < s.size(); ++i) pts.push_back(to_json(s.point(i)));
  Json j{{"schema", kPointSetSchema},
         {"delta", s.delta()},
         {"scale", s.scale()},
         {"region", Json{{"center", to_json(s.region().center)}, {"radius", s.region().radius}}},
         {"points", pts}};
  const auto& m = s.metadata();
  if (m.generator_id) j["generator_id"] = *m.generator_id;
  if (m.graph_domain_dim) j["graph_domain_dim"] = *m.graph_domain_dim;
  if (m.matrix_shape) j["matrix_shape"] = Json{m.matrix_shape->first, m.matrix_shape->second};
  j["locally_compact"] = m.locally_compact;
  j["topological_manifold"] = m.topological_manifold;
  return j;
}

/// Parses the point-set JSON form. `delta` and `scale` fall back to the given values.
inline SampledSet point_set_from_json(const Json& j, double delta = 0.0, double scale = 1.0) {
  try {
    const Json& arr = j.at("points");
    if (!arr.is_array() || arr.empty()) throw EmptySetError("point set has no points");
    const auto n = static_cast<Eigen::Index>(arr.at(0).size());
    if (n == 0) throw InputError("points must have at least one coordinate");
    Mat m(n, static_cast<Eigen::Index>(arr.size()));
    for (std::size_t c = 0; c < arr.size(); ++c) {
      if (static_cast<Eigen::Index>(arr[c].size()) != n) throw InputError("points have inconsistent dimensions");
      for (Eigen::Index r = 0; r < n; ++r) m(r, static_cast<Eigen::Index>(c)) = arr[c].at(static_cast<std::size_t>(r)).get<double>();
    }
    SetMetadata meta;
    if (j.contains("generator_id")) meta.generator_id = j["generator_id"].get<std::string>();
    if (j.contains("graph_domain_dim")) meta.graph_domain_dim = j["graph_domain_dim"].get<int>();
    if (j.contains("matrix_shape")) meta.matrix_shape = std::make_pair(j["matrix_shape"][0].get<int>(), j["matrix_shape"][1].get<int>());
    if (j.contains("locally_compact")) meta.locally_compact = j["locally_compact"].get<bool>();
    if (j.contains("topological_manifold")) meta.topological_manifold = j["topological_manifold"].get<bool>();
    const double d = j.contains("delta") ? j["delta"].get<double>() : delta;
    const double sc = j.contains("scale") ? j["scale"].get<double>() : scale;
    Region region{Vec::Zero(n), 1.0};
    if (j.contains("region")) {
      const auto& c = j["region"].at("center");
      region.center = Vec(n);
      for (Eigen::Index r = 0; r < n; ++r) region.center(r) = c.at(static_cast<std::size_t>(r)).get<double>();
      region.radius = j["region"].at("radius").get<double>();
    }
    return {std::move(m), d, region, sc, meta};
  } catch (const Json::exception& e) {
    throw InputError(std::string("point set JSON: ") + e.what());
  }
}

/// Comma-separated coordinates, one point per line; blank lines and lines starting
/// with '#' are skipped. A first line that does not parse as numbers is a header.
inline Mat read_points_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    bool ok = true;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
        if (used != cell.size() || !std::isfinite(v)) ok = false;
        row.push_back(v);
      } catch (const std::exception&) {
        ok = false;
      }
    }
    if (!ok) {
      if (first && rows.empty()) {
        first = false;
        continue;
      }
      throw InputError("malformed CSV at line " + std::to_string(lineno));
    }
    first = false;
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw InputError("inconsistent column count at line " + std::to_string(lineno));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw EmptySetError("CSV contains no points");
  Mat m(static_cast<Eigen::Index>(rows.front().size()), static_cast<Eigen::Index>(rows.size()));
  for (std::size_t c = 0; c < rows.size(); ++c) {
    for (std::size_t r = 0; r < rows[c].size(); ++r) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[c][r];
  }
  return m;
}

inline void write_points_csv(std::ostream& out, const Mat& points) {
  out.precision(17);
  for (Eigen::Index c = 0; c < points.cols(); ++c) {
    for (Eigen::Index r = 0; r < points.rows(); ++r) out << (r ? "," : "") << points(r, c);
    out << '\n';
  }
}

}  // namespace conelab
