// Command-line front end: estimate cones, run classifiers, recover Lie algebras and
// run the example corpus. Exit codes: 0 success (whatever the verdict), 2 configuration
// error, 3 scale/resolution inconsistency, 4 I/O error.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "conelab/conelab.hpp"
#include "conelab/corpus.hpp"

namespace {

using namespace conelab;

constexpr int kExitConfig = 2;
constexpr int kExitScale = 3;
constexpr int kExitIo = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Options

struct InputOptions {
  std::string catalog;
  std::string catalog_params;
  std::string input;
  std::string generate;
  double delta = 0.0;
  double scale = 0.0;
};

struct PointOptions {
  std::vector<std::string> points;
  std::vector<int> indices;
  int random_k = 0;
};

struct EstimatorOptions {
  double tau = kDefaultTau;
  double lambda0 = 0.0;
  double ratio = 0.5;
  int max_scales = 10;
  int max_bases = kDefaultMaxBases;
  std::string grid = "default";
  int grid_size = 0;
};

struct OutputOptions {
  std::string out;
  std::string format = "json";
};

struct Options {
  std::string config;
  std::uint64_t seed = kDefaultSeed;
  InputOptions in;
  PointOptions pts;
  EstimatorOptions est;
  OutputOptions out;
  // estimate
  std::string kinds = "all";
  bool members_only = false;
  int integer_m_max = 0;
  int integer_m_lo = 0;
  // classify
  std::string theorem;
  int dim = 0;
  double sigma_tol = kDefaultSigmaTol;
  double vector_space_tol = kDefaultVectorSpaceTol;
  double defect_tol = 0.0;
  double probe_radius = 0.0;
  double injectivity_tol = kDefaultInjectivityTol;
  // liegroup
  std::string group;
  int n = 0;
  int elements = 5;
  bool identity_cones = false;
  // examples
  std::string examples_action;
  std::string json_path;
  std::vector<int> only;
  // angle
  std::string a;
  std::string b;
  std::string x;
};

void add_input(CLI::App* cmd, Options& o) {
  cmd->add_option("--catalog", o.in.catalog, "Named example set");
  cmd->add_option("--catalog-params", o.in.catalog_params, "JSON object of catalog options");
  cmd->add_option("--input", o.in.input, "Point cloud file (.csv or .json)");
  cmd->add_option("--generate", o.in.generate, "JSON generator recipe file");
  cmd->add_option("--delta", o.in.delta, "Sampling resolution (required for CSV input)");
  cmd->add_option("--scale", o.in.scale, "Characteristic length (defaults to the cloud's radius)");
}

void add_points(CLI::App* cmd, Options& o) {
  cmd->add_option("--point", o.pts.points, "Base point as comma-separated coordinates (repeatable)");
  cmd->add_option("--point-index", o.pts.indices, "Base point by sample index (repeatable)");
  cmd->add_option("--random-k", o.pts.random_k, "Use k random samples as base points");
}

void add_estimator(CLI::App* cmd, Options& o) {
  cmd->add_option("--tau", o.est.tau, "Membership threshold");
  cmd->add_option("--lambda0", o.est.lambda0, "First blow-up scale (default 0.1 x scale)");
  cmd->add_option("--ratio", o.est.ratio, "Ladder ratio r");
  cmd->add_option("--max-scales", o.est.max_scales, "Number of scales K");
  cmd->add_option("--max-bases", o.est.max_bases, "Base points per scale for paratangent cones");
  cmd->add_option("--grid", o.est.grid, "Direction grid")
      ->check(CLI::IsMember({"default", "signs", "angular", "fibonacci", "random"}));
  cmd->add_option("--grid-size", o.est.grid_size, "Directions for angular, fibonacci or random grids");
}

void add_output(CLI::App* cmd, Options& o, bool csv) {
  cmd->add_option("--out", o.out.out, "Output file (default: stdout)");
  if (csv) cmd->add_option("--format", o.out.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
}

// ---------------------------------------------------------------------------
// Config file: top-level keys are long option names. Command-line flags win, and
// CONELAB_SEED wins over the file's seed.

std::vector<std::string> with_config(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] == "--config") path = args[i + 1];
  }
  for (const auto& a : args) {
    if (a.rfind("--config=", 0) == 0) path = a.substr(9);
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path);
  Json cfg;
  try {
    in >> cfg;
  } catch (const Json::exception& e) {
    throw IoError("config file is not valid JSON: " + std::string(e.what()));
  }
  if (!cfg.is_object()) throw CLI::ValidationError("--config", "config file must hold a JSON object");
  const auto given = [&](const std::string& flag) {
    for (const auto& a : args) {
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    }
    return false;
  };
  std::vector<std::string> extra;
  for (const auto& [key, value] : cfg.items()) {
    const std::string flag = "--" + key;
    if (given(flag)) continue;
    if (key == "seed" && std::getenv("CONELAB_SEED")) continue;
    const auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    if (value.is_boolean()) {
      if (value.get<bool>()) extra.push_back(flag);
    } else if (value.is_array()) {
      for (const auto& v : value) {
        extra.push_back(flag);
        extra.push_back(scalar(v));
      }
    } else {
      extra.push_back(flag);
      extra.push_back(scalar(value));
    }
  }
  std::vector<std::string> out(args);
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

std::uint64_t parse_seed(const std::string& s, const char* source) {
  try {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) throw std::invalid_argument(s);
    std::size_t used = 0;
    const unsigned long long v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw CLI::ValidationError(source, "seed must be a non-negative integer");
  }
}

// ---------------------------------------------------------------------------
// Input

Vec parse_vector(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw InputError("cannot parse number '" + cell + "' in '" + s + "'");
    }
  }
  if (v.empty()) throw InputError("empty vector");
  return Eigen::Map<Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

/// Columns from "v1;v2;…", each vector comma-separated.
Mat parse_vectors(const std::string& s) {
  std::vector<Vec> cols;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ';')) cols.push_back(parse_vector(part));
  if (cols.empty()) throw InputError("no vectors given");
  Mat m(cols.front().size(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != m.rows()) throw InputError("vectors have different lengths");
    m.col(static_cast<Eigen::Index>(j)) = cols[j];
  }
  return m;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    Json j;
    in >> j;
    return j;
  } catch (const Json::exception& e) {
    throw IoError("malformed JSON in " + path + ": " + e.what());
  }
}

SampledSet load_set(const InputOptions& o) {
  const int sources = (o.catalog.empty() ? 0 : 1) + (o.input.empty() ? 0 : 1) + (o.generate.empty() ? 0 : 1);
  if (sources != 1) throw CLI::ValidationError("input", "give exactly one of --catalog, --input, --generate");
  if (!o.catalog.empty()) {
    Json params = Json::object();
    if (!o.catalog_params.empty()) {
      try {
        params = Json::parse(o.catalog_params);
      } catch (const Json::exception& e) {
        throw CLI::ValidationError("--catalog-params", e.what());
      }
    }
    if (o.delta > 0.0) params["delta"] = o.delta;
    if (o.scale > 0.0) params["scale"] = o.scale;
    return build_example(o.catalog, params);
  }
  if (!o.generate.empty()) return generate(read_json_file(o.generate));

  const std::filesystem::path path(o.input);
  if (path.extension() == ".json") {
    const Json j = read_json_file(o.input);
    try {
      return point_set_from_json(j, o.delta, o.scale > 0.0 ? o.scale : 1.0);
    } catch (const InputError& e) {
      throw IoError(e.what());
    }
  }
  std::ifstream in(o.input);
  if (!in) throw IoError("cannot open " + o.input);
  Mat pts;
  try {
    pts = read_points_csv(in);
  } catch (const Error& e) {
    throw IoError(o.input + ": " + e.what());
  }
  if (!(o.delta > 0.0)) throw CLI::ValidationError("--delta", "CSV input needs --delta");
  double scale = o.scale;
  if (!(scale > 0.0)) {
    const Vec c = pts.rowwise().mean();
    scale = std::max((pts.colwise() - c).colwise().norm().maxCoeff(), 10.0 * o.delta);
  }
  SetMetadata meta;
  meta.generator_id = path.filename().string();
  return {std::move(pts), o.delta, Region{Vec(), std::numeric_limits<double>::infinity()}, scale, meta};
}

/// Base points: explicit coordinates, indices, random samples, else the set's own test points.
std::vector<Vec> select_points(const SampledSet& f, const PointOptions& o, std::uint64_t seed) {
  std::vector<Vec> out;
  for (const auto& s : o.points) {
    const Vec v = parse_vector(s);
    if (v.size() != f.ambient_dim()) throw CLI::ValidationError("--point", "point dimension does not match the set");
    out.push_back(v);
  }
  for (int i : o.indices) {
    if (i < 0 || i >= f.size()) throw CLI::ValidationError("--point-index", "index out of range");
    out.push_back(f.point(i));
  }
  if (o.random_k > 0) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Eigen::Index> pick(0, f.size() - 1);
    for (int k = 0; k < o.random_k; ++k) out.push_back(f.point(pick(rng)));
  }
  if (out.empty()) {
    const Mat& tp = f.metadata().test_points;
    for (Eigen::Index i = 0; i < tp.cols(); ++i) out.push_back(tp.col(i));
  }
  if (out.empty()) out.push_back(f.point(0));
  return out;
}

std::shared_ptr<const DirectionGrid> make_grid(const EstimatorOptions& o, int n, std::uint64_t seed) {
  DirectionGrid g = [&] {
    if (o.grid == "signs") {
      if (n != 1) throw CLI::ValidationError("--grid", "signs grid is for 1-D sets");
      return DirectionGrid::signs_1d();
    }
    if (o.grid == "angular") {
      if (n != 2) throw CLI::ValidationError("--grid", "angular grid is for 2-D sets");
      return o.grid_size > 0 ? DirectionGrid::angular_2d(o.grid_size) : DirectionGrid::angular_2d();
    }
    if (o.grid == "fibonacci") {
      if (n != 3) throw CLI::ValidationError("--grid", "fibonacci grid is for 3-D sets");
      return o.grid_size > 0 ? DirectionGrid::fibonacci_3d(o.grid_size) : DirectionGrid::fibonacci_3d();
    }
    if (o.grid == "random") return DirectionGrid::random_nd(n, o.grid_size, seed);
    return DirectionGrid::default_for(n, seed);
  }();
  return std::make_shared<const DirectionGrid>(std::move(g));
}

/// Ladder from the options. An explicitly requested K that does not fit above the
/// resolution floor is an error rather than a silent truncation.
ScaleLadder make_cli_ladder(const SampledSet& f, const EstimatorOptions& o, bool explicit_scales) {
  const ConeParams p{o.lambda0, o.ratio, o.max_scales, o.tau, o.max_bases};
  const ScaleLadder l = make_ladder(f, p);
  if (explicit_scales && l.count < o.max_scales) {
    throw ScaleError("requested " + std::to_string(o.max_scales) + " scales but only " + std::to_string(l.count) +
                     " stay above " + std::to_string(kFloorFactor) + " x delta = " +
                     std::to_string(kFloorFactor * f.delta()));
  }
  return l;
}

// ---------------------------------------------------------------------------
// Output

/// Writes to a sibling temporary file and renames it into place.
void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << text;
    if (!out) throw IoError("write failed for " + path);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move output into " + path + ": " + ec.message());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Subcommands

std::vector<ConeKind> parse_kinds(const std::string& s) {
  if (s == "all") return {kAllConeKinds.begin(), kAllConeKinds.end()};
  std::vector<ConeKind> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      out.push_back(cone_kind_from_string(part));
    } catch (const Error& e) {
      throw CLI::ValidationError("--kinds", e.what());
    }
  }
  return out;
}

int cmd_estimate(const Options& o, bool explicit_scales) {
  const SampledSet f = load_set(o.in);
  const auto points = select_points(f, o.pts, o.seed);
  const auto grid = make_grid(o.est, f.ambient_dim(), o.seed);
  Json reports = Json::array();
  std::ostringstream csv;
  csv.precision(17);
  csv << "point_index,kind";
  for (int d = 0; d < f.ambient_dim(); ++d) csv << ",v" << d;
  csv << ",score,member\n";
  const auto emit = [&](std::size_t pi, const ConeEstimate& e) {
    reports.push_back(to_json(e, o.members_only));
    for (int j = 0; j < grid->size(); ++j) {
      if (o.members_only && !e.is_member(j)) continue;
      csv << pi << ',' << to_string(e.kind);
      for (int d = 0; d < f.ambient_dim(); ++d) csv << ',' << grid->direction(j)(d);
      csv << ',' << e.scores(j) << ',' << (e.is_member(j) ? 1 : 0) << '\n';
    }
  };
  if (o.integer_m_max > 0) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      emit(i, integer_scale_lower_cone(f, points[i], o.integer_m_max, grid, o.est.tau, o.integer_m_lo));
    }
  } else {
    const ScaleLadder ladder = make_cli_ladder(f, o.est, explicit_scales);
    const auto kinds = parse_kinds(o.kinds);
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto all = estimate_all_cones(f, points[i], ladder, grid, o.est.tau, o.est.max_bases);
      for (ConeKind k : kinds) {
        emit(i, all[static_cast<std::size_t>(std::find(kAllConeKinds.begin(), kAllConeKinds.end(), k) -
                                             kAllConeKinds.begin())]);
      }
    }
  }
  write_output(o.out.out, o.out.format == "csv" ? csv.str() : dump(Json{{"reports", reports}}));
  std::cerr << "estimated " << reports.size() << " cone(s) at " << points.size() << " point(s)\n";
  return 0;
}

int cmd_classify(const Options& o, bool explicit_scales) {
  const SampledSet f = load_set(o.in);
  const auto points = select_points(f, o.pts, o.seed);
  Mat pts(f.ambient_dim(), static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) pts.col(static_cast<Eigen::Index>(i)) = points[i];

  ClassifierParams p;
  p.cones = ConeParams{o.est.lambda0, o.est.ratio, o.est.max_scales, o.est.tau, o.est.max_bases};
  p.grid = make_grid(o.est, f.ambient_dim(), o.seed);
  p.seed = o.seed;
  p.sigma_tol = o.sigma_tol;
  p.vector_space_tol = o.vector_space_tol;
  p.defect_tol = o.defect_tol;
  p.probe_radius = o.probe_radius;
  p.injectivity_tol = o.injectivity_tol;
  make_cli_ladder(f, o.est, explicit_scales);

  const auto need_dim = [&] {
    if (o.dim <= 0) throw CLI::ValidationError("--dim", "theorem " + o.theorem + " needs --dim");
    return o.dim;
  };
  ClassificationReport r;
  if (o.theorem == "four-cones") {
    r = four_cones_classify(f, pts, p);
  } else if (o.theorem == "tierno") {
    r = tierno_classify(f, pts, need_dim(), p);
  } else if (o.theorem == "shchepin-repovs") {
    r = shchepin_repovs_classify(f, pts, need_dim(), p);
  } else if (o.theorem == "valiron") {
    r = valiron_classify(f, pts, p);
  } else if (o.theorem == "severi") {
    r = severi_classify(f, pts, need_dim(), p);
  } else {
    r = gluck_classify(f, pts, p);
  }
  write_output(o.out.out, o.out.format == "csv" ? to_csv(r) : dump(to_json(r)));
  int pass = 0;
  int fail = 0;
  for (const auto& pr : r.points) (pr.verdict == Verdict::Pass ? pass : fail) += pr.verdict == Verdict::Inconclusive ? 0 : 1;
  const int inconclusive = static_cast<int>(r.points.size()) - pass - fail;
  std::cerr << r.theorem << ": " << to_string(r.verdict) << " (" << pass << " pass, " << fail << " fail, "
            << inconclusive << " inconclusive of " << r.points.size() << " points)\n";
  return 0;
}

int default_group_size(const std::string& g) {
  if (g == "SO2") return 2;
  return 3;
}

int cmd_liegroup(const Options& o) {
  const int n = o.n > 0 ? o.n : default_group_size(o.group);
  GroupSampleParams sp;
  sp.seed = o.seed;
  sp.anchors = o.elements;
  const MatrixGroupSample g = sample_group(o.group, n, sp);
  GroupParams gp;
  gp.seed = o.seed;
  gp.tau = o.est.tau;
  gp.max_bases = o.est.max_bases;
  gp.sigma_tol = o.sigma_tol;
  if (o.est.lambda0 > 0.0) gp.lambda0 = o.est.lambda0;
  const TangentSpaceEstimate est = estimate_infinitesimal_group(g, gp);
  const Subspace analytic = algebra_subspace(analytic_generators(o.group, n), n);
  Json j{{"schema", kAlgebraSchema},
         {"group", o.group},
         {"n", n},
         {"samples", g.set.size()},
         {"delta", g.set.delta()},
         {"ladder", to_json(est.cone.ladder)},
         {"dim", est.hull.dim()},
         {"basis", algebra_json(est.hull, n)},
         {"analytic_dim", analytic.dim()}};
  j["angle_to_analytic"] = (analytic.dim() == est.hull.dim() && analytic.dim() > 0)
                               ? number(subspace_angle(est.hull, analytic))
                               : Json(nullptr);
  j["bracket_residual"] = est.hull.dim() > 0 ? number(bracket_closure_check(est.hull, n)) : Json(nullptr);
  Json cov = Json::array();
  for (const Mat& a : g.anchors) {
    cov.push_back(Json{{"element", rows_json(a)}, {"angle", translation_covariance_check(g, a, est.hull, gp)}});
  }
  j["translation_covariance"] = cov;
  if (o.identity_cones) {
    const auto fc = four_cones_check_at_identity(g, gp);
    j["identity_cones"] = Json{{"member_counts", fc.member_counts},
                               {"hull_dims", fc.hull_dims},
                               {"defect_paratangent", number(fc.defect_para)},
                               {"defect_tangent", number(fc.defect_tan)},
                               {"defect_tol", fc.defect_tol},
                               {"verdict", std::string(to_string(fc.verdict))}};
  }
  write_output(o.out.out, dump(j));
  std::cerr << o.group << "(" << n << "): algebra dimension " << est.hull.dim() << "\n";
  return 0;
}

int cmd_examples(const Options& o) {
  if (o.examples_action == "list") {
    std::ostringstream s;
    for (const auto& name : catalog_names()) s << name << '\n';
    write_output(o.out.out, s.str());
    return 0;
  }
  Json results = Json::array();
  int passed = 0;
  int total = 0;
  std::printf("%-4s %-6s %s\n", "id", "result", "summary");
  for (const auto& c : corpus::criteria()) {
    if (!o.only.empty() && std::find(o.only.begin(), o.only.end(), c.id) == o.only.end()) continue;
    const corpus::CriterionResult r = corpus::run_guarded(c, o.seed);
    ++total;
    passed += r.passed ? 1 : 0;
    std::printf("%-4d %-6s %s: %s\n", r.id, r.passed ? "PASS" : "FAIL", r.title.c_str(), r.summary.c_str());
    std::fflush(stdout);
    results.push_back(corpus::to_json(r));
  }
  std::printf("%-4d %-6s %s\n", 11, "-", "repeatability: compare the JSON of two runs");
  std::printf("%d/%d criteria passed\n", passed, total);
  if (!o.json_path.empty()) {
    const Json j{{"schema", "conelab.corpus/1"}, {"seed", o.seed}, {"criteria", results}, {"passed", passed},
                 {"total", total}};
    write_output(o.json_path, dump(j));
  }
  return 0;
}

int cmd_angle(const Options& o) {
  const Subspace a = Subspace::span(parse_vectors(o.a));
  Json j{{"a", to_json(a)}};
  if (!o.b.empty()) {
    const Subspace b = Subspace::span(parse_vectors(o.b));
    if (b.ambient_dim() != a.ambient_dim()) throw DimensionError("--a and --b live in different dimensions");
    j["b"] = to_json(b);
    if (a.dim() == b.dim()) {
      j["angle"] = subspace_angle(a, b);
      j["projection_factor"] = projection_factor(a, b);
    } else {
      j["angle"] = nullptr;
      j["note"] = "angle needs subspaces of equal dimension";
    }
  }
  if (!o.x.empty()) {
    const Vec x = parse_vector(o.x);
    if (x.size() != a.ambient_dim()) throw DimensionError("--x dimension does not match --a");
    j["dist_to_a"] = dist_to_subspace(x, a);
    j["angle_to_a"] = x.norm() > 0.0 ? number(angle_to_subspace(x, a)) : Json(nullptr);
  }
  write_output(o.out.out, dump(j));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Tangent and paratangent cones of sampled sets"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--config", o.config, "JSON file with option values");
  std::string seed_text;
  app.add_option("--seed", seed_text, "Seed for random grids and test points");

  auto* est = app.add_subcommand("estimate", "Estimate the four cones at base points");
  add_input(est, o);
  add_points(est, o);
  add_estimator(est, o);
  add_output(est, o, true);
  est->add_option("--kinds", o.kinds, "all, or comma-separated pTan-,Tan-,Tan+,pTan+");
  est->add_flag("--members-only", o.members_only, "Report member directions only");
  est->add_option("--integer-m-max", o.integer_m_max, "Use integer blow-ups 1/m for the lower tangent cone");
  est->add_option("--integer-m-lo", o.integer_m_lo, "First m of the integer window");

  auto* cls = app.add_subcommand("classify", "Run a C1-manifold classifier at test points");
  add_input(cls, o);
  add_points(cls, o);
  add_estimator(cls, o);
  add_output(cls, o, true);
  cls->add_option("--theorem", o.theorem, "Classifier")
      ->required()
      ->check(CLI::IsMember({"four-cones", "tierno", "shchepin-repovs", "valiron", "severi", "gluck"}));
  cls->add_option("--dim", o.dim, "Manifold dimension d");
  cls->add_option("--sigma-tol", o.sigma_tol, "Relative singular-value cutoff for hulls");
  cls->add_option("--vector-space-tol", o.vector_space_tol, "Slack on tau for the vector-space test");
  cls->add_option("--defect-tol", o.defect_tol, "Coincidence tolerance (default 2 x mesh + 0.05)");
  cls->add_option("--probe-radius", o.probe_radius, "Neighbourhood radius for secant tests");
  cls->add_option("--injectivity-tol", o.injectivity_tol, "Lower bound on the projection's Lipschitz ratio");

  auto* lie = app.add_subcommand("liegroup", "Recover the Lie algebra of a sampled matrix group");
  lie->add_option("--group", o.group, "Group name")->required();
  lie->add_option("--n", o.n, "Matrix size");
  lie->add_option("--tau", o.est.tau, "Membership threshold");
  lie->add_option("--lambda0", o.est.lambda0, "First blow-up scale");
  lie->add_option("--max-bases", o.est.max_bases, "Base points per scale for paratangent cones");
  lie->add_option("--sigma-tol", o.sigma_tol, "Relative singular-value cutoff for hulls");
  lie->add_option("--elements", o.elements, "Random group elements for the covariance check");
  lie->add_flag("--identity-cones", o.identity_cones, "Also compare the four cones at the identity");
  add_output(lie, o, false);

  auto* ex = app.add_subcommand("examples", "List the catalog or run the example corpus");
  ex->add_option("action", o.examples_action, "list or run-all")->required()->check(CLI::IsMember({"list", "run-all"}));
  ex->add_option("--json", o.json_path, "Write machine-readable results here");
  ex->add_option("--only", o.only, "Run only these criterion ids");
  ex->add_option("--out", o.out.out, "Output file for list");

  auto* ang = app.add_subcommand("angle", "Exterior-algebra quantities for spans of vectors");
  ang->add_option("--a", o.a, "Vectors spanning A, as 'v1;v2' with comma-separated entries")->required();
  ang->add_option("--b", o.b, "Vectors spanning B");
  ang->add_option("--x", o.x, "A vector to measure against A");
  add_output(ang, o, false);

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = with_config(args);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (!seed_text.empty()) {
      o.seed = parse_seed(seed_text, "--seed");
    }
    const bool seed_flag = std::any_of(argv + 1, argv + argc, [](const char* a) {
      const std::string s(a);
      return s == "--seed" || s.rfind("--seed=", 0) == 0;
    });
    if (const char* env = std::getenv("CONELAB_SEED"); env && !seed_flag) o.seed = parse_seed(env, "CONELAB_SEED");

    if (*est) return cmd_estimate(o, est->count("--max-scales") > 0);
    if (*cls) return cmd_classify(o, cls->count("--max-scales") > 0);
    if (*lie) return cmd_liegroup(o);
    if (*ex) return cmd_examples(o);
    if (*ang) return cmd_angle(o);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ScaleError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitScale;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}
