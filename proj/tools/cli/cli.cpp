#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "pluriminimal/errors.hpp"
#include "pluriminimal/family.hpp"
#include "pluriminimal/geometry.hpp"
#include "pluriminimal/mesh.hpp"
#include "pluriminimal/relations.hpp"
#include "pluriminimal/sampling.hpp"
#include "pluriminimal/self_intersect.hpp"
#include "pluriminimal/serialize.hpp"
#include "pluriminimal/weierstrass.hpp"

namespace pluri::cli {
namespace {

using nlohmann::json;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::uint64_t seed = 1;
  std::size_t samples = 100;
  double radius = 2.0;
  double tol_conf = 1e-12;
  double tol_rank = 1e-9;
  std::string output;
};

struct VerifyConfig {
  std::string input;
  double tol_closed = 1e-10;
  double tol_mean = 1e-6;
  std::size_t lines = 10;
};

struct FamilyConfig {
  std::string f = "0";
  std::string g = "0";
  std::string six_output;
};

struct RelationsConfig {
  int m = 2;
  int n = 3;
  std::string csv;
  std::size_t cap = kDefaultSizeCap;
  int emit = 0;
  std::string emit_output;
  bool ensure_immersion = false;
};

struct MeshConfig {
  std::string input;
  std::string curve;
  int resolution = 32;
  double radius = 1.0;
  std::string project = "1,2,3";
};

struct SelfIntersectConfig {
  std::string input;
  int starts = 64;
  double radius = 3.0;
  double delta = 0.1;
  double tol = 1e-8;
  unsigned threads = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write " + path);
  file << text;
  if (!file) throw InputError("cannot write " + path);
}

json point_json(const Point& z) {
  json j = json::array();
  for (const auto& c : z) j.push_back({c.real(), c.imag()});
  return j;
}

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream ss(text);
  while (std::getline(ss, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

int cmd_verify(const Common& c, const VerifyConfig& v, std::ostream& out, std::ostream& err) {
  const WeierstrassData data = data_from_json(read_file(v.input));
  const auto points = polydisk_samples(data.arity, c.radius, c.samples, c.seed);

  const ClosednessReport closed = check_closed(data, points, v.tol_closed);
  const double consistency = primitive_consistency(data, points);
  const ConformalityReport conf = check_conformality(data, points, c.tol_conf);
  const RankReport rank = check_rank(data, points, c.tol_rank);

  json report;
  report["arity"] = data.arity;
  report["forms"] = data.size();
  report["samples"] = points.size();
  report["seed"] = c.seed;
  report["radius"] = c.radius;
  report["warnings"] = data.warnings();

  json checks;
  checks["closed"] = {{"pass", closed.passed},
                      {"tolerance", v.tol_closed},
                      {"worst_residual", closed.worst_residual},
                      {"worst_form", closed.worst_form + 1},
                      {"worst_point", point_json(points[closed.worst_point])},
                      {"per_form", closed.per_form}};
  const bool consistent = consistency < v.tol_closed;
  checks["primitives"] = {{"present", data.primitives.has_value()},
                          {"pass", consistent},
                          {"tolerance", v.tol_closed},
                          {"worst_residual", consistency}};
  checks["conformality"] = {{"pass", conf.passed},
                            {"tolerance", c.tol_conf},
                            {"worst_residual", conf.worst_residual},
                            {"worst_point", point_json(points[conf.worst_point])}};
  checks["rank"] = {{"pass", rank.passed},
                    {"relative_tolerance", c.tol_rank},
                    {"worst_rank", rank.worst_rank},
                    {"worst_ratio", rank.worst_ratio},
                    {"worst_smallest_singular_value", rank.worst_smallest_singular_value},
                    {"worst_point", point_json(points[rank.worst_point])}};

  // Mean curvature of t -> f(z + t v) along random complex lines.
  json minimality{{"tolerance", v.tol_mean}};
  bool minimal = true;
  const bool applicable = closed.passed && rank.passed &&
                          static_cast<int>(data.size()) >= 2 * data.arity;
  minimality["applicable"] = applicable;
  if (applicable) {
    const std::string method = data.primitives ? "finite-difference" : "second-fundamental-form";
    minimality["method"] = method;
    Sampler directions(c.seed ^ 0xD1B54A32D192ED03ULL);
    double worst = 0.0;
    std::size_t worst_line = 0;
    const std::size_t lines = std::min(v.lines, points.size());
    for (std::size_t l = 0; l < lines; ++l) {
      const Point dir = directions.unit_direction(data.arity);
      double h = std::numeric_limits<double>::infinity();
      try {
        if (data.primitives) {
          h = fd_line_mean_curvature(data, points[l], dir);
        } else {
          const Point dirs[] = {dir};
          h = second_fundamental_form(data, points[l], dirs).mean_curvature_norms.front();
        }
      } catch (const GeometryError&) {
      }
      if (l == 0 || !(h <= worst)) {
        worst = h;
        worst_line = l;
      }
    }
    minimal = worst < v.tol_mean;
    minimality["lines"] = lines;
    minimality["worst_mean_curvature"] = number_or_null(worst);
    minimality["worst_point"] = point_json(points[worst_line]);
  }
  minimality["pass"] = minimal;
  checks["minimality"] = minimality;
  report["checks"] = checks;

  const bool pass = closed.passed && consistent && conf.passed && rank.passed && minimal;
  report["pass"] = pass;
  write_text(c.output, report.dump(2) + "\n", out);
  if (!pass) {
    err << "verify: failed";
    if (!closed.passed) err << " closed(form " << closed.worst_form + 1 << ")";
    if (!consistent) err << " primitives";
    if (!conf.passed) err << " conformality";
    if (!rank.passed) err << " rank";
    if (!minimal) err << " minimality";
    err << "\n";
  }
  return pass ? kPass : kGeometricFailure;
}

int cmd_family(const Common& c, const FamilyConfig& fc, std::ostream& out, std::ostream&) {
  FamilyInput input;
  input.f = parse_expr(fc.f, 1);
  input.g = parse_expr(fc.g, 1);
  const SixFunctions six = solve_family(input);
  SplitOptions options;
  options.seed = c.seed;
  const IsotropicPairs pairs = split_pairs(six, options);
  if (!fc.six_output.empty()) {
    json j;
    for (std::size_t i = 0; i < six.p.size(); ++i) j["P" + std::to_string(i + 1)] = to_string(six.p[i]);
    write_text(fc.six_output, j.dump(2) + "\n", out);
  }
  write_text(c.output, to_json(pairs.data) + "\n", out);
  return kPass;
}

int cmd_relations(const Common& c, const RelationsConfig& rc, std::ostream& out, std::ostream& err) {
  if (rc.m < 1 || rc.n < 1) throw InputError("m and n must be positive");
  const DimensionReport report = dimension_report(rc.m, 1, rc.n, rc.cap);
  const MuMatrix mu = build_mu(PolyBasis::make(rc.m, rc.n), rc.cap);
  const KernelResult ker = kernel(mu);

  json kj;
  kj["m"] = rc.m;
  kj["n"] = rc.n;
  kj["dimV"] = mu.basis.dimension();
  kj["dimSym2V"] = mu.matrix.cols();
  kj["dimTarget"] = mu.target.dimension();
  kj["rank"] = ker.rank;
  kj["kernel"] = ker.dimension();
  kj["first_nontrivial"] = report.first_nontrivial ? json(*report.first_nontrivial) : json(nullptr);
  json relations = json::array();
  for (const auto& r : ker.relations) relations.push_back(json::parse(to_json(r)));
  kj["relations"] = relations;

  if (!c.output.empty()) write_text(c.output, kj.dump() + "\n", out);
  write_text(rc.csv, report.to_csv(), out);

  if (rc.emit == 0) return kPass;
  if (rc.emit < 0 || static_cast<std::size_t>(rc.emit) > ker.dimension()) {
    throw InputError("--emit must be between 1 and the kernel dimension " + std::to_string(ker.dimension()));
  }
  if (rc.emit_output.empty()) throw InputError("--emit requires --emit-out");
  DiagonalizeOptions dopt;
  dopt.samples = c.samples;
  dopt.seed = c.seed;
  dopt.tolerance = std::max(c.tol_conf, 1e-10);
  const DiagonalizeResult diag = diagonalize(ker.relations[static_cast<std::size_t>(rc.emit - 1)], dopt);
  EmitOptions eopt;
  eopt.ensure_immersion = rc.ensure_immersion;
  eopt.samples = c.samples;
  eopt.seed = c.seed;
  eopt.radius = c.radius;
  eopt.rank_tolerance = c.tol_rank;
  const WeierstrassData data = emit_map(diag.primitives, rc.m, eopt);
  write_text(rc.emit_output, to_json(data) + "\n", out);
  if (!diag.certified) {
    err << "relations: diagonalisation residual " << diag.residual << " above " << dopt.tolerance << "\n";
    return kGeometricFailure;
  }
  return kPass;
}

int cmd_mesh(const Common& c, const MeshConfig& mc, std::ostream& out, std::ostream&) {
  const WeierstrassData data = data_from_json(read_file(mc.input));
  MeshSlice slice;
  slice.resolution = mc.resolution;
  slice.radius = mc.radius;
  const auto curve = split(mc.curve, ',');
  if (static_cast<int>(curve.size()) != data.arity) {
    throw InputError("--curve needs " + std::to_string(data.arity) + " comma-separated expressions in z1");
  }
  for (const auto& e : curve) slice.curve.push_back(parse_expr(e, 1));
  const auto proj = split(mc.project, ',');
  if (proj.size() != 3) throw InputError("--project expects three indices i,j,k");
  for (std::size_t i = 0; i < 3; ++i) {
    try {
      std::size_t used = 0;
      slice.projection[i] = std::stoi(proj[i], &used) - 1;
      if (used != proj[i].size()) throw std::invalid_argument(proj[i]);
    } catch (const std::logic_error&) {
      throw InputError("--project: bad index '" + proj[i] + "'");
    }
  }
  const SurfaceGrid grid = sample_slice(data, slice);
  write_text(c.output, to_obj(grid, slice.projection), out);
  return kPass;
}

int cmd_selfintersect(const Common& c, const SelfIntersectConfig& sc, std::ostream& out, std::ostream&) {
  const WeierstrassData data = data_from_json(read_file(sc.input));
  SelfIntersectOptions o;
  o.starts = sc.starts;
  o.radius = sc.radius;
  o.min_separation = sc.delta;
  o.certify_tolerance = sc.tol;
  o.seed = c.seed;
  o.threads = sc.threads;
  const SelfIntersectResult r = self_intersect(data, o);
  json j;
  j["starts"] = r.starts_run;
  j["seed"] = c.seed;
  j["min_separation"] = sc.delta;
  j["tolerance"] = sc.tol;
  j["best_distance"] = number_or_null(r.best_distance);
  if (r.witness) {
    j["result"] = "found";
    j["p"] = point_json(r.witness->p);
    j["q"] = point_json(r.witness->q);
    j["distance"] = r.witness->distance;
    j["separation"] = r.witness->separation;
    j["start"] = r.witness->start;
  } else {
    j["result"] = "none found";
  }
  write_text(c.output, j.dump(2) + "\n", out);
  return kPass;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  sub->add_option("--samples", c.samples, "Number of sample points")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--radius", c.radius, "Sample polydisk radius")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--tol-conf", c.tol_conf, "Conformality tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--tol-rank", c.tol_rank, "Relative rank tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("-o,--output", c.output, "Output path (stdout when omitted)");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pluriminimal immersions from Weierstrass data", "pluri"};
  app.require_subcommand(1);

  Common common;
  VerifyConfig verify;
  FamilyConfig family;
  RelationsConfig relations;
  MeshConfig mesh;
  SelfIntersectConfig si;

  auto* v = app.add_subcommand("verify", "Check closedness, conformality, rank and minimality");
  add_common(v, common);
  v->add_option("data", verify.input, "Weierstrass data JSON")->required();
  v->add_option("--tol-closed", verify.tol_closed)->capture_default_str()->check(CLI::PositiveNumber);
  v->add_option("--tol-mean", verify.tol_mean)->capture_default_str()->check(CLI::PositiveNumber);
  v->add_option("--lines", verify.lines, "Complex lines for the minimality probe")->capture_default_str();

  auto* f = app.add_subcommand("family", "Generate the C^2 -> R^6 family for entire f, g");
  add_common(f, common);
  f->add_option("--f", family.f, "f(z1)")->capture_default_str();
  f->add_option("--g", family.g, "g(z1)")->capture_default_str();
  f->add_option("--six", family.six_output, "Also write P1..P6 to this path");

  auto* r = app.add_subcommand("relations", "Quadratic relations among polynomial 1-forms");
  add_common(r, common);
  r->add_option("--m", relations.m)->capture_default_str();
  r->add_option("--n", relations.n)->capture_default_str();
  r->add_option("--csv", relations.csv, "Dimension report path (stdout when omitted)");
  r->add_option("--cap", relations.cap, "Largest allowed dim Sym^2 V")->capture_default_str();
  r->add_option("--emit", relations.emit, "Diagonalise the k-th kernel element (1-based)");
  r->add_option("--emit-out", relations.emit_output, "Data path for --emit");
  r->add_flag("--ensure-immersion", relations.ensure_immersion, "Append (z_j, i z_j) until full rank");

  auto* mcmd = app.add_subcommand("mesh", "Export the image of a complex curve as an OBJ mesh");
  add_common(mcmd, common);
  mcmd->add_option("data", mesh.input, "Weierstrass data JSON")->required();
  mcmd->add_option("--curve", mesh.curve, "Comma-separated curve components in t = z1")->required();
  mcmd->add_option("--resolution", mesh.resolution)->capture_default_str();
  mcmd->add_option("--extent", mesh.radius, "Half-width of the t-square")->capture_default_str();
  mcmd->add_option("--project", mesh.project, "1-based output coordinates i,j,k")->capture_default_str();

  auto* s = app.add_subcommand("selfintersect", "Search for a double point");
  add_common(s, common);
  s->add_option("data", si.input, "Weierstrass data JSON")->required();
  s->add_option("--starts", si.starts)->capture_default_str();
  s->add_option("--start-radius", si.radius)->capture_default_str();
  s->add_option("--delta", si.delta, "Minimal separation |p - q|")->capture_default_str();
  s->add_option("--tol", si.tol, "Certification tolerance")->capture_default_str();
  s->add_option("--threads", si.threads)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kInputError;
  }

  try {
    if (v->parsed()) return cmd_verify(common, verify, out, err);
    if (f->parsed()) return cmd_family(common, family, out, err);
    if (r->parsed()) return cmd_relations(common, relations, out, err);
    if (mcmd->parsed()) return cmd_mesh(common, mesh, out, err);
    if (s->parsed()) return cmd_selfintersect(common, si, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kInputError;
  } catch (const SizeGuardError& e) {
    err << "size guard: " << e.what() << "\n";
    return kSizeGuard;
  } catch (const RejectedRelation& e) {
    err << "rejected: " << e.what() << "\n";
    return kGeometricFailure;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << "\n";
    return kInputError;
  } catch (const InvalidArgument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInputError;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kGeometricFailure;
  }
  return kInputError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"pluri"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace pluri::cli
