#include "spectra/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "spectra/report.hpp"
#include "spectra/sweep.hpp"
#include "trispec/bounds.hpp"
#include "trispec/dirac1d.hpp"
#include "trispec/dirac2d.hpp"
#include "trispec/errors.hpp"
#include "trispec/shooting.hpp"

namespace spectra {

using namespace trispec;
using json = nlohmann::ordered_json;

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(std::string_view text) {
  const std::string t = trim(text);
  std::istringstream is(t);
  is.imbue(std::locale::classic());
  double v = 0.0;
  is >> v;
  if (t.empty() || is.fail() || !is.eof() || !std::isfinite(v)) {
    throw DomainError("not a finite number: '" + t + "'");
  }
  return v;
}

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json finite_json(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string finite_cell(double v) { return std::isfinite(v) ? format_double(v) : std::string(); }

struct Common {
  std::string format = "table";
  std::string out;
};

// Output destination, opened before any computation starts.
class Sink {
 public:
  Sink(const Common& common, std::ostream& fallback) : path_(common.out), os_(&fallback) {
    if (!path_.empty()) {
      file_.open(path_, std::ios::binary | std::ios::trunc);
      if (!file_) throw IoError("cannot write output file '" + path_ + "'");
      os_ = &file_;
    }
  }

  std::ostream& stream() { return *os_; }

  void close() {
    if (path_.empty()) return;
    file_.flush();
    if (!file_) throw IoError("failed writing output file '" + path_ + "'");
  }

 private:
  std::string path_;
  std::ofstream file_;
  std::ostream* os_;
};

// Renders either the table (table/csv) or the JSON document.
void emit(const Common& common, const Table& table, const json& doc, const std::string& note,
          Sink& sink) {
  std::ostream& os = sink.stream();
  switch (parse_output_format(common.format)) {
    case OutputFormat::Table:
      table.write_text(os);
      if (!note.empty()) os << "note: " << note << '\n';
      break;
    case OutputFormat::Csv:
      table.write_csv(os);
      break;
    case OutputFormat::Json:
      os << doc.dump(2) << '\n';
      break;
  }
  sink.close();
}

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  cmd->add_option("--out", common.out, "Write output to PATH instead of stdout");
}

Lambda1Estimate estimate(const RightTriangle& tri, double m, const std::vector<int>& mesh) {
  Lambda1Options opts;
  opts.threads = worker_count();
  return lambda1_extrapolated(tri, MassParam(m), mesh, opts);
}

// bounds ---------------------------------------------------------------

struct BoundsArgs {
  double a = 0.0;
  double b = 0.0;
  double m = 0.0;
  std::optional<double> k;
};

void run_bounds(const BoundsArgs& args, const Common& common, std::ostream& out) {
  Sink sink(common, out);
  const RightTriangle tri(args.a, args.b);
  const MassParam m(args.m);
  const double lower = lower_bound_sq(tri);
  const double upper = upper_bound_sq(tri);
  const auto improved = improved_lower_bound_sq(tri, m);
  const double threshold = improved_bound_mass_threshold(tri);

  Table t;
  t.columns = {"a", "b", "m", "lower_sq", "upper_sq", "improved_lower_sq", "improved_mass_threshold"};
  t.rows.push_back({format_double(args.a), format_double(args.b), format_double(args.m),
                    format_double(lower), format_double(upper), opt(improved),
                    format_double(threshold)});
  json doc;
  doc["a"] = args.a;
  doc["b"] = args.b;
  doc["m"] = args.m;
  doc["lower_sq"] = lower;
  doc["upper_sq"] = upper;
  doc["improved_lower_sq"] = opt_json(improved);
  doc["improved_mass_threshold"] = threshold;
  if (args.k) {
    const double k = *args.k;
    json regions = json::array();
    t.columns.insert(t.columns.end(), {"area_base", "area_large_mass", "perimeter_base",
                                       "perimeter_large_mass", "sufficient_condition"});
    for (auto c : {CorollaryConstraint::Area, CorollaryConstraint::Perimeter}) {
      for (auto v : {CorollaryVariant::Base, CorollaryVariant::LargeMass}) {
        const RegionVerdict r = corollary_region(args.a, k, c, v);
        t.rows[0].push_back(r.in_region ? "true" : "false");
        json jr;
        jr["constraint"] = std::string(to_string(c));
        jr["variant"] = std::string(to_string(v));
        jr["in_region"] = r.in_region;
        jr["mass_threshold"] = opt_json(r.mass_threshold);
        regions.push_back(jr);
      }
    }
    const bool sufficient = sufficient_condition_raw(args.a, args.b, k);
    t.rows[0].push_back(sufficient ? "true" : "false");
    doc["k"] = k;
    doc["regions"] = regions;
    doc["sufficient_condition"] = sufficient;
  }
  emit(common, t, doc, "", sink);
}

// fiber ----------------------------------------------------------------

struct FiberArgs {
  std::string family = "H";
  double a = 0.0;
  double b = 0.0;
  double L = 1.0;
  double m = 0.0;
  std::string window = "-10,10";
  int max_count = 20;
};

void run_fiber(const FiberArgs& args, const Common& common, std::ostream& out) {
  Sink sink(common, out);
  const auto w = parse_double_list(args.window);
  if (w.size() != 2) throw DomainError("--window expects lo,hi");
  const FiberProblem prob =
      FiberProblem::make(parse_fiber_family(args.family), RightTriangle(args.a, args.b), args.L,
                         MassParam(args.m));
  const Spectrum1D spec = eigenvalues_in_window(prob, {w[0], w[1]}, args.max_count);

  std::string note;
  if (w[0] >= -args.m && w[1] <= args.m) {
    note = "window lies inside the mass gap [-m, m]; no eigenvalues there";
  } else if (spec.eigenvalues.empty()) {
    note = "no eigenvalues in window";
  } else if (spec.truncated) {
    note = "list truncated to the " + std::to_string(args.max_count) + " roots closest to zero";
  }

  Table t;
  t.columns = {"index", "value", "energy", "branch", "validated_range", "residual",
               "shooting_defect"};
  json rows = json::array();
  int index = 0;
  for (const FiberEigenvalue& e : spec.eigenvalues) {
    const double defect = std::abs(shooting_oracle(prob, e.value));
    t.rows.push_back({std::to_string(index), format_double(e.value), format_double(e.energy),
                      std::to_string(e.branch), e.validated_range ? "true" : "false",
                      format_double(e.residual), format_double(defect)});
    json j;
    j["index"] = index;
    j["value"] = e.value;
    j["energy"] = e.energy;
    j["branch"] = e.branch;
    j["validated_range"] = e.validated_range;
    j["residual"] = e.residual;
    j["shooting_defect"] = defect;
    rows.push_back(j);
    ++index;
  }
  json doc;
  doc["family"] = std::string(to_string(prob.family));
  doc["a"] = args.a;
  doc["b"] = args.b;
  doc["L"] = args.L;
  doc["m"] = args.m;
  doc["window"] = {w[0], w[1]};
  doc["eigenvalues"] = rows;
  doc["truncated"] = spec.truncated;
  doc["monotone_branches"] = spec.monotone_branches;
  if (!note.empty()) doc["note"] = note;
  emit(common, t, doc, note, sink);
}

// lambda1 / polygon ----------------------------------------------------

struct Lambda1Args {
  double a = 0.0;
  double b = 0.0;
  double m = 0.0;
  std::string mesh = "24,48,96";
};

void ladder_output(const std::vector<Lambda1Result>& levels, const Extrapolation& ex, double m,
                   Table& t, json& doc) {
  t.columns = {"n", "dofs", "lambda1", "lambda1_sq_minus_m2", "err", "fitted_order", "residual"};
  json jl = json::array();
  for (const Lambda1Result& r : levels) {
    t.rows.push_back({std::to_string(r.n), std::to_string(r.dofs), format_double(r.lambda1),
                      format_double(r.energy), "", "", format_double(r.residual)});
    json j;
    j["n"] = r.n;
    j["dofs"] = r.dofs;
    j["lambda1"] = r.lambda1;
    j["lambda1_sq_minus_m2"] = r.energy;
    j["residual"] = r.residual;
    jl.push_back(j);
  }
  const double mu = ex.value + m * m;
  const double lambda = std::sqrt(std::max(mu, 0.0));
  t.rows.push_back({"extrapolated", "", format_double(lambda), format_double(ex.value),
                    format_double(ex.error), finite_cell(ex.order), ""});
  json je;
  je["lambda1"] = lambda;
  je["lambda1_err"] = lambda > 0.0 ? ex.error / (2.0 * lambda) : ex.error;
  je["lambda1_sq_minus_m2"] = ex.value;
  je["err"] = ex.error;
  je["fitted_order"] = finite_json(ex.order);
  je["declined"] = ex.declined;
  doc["levels"] = jl;
  doc["extrapolated"] = je;
}

void run_lambda1(const Lambda1Args& args, const Common& common, std::ostream& out) {
  Sink sink(common, out);
  const auto mesh = parse_mesh_list(args.mesh);
  const RightTriangle tri(args.a, args.b);
  const Lambda1Estimate est = estimate(tri, args.m, mesh);
  Table t;
  json doc;
  doc["a"] = args.a;
  doc["b"] = args.b;
  doc["m"] = args.m;
  ladder_output(est.levels, est.energy, args.m, t, doc);
  doc["lower_sq"] = lower_bound_sq(tri);
  doc["upper_sq"] = upper_bound_sq(tri);
  const std::string note = est.energy.declined ? "extrapolation declined; finest value reported" : "";
  emit(common, t, doc, note, sink);
}

struct PolygonArgs {
  std::string vertices;
  double m = 0.0;
  std::string mesh = "8,16,32";
};

std::vector<Point> parse_vertices(std::string_view text) {
  std::vector<Point> pts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find(';', start), text.size());
    const std::string item = trim(text.substr(start, end - start));
    if (!item.empty()) {
      const auto xy = parse_double_list(item);
      if (xy.size() != 2) throw DomainError("vertex '" + item + "' must be x,y");
      pts.push_back({xy[0], xy[1]});
    }
    start = end + 1;
  }
  return pts;
}

void run_polygon(const PolygonArgs& args, const Common& common, std::ostream& out) {
  Sink sink(common, out);
  const auto poly = parse_vertices(args.vertices);
  const auto mesh_list = parse_mesh_list(args.mesh);
  validate_polygon(poly);
  std::vector<Lambda1Result> levels;
  std::vector<std::pair<int, double>> energies;
  const int threads = worker_count();
  for (int n : mesh_list) {
    const Mesh mesh = mesh_polygon(poly, n);
    Lambda1Result r = smallest_form_eigenvalue(assemble_polygon_form(mesh, MassParam(args.m), threads));
    r.n = n;
    energies.emplace_back(n, r.energy);
    levels.push_back(r);
  }
  Table t;
  json doc;
  json jv = json::array();
  for (const Point& p : poly) jv.push_back({p.x, p.y});
  doc["vertices"] = jv;
  doc["m"] = args.m;
  if (energies.size() >= 3) {
    ladder_output(levels, extrapolate(energies), args.m, t, doc);
  } else {
    Extrapolation raw;
    raw.value = energies.back().second;
    raw.order = std::nan("");
    raw.declined = true;
    ladder_output(levels, raw, args.m, t, doc);
  }
  emit(common, t, doc, "", sink);
}

// sweep ----------------------------------------------------------------

struct SweepArgs {
  std::string constraint = "area";
  double k = 1.0;
  std::string a_grid;
  double m = 0.0;
  std::string mesh = "24,48,96";
};

void run_sweep(const SweepArgs& args, const Common& common, std::ostream& out) {
  SweepConfig cfg;
  cfg.constraint = {parse_constraint_kind(args.constraint), args.k};
  if (!(args.k > 0.0) || !std::isfinite(args.k)) throw DomainError("--k must be positive");
  cfg.a_grid = parse_double_list(args.a_grid);
  cfg.m = MassParam(args.m).value();
  cfg.mesh_n_list = parse_mesh_list(args.mesh);
  if (cfg.mesh_n_list.size() < 3) throw DomainError("sweep needs at least three mesh levels");
  cfg.workers = worker_count();
  const OutputFormat fmt = parse_output_format(common.format);
  Sink sink(common, out);
  const auto records = sweep(cfg);
  write_report(sink.stream(), records, fmt);
  sink.close();
}

}  // namespace

std::vector<double> parse_double_list(std::string_view text, char sep) {
  std::vector<double> out;
  std::size_t start = 0;
  if (trim(text).empty()) throw DomainError("empty list");
  while (start <= text.size()) {
    const auto end = std::min(text.find(sep, start), text.size());
    out.push_back(parse_double(text.substr(start, end - start)));
    start = end + 1;
  }
  return out;
}

std::vector<int> parse_mesh_list(std::string_view text) {
  std::vector<int> out;
  for (double v : parse_double_list(text)) {
    if (v != std::floor(v) || v < 2 || v > 4096) {
      throw DomainError("mesh levels must be integers in [2, 4096]");
    }
    out.push_back(static_cast<int>(v));
  }
  return out;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral toolkit for Dirac operators with infinite-mass boundary conditions on "
               "right triangles",
               "spectra"};
  app.require_subcommand(1);
  Common common;

  BoundsArgs bounds;
  auto* cmd_bounds = app.add_subcommand("bounds", "Closed-form eigenvalue bounds");
  cmd_bounds->add_option("--a", bounds.a, "First leg")->required();
  cmd_bounds->add_option("--b", bounds.b, "Second leg")->required();
  cmd_bounds->add_option("--m", bounds.m, "Mass");
  cmd_bounds->add_option("--k", bounds.k, "Reference leg for the eccentricity classifiers");
  add_common(cmd_bounds, common);

  FiberArgs fiber;
  auto* cmd_fiber = app.add_subcommand("fiber", "One-dimensional fiber spectrum");
  cmd_fiber->add_option("--family", fiber.family, "H or G")->check(CLI::IsMember({"H", "G"}));
  cmd_fiber->add_option("--a", fiber.a, "First leg")->required();
  cmd_fiber->add_option("--b", fiber.b, "Second leg")->required();
  cmd_fiber->add_option("--L", fiber.L, "Fiber length");
  cmd_fiber->add_option("--m", fiber.m, "Mass");
  cmd_fiber->add_option("--window", fiber.window, "Eigenvalue window lo,hi");
  cmd_fiber->add_option("--max-count", fiber.max_count, "Maximum number of roots")
      ->check(CLI::Range(1, 100000));
  add_common(cmd_fiber, common);

  Lambda1Args lambda1;
  auto* cmd_lambda1 = app.add_subcommand("lambda1", "Lowest 2D eigenvalue with extrapolation");
  cmd_lambda1->add_option("--a", lambda1.a, "First leg")->required();
  cmd_lambda1->add_option("--b", lambda1.b, "Second leg")->required();
  cmd_lambda1->add_option("--m", lambda1.m, "Mass");
  cmd_lambda1->add_option("--mesh", lambda1.mesh, "Mesh ladder, e.g. 24,48,96");
  add_common(cmd_lambda1, common);

  SweepArgs sw;
  auto* cmd_sweep = app.add_subcommand("sweep", "Constrained parameter sweep");
  cmd_sweep->add_option("--constraint", sw.constraint, "area, perimeter or perimeter-paper")
      ->check(CLI::IsMember({"area", "perimeter", "perimeter-paper"}));
  cmd_sweep->add_option("--k", sw.k, "Reference leg");
  cmd_sweep->add_option("--a-grid", sw.a_grid, "First legs, comma separated")->required();
  cmd_sweep->add_option("--m", sw.m, "Mass");
  cmd_sweep->add_option("--mesh", sw.mesh, "Mesh ladder, e.g. 24,48,96");
  add_common(cmd_sweep, common);

  PolygonArgs polygon;
  auto* cmd_polygon = app.add_subcommand("polygon", "Lowest eigenvalue on a polygon");
  cmd_polygon->add_option("--vertices", polygon.vertices, "Counter-clockwise vertices x,y;x,y;...")
      ->required();
  cmd_polygon->add_option("--m", polygon.m, "Mass");
  cmd_polygon->add_option("--mesh", polygon.mesh, "Subdivisions per coarse triangle");
  add_common(cmd_polygon, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidArgs;
  }

  try {
    if (*cmd_bounds) run_bounds(bounds, common, out);
    if (*cmd_fiber) run_fiber(fiber, common, out);
    if (*cmd_lambda1) run_lambda1(lambda1, common, out);
    if (*cmd_sweep) run_sweep(sw, common, out);
    if (*cmd_polygon) run_polygon(polygon, common, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidArgs;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidArgs;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidArgs;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitOk;
}

}  // namespace spectra
