#include "crowngraft/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "crowngraft/error.hpp"
#include "crowngraft/json_io.hpp"
#include "crowngraft/svg.hpp"

namespace crowngraft {

namespace {

const std::vector<std::pair<std::string, std::string>> kSubcommands = {
    {"polygon", "normalise a polygon and report its cross-ratio coordinates, or rebuild it from them"},
    {"graft", "bend a polygon along weighted diagonals and report the tips"},
    {"ungraft", "recover the polygon and weights grafting to the given tips"},
    {"fiber", "list the lifts of the weights by 2 pi up to --nmax turns"},
    {"crown-coords", "crown lamination to (shape, weights, l, tau) coordinates and back"},
    {"match", "minimal matching of two weighted arc rows"},
    {"glue", "two-stage gluing of crown arcs to surface arcs"},
    {"tips", "asymptotic values of u'' + q u / 2 = 0 for a monic polynomial q"},
    {"render", "SVG figure of a polygon, crown, tip set or matching"},
};

std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
  } else {
    std::ifstream f(path);
    if (!f) fail_schema("IoError", "cannot read " + path);
    buf << f.rdbuf();
  }
  return buf.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f || !(f << text)) fail_schema("IoError", "cannot write " + path);
}

Json read_document(const CommandRequest& r, std::istream& in) {
  Json doc = parse_json(read_input(r.input, in));
  require_schema(doc);
  return doc;
}

Tolerances tolerances(const CommandRequest& r) {
  Tolerances tol;
  tol.projective = r.tol;
  tol.determinant = r.tol;
  return tol;
}

WeightedDiagonals weighted_from(const Json& doc, int vertex_count) {
  WeightedDiagonals w;
  w.set = doc.contains("diagonals") ? diagonals_from_json(doc.at("diagonals"), vertex_count)
                                    : DiagonalSet(vertex_count, {});
  if (doc.contains("weights")) {
    w.weights = weights_from_json(doc.at("weights"));
  } else {
    w.weights.assign(w.set.size(), 0.0);
  }
  w.validate();
  return w;
}

// Tip documents may be graft results, whose triangulation is then reused.
DiagonalSet triangulation_from(const Json& doc, int vertex_count) {
  if (!doc.contains("diagonals") && doc.contains("triangulation")) {
    return diagonals_from_json(doc.at("triangulation"), vertex_count);
  }
  if (!doc.contains("diagonals")) {
    return complete_to_triangulation(DiagonalSet(vertex_count, {}));
  }
  return diagonals_from_json(doc.at("diagonals"), vertex_count);
}

Json cmd_polygon(const CommandRequest& r, const Json& doc) {
  const Tolerances tol = tolerances(r);
  check_keys(doc, {}, {"d", "vertices", "coords"}, "polygon");
  IdealPolygon polygon = [&] {
    if (doc.contains("coords")) {
      if (doc.contains("vertices")) fail_schema("SchemaViolation", "polygon: give vertices or coords, not both");
      return coords_to_polygon({weights_from_json(doc.at("coords"))}, tol);
    }
    return normalize_polygon(polygon_from_json(doc, tol), tol).first;
  }();
  Json out = to_json(polygon);
  out["coords"] = polygon_to_coords(polygon, tol).values;
  return out;
}

Json cmd_graft(const CommandRequest& r, const Json& doc) {
  check_keys(doc, {"vertices"}, {"d", "diagonals", "weights"}, "graft");
  const Tolerances tol = tolerances(r);
  const IdealPolygon polygon = polygon_from_json(doc, tol);
  GraftOptions options;
  options.root = r.root;
  options.traversal = r.traversal;
  options.tol = tol;
  return to_json(graft_forward(polygon, weighted_from(doc, polygon.size()), options));
}

Json cmd_ungraft(const CommandRequest& r, const Json& doc) {
  check_keys(doc, {"tips"}, {"d", "diagonals", "triangulation", "weights", "triangle_maps", "triangles"}, "ungraft");
  const Tolerances tol = tolerances(r);
  const TipConfiguration tips = tips_from_json(doc, tol);
  return to_json(graft_invert(tips, triangulation_from(doc, tips.size()), tol));
}

Json cmd_fiber(const CommandRequest& r, const Json& doc) {
  check_keys(doc, {"tips"}, {"d", "diagonals", "triangulation", "weights", "triangle_maps", "triangles"}, "fiber");
  const Tolerances tol = tolerances(r);
  const TipConfiguration tips = tips_from_json(doc, tol);
  const auto elements = fiber_enumerate(tips, triangulation_from(doc, tips.size()), r.nmax, tol);
  Json list = Json::array();
  for (const FiberElement& e : elements) {
    Json item = to_json(e.polygon);
    item["diagonals"] = to_json(e.diagonals);
    item["weights"] = e.weights();
    item["turns"] = e.turns;
    list.push_back(item);
  }
  return Json{{"d", tips.degree()}, {"elements", list}};
}

Json cmd_crown_coords(const Json& doc) {
  if (doc.contains("shape")) {
    Json body = doc;
    body.erase("schema");
    const LaminationCoords c = coords_from_json(body);
    return to_json(coords_to_lamination(c.shape, c.weights, c.chart));
  }
  Json body = doc;
  body.erase("schema");
  const CrownLamination lamination = lamination_from_json(body);
  lamination.validate();
  const LaminationCoords coords = lamination_to_coords(lamination);
  Json out = to_json(coords);
  out["dual_graph"] = to_json(to_dual_graph(lamination));
  out["free_parameters"] = free_parameter_count(coords.shape);
  if (coords.chart.l > 0) {
    const ChartSplit split = chart_split(coords.chart);
    out["split"] = {{"t", split.t}, {"s", split.s}};
    out["wedge"] = wedge_index(coords.chart);
  }
  return out;
}

Json cmd_match(const Json& doc) {
  check_keys(doc, {"top", "bottom"}, {}, "match");
  return to_json(minimal_match(row_from_json(doc.at("top")), row_from_json(doc.at("bottom"))));
}

Json cmd_glue(const CommandRequest& r, const Json& doc) {
  Json body = doc;
  body.erase("schema");
  GluingScene scene = scene_from_json(body);
  if (r.clear_basepoint) scene = clear_basepoint(scene);
  return to_json(glue_crown_to_surface(scene));
}

Json cmd_tips(const CommandRequest& r) {
  const Json coeffs = parse_json(r.coeffs);
  const PolynomialQD q = polynomial_from_json(Json{{"d", r.degree}, {"coeffs", coeffs}});
  TipParams params;
  params.radius = r.radius;
  params.tol = r.tol;
  const TipsResult tips = compute_tips(q, params);
  if (!r.trace.empty()) {
    std::ostringstream csv;
    csv.precision(17);
    csv << "k,re_z,im_z,re_u,im_u,re_du,im_du\n";
    for (int k = 0; k < q.degree() + 2; ++k) {
      const SolutionSample s = subdominant_solution(q, k, tips.radius, 0.0);
      for (std::size_t i = 0; i < s.z.size(); ++i) {
        csv << k << ',' << s.z[i].real() << ',' << s.z[i].imag() << ',' << s.state[i][0].real() << ','
            << s.state[i][0].imag() << ',' << s.state[i][1].real() << ',' << s.state[i][1].imag() << '\n';
      }
    }
    std::ostringstream ignored;
    write_output(r.trace, csv.str(), ignored);
  }
  return to_json(tips, q.degree());
}

std::string cmd_render(const CommandRequest& r, const Json& doc) {
  const FigureSpec spec = parse_layers(r.layers);
  const Tolerances tol = tolerances(r);
  if (doc.contains("top") && doc.contains("bottom")) {
    const ArcRow top = row_from_json(doc.at("top"));
    const ArcRow bottom = row_from_json(doc.at("bottom"));
    return render_matching_svg(top, bottom, minimal_match(top, bottom), spec);
  }
  if (doc.contains("arcs") && doc.contains("m")) {
    Json body = doc;
    body.erase("schema");
    return render_crown_svg(lamination_from_json(body), spec);
  }
  if (doc.contains("vertices")) {
    const IdealPolygon polygon = polygon_from_json(doc, tol);
    std::vector<SpherePoint> tips;
    if (doc.contains("tips")) tips = tips_from_json(doc, tol).tips();
    return render_polygon_svg(polygon, weighted_from(doc, polygon.size()), tips, spec);
  }
  if (doc.contains("tips")) {
    std::vector<SpherePoint> tips;
    for (const Json& p : doc.at("tips")) tips.push_back(point_from_json(p));
    std::vector<double> errors;
    if (doc.contains("errors")) {
      for (const Json& e : doc.at("errors")) {
        if (!e.is_object() || !e.contains("error") || !e.at("error").is_number()) {
          fail_schema("SchemaViolation", "errors: each entry needs a numeric \"error\"");
        }
        errors.push_back(e.at("error").get<double>());
      }
    }
    return render_tips_svg(tips, errors, spec);
  }
  fail_schema("SchemaViolation", "render: unrecognised document");
}

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Schema:
      return "schema";
    case ErrorKind::Domain:
      return "domain";
    case ErrorKind::Numerical:
      return "numerical";
  }
  return "internal";
}

int report(std::ostream& err, const std::string& kind, const std::string& code, const std::string& message,
           int status) {
  err << Json{{"error", {{"kind", kind}, {"code", code}, {"message", message}}}}.dump() << "\n";
  return status;
}

}  // namespace

std::optional<CommandRequest> parse_command(const std::vector<std::string>& args, const char* default_tol,
                                            std::ostream& out) {
  CommandRequest r;
  if (default_tol != nullptr && *default_tol != '\0') {
    char* end = nullptr;
    r.tol = std::strtod(default_tol, &end);
    if (end == default_tol || *end != '\0' || !(r.tol > 0.0) || !std::isfinite(r.tol)) {
      fail_schema("UsageError", std::string("CROWNGRAFT_TOL is not a positive number: ") + default_tol);
    }
  }
  CLI::App app{"Grafting of ideal polygons, crown laminations and polynomial Schwarzian tips", "crowngraft"};
  app.require_subcommand(1, 1);
  std::string traversal = "bfs";
  int root = -1;
  for (const auto& [name, about] : kSubcommands) {
    CLI::App* sub = app.add_subcommand(name, about);
    if (name != "tips") {
      sub->add_option("-i,--input", r.input, "input JSON path, - for stdin");
    }
    sub->add_option("-o,--output", r.output, "output path, - for stdout");
    sub->add_option("--tol", r.tol, "tolerance")->check(CLI::PositiveNumber);
    if (name == "graft") {
      sub->add_option("--root", root, "root triangle index")->check(CLI::NonNegativeNumber);
      sub->add_option("--traversal", traversal, "bfs or dfs")->check(CLI::IsMember({"bfs", "dfs"}));
    }
    if (name == "fiber") {
      sub->add_option("--nmax", r.nmax, "largest turn count per diagonal")->check(CLI::NonNegativeNumber);
    }
    if (name == "glue") {
      sub->add_flag("--clear-basepoint", r.clear_basepoint, "move endpoints off the basepoint first");
    }
    if (name == "tips") {
      sub->add_option("--degree", r.degree, "degree d of q")->required();
      sub->add_option("--coeffs", r.coeffs, "JSON array a_0..a_{d-2}");
      sub->add_option("--radius", r.radius, "seed radius")->check(CLI::PositiveNumber);
      sub->add_option("--trace", r.trace, "CSV path for the recessive solutions");
    }
    if (name == "render") {
      sub->add_option("--layers", r.layers, "disk,vertices,diagonals,tips,dual_graph or all");
    }
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    fail_schema("UsageError", e.what());
  }
  r.subcommand = app.get_subcommands().front()->get_name();
  if (root >= 0) r.root = root;
  r.traversal = traversal == "dfs" ? Traversal::DepthFirst : Traversal::BreadthFirst;
  return r;
}

void execute(const CommandRequest& r, std::istream& in, std::ostream& out) {
  if (r.subcommand == "tips") {
    write_output(r.output, dump_canonical(tagged(cmd_tips(r))), out);
    return;
  }
  const Json doc = read_document(r, in);
  if (r.subcommand == "render") {
    write_output(r.output, cmd_render(r, doc), out);
    return;
  }
  Json result;
  if (r.subcommand == "polygon") result = cmd_polygon(r, doc);
  else if (r.subcommand == "graft") result = cmd_graft(r, doc);
  else if (r.subcommand == "ungraft") result = cmd_ungraft(r, doc);
  else if (r.subcommand == "fiber") result = cmd_fiber(r, doc);
  else if (r.subcommand == "crown-coords") result = cmd_crown_coords(doc);
  else if (r.subcommand == "match") result = cmd_match(doc);
  else if (r.subcommand == "glue") result = cmd_glue(r, doc);
  else fail_schema("UsageError", "unknown subcommand " + r.subcommand);
  write_output(r.output, dump_canonical(tagged(result)), out);
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
        const char* default_tol) {
  try {
    const auto request = parse_command(args, default_tol, out);
    if (!request) return kExitOk;
    execute(*request, in, out);
    return kExitOk;
  } catch (const Error& e) {
    const int status = e.kind() == ErrorKind::Schema   ? kExitSchema
                       : e.kind() == ErrorKind::Domain ? kExitDomain
                                                       : kExitNumerical;
    return report(err, kind_name(e.kind()), e.code(), e.what(), status);
  } catch (const Json::exception& e) {
    return report(err, "schema", "SchemaViolation", e.what(), kExitSchema);
  } catch (const std::exception& e) {
    return report(err, "internal", "InternalError", e.what(), kExitInternal);
  }
}

}  // namespace crowngraft
