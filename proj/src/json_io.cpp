#include "crowngraft/json_io.hpp"

#include <algorithm>
#include <cmath>

#include "crowngraft/error.hpp"

namespace crowngraft {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  fail_schema("SchemaViolation", where + ": " + what);
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) bad(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) bad(where, "expected a finite number");
  return v;
}

std::int64_t integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<std::int64_t>();
}

int small_int(const Json& j, const std::string& where) {
  const std::int64_t v = integer(j, where);
  if (v < -1000000 || v > 1000000) bad(where, "integer out of range");
  return static_cast<int>(v);
}

const Json& array(const Json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array");
  return j;
}

std::vector<SpherePoint> points(const Json& j, const std::string& where) {
  std::vector<SpherePoint> out;
  for (const Json& p : array(j, where)) out.push_back(point_from_json(p));
  return out;
}

Json points_json(const std::vector<SpherePoint>& pts) {
  Json out = Json::array();
  for (const SpherePoint& p : pts) out.push_back(to_json(p));
  return out;
}

void check_degree(const Json& j, std::size_t count, const std::string& where) {
  if (j.contains("d") && integer(j.at("d"), where + ".d") + 2 != static_cast<std::int64_t>(count)) {
    bad(where, "d does not match the number of points");
  }
}

Json complex_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail_schema("InvalidJson", e.what());
  }
}

std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

void require_schema(const Json& doc) {
  if (!doc.is_object() || !doc.contains("schema") || doc.at("schema") != kSchemaTag) {
    fail_schema("SchemaVersion", std::string("document must carry \"schema\": \"") + kSchemaTag + "\"");
  }
}

Json tagged(Json doc) {
  doc["schema"] = kSchemaTag;
  return doc;
}

void check_keys(const Json& j, std::initializer_list<const char*> required,
                std::initializer_list<const char*> optional, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  for (const char* key : required) {
    if (!j.contains(key)) bad(where, std::string("missing key \"") + key + "\"");
  }
  for (const auto& [key, value] : j.items()) {
    const auto same = [&](const char* k) { return key == k; };
    if (key != "schema" && std::none_of(required.begin(), required.end(), same) &&
        std::none_of(optional.begin(), optional.end(), same)) {
      bad(where, "unknown key \"" + key + "\"");
    }
  }
}

Json to_json(const SpherePoint& p) {
  // Canonical representatives have max(|z1|, |z2|) = 1.
  if (std::abs(p.z2()) < 1e-15) {
    return "inf";
  }
  return complex_json(p.value());
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) {
    return {number(j, "complex"), 0.0};
  }
  check_keys(j, {"re", "im"}, {}, "complex");
  return {number(j.at("re"), "complex.re"), number(j.at("im"), "complex.im")};
}

SpherePoint point_from_json(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != "inf") bad("point", "the only string point is \"inf\"");
    return SpherePoint::infinity();
  }
  return SpherePoint(complex_from_json(j));
}

Json to_json(const MoebiusMap& m) {
  return Json::array({Json::array({complex_json(m.a()), complex_json(m.b())}),
                      Json::array({complex_json(m.c()), complex_json(m.d())})});
}

MoebiusMap moebius_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 || !j[1].is_array() ||
      j[1].size() != 2) {
    bad("moebius", "expected [[a, b], [c, d]]");
  }
  return {complex_from_json(j[0][0]), complex_from_json(j[0][1]), complex_from_json(j[1][0]),
          complex_from_json(j[1][1])};
}

Json to_json(const IdealPolygon& p) { return Json{{"d", p.degree()}, {"vertices", points_json(p.vertices())}}; }

IdealPolygon polygon_from_json(const Json& j, const Tolerances& tol) {
  if (!j.is_object() || !j.contains("vertices")) bad("polygon", "missing key \"vertices\"");
  std::vector<SpherePoint> v = points(j.at("vertices"), "polygon.vertices");
  check_degree(j, v.size(), "polygon");
  return IdealPolygon(std::move(v), tol);
}

Json to_json(const DiagonalSet& d) {
  Json out = Json::array();
  for (const Diagonal& e : d.diagonals()) out.push_back(Json::array({e.i, e.j}));
  return out;
}

DiagonalSet diagonals_from_json(const Json& j, int vertex_count) {
  std::vector<Diagonal> out;
  for (const Json& e : array(j, "diagonals")) {
    if (!e.is_array() || e.size() != 2) bad("diagonals", "each diagonal is [i, j]");
    out.push_back({small_int(e[0], "diagonal"), small_int(e[1], "diagonal")});
  }
  return DiagonalSet(vertex_count, std::move(out));
}

std::vector<double> weights_from_json(const Json& j) {
  std::vector<double> out;
  for (const Json& w : array(j, "weights")) out.push_back(number(w, "weights"));
  return out;
}

Json to_json(const TipConfiguration& t) { return Json{{"d", t.degree()}, {"tips", points_json(t.tips())}}; }

TipConfiguration tips_from_json(const Json& j, const Tolerances& tol) {
  if (!j.is_object() || !j.contains("tips")) bad("tips", "missing key \"tips\"");
  std::vector<SpherePoint> t = points(j.at("tips"), "tips.tips");
  check_degree(j, t.size(), "tips");
  return TipConfiguration(std::move(t), tol);
}

Json to_json(const GraftResult& r) {
  Json out = to_json(r.tips);
  out["triangulation"] = to_json(r.triangulation);
  out["weights"] = r.weights;
  Json maps = Json::array();
  for (const MoebiusMap& m : r.triangle_maps) maps.push_back(to_json(m));
  out["triangle_maps"] = maps;
  Json tris = Json::array();
  for (const Triangle& t : r.triangles) tris.push_back(Json::array({t.v[0], t.v[1], t.v[2]}));
  out["triangles"] = tris;
  return out;
}

Json to_json(const InverseGraft& g) {
  Json out = to_json(g.polygon);
  out["diagonals"] = to_json(g.diagonals);
  out["weights"] = g.weights;
  return out;
}

Json to_json(const CrownLamination& l) {
  Json arcs = Json::array();
  for (const CrownArc& a : l.arcs) {
    if (const auto* b = std::get_if<CuspToBoundary>(&a.kind)) {
      arcs.push_back({{"type", "cusp_to_boundary"},
                      {"cusp", b->cusp},
                      {"twist", b->twist},
                      {"offset", b->offset},
                      {"weight", a.weight}});
    } else {
      const auto& c = std::get<CuspToCusp>(a.kind);
      arcs.push_back({{"type", "cusp_to_cusp"}, {"i", c.i}, {"j", c.j}, {"weight", a.weight}});
    }
  }
  return Json{{"m", l.m}, {"arcs", arcs}, {"boundary_leaf_weight", l.boundary_leaf_weight}};
}

CrownLamination lamination_from_json(const Json& j) {
  check_keys(j, {"m", "arcs"}, {"boundary_leaf_weight"}, "lamination");
  CrownLamination out;
  out.m = small_int(j.at("m"), "lamination.m");
  if (j.contains("boundary_leaf_weight")) {
    out.boundary_leaf_weight = number(j.at("boundary_leaf_weight"), "lamination.boundary_leaf_weight");
  }
  for (const Json& a : array(j.at("arcs"), "lamination.arcs")) {
    if (!a.is_object() || !a.contains("type") || !a.at("type").is_string()) bad("arc", "missing string \"type\"");
    const std::string type = a.at("type").get<std::string>();
    CrownArc arc;
    if (type == "cusp_to_boundary") {
      check_keys(a, {"type", "cusp", "weight"}, {"twist", "offset"}, "arc");
      CuspToBoundary b;
      b.cusp = small_int(a.at("cusp"), "arc.cusp");
      if (a.contains("twist")) b.twist = integer(a.at("twist"), "arc.twist");
      if (a.contains("offset")) b.offset = number(a.at("offset"), "arc.offset");
      arc.kind = b;
    } else if (type == "cusp_to_cusp") {
      check_keys(a, {"type", "i", "j", "weight"}, {}, "arc");
      arc.kind = CuspToCusp{small_int(a.at("i"), "arc.i"), small_int(a.at("j"), "arc.j")};
    } else {
      bad("arc", "unknown type \"" + type + "\"");
    }
    arc.weight = number(a.at("weight"), "arc.weight");
    out.arcs.push_back(arc);
  }
  return out;
}

Json to_json(const DualMetricGraph& g) {
  Json vertices = Json::array();
  for (const auto& v : g.vertices) {
    const char* kind = v.kind == DualMetricGraph::VertexKind::Outer   ? "outer"
                       : v.kind == DualMetricGraph::VertexKind::Inner ? "inner"
                                                                      : "leaf";
    vertices.push_back({{"kind", kind}, {"arc", v.arc}});
  }
  Json edges = Json::array();
  for (const auto& e : g.edges) edges.push_back({{"a", e.a}, {"b", e.b}, {"length", e.length}, {"arc", e.arc}});
  Json infinite = Json::array();
  for (const auto& e : g.infinite_edges) infinite.push_back({{"vertex", e.vertex}, {"side", e.side}});
  return Json{{"vertices", vertices},
              {"edges", edges},
              {"infinite_edges", infinite},
              {"cycle", g.cycle},
              {"cycle_length", g.cycle_length}};
}

Json to_json(const LaminationCoords& c) {
  Json pairs = Json::array();
  for (const CuspToCusp& p : c.shape.cusp_pairs) pairs.push_back(Json::array({p.i, p.j}));
  return Json{{"shape", {{"m", c.shape.m}, {"boundary_cusps", c.shape.boundary_cusps}, {"cusp_pairs", pairs}}},
              {"weights", c.weights},
              {"l", c.chart.l},
              {"tau", c.chart.tau}};
}

LaminationCoords coords_from_json(const Json& j) {
  check_keys(j, {"shape", "weights", "l"}, {"tau"}, "coords");
  const Json& s = j.at("shape");
  check_keys(s, {"m"}, {"boundary_cusps", "cusp_pairs"}, "coords.shape");
  LaminationCoords out;
  out.shape.m = small_int(s.at("m"), "shape.m");
  if (s.contains("boundary_cusps")) {
    for (const Json& c : array(s.at("boundary_cusps"), "shape.boundary_cusps")) {
      out.shape.boundary_cusps.push_back(small_int(c, "shape.boundary_cusps"));
    }
  }
  if (s.contains("cusp_pairs")) {
    for (const Json& p : array(s.at("cusp_pairs"), "shape.cusp_pairs")) {
      if (!p.is_array() || p.size() != 2) bad("shape.cusp_pairs", "each pair is [i, j]");
      out.shape.cusp_pairs.push_back({small_int(p[0], "cusp pair"), small_int(p[1], "cusp pair")});
    }
  }
  out.weights = weights_from_json(j.at("weights"));
  out.chart.l = number(j.at("l"), "coords.l");
  if (j.contains("tau")) out.chart.tau = number(j.at("tau"), "coords.tau");
  return out;
}

Json to_json(const Rational& r) { return format_rational(r); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) {
    return Rational(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      bad("rational", e.what());
    }
  }
  bad("rational", "expected an integer or a \"p/q\" string; floats are not accepted");
}

ArcRow row_from_json(const Json& j) {
  ArcRow out;
  int origin = 0;
  for (const Json& w : array(j, "row")) out.push_back({origin++, rational_from_json(w)});
  return out;
}

Json to_json(const Matching& m) {
  Json strands = Json::array();
  for (const Strand& s : m.strands) {
    strands.push_back({{"top", Json::array({s.top.piece, s.top.split})},
                       {"bottom", Json::array({s.bottom.piece, s.bottom.split})},
                       {"weight", to_json(s.weight)}});
  }
  return Json{{"strands", strands}};
}

Matching matching_from_json(const Json& j) {
  check_keys(j, {"strands"}, {}, "matching");
  Matching out;
  for (const Json& s : array(j.at("strands"), "matching.strands")) {
    check_keys(s, {"top", "bottom", "weight"}, {}, "strand");
    auto end = [](const Json& e) {
      if (!e.is_array() || e.size() != 2) bad("strand", "each end is [piece, split]");
      return StrandEnd{small_int(e[0], "strand"), small_int(e[1], "strand")};
    };
    out.strands.push_back({end(s.at("top")), end(s.at("bottom")), rational_from_json(s.at("weight"))});
  }
  return out;
}

Json to_json(const GluingScene& s) {
  Json crown = Json::array();
  for (const CrownEnd& c : s.crown) {
    crown.push_back({{"id", c.id},
                     {"cusp", c.cusp},
                     {"twist", c.twist},
                     {"weight", to_json(c.weight)},
                     {"position", to_json(c.position)}});
  }
  Json surface = Json::array();
  for (const SurfaceArc& a : s.surface) {
    surface.push_back(
        {{"id", a.id}, {"weight", to_json(a.weight)}, {"end_i", to_json(a.end_i)}, {"end_j", to_json(a.end_j)}});
  }
  return Json{{"circumference", to_json(s.circumference)},
              {"basepoint", to_json(s.basepoint)},
              {"crown", crown},
              {"surface", surface}};
}

GluingScene scene_from_json(const Json& j) {
  check_keys(j, {"crown", "surface"}, {"circumference", "basepoint"}, "scene");
  GluingScene out;
  if (j.contains("circumference")) out.circumference = rational_from_json(j.at("circumference"));
  if (j.contains("basepoint")) out.basepoint = rational_from_json(j.at("basepoint"));
  for (const Json& c : array(j.at("crown"), "scene.crown")) {
    check_keys(c, {"id", "cusp", "weight", "position"}, {"twist"}, "crown end");
    CrownEnd e;
    e.id = small_int(c.at("id"), "crown.id");
    e.cusp = small_int(c.at("cusp"), "crown.cusp");
    if (c.contains("twist")) e.twist = integer(c.at("twist"), "crown.twist");
    e.weight = rational_from_json(c.at("weight"));
    e.position = rational_from_json(c.at("position"));
    out.crown.push_back(e);
  }
  for (const Json& s : array(j.at("surface"), "scene.surface")) {
    check_keys(s, {"id", "weight", "end_i", "end_j"}, {}, "surface arc");
    out.surface.push_back({small_int(s.at("id"), "surface.id"), rational_from_json(s.at("weight")),
                           rational_from_json(s.at("end_i")), rational_from_json(s.at("end_j"))});
  }
  return out;
}

Json to_json(const GluingResult& r) {
  Json stage2 = Json::array();
  for (const Matching& m : r.stage2) stage2.push_back(to_json(m));
  Json half = Json::array();
  for (const HalfArc& h : r.half_order) half.push_back({{"surface", h.surface}, {"end", h.at_i ? "i" : "j"}});
  Json arcs = Json::array();
  for (const CombinedArc& a : r.arcs) {
    arcs.push_back({{"surface_id", a.surface_id},
                    {"crown_i", a.crown_i},
                    {"crown_j", a.crown_j},
                    {"cusp_i", a.cusp_i},
                    {"twist_i", a.twist_i},
                    {"cusp_j", a.cusp_j},
                    {"twist_j", a.twist_j},
                    {"weight", to_json(a.weight)}});
  }
  return Json{{"crown_order", r.crown_order},
              {"half_order", half},
              {"stage1", to_json(r.stage1)},
              {"stage2", stage2},
              {"arcs", arcs}};
}

PolynomialQD polynomial_from_json(const Json& j) {
  check_keys(j, {"d"}, {"coeffs"}, "polynomial");
  std::vector<Complex> coeffs;
  if (j.contains("coeffs")) {
    for (const Json& c : array(j.at("coeffs"), "polynomial.coeffs")) coeffs.push_back(complex_from_json(c));
  }
  return PolynomialQD(small_int(j.at("d"), "polynomial.d"), std::move(coeffs));
}

Json to_json(const TipsResult& r, int degree) {
  Json errors = Json::array();
  for (const TipEstimate& e : r.estimates) {
    errors.push_back({{"k", e.k},
                      {"error", e.error},
                      {"cauchy", e.cauchy},
                      {"route_gap", e.route_gap},
                      {"seed_shift", e.seed_shift}});
  }
  return Json{{"d", degree}, {"tips", points_json(r.values)}, {"radius", r.radius}, {"errors", errors}};
}

}  // namespace crowngraft
