#pragma once

#include <initializer_list>
#include <string>

#include <json.hpp>

#include "crowngraft/arc_matching.hpp"
#include "crowngraft/crown_lamination.hpp"
#include "crowngraft/grafting.hpp"
#include "crowngraft/ideal_polygon.hpp"
#include "crowngraft/moebius.hpp"
#include "crowngraft/schwarzian_ode.hpp"

namespace crowngraft {

using Json = nlohmann::json;

inline constexpr const char* kSchemaTag = "crowngraft/v1";

// All parse errors are Error(ErrorKind::Schema). Objects with keys outside
// the documented set are rejected.

// Parses text; throws Error(InvalidJson).
Json parse_json(const std::string& text);

// Two-space indented dump with shortest round-trip floats and a trailing
// newline.
std::string dump_canonical(const Json& j);

// Top-level documents carry "schema": kSchemaTag. Throws
// Error(SchemaVersion) when it is missing or different.
void require_schema(const Json& doc);
Json tagged(Json doc);

// Throws Error(SchemaViolation) when j is not an object, misses a required
// key, or has a key in neither list.
void check_keys(const Json& j, std::initializer_list<const char*> required,
                std::initializer_list<const char*> optional, const std::string& where);

// {"re": x, "im": y} or the string "inf".
Json to_json(const SpherePoint& p);
SpherePoint point_from_json(const Json& j);
Complex complex_from_json(const Json& j);

// [[a, b], [c, d]] with complex entries.
Json to_json(const MoebiusMap& m);
MoebiusMap moebius_from_json(const Json& j);

// {"d": n, "vertices": [...]}
Json to_json(const IdealPolygon& p);
IdealPolygon polygon_from_json(const Json& j, const Tolerances& tol = kDefaultTolerances);

// [[i, j], ...]
Json to_json(const DiagonalSet& d);
DiagonalSet diagonals_from_json(const Json& j, int vertex_count);

std::vector<double> weights_from_json(const Json& j);

// {"d": n, "tips": [...]}
Json to_json(const TipConfiguration& t);
TipConfiguration tips_from_json(const Json& j, const Tolerances& tol = kDefaultTolerances);

// Tips plus "triangulation", "weights" and "triangle_maps".
Json to_json(const GraftResult& r);

// {"d", "vertices", "diagonals", "weights"}: a valid graft input.
Json to_json(const InverseGraft& g);

// {"m", "arcs": [{"type": "cusp_to_boundary" | "cusp_to_cusp", ...}],
// "boundary_leaf_weight"}
Json to_json(const CrownLamination& l);
CrownLamination lamination_from_json(const Json& j);

// {"vertices": [{"kind", "arc"}], "edges": [{"a", "b", "length", "arc"}],
// "infinite_edges": [{"vertex", "side"}], "cycle", "cycle_length"}
Json to_json(const DualMetricGraph& g);

// {"shape": {"m", "boundary_cusps", "cusp_pairs"}, "weights", "l", "tau"}
Json to_json(const LaminationCoords& c);
LaminationCoords coords_from_json(const Json& j);

// Exact rationals as "p/q" strings; integers are accepted on input, floats
// are not.
Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);

ArcRow row_from_json(const Json& j);
Json to_json(const Matching& m);
Matching matching_from_json(const Json& j);

// {"circumference", "basepoint", "crown": [...], "surface": [...]}
Json to_json(const GluingScene& s);
GluingScene scene_from_json(const Json& j);
Json to_json(const GluingResult& r);

// {"d": n, "coeffs": [a_0, ..., a_{d-2}]}
PolynomialQD polynomial_from_json(const Json& j);

// Tips plus "radius" and a per-sector "errors" report.
Json to_json(const TipsResult& r, int degree);

}  // namespace crowngraft
