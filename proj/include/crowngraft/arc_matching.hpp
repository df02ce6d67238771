#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace crowngraft {

using Rational = boost::rational<std::int64_t>;

// Parses "p/q", "p" or an integer string. Throws Error(InvalidRational).
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& r);

struct ArcPiece {
  int origin = 0;  // caller's label
  Rational weight;
};

// Weighted arcs left to right along one side of a rectangle.
using ArcRow = std::vector<ArcPiece>;

struct StrandEnd {
  int piece = 0;  // index into the row
  int split = 0;  // ordinal among the strands leaving that piece
  friend bool operator==(const StrandEnd&, const StrandEnd&) = default;
};

struct Strand {
  StrandEnd top;
  StrandEnd bottom;
  Rational weight;
  friend bool operator==(const Strand&, const Strand&) = default;
};

struct Matching {
  std::vector<Strand> strands;
  friend bool operator==(const Matching&, const Matching&) = default;
};

// Greedy two-pointer: join the leftmost unmatched weight on each side, split
// the heavier one. Throws Error(UnbalancedRows) when the totals differ and
// Error(InvalidWeights) for a non-positive weight.
Matching minimal_match(const ArcRow& top, const ArcRow& bottom);

// Every non-crossing, weight-conserving matching with strand weights on the
// grid step*Z that has no two consecutive strands joining the same pair of
// pieces. Intended for small rows only.
std::vector<Matching> brute_force_match(const ArcRow& top, const ArcRow& bottom, const Rational& step);

// Empty when m is a minimal matching of the rows, else the first violated
// property.
std::string check_matching(const ArcRow& top, const ArcRow& bottom, const Matching& m);

// Endpoint of a crown arc on the boundary geodesic.
struct CrownEnd {
  int id = 0;
  int cusp = 1;
  std::int64_t twist = 0;
  Rational weight;
  Rational position;
};

// Surface arc with both endpoints on the boundary geodesic.
struct SurfaceArc {
  int id = 0;
  Rational weight;
  Rational end_i;
  Rational end_j;
};

// Positions live on a circle of the given circumference and are ordered
// starting just after the basepoint.
struct GluingScene {
  std::vector<CrownEnd> crown;
  std::vector<SurfaceArc> surface;
  Rational basepoint;
  Rational circumference{1};
};

struct HalfArc {
  int surface = 0;  // index into scene.surface
  bool at_i = true;
};

struct CombinedArc {
  int surface_id = 0;
  int crown_i = 0;  // crown end ids at the two ends
  int crown_j = 0;
  int cusp_i = 1;
  std::int64_t twist_i = 0;
  int cusp_j = 1;
  std::int64_t twist_j = 0;
  Rational weight;
};

struct GluingResult {
  std::vector<int> crown_order;     // crown indices after the basepoint
  std::vector<HalfArc> half_order;  // half-arc endpoints after the basepoint
  Matching stage1;                  // crown row against half-arc row
  std::vector<Matching> stage2;     // per surface arc: G'_i against reversed G'_j
  std::vector<CombinedArc> arcs;
};

// Throws Error(InvalidScene), Error(BasepointCollision) or
// Error(UnbalancedRows) when twice the surface weight differs from the crown
// weight.
GluingResult glue_crown_to_surface(const GluingScene& scene);

// Moves any endpoint sitting on the basepoint forward by half the gap to the
// next endpoint, so that glue_crown_to_surface accepts the scene.
GluingScene clear_basepoint(const GluingScene& scene);

}  // namespace crowngraft
