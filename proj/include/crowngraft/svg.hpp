#pragma once

#include <string>
#include <vector>

#include "crowngraft/arc_matching.hpp"
#include "crowngraft/crown_lamination.hpp"
#include "crowngraft/ideal_polygon.hpp"
#include "crowngraft/moebius.hpp"

namespace crowngraft {

// Layers to draw. Each renderer ignores layers it has no data for.
struct FigureSpec {
  bool disk = true;
  bool vertices = true;
  bool diagonals = true;  // with weight labels
  bool tips = true;       // stereographic chart, inf on the rim
  bool dual_graph = true;
  double size = 400.0;    // pixels per panel
};

// Parses a comma list such as "disk,diagonals". Throws Error(InvalidLayer).
FigureSpec parse_layers(const std::string& list);

// Disk model polygon with geodesic diagonals; tips, when given, go in a
// second panel.
std::string render_polygon_svg(const IdealPolygon& polygon, const WeightedDiagonals& diagonals,
                               const std::vector<SpherePoint>& tips, const FigureSpec& spec);

// Crown with its cusps, arcs, boundary geodesic and dual graph stubs.
std::string render_crown_svg(const CrownLamination& lamination, const FigureSpec& spec);

// Points of the sphere in the chart z, with error circles of chordal radius
// errors[k] (empty for none).
std::string render_tips_svg(const std::vector<SpherePoint>& tips, const std::vector<double>& errors,
                            const FigureSpec& spec);

// Band diagram of a matching between two rows.
std::string render_matching_svg(const ArcRow& top, const ArcRow& bottom, const Matching& matching,
                                const FigureSpec& spec);

}  // namespace crowngraft
