#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

namespace crowngraft {

// Crown with m boundary cusps numbered 1..m. Side k runs from cusp k to cusp
// k+1 (side m closes up at cusp 1); the closed boundary geodesic lies on the
// other side of the crown.

struct CuspToBoundary {
  int cusp = 1;
  std::int64_t twist = 0;  // may be negative
  double offset = 0.0;     // position on the boundary, basepoint at 0
};

// Arc from cusp i to cusp j cutting off cusps i+1, ..., j-1 (cyclically),
// i.e. enclosing sides i, ..., j-1 away from the boundary.
struct CuspToCusp {
  int i = 1;
  int j = 3;
};

struct CrownArc {
  std::variant<CuspToBoundary, CuspToCusp> kind;
  double weight = 1.0;

  bool touches_boundary() const { return std::holds_alternative<CuspToBoundary>(kind); }
};

struct CrownLamination {
  int m = 1;
  std::vector<CrownArc> arcs;
  double boundary_leaf_weight = 0.0;

  // Throws Error(InvalidLamination) for bad indices, weights or a leaf
  // weight alongside boundary arcs, and Error(NotRealizable) when arcs
  // cross, repeat, or a boundary arc starts at a cut-off cusp.
  void validate() const;
};

// Sides enclosed by a cusp-to-cusp arc, in cyclic order from side i.
std::vector<int> enclosed_sides(int m, const CuspToCusp& arc);

// Sum of boundary arc weights, or minus the leaf weight when there are none.
double boundary_measure(const CrownLamination& lamination);

struct DualMetricGraph {
  enum class VertexKind { Outer, Inner, Leaf };
  struct Vertex {
    VertexKind kind = VertexKind::Outer;
    int arc = -1;  // Inner: the enclosing arc; Outer: region ordinal
  };
  struct Edge {
    int a = 0;
    int b = 0;
    double length = 0.0;
    int arc = -1;  // dual arc index, -1 for the boundary leaf
  };
  struct InfiniteEdge {
    int vertex = 0;
    int side = 1;
  };

  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<InfiniteEdge> infinite_edges;
  // Edges of the boundary cycle in order from the basepoint; empty when the
  // boundary measure is not positive.
  std::vector<int> cycle;
  double cycle_length = 0.0;

  std::vector<int> degrees() const;
};

// Throws Error(NotRealizable) through validate().
DualMetricGraph to_dual_graph(const CrownLamination& lamination);

struct TwistChart {
  double l = 0.0;
  double tau = 0.0;
};

struct ChartSplit {
  std::int64_t t = 0;
  double s = 0.0;
};

// t = floor(tau / l), s = tau - t l in [0, l). Throws
// Error(NonPositiveBoundaryMeasure) when l <= 0.
ChartSplit chart_split(const TwistChart& chart);
TwistChart chart_join(std::int64_t t, double s, double l);

// The wedge V_j containing tau; boundary points go to the lower wedge index
// consistent with chart_split.
std::int64_t wedge_index(const TwistChart& chart);

// Topological type of an arc system: cusps carrying boundary arcs (ascending)
// and cusp-to-cusp arcs.
struct CrownShape {
  int m = 1;
  std::vector<int> boundary_cusps;
  std::vector<CuspToCusp> cusp_pairs;

  std::size_t arc_count() const { return boundary_cusps.size() + cusp_pairs.size(); }
};

// Weights for the boundary arcs come first, in boundary_cusps order, then
// the cusp-to-cusp arcs. With boundary arcs present, chart.l must equal their
// total weight; without, chart.l <= 0 gives the leaf weight -l and tau is
// ignored. Throws Error(ShapeMismatch) otherwise.
CrownLamination coords_to_lamination(const CrownShape& shape, const std::vector<double>& weights,
                                     const TwistChart& chart);

struct LaminationCoords {
  CrownShape shape;
  std::vector<double> weights;
  TwistChart chart;
};

// Inverse of coords_to_lamination on its image. Throws Error(ShapeMismatch)
// when boundary arcs disagree on twist or their offsets are not laid end to
// end from the first one.
LaminationCoords lamination_to_coords(const CrownLamination& lamination);

// Finite edge weights of a cell not already fixed by l: one boundary weight
// is determined by the others when boundary arcs exist. Adding the two chart
// parameters gives the cell dimension.
int free_parameter_count(const CrownShape& shape);

}  // namespace crowngraft
