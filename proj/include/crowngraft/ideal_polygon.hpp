#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "crowngraft/moebius.hpp"

namespace crowngraft {

// Marked ideal (d+2)-gon in the disk model: vertices on the unit circle in
// strictly counterclockwise order, a_0 first.
class IdealPolygon {
 public:
  // Throws Error(InvalidPolygon) unless there are at least four vertices on
  // the unit circle in strict counterclockwise cyclic order.
  explicit IdealPolygon(std::vector<SpherePoint> vertices, const Tolerances& tol = kDefaultTolerances);

  int degree() const { return static_cast<int>(vertices_.size()) - 2; }
  int size() const { return static_cast<int>(vertices_.size()); }
  const std::vector<SpherePoint>& vertices() const { return vertices_; }
  const SpherePoint& operator[](int k) const { return vertices_[static_cast<std::size_t>(k)]; }

 private:
  std::vector<SpherePoint> vertices_;
};

// Coordinate j is chi(a_j, a_{j+1}, a_{j+2}, a_{j+3}) of the normalised
// polygon, j = 0..d-2. All values are positive for a valid polygon.
struct CrossRatioCoords {
  std::vector<double> values;
};

// Moves a_0, a_1, a_2 to -1, 1, i. Returns the image and the map used.
std::pair<IdealPolygon, MoebiusMap> normalize_polygon(const IdealPolygon& polygon,
                                                      const Tolerances& tol = kDefaultTolerances);

CrossRatioCoords polygon_to_coords(const IdealPolygon& polygon, const Tolerances& tol = kDefaultTolerances);

// Inverse of polygon_to_coords. Throws Error(CoordOutOfRange) when a value is
// not a positive real or a reconstructed vertex breaks the cyclic order.
IdealPolygon coords_to_polygon(const CrossRatioCoords& coords, const Tolerances& tol = kDefaultTolerances);

struct Diagonal {
  int i = 0;
  int j = 0;
  friend bool operator==(const Diagonal&, const Diagonal&) = default;
  friend auto operator<=>(const Diagonal&, const Diagonal&) = default;
};

// Strict cyclic interleaving of endpoints. Diagonals that share an endpoint
// do not cross; no diagonal crosses itself.
bool diagonals_cross(const Diagonal& a, const Diagonal& b);

// Pairwise non-crossing diagonals of an abstract polygon with vertex_count
// vertices, stored sorted with i < j.
class DiagonalSet {
 public:
  DiagonalSet() = default;

  // Accepts endpoints in either order. Throws Error(InvalidDiagonal) for out
  // of range, adjacent or repeated pairs and Error(CrossingDiagonals) for
  // crossing ones.
  DiagonalSet(int vertex_count, std::vector<Diagonal> diagonals);

  int vertex_count() const { return vertex_count_; }
  const std::vector<Diagonal>& diagonals() const { return diagonals_; }
  std::size_t size() const { return diagonals_.size(); }
  bool is_triangulation() const { return static_cast<int>(diagonals_.size()) == vertex_count_ - 3; }

  bool contains(Diagonal d) const;
  // Position of d in diagonals(); throws Error(InvalidDiagonal) if absent.
  std::size_t index_of(Diagonal d) const;

 private:
  int vertex_count_ = 0;
  std::vector<Diagonal> diagonals_;
};

// Diagonals with finite non-negative weights aligned with set.diagonals().
// Polygon sides carry infinite weight implicitly and are not listed.
struct WeightedDiagonals {
  DiagonalSet set;
  std::vector<double> weights;

  // Throws Error(InvalidWeights) on a length mismatch or a negative or
  // non-finite weight.
  void validate() const;
  double weight_of(Diagonal d) const { return weights[set.index_of(d)]; }
};

struct Triangle {
  std::array<int, 3> v{};  // ascending vertex indices
  bool has_vertex(int k) const { return v[0] == k || v[1] == k || v[2] == k; }
  // The vertex not on diagonal d; d must be an edge of the triangle.
  int apex(const Diagonal& d) const;
};

// Triangles of a triangulation as nodes, shared diagonals as edges.
struct DualTree {
  struct Edge {
    int a = 0;  // triangle index
    int b = 0;
    Diagonal diagonal;
  };
  std::vector<Triangle> triangles;
  std::vector<Edge> edges;
  std::vector<std::vector<int>> incident;  // triangle -> edge indices

  // Index of the triangle containing the side (a_0, a_1).
  int root() const;
};

// Throws Error(NotATriangulation) unless t has exactly vertex_count - 3
// diagonals.
DualTree dual_tree(const DiagonalSet& t);

// Adds diagonals (i, j) in lexicographic order whenever they cross nothing
// already present. Any maximal non-crossing set is a triangulation.
DiagonalSet complete_to_triangulation(const DiagonalSet& d);

}  // namespace crowngraft
