#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "crowngraft/ideal_polygon.hpp"
#include "crowngraft/moebius.hpp"

namespace crowngraft {

// Ordered crown tips c_0..c_{d+1}, read cyclically.
class TipConfiguration {
 public:
  // Throws Error(InvalidTipConfiguration) when fewer than four tips are
  // given, two cyclically adjacent tips coincide, or fewer than three
  // distinct points occur.
  explicit TipConfiguration(std::vector<SpherePoint> tips, const Tolerances& tol = kDefaultTolerances);

  int degree() const { return static_cast<int>(tips_.size()) - 2; }
  int size() const { return static_cast<int>(tips_.size()); }
  const std::vector<SpherePoint>& tips() const { return tips_; }
  const SpherePoint& operator[](int k) const { return tips_[static_cast<std::size_t>(k)]; }

 private:
  std::vector<SpherePoint> tips_;
};

enum class Traversal { BreadthFirst, DepthFirst };

struct GraftOptions {
  // Triangle index in the dual tree of the completed triangulation. Defaults
  // to the triangle containing side (a_0, a_1).
  std::optional<int> root;
  Traversal traversal = Traversal::BreadthFirst;
  Tolerances tol = kDefaultTolerances;
};

struct GraftResult {
  TipConfiguration tips;
  DiagonalSet triangulation;         // input diagonals plus zero-weight fill
  std::vector<double> weights;       // aligned with triangulation.diagonals()
  std::vector<Triangle> triangles;   // dual tree nodes
  std::vector<MoebiusMap> triangle_maps;
};

// Bends P along every weighted diagonal. Each crossing from a triangle to a
// neighbour over diagonal (p, q) post-composes the parent map with an
// elliptic rotation about (a_p, a_q) by the diagonal's weight.
// Throws Error(SchemaMismatch) when the diagonal set was built for a
// different vertex count.
GraftResult graft_forward(const IdealPolygon& polygon, const WeightedDiagonals& lamination,
                          const GraftOptions& options = {});

struct InverseGraft {
  IdealPolygon polygon;        // normalised
  DiagonalSet diagonals;
  std::vector<double> weights;  // in [0, 2*pi), aligned with diagonals
};

// Recovers the unique polygon and weights grafting to C along the
// triangulation D. Throws Error(DegenerateQuadrilateral) when a quadrilateral
// cross-ratio is 0 or infinite and Error(NotATriangulation).
InverseGraft graft_invert(const TipConfiguration& tips, const DiagonalSet& triangulation,
                          const Tolerances& tol = kDefaultTolerances);

struct FiberElement {
  DiagonalSet diagonals;
  std::vector<double> base_weights;
  std::vector<int> turns;  // n_i
  IdealPolygon polygon;

  std::vector<double> weights() const;
  WeightedDiagonals lamination() const { return {diagonals, weights()}; }
};

// All lifts w_i + 2*pi*n_i with 0 <= n_i <= nmax, lexicographic in n.
// Throws Error(InvalidArgument) for negative nmax or more than 10^6 elements.
std::vector<FiberElement> fiber_enumerate(const TipConfiguration& tips, const DiagonalSet& triangulation, int nmax,
                                          const Tolerances& tol = kDefaultTolerances);

// Sends the first three pairwise distinct tips (scanning c_0, c_1, ...) to
// 0, inf, 1.
std::pair<TipConfiguration, MoebiusMap> normalize_tips(const TipConfiguration& tips,
                                                       const Tolerances& tol = kDefaultTolerances);

// Largest chordal distance between corresponding tips after normalising both.
double tip_distance(const TipConfiguration& a, const TipConfiguration& b, const Tolerances& tol = kDefaultTolerances);

}  // namespace crowngraft
