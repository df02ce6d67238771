#include "crowngraft/ideal_polygon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "crowngraft/error.hpp"

namespace crowngraft {

namespace {

const SpherePoint kInf = SpherePoint::infinity();
const SpherePoint kMinusOne(-1.0);
const SpherePoint kZero(0.0);

double ccw_angle_from(Complex base, Complex z) {
  double phi = std::arg(z / base);
  if (phi < 0.0) {
    phi += 2.0 * std::numbers::pi;
  }
  return phi;
}

std::string diag_str(const Diagonal& d) { return "(" + std::to_string(d.i) + ", " + std::to_string(d.j) + ")"; }

}  // namespace

IdealPolygon::IdealPolygon(std::vector<SpherePoint> vertices, const Tolerances& tol) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 4) {
    fail_domain("InvalidPolygon", "an ideal polygon needs at least 4 vertices (d >= 2)");
  }
  for (const SpherePoint& v : vertices_) {
    if (v.is_infinite(tol.projective) || std::abs(std::abs(v.value()) - 1.0) > tol.circle) {
      fail_domain("InvalidPolygon", "vertex " + v.to_string() + " is not on the unit circle");
    }
  }
  for (std::size_t a = 0; a < vertices_.size(); ++a) {
    for (std::size_t b = a + 1; b < vertices_.size(); ++b) {
      if (projectively_equal(vertices_[a], vertices_[b], tol.projective)) {
        fail_domain("InvalidPolygon", "vertices " + std::to_string(a) + " and " + std::to_string(b) + " coincide");
      }
    }
  }
  const Complex base = vertices_[0].value();
  double previous = 0.0;
  for (std::size_t k = 1; k < vertices_.size(); ++k) {
    const double phi = ccw_angle_from(base, vertices_[k].value());
    if (!(phi > previous)) {
      fail_domain("InvalidPolygon", "vertices are not in strict counterclockwise order at index " + std::to_string(k));
    }
    previous = phi;
  }
}

std::pair<IdealPolygon, MoebiusMap> normalize_polygon(const IdealPolygon& polygon, const Tolerances& tol) {
  const MoebiusMap m = map_from_triples(polygon[0], polygon[1], polygon[2], SpherePoint(-1.0), SpherePoint(1.0),
                                        SpherePoint(Complex(0.0, 1.0)), tol.projective);
  std::vector<SpherePoint> image;
  image.reserve(polygon.vertices().size());
  for (const SpherePoint& v : polygon.vertices()) {
    const Complex z = m(v).value();
    image.emplace_back(z / std::abs(z));
  }
  // Anchors are placed exactly.
  image[0] = SpherePoint(-1.0);
  image[1] = SpherePoint(1.0);
  image[2] = SpherePoint(Complex(0.0, 1.0));
  return {IdealPolygon(std::move(image), tol), m};
}

CrossRatioCoords polygon_to_coords(const IdealPolygon& polygon, const Tolerances& tol) {
  const IdealPolygon normal = normalize_polygon(polygon, tol).first;
  CrossRatioCoords coords;
  for (int j = 0; j + 3 < normal.size(); ++j) {
    coords.values.push_back(chi(normal[j], normal[j + 1], normal[j + 2], normal[j + 3], tol.projective).value().real());
  }
  return coords;
}

IdealPolygon coords_to_polygon(const CrossRatioCoords& coords, const Tolerances& tol) {
  if (coords.values.empty()) {
    fail_domain("CoordOutOfRange", "need d - 1 >= 1 coordinates");
  }
  std::vector<SpherePoint> v{SpherePoint(-1.0), SpherePoint(1.0), SpherePoint(Complex(0.0, 1.0))};
  for (std::size_t j = 0; j < coords.values.size(); ++j) {
    const double lambda = coords.values[j];
    if (!std::isfinite(lambda) || !(lambda > 0.0)) {
      fail_domain("CoordOutOfRange", "coordinate " + std::to_string(j) + " is not a positive real");
    }
    const MoebiusMap back = map_from_triples(kInf, kMinusOne, kZero, v[j], v[j + 1], v[j + 2], tol.projective);
    const Complex z = back(SpherePoint(lambda)).value();
    v.emplace_back(z / std::abs(z));
  }
  try {
    return IdealPolygon(std::move(v), tol);
  } catch (const Error& e) {
    fail_domain("CoordOutOfRange", std::string("coordinates do not define a polygon: ") + e.what());
  }
}

bool diagonals_cross(const Diagonal& a, const Diagonal& b) {
  const int a0 = std::min(a.i, a.j), a1 = std::max(a.i, a.j);
  const int b0 = std::min(b.i, b.j), b1 = std::max(b.i, b.j);
  return (a0 < b0 && b0 < a1 && a1 < b1) || (b0 < a0 && a0 < b1 && b1 < a1);
}

DiagonalSet::DiagonalSet(int vertex_count, std::vector<Diagonal> diagonals) : vertex_count_(vertex_count) {
  if (vertex_count < 4) {
    fail_domain("InvalidDiagonal", "a diagonal set needs a polygon with at least 4 vertices");
  }
  for (Diagonal& d : diagonals) {
    if (d.i > d.j) {
      std::swap(d.i, d.j);
    }
    if (d.i < 0 || d.j >= vertex_count) {
      fail_domain("InvalidDiagonal", "diagonal " + diag_str(d) + " is out of range");
    }
    if (d.j - d.i < 2 || (d.i == 0 && d.j == vertex_count - 1)) {
      fail_domain("InvalidDiagonal", diag_str(d) + " is a side or a point, not a diagonal");
    }
  }
  std::sort(diagonals.begin(), diagonals.end());
  if (std::adjacent_find(diagonals.begin(), diagonals.end()) != diagonals.end()) {
    fail_domain("InvalidDiagonal", "repeated diagonal");
  }
  for (std::size_t a = 0; a < diagonals.size(); ++a) {
    for (std::size_t b = a + 1; b < diagonals.size(); ++b) {
      if (diagonals_cross(diagonals[a], diagonals[b])) {
        fail_domain("CrossingDiagonals", diag_str(diagonals[a]) + " crosses " + diag_str(diagonals[b]));
      }
    }
  }
  diagonals_ = std::move(diagonals);
}

bool DiagonalSet::contains(Diagonal d) const {
  if (d.i > d.j) {
    std::swap(d.i, d.j);
  }
  return std::binary_search(diagonals_.begin(), diagonals_.end(), d);
}

std::size_t DiagonalSet::index_of(Diagonal d) const {
  if (d.i > d.j) {
    std::swap(d.i, d.j);
  }
  const auto it = std::lower_bound(diagonals_.begin(), diagonals_.end(), d);
  if (it == diagonals_.end() || !(*it == d)) {
    fail_domain("InvalidDiagonal", "diagonal " + diag_str(d) + " is not in the set");
  }
  return static_cast<std::size_t>(it - diagonals_.begin());
}

void WeightedDiagonals::validate() const {
  if (weights.size() != set.size()) {
    fail_domain("InvalidWeights", "expected " + std::to_string(set.size()) + " weights, got " +
                                      std::to_string(weights.size()));
  }
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      fail_domain("InvalidWeights", "diagonal weights must be finite and non-negative");
    }
  }
}

int Triangle::apex(const Diagonal& d) const {
  for (int k : v) {
    if (k != d.i && k != d.j) {
      return k;
    }
  }
  return -1;
}

int DualTree::root() const {
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    if (triangles[t].v[0] == 0 && triangles[t].v[1] == 1) {
      return static_cast<int>(t);
    }
  }
  return 0;
}

DualTree dual_tree(const DiagonalSet& t) {
  if (!t.is_triangulation()) {
    fail_domain("NotATriangulation", "expected " + std::to_string(t.vertex_count() - 3) + " diagonals, got " +
                                         std::to_string(t.size()));
  }
  const int n = t.vertex_count();
  auto is_edge = [&](int a, int b) {
    return b - a == 1 || (a == 0 && b == n - 1) || t.contains(Diagonal{a, b});
  };
  // Every vertex of a triangle is joined to the next by a side or diagonal;
  // scanning j > i and k > j by adjacency keeps this linear per vertex.
  DualTree tree;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!is_edge(i, j)) {
        continue;
      }
      for (int k = j + 1; k < n; ++k) {
        if (is_edge(j, k) && is_edge(i, k)) {
          tree.triangles.push_back(Triangle{{i, j, k}});
        }
      }
    }
  }
  tree.incident.resize(tree.triangles.size());
  for (const Diagonal& d : t.diagonals()) {
    int found[2] = {-1, -1};
    int count = 0;
    for (std::size_t k = 0; k < tree.triangles.size() && count < 2; ++k) {
      if (tree.triangles[k].has_vertex(d.i) && tree.triangles[k].has_vertex(d.j)) {
        found[count++] = static_cast<int>(k);
      }
    }
    if (count != 2) {
      fail_domain("NotATriangulation", "diagonal " + diag_str(d) + " does not separate two triangles");
    }
    tree.incident[static_cast<std::size_t>(found[0])].push_back(static_cast<int>(tree.edges.size()));
    tree.incident[static_cast<std::size_t>(found[1])].push_back(static_cast<int>(tree.edges.size()));
    tree.edges.push_back({found[0], found[1], d});
  }
  return tree;
}

DiagonalSet complete_to_triangulation(const DiagonalSet& d) {
  const int n = d.vertex_count();
  std::vector<Diagonal> chosen = d.diagonals();
  for (int i = 0; i < n && static_cast<int>(chosen.size()) < n - 3; ++i) {
    for (int j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) {
        continue;
      }
      const Diagonal cand{i, j};
      const bool blocked = std::any_of(chosen.begin(), chosen.end(), [&](const Diagonal& c) {
        return c == cand || diagonals_cross(c, cand);
      });
      if (!blocked) {
        chosen.push_back(cand);
      }
    }
  }
  return DiagonalSet(n, std::move(chosen));
}

}  // namespace crowngraft
