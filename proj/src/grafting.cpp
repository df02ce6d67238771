#include "crowngraft/grafting.hpp"

#include <cmath>
#include <deque>
#include <numbers>
#include <string>

#include "crowngraft/error.hpp"

namespace crowngraft {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Visits dual tree edges outward from root. Calls step(parent, child, edge).
template <typename Step>
void walk(const DualTree& tree, int root, Traversal order, Step step) {
  std::vector<bool> seen(tree.triangles.size(), false);
  std::deque<int> pending{root};
  seen[static_cast<std::size_t>(root)] = true;
  while (!pending.empty()) {
    int current;
    if (order == Traversal::BreadthFirst) {
      current = pending.front();
      pending.pop_front();
    } else {
      current = pending.back();
      pending.pop_back();
    }
    for (int e : tree.incident[static_cast<std::size_t>(current)]) {
      const DualTree::Edge& edge = tree.edges[static_cast<std::size_t>(e)];
      const int other = edge.a == current ? edge.b : edge.a;
      if (seen[static_cast<std::size_t>(other)]) {
        continue;
      }
      seen[static_cast<std::size_t>(other)] = true;
      step(current, other, edge.diagonal);
      pending.push_back(other);
    }
  }
}

bool strictly_between(int lo, int x, int hi) { return lo < x && x < hi; }

}  // namespace

TipConfiguration::TipConfiguration(std::vector<SpherePoint> tips, const Tolerances& tol) : tips_(std::move(tips)) {
  const std::size_t n = tips_.size();
  if (n < 4) {
    fail_domain("InvalidTipConfiguration", "need d + 2 >= 4 tips");
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (projectively_equal(tips_[k], tips_[(k + 1) % n], tol.projective)) {
      fail_domain("InvalidTipConfiguration", "adjacent tips " + std::to_string(k) + " and " +
                                                 std::to_string((k + 1) % n) + " coincide");
    }
  }
  std::vector<SpherePoint> distinct;
  for (const SpherePoint& p : tips_) {
    bool fresh = true;
    for (const SpherePoint& q : distinct) {
      fresh = fresh && !projectively_equal(p, q, tol.projective);
    }
    if (fresh) {
      distinct.push_back(p);
    }
    if (distinct.size() >= 3) {
      return;
    }
  }
  fail_domain("InvalidTipConfiguration", "fewer than three distinct tips");
}

GraftResult graft_forward(const IdealPolygon& polygon, const WeightedDiagonals& lamination,
                          const GraftOptions& options) {
  lamination.validate();
  if (lamination.set.vertex_count() != polygon.size()) {
    fail_schema("SchemaMismatch", "diagonals are indexed for " + std::to_string(lamination.set.vertex_count()) +
                                      " vertices but the polygon has " + std::to_string(polygon.size()));
  }
  const DiagonalSet triangulation = complete_to_triangulation(lamination.set);
  std::vector<double> weights;
  for (const Diagonal& d : triangulation.diagonals()) {
    weights.push_back(lamination.set.contains(d) ? lamination.weight_of(d) : 0.0);
  }
  const DualTree tree = dual_tree(triangulation);
  const int root = options.root.value_or(tree.root());
  if (root < 0 || root >= static_cast<int>(tree.triangles.size())) {
    fail_domain("InvalidArgument", "root triangle " + std::to_string(root) + " out of range");
  }

  std::vector<MoebiusMap> maps(tree.triangles.size());
  walk(tree, root, options.traversal, [&](int parent, int child, const Diagonal& d) {
    const double w = weights[triangulation.index_of(d)];
    const int x = tree.triangles[static_cast<std::size_t>(child)].apex(d);
    const bool inside = strictly_between(d.i, x, d.j);
    const int p = inside ? d.i : d.j;
    const int q = inside ? d.j : d.i;
    maps[static_cast<std::size_t>(child)] =
        maps[static_cast<std::size_t>(parent)] * elliptic(polygon[p], polygon[q], w, options.tol.projective);
  });

  std::vector<SpherePoint> tips(static_cast<std::size_t>(polygon.size()));
  std::vector<bool> done(tips.size(), false);
  for (std::size_t t = 0; t < tree.triangles.size(); ++t) {
    for (int v : tree.triangles[t].v) {
      if (!done[static_cast<std::size_t>(v)]) {
        tips[static_cast<std::size_t>(v)] = maps[t](polygon[v]);
        done[static_cast<std::size_t>(v)] = true;
      }
    }
  }
  return GraftResult{TipConfiguration(std::move(tips), options.tol), triangulation, std::move(weights),
                     tree.triangles, std::move(maps)};
}

InverseGraft graft_invert(const TipConfiguration& tips, const DiagonalSet& triangulation, const Tolerances& tol) {
  if (triangulation.vertex_count() != tips.size()) {
    fail_schema("SchemaMismatch", "triangulation is indexed for " + std::to_string(triangulation.vertex_count()) +
                                      " vertices but there are " + std::to_string(tips.size()) + " tips");
  }
  const DualTree tree = dual_tree(triangulation);

  // Per diagonal: the quadruple (u, j, v, m) in cyclic order and its
  // cross-ratio modulus.
  struct Quad {
    int u, j, v, m;
    double modulus;
  };
  std::vector<Quad> quads(triangulation.size());
  std::vector<double> weights(triangulation.size());
  for (const DualTree::Edge& edge : tree.edges) {
    const Diagonal& d = edge.diagonal;
    const int xa = tree.triangles[static_cast<std::size_t>(edge.a)].apex(d);
    const int xb = tree.triangles[static_cast<std::size_t>(edge.b)].apex(d);
    const bool a_inside = strictly_between(d.i, xa, d.j);
    const Quad q{d.i, a_inside ? xa : xb, d.j, a_inside ? xb : xa, 0.0};
    SpherePoint lambda;
    try {
      lambda = chi(tips[q.u], tips[q.j], tips[q.v], tips[q.m], tol.projective);
    } catch (const Error&) {
      fail_domain("DegenerateQuadrilateral", "tips of the triangle next to diagonal (" + std::to_string(d.i) + ", " +
                                                 std::to_string(d.j) + ") coincide");
    }
    if (lambda.is_zero(tol.projective) || lambda.is_infinite(tol.projective)) {
      fail_domain("DegenerateQuadrilateral", "cross-ratio across diagonal (" + std::to_string(d.i) + ", " +
                                                 std::to_string(d.j) + ") is 0 or infinite");
    }
    const Complex value = lambda.value();
    double w = -std::arg(value);
    if (w < 0.0) {
      w += kTwoPi;
    }
    if (w >= kTwoPi - tol.angle) {
      w = 0.0;
    }
    const std::size_t k = triangulation.index_of(d);
    quads[k] = q;
    quads[k].modulus = std::abs(value);
    weights[k] = w;
  }

  const SpherePoint inf = SpherePoint::infinity();
  std::vector<SpherePoint> placed(static_cast<std::size_t>(tips.size()));
  const int root = tree.root();
  const Triangle& r = tree.triangles[static_cast<std::size_t>(root)];
  placed[static_cast<std::size_t>(r.v[0])] = SpherePoint(-1.0);
  placed[static_cast<std::size_t>(r.v[1])] = SpherePoint(1.0);
  placed[static_cast<std::size_t>(r.v[2])] = SpherePoint(Complex(0.0, 1.0));
  walk(tree, root, Traversal::BreadthFirst, [&](int, int child, const Diagonal& d) {
    const Quad& q = quads[triangulation.index_of(d)];
    const int fresh = tree.triangles[static_cast<std::size_t>(child)].apex(d);
    // chi is unchanged by (a, b, c, d) -> (c, d, a, b), so the new vertex
    // always sits in fourth position.
    const int s0 = fresh == q.m ? q.u : q.v;
    const int s1 = fresh == q.m ? q.j : q.m;
    const int s2 = fresh == q.m ? q.v : q.u;
    const MoebiusMap back = map_from_triples(inf, -1.0, 0.0, placed[static_cast<std::size_t>(s0)],
                                             placed[static_cast<std::size_t>(s1)],
                                             placed[static_cast<std::size_t>(s2)], tol.projective);
    const Complex z = back(SpherePoint(q.modulus)).value();
    placed[static_cast<std::size_t>(fresh)] = SpherePoint(z / std::abs(z));
  });

  IdealPolygon polygon = normalize_polygon(IdealPolygon(std::move(placed), tol), tol).first;
  return InverseGraft{std::move(polygon), triangulation, std::move(weights)};
}

std::vector<double> FiberElement::weights() const {
  std::vector<double> out(base_weights.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = base_weights[k] + kTwoPi * turns[k];
  }
  return out;
}

std::vector<FiberElement> fiber_enumerate(const TipConfiguration& tips, const DiagonalSet& triangulation, int nmax,
                                          const Tolerances& tol) {
  if (nmax < 0) {
    fail_domain("InvalidArgument", "nmax must be non-negative");
  }
  const InverseGraft base = graft_invert(tips, triangulation, tol);
  const std::size_t slots = base.weights.size();
  double count = std::pow(static_cast<double>(nmax) + 1.0, static_cast<double>(slots));
  if (count > 1e6) {
    fail_domain("InvalidArgument", "fiber enumeration would produce more than 10^6 elements");
  }
  std::vector<FiberElement> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<int> turns(slots, 0);
  while (true) {
    out.push_back(FiberElement{base.diagonals, base.weights, turns, base.polygon});
    // Odometer with the last index fastest gives lexicographic order.
    std::size_t k = slots;
    while (k > 0 && turns[k - 1] == nmax) {
      turns[k - 1] = 0;
      --k;
    }
    if (k == 0) {
      break;
    }
    ++turns[k - 1];
  }
  return out;
}

std::pair<TipConfiguration, MoebiusMap> normalize_tips(const TipConfiguration& tips, const Tolerances& tol) {
  const int n = tips.size();
  int second = -1;
  int third = -1;
  for (int k = 1; k < n && third < 0; ++k) {
    if (projectively_equal(tips[k], tips[0], tol.projective)) {
      continue;
    }
    if (second < 0) {
      second = k;
    } else if (!projectively_equal(tips[k], tips[second], tol.projective)) {
      third = k;
    }
  }
  const SpherePoint inf = SpherePoint::infinity();
  const MoebiusMap m = map_from_triples(tips[0], tips[second], tips[third], 0.0, inf, 1.0, tol.projective);
  std::vector<SpherePoint> image;
  for (const SpherePoint& p : tips.tips()) {
    image.push_back(m(p));
  }
  image[0] = SpherePoint(0.0);
  image[static_cast<std::size_t>(second)] = inf;
  image[static_cast<std::size_t>(third)] = SpherePoint(1.0);
  return {TipConfiguration(std::move(image), tol), m};
}

double tip_distance(const TipConfiguration& a, const TipConfiguration& b, const Tolerances& tol) {
  if (a.size() != b.size()) {
    fail_schema("SchemaMismatch", "tip configurations have different sizes");
  }
  const TipConfiguration na = normalize_tips(a, tol).first;
  const TipConfiguration nb = normalize_tips(b, tol).first;
  double worst = 0.0;
  for (int k = 0; k < a.size(); ++k) {
    worst = std::max(worst, chordal_distance(na[k], nb[k]));
  }
  return worst;
}

}  // namespace crowngraft
