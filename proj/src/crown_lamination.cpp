#include "crowngraft/crown_lamination.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "crowngraft/error.hpp"

namespace crowngraft {

namespace {

// Cyclic successor on 1..m.
int wrap(int k, int m) { return ((k - 1) % m + m) % m + 1; }

int side_count(int m, const CuspToCusp& arc) { return ((arc.j - arc.i) % m + m) % m; }

bool side_in(int m, const CuspToCusp& arc, int side) { return ((side - arc.i) % m + m) % m < side_count(m, arc); }

// Cusp strictly between i and j going forward.
bool cusp_cut_off(int m, const CuspToCusp& arc, int cusp) {
  const int offset = ((cusp - arc.i) % m + m) % m;
  return offset > 0 && offset < side_count(m, arc);
}

bool contains_all(int m, const CuspToCusp& outer, const CuspToCusp& inner) {
  for (int s : enclosed_sides(m, inner)) {
    if (!side_in(m, outer, s)) {
      return false;
    }
  }
  return true;
}

bool overlaps(int m, const CuspToCusp& a, const CuspToCusp& b) {
  for (int s : enclosed_sides(m, b)) {
    if (side_in(m, a, s)) {
      return true;
    }
  }
  return false;
}

std::string pair_str(const CuspToCusp& a) { return "(" + std::to_string(a.i) + ", " + std::to_string(a.j) + ")"; }

bool close(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

std::vector<std::size_t> boundary_arcs_by_cusp(const CrownLamination& lam) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < lam.arcs.size(); ++k) {
    if (lam.arcs[k].touches_boundary()) {
      out.push_back(k);
    }
  }
  std::sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) {
    return std::get<CuspToBoundary>(lam.arcs[a].kind).cusp < std::get<CuspToBoundary>(lam.arcs[b].kind).cusp;
  });
  return out;
}

}  // namespace

std::vector<int> enclosed_sides(int m, const CuspToCusp& arc) {
  std::vector<int> out;
  for (int k = 0; k < side_count(m, arc); ++k) {
    out.push_back(wrap(arc.i + k, m));
  }
  return out;
}

void CrownLamination::validate() const {
  if (m < 1) {
    fail_domain("InvalidLamination", "a crown needs at least one cusp");
  }
  if (!std::isfinite(boundary_leaf_weight) || boundary_leaf_weight < 0.0) {
    fail_domain("InvalidLamination", "boundary leaf weight must be finite and non-negative");
  }
  std::vector<bool> has_boundary_arc(static_cast<std::size_t>(m) + 1, false);
  std::vector<CuspToCusp> pairs;
  for (const CrownArc& arc : arcs) {
    if (!std::isfinite(arc.weight) || !(arc.weight > 0.0)) {
      fail_domain("InvalidLamination", "arc weights must be positive and finite");
    }
    if (const auto* b = std::get_if<CuspToBoundary>(&arc.kind)) {
      if (b->cusp < 1 || b->cusp > m) {
        fail_domain("InvalidLamination", "cusp " + std::to_string(b->cusp) + " out of range");
      }
      if (!std::isfinite(b->offset) || b->offset < 0.0) {
        fail_domain("InvalidLamination", "boundary offsets must be finite and non-negative");
      }
      if (has_boundary_arc[static_cast<std::size_t>(b->cusp)]) {
        fail_domain("NotRealizable", "two boundary arcs at cusp " + std::to_string(b->cusp));
      }
      has_boundary_arc[static_cast<std::size_t>(b->cusp)] = true;
    } else {
      const auto& c = std::get<CuspToCusp>(arc.kind);
      if (c.i < 1 || c.i > m || c.j < 1 || c.j > m) {
        fail_domain("InvalidLamination", "cusp pair " + pair_str(c) + " out of range");
      }
      const int sides = side_count(m, c);
      if (sides < 2 || sides > m - 2) {
        fail_domain("InvalidLamination", "cusps of " + pair_str(c) + " are adjacent or equal");
      }
      pairs.push_back(c);
    }
  }
  if (boundary_leaf_weight > 0.0 && std::find(has_boundary_arc.begin(), has_boundary_arc.end(), true) !=
                                        has_boundary_arc.end()) {
    fail_domain("InvalidLamination", "a boundary leaf cannot coexist with arcs reaching the boundary");
  }
  for (std::size_t a = 0; a < pairs.size(); ++a) {
    for (int cusp = 1; cusp <= m; ++cusp) {
      if (has_boundary_arc[static_cast<std::size_t>(cusp)] && cusp_cut_off(m, pairs[a], cusp)) {
        fail_domain("NotRealizable", "boundary arc at cusp " + std::to_string(cusp) + " crosses " +
                                         pair_str(pairs[a]));
      }
    }
    for (std::size_t b = a + 1; b < pairs.size(); ++b) {
      if (side_count(m, pairs[a]) == side_count(m, pairs[b]) && pairs[a].i == pairs[b].i) {
        fail_domain("NotRealizable", "repeated arc " + pair_str(pairs[a]));
      }
      const bool nested = contains_all(m, pairs[a], pairs[b]) || contains_all(m, pairs[b], pairs[a]);
      if (!nested && overlaps(m, pairs[a], pairs[b])) {
        fail_domain("NotRealizable", pair_str(pairs[a]) + " crosses " + pair_str(pairs[b]));
      }
    }
  }
}

double boundary_measure(const CrownLamination& lamination) {
  double total = 0.0;
  bool any = false;
  for (std::size_t k : boundary_arcs_by_cusp(lamination)) {
    total += lamination.arcs[k].weight;
    any = true;
  }
  return any ? total : -lamination.boundary_leaf_weight;
}

std::vector<int> DualMetricGraph::degrees() const {
  std::vector<int> deg(vertices.size(), 0);
  for (const Edge& e : edges) {
    ++deg[static_cast<std::size_t>(e.a)];
    ++deg[static_cast<std::size_t>(e.b)];
  }
  for (const InfiniteEdge& e : infinite_edges) {
    ++deg[static_cast<std::size_t>(e.vertex)];
  }
  return deg;
}

DualMetricGraph to_dual_graph(const CrownLamination& lamination) {
  lamination.validate();
  const int m = lamination.m;
  DualMetricGraph g;

  const std::vector<std::size_t> boundary = boundary_arcs_by_cusp(lamination);
  std::vector<int> cusps;
  for (std::size_t k : boundary) {
    cusps.push_back(std::get<CuspToBoundary>(lamination.arcs[k].kind).cusp);
  }
  const int outer_count = std::max<int>(1, static_cast<int>(cusps.size()));
  for (int r = 0; r < outer_count; ++r) {
    g.vertices.push_back({DualMetricGraph::VertexKind::Outer, r});
  }
  // Outer region r starts at the boundary arc at cusps[r] and covers sides
  // up to the next boundary arc.
  auto outer_region_of_side = [&](int side) {
    if (cusps.size() <= 1) {
      return 0;
    }
    int region = static_cast<int>(cusps.size()) - 1;
    for (std::size_t r = 0; r < cusps.size(); ++r) {
      if (cusps[r] <= side) {
        region = static_cast<int>(r);
      }
    }
    return region;
  };

  std::vector<std::size_t> inner;  // lamination arc indices
  std::vector<int> inner_vertex(lamination.arcs.size(), -1);
  for (std::size_t k = 0; k < lamination.arcs.size(); ++k) {
    if (!lamination.arcs[k].touches_boundary()) {
      inner_vertex[k] = static_cast<int>(g.vertices.size());
      g.vertices.push_back({DualMetricGraph::VertexKind::Inner, static_cast<int>(k)});
      inner.push_back(k);
    }
  }
  auto pair_of = [&](std::size_t k) { return std::get<CuspToCusp>(lamination.arcs[k].kind); };
  // Smallest enclosing arc of a side, or of another arc.
  auto owner = [&](auto&& encloses) {
    int best = -1;
    int best_size = m + 1;
    for (std::size_t k : inner) {
      const int size = side_count(m, pair_of(k));
      if (encloses(k) && size < best_size) {
        best = static_cast<int>(k);
        best_size = size;
      }
    }
    return best;
  };

  // Boundary cycle, listed in order of position along the boundary.
  for (std::size_t r = 0; r < boundary.size(); ++r) {
    const int before = static_cast<int>((r + boundary.size() - 1) % boundary.size());
    g.edges.push_back({before, static_cast<int>(r), lamination.arcs[boundary[r]].weight,
                       static_cast<int>(boundary[r])});
    g.cycle_length += lamination.arcs[boundary[r]].weight;
  }
  g.cycle.resize(boundary.size());
  for (std::size_t r = 0; r < boundary.size(); ++r) {
    g.cycle[r] = static_cast<int>(r);
  }
  std::stable_sort(g.cycle.begin(), g.cycle.end(), [&](int a, int b) {
    return std::get<CuspToBoundary>(lamination.arcs[static_cast<std::size_t>(g.edges[static_cast<std::size_t>(a)].arc)].kind)
               .offset <
           std::get<CuspToBoundary>(lamination.arcs[static_cast<std::size_t>(g.edges[static_cast<std::size_t>(b)].arc)].kind)
               .offset;
  });

  for (std::size_t k : inner) {
    const CuspToCusp self = pair_of(k);
    const int parent = owner([&](std::size_t o) {
      return o != k && contains_all(m, pair_of(o), self) && side_count(m, pair_of(o)) > side_count(m, self);
    });
    const int other = parent >= 0 ? inner_vertex[static_cast<std::size_t>(parent)] : outer_region_of_side(self.i);
    g.edges.push_back({other, inner_vertex[k], lamination.arcs[k].weight, static_cast<int>(k)});
  }

  for (int side = 1; side <= m; ++side) {
    const int o = owner([&](std::size_t k) { return side_in(m, pair_of(k), side); });
    g.infinite_edges.push_back({o >= 0 ? inner_vertex[static_cast<std::size_t>(o)] : outer_region_of_side(side), side});
  }

  if (boundary.empty() && lamination.boundary_leaf_weight > 0.0) {
    const int leaf = static_cast<int>(g.vertices.size());
    g.vertices.push_back({DualMetricGraph::VertexKind::Leaf, -1});
    g.edges.push_back({0, leaf, lamination.boundary_leaf_weight, -1});
  }
  return g;
}

ChartSplit chart_split(const TwistChart& chart) {
  if (!(chart.l > 0.0) || !std::isfinite(chart.l) || !std::isfinite(chart.tau)) {
    fail_domain("NonPositiveBoundaryMeasure", "chart_split needs finite tau and l > 0");
  }
  double t = std::floor(chart.tau / chart.l);
  double s = std::fma(-t, chart.l, chart.tau);
  if (s < 0.0) {
    t -= 1.0;
    s += chart.l;
  } else if (s >= chart.l) {
    t += 1.0;
    s -= chart.l;
  }
  if (s >= chart.l) {
    s = std::nextafter(chart.l, 0.0);
  }
  if (s < 0.0) {
    s = 0.0;
  }
  return {static_cast<std::int64_t>(t), s};
}

TwistChart chart_join(std::int64_t t, double s, double l) {
  if (!(l > 0.0) || !std::isfinite(l)) {
    fail_domain("NonPositiveBoundaryMeasure", "chart_join needs l > 0");
  }
  if (!(s >= 0.0 && s < l)) {
    fail_domain("InvalidArgument", "offset must lie in [0, l)");
  }
  return {l, std::fma(static_cast<double>(t), l, s)};
}

std::int64_t wedge_index(const TwistChart& chart) { return chart_split(chart).t; }

CrownLamination coords_to_lamination(const CrownShape& shape, const std::vector<double>& weights,
                                     const TwistChart& chart) {
  if (weights.size() != shape.arc_count()) {
    fail_domain("ShapeMismatch", "shape has " + std::to_string(shape.arc_count()) + " arcs but " +
                                     std::to_string(weights.size()) + " weights were given");
  }
  if (!std::is_sorted(shape.boundary_cusps.begin(), shape.boundary_cusps.end())) {
    fail_domain("ShapeMismatch", "boundary cusps must be listed in increasing order");
  }
  CrownLamination lam;
  lam.m = shape.m;
  const std::size_t k = shape.boundary_cusps.size();
  if (k > 0) {
    double total = 0.0;
    for (std::size_t a = 0; a < k; ++a) {
      total += weights[a];
    }
    if (!close(chart.l, total)) {
      fail_domain("ShapeMismatch", "l = " + std::to_string(chart.l) + " differs from the boundary arc total " +
                                       std::to_string(total));
    }
    const ChartSplit split = chart_split({total, chart.tau});
    double offset = split.s;
    for (std::size_t a = 0; a < k; ++a) {
      lam.arcs.push_back({CuspToBoundary{shape.boundary_cusps[a], split.t, offset}, weights[a]});
      offset += weights[a];
    }
  } else {
    if (chart.l > 0.0) {
      fail_domain("ShapeMismatch", "positive l needs arcs reaching the boundary");
    }
    lam.boundary_leaf_weight = -chart.l;
  }
  for (std::size_t a = 0; a < shape.cusp_pairs.size(); ++a) {
    lam.arcs.push_back({shape.cusp_pairs[a], weights[k + a]});
  }
  lam.validate();
  return lam;
}

LaminationCoords lamination_to_coords(const CrownLamination& lamination) {
  lamination.validate();
  LaminationCoords out;
  out.shape.m = lamination.m;
  const std::vector<std::size_t> boundary = boundary_arcs_by_cusp(lamination);
  double total = 0.0;
  for (std::size_t k : boundary) {
    out.shape.boundary_cusps.push_back(std::get<CuspToBoundary>(lamination.arcs[k].kind).cusp);
    out.weights.push_back(lamination.arcs[k].weight);
    total += lamination.arcs[k].weight;
  }
  if (!boundary.empty()) {
    const auto& first = std::get<CuspToBoundary>(lamination.arcs[boundary.front()].kind);
    double expected = first.offset;
    for (std::size_t k : boundary) {
      const auto& b = std::get<CuspToBoundary>(lamination.arcs[k].kind);
      if (b.twist != first.twist || !close(b.offset, expected)) {
        fail_domain("ShapeMismatch", "boundary arcs do not come from a single twist chart");
      }
      expected += lamination.arcs[k].weight;
    }
    if (first.offset >= total) {
      fail_domain("ShapeMismatch", "first boundary offset must be below the boundary measure");
    }
    out.chart = chart_join(first.twist, first.offset, total);
  } else {
    out.chart = {-lamination.boundary_leaf_weight, 0.0};
  }
  for (const CrownArc& arc : lamination.arcs) {
    if (const auto* c = std::get_if<CuspToCusp>(&arc.kind)) {
      out.shape.cusp_pairs.push_back(*c);
      out.weights.push_back(arc.weight);
    }
  }
  return out;
}

int free_parameter_count(const CrownShape& shape) {
  const int arcs = static_cast<int>(shape.arc_count());
  return shape.boundary_cusps.empty() ? arcs : arcs - 1;
}

}  // namespace crowngraft
