#include "crowngraft/arc_matching.hpp"

#include <algorithm>
#include <charconv>
#include <functional>

#include "crowngraft/error.hpp"

namespace crowngraft {

namespace {

Rational row_total(const ArcRow& row) {
  Rational total{0};
  for (const ArcPiece& p : row) {
    if (p.weight <= Rational{0}) {
      fail_domain("InvalidWeights", "arc weights must be positive");
    }
    total += p.weight;
  }
  return total;
}

std::int64_t parse_int(std::string_view s) {
  std::int64_t value = 0;
  if (!s.empty() && s.front() == '+') {
    s.remove_prefix(1);
  }
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size()) {
    fail_domain("InvalidRational", "cannot parse integer '" + std::string(s) + "'");
  }
  return value;
}

// Offset of x after the basepoint on a circle.
Rational after_base(const Rational& x, const GluingScene& scene) {
  Rational r = x - scene.basepoint;
  while (r < Rational{0}) r += scene.circumference;
  while (r >= scene.circumference) r -= scene.circumference;
  return r;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    return Rational{parse_int(text)};
  }
  const std::int64_t den = parse_int(std::string_view(text).substr(slash + 1));
  if (den == 0) {
    fail_domain("InvalidRational", "zero denominator in '" + text + "'");
  }
  return Rational{parse_int(std::string_view(text).substr(0, slash)), den};
}

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) {
    return std::to_string(r.numerator());
  }
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Matching minimal_match(const ArcRow& top, const ArcRow& bottom) {
  if (row_total(top) != row_total(bottom)) {
    fail_domain("UnbalancedRows", "row totals differ: " + format_rational(row_total(top)) + " vs " +
                                      format_rational(row_total(bottom)));
  }
  Matching out;
  std::size_t i = 0;
  std::size_t j = 0;
  int split_i = 0;
  int split_j = 0;
  Rational left_i = top.empty() ? Rational{0} : top[0].weight;
  Rational left_j = bottom.empty() ? Rational{0} : bottom[0].weight;
  while (i < top.size() && j < bottom.size()) {
    const Rational w = std::min(left_i, left_j);
    out.strands.push_back({{static_cast<int>(i), split_i++}, {static_cast<int>(j), split_j++}, w});
    left_i -= w;
    left_j -= w;
    if (left_i == Rational{0} && ++i < top.size()) {
      left_i = top[i].weight;
      split_i = 0;
    }
    if (left_j == Rational{0} && ++j < bottom.size()) {
      left_j = bottom[j].weight;
      split_j = 0;
    }
  }
  return out;
}

std::vector<Matching> brute_force_match(const ArcRow& top, const ArcRow& bottom, const Rational& step) {
  std::vector<Matching> found;
  if (top.empty() || bottom.empty() || step <= Rational{0}) {
    return found;
  }
  Matching current;
  std::function<void(std::size_t, std::size_t, Rational, Rational, int, int)> extend =
      [&](std::size_t i, std::size_t j, Rational left_i, Rational left_j, int split_i, int split_j) {
        if (i == top.size() || j == bottom.size()) {
          if (i == top.size() && j == bottom.size()) {
            found.push_back(current);
          }
          return;
        }
        for (Rational w = step; w <= left_i && w <= left_j; w += step) {
          const Rational ri = left_i - w;
          const Rational rj = left_j - w;
          // Neither piece used up: the next strand would join the same two
          // pieces again, which minimality forbids.
          if (ri != Rational{0} && rj != Rational{0}) {
            continue;
          }
          current.strands.push_back({{static_cast<int>(i), split_i}, {static_cast<int>(j), split_j}, w});
          const std::size_t ni = ri == Rational{0} ? i + 1 : i;
          const std::size_t nj = rj == Rational{0} ? j + 1 : j;
          extend(ni, nj, ni == i ? ri : (ni < top.size() ? top[ni].weight : Rational{0}),
                 nj == j ? rj : (nj < bottom.size() ? bottom[nj].weight : Rational{0}), ni == i ? split_i + 1 : 0,
                 nj == j ? split_j + 1 : 0);
          current.strands.pop_back();
        }
      };
  extend(0, 0, top[0].weight, bottom[0].weight, 0, 0);
  return found;
}

std::string check_matching(const ArcRow& top, const ArcRow& bottom, const Matching& m) {
  std::vector<Rational> used_top(top.size(), Rational{0});
  std::vector<Rational> used_bottom(bottom.size(), Rational{0});
  std::vector<int> next_top(top.size(), 0);
  std::vector<int> next_bottom(bottom.size(), 0);
  for (std::size_t k = 0; k < m.strands.size(); ++k) {
    const Strand& s = m.strands[k];
    if (s.top.piece < 0 || s.top.piece >= static_cast<int>(top.size()) || s.bottom.piece < 0 ||
        s.bottom.piece >= static_cast<int>(bottom.size())) {
      return "strand endpoint out of range";
    }
    if (s.weight <= Rational{0}) {
      return "non-positive strand weight";
    }
    if (k > 0) {
      const Strand& p = m.strands[k - 1];
      if (s.top.piece < p.top.piece || s.bottom.piece < p.bottom.piece) {
        return "strands cross";
      }
      if (s.top.piece == p.top.piece && s.bottom.piece == p.bottom.piece) {
        return "consecutive strands join the same pieces";
      }
    }
    if (s.top.split != next_top[static_cast<std::size_t>(s.top.piece)]++ ||
        s.bottom.split != next_bottom[static_cast<std::size_t>(s.bottom.piece)]++) {
      return "split ordinals out of sequence";
    }
    used_top[static_cast<std::size_t>(s.top.piece)] += s.weight;
    used_bottom[static_cast<std::size_t>(s.bottom.piece)] += s.weight;
  }
  for (std::size_t k = 0; k < top.size(); ++k) {
    if (used_top[k] != top[k].weight) return "top weight not conserved";
  }
  for (std::size_t k = 0; k < bottom.size(); ++k) {
    if (used_bottom[k] != bottom[k].weight) return "bottom weight not conserved";
  }
  return {};
}

GluingResult glue_crown_to_surface(const GluingScene& scene) {
  if (scene.circumference <= Rational{0}) {
    fail_domain("InvalidScene", "circumference must be positive");
  }
  std::vector<Rational> positions;
  for (const CrownEnd& c : scene.crown) {
    if (c.weight <= Rational{0}) fail_domain("InvalidScene", "crown arc weights must be positive");
    positions.push_back(c.position);
  }
  for (const SurfaceArc& s : scene.surface) {
    if (s.weight <= Rational{0}) fail_domain("InvalidScene", "surface arc weights must be positive");
    positions.push_back(s.end_i);
    positions.push_back(s.end_j);
  }
  for (const Rational& p : positions) {
    if (p < Rational{0} || p >= scene.circumference) {
      fail_domain("InvalidScene", "position " + format_rational(p) + " is off the circle");
    }
    if (after_base(p, scene) == Rational{0}) {
      fail_domain("BasepointCollision", "an endpoint sits on the basepoint " + format_rational(scene.basepoint));
    }
  }
  std::vector<Rational> sorted = positions;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    fail_domain("InvalidScene", "two endpoints share a position");
  }

  GluingResult out;
  for (std::size_t k = 0; k < scene.crown.size(); ++k) out.crown_order.push_back(static_cast<int>(k));
  std::sort(out.crown_order.begin(), out.crown_order.end(), [&](int a, int b) {
    return after_base(scene.crown[static_cast<std::size_t>(a)].position, scene) <
           after_base(scene.crown[static_cast<std::size_t>(b)].position, scene);
  });
  auto half_position = [&](const HalfArc& h) {
    const SurfaceArc& s = scene.surface[static_cast<std::size_t>(h.surface)];
    return after_base(h.at_i ? s.end_i : s.end_j, scene);
  };
  for (std::size_t k = 0; k < scene.surface.size(); ++k) {
    out.half_order.push_back({static_cast<int>(k), true});
    out.half_order.push_back({static_cast<int>(k), false});
  }
  std::sort(out.half_order.begin(), out.half_order.end(),
            [&](const HalfArc& a, const HalfArc& b) { return half_position(a) < half_position(b); });

  ArcRow crown_row;
  for (int k : out.crown_order) {
    crown_row.push_back({scene.crown[static_cast<std::size_t>(k)].id, scene.crown[static_cast<std::size_t>(k)].weight});
  }
  ArcRow half_row;
  for (const HalfArc& h : out.half_order) {
    const SurfaceArc& s = scene.surface[static_cast<std::size_t>(h.surface)];
    half_row.push_back({s.id, s.weight});
  }
  out.stage1 = minimal_match(crown_row, half_row);

  // G'_p: stage-1 strands arriving at half-arc endpoint p, in order.
  std::vector<std::vector<int>> arriving(out.half_order.size());
  for (std::size_t k = 0; k < out.stage1.strands.size(); ++k) {
    arriving[static_cast<std::size_t>(out.stage1.strands[k].bottom.piece)].push_back(static_cast<int>(k));
  }
  auto crown_of = [&](int stage1_strand) -> const CrownEnd& {
    const int piece = out.stage1.strands[static_cast<std::size_t>(stage1_strand)].top.piece;
    return scene.crown[static_cast<std::size_t>(out.crown_order[static_cast<std::size_t>(piece)])];
  };

  for (std::size_t s = 0; s < scene.surface.size(); ++s) {
    std::size_t pi = 0;
    std::size_t pj = 0;
    for (std::size_t h = 0; h < out.half_order.size(); ++h) {
      if (out.half_order[h].surface == static_cast<int>(s)) {
        (out.half_order[h].at_i ? pi : pj) = h;
      }
    }
    std::vector<int> from_i = arriving[pi];
    std::vector<int> from_j = arriving[pj];
    // The band around the surface arc meets the boundary in two intervals
    // with opposite orientations.
    std::reverse(from_j.begin(), from_j.end());
    ArcRow a;
    ArcRow b;
    for (int k : from_i) a.push_back({k, out.stage1.strands[static_cast<std::size_t>(k)].weight});
    for (int k : from_j) b.push_back({k, out.stage1.strands[static_cast<std::size_t>(k)].weight});
    Matching m = minimal_match(a, b);
    for (const Strand& st : m.strands) {
      const CrownEnd& ci = crown_of(from_i[static_cast<std::size_t>(st.top.piece)]);
      const CrownEnd& cj = crown_of(from_j[static_cast<std::size_t>(st.bottom.piece)]);
      out.arcs.push_back({scene.surface[s].id, ci.id, cj.id, ci.cusp, ci.twist, cj.cusp, cj.twist, st.weight});
    }
    out.stage2.push_back(std::move(m));
  }
  return out;
}

GluingScene clear_basepoint(const GluingScene& scene) {
  GluingScene out = scene;
  std::vector<Rational*> slots;
  for (CrownEnd& c : out.crown) slots.push_back(&c.position);
  for (SurfaceArc& s : out.surface) {
    slots.push_back(&s.end_i);
    slots.push_back(&s.end_j);
  }
  for (Rational* slot : slots) {
    if (after_base(*slot, out) != Rational{0}) {
      continue;
    }
    Rational gap = out.circumference;
    for (Rational* other : slots) {
      const Rational offset = after_base(*other, out);
      if (offset > Rational{0} && offset < gap) {
        gap = offset;
      }
    }
    Rational moved = out.basepoint + gap / Rational{2};
    if (moved >= out.circumference) {
      moved -= out.circumference;
    }
    *slot = moved;
  }
  return out;
}

}  // namespace crowngraft
