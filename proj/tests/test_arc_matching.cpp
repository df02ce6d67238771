#include <doctest.h>

#include <map>
#include <random>
#include <set>
#include <tuple>

#include "crowngraft/arc_matching.hpp"
#include "crowngraft/error.hpp"

using namespace crowngraft;

namespace {

ArcRow row(std::initializer_list<std::int64_t> weights) {
  ArcRow r;
  int origin = 0;
  for (std::int64_t w : weights) r.push_back({origin++, Rational{w}});
  return r;
}

std::vector<Rational> strand_weights(const Matching& m) {
  std::vector<Rational> out;
  for (const Strand& s : m.strands) out.push_back(s.weight);
  return out;
}

}  // namespace

TEST_CASE("rationals parse and print") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-4") == Rational(-4));
  CHECK(format_rational(Rational(6, 4)) == "3/2");
  CHECK(format_rational(Rational(5)) == "5");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("0.5"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
}

TEST_CASE("minimal matching examples") {
  CHECK(strand_weights(minimal_match(row({5}), row({1, 2, 2}))) == std::vector<Rational>{1, 2, 2});
  const Matching one = minimal_match(row({3}), row({3}));
  REQUIRE(one.strands.size() == 1);
  CHECK(one.strands[0].weight == Rational(3));
  CHECK(strand_weights(minimal_match(row({2, 2}), row({1, 3}))) == std::vector<Rational>{1, 1, 2});
  const Matching par = minimal_match(row({1, 1}), row({1, 1}));
  CHECK(par.strands.size() == 2);
  CHECK(check_matching(row({1, 1}), row({1, 1}), par).empty());
  CHECK_THROWS_AS(minimal_match(row({1, 2}), row({2})), Error);
  CHECK_THROWS_AS(minimal_match(row({0, 2}), row({2})), Error);
}

TEST_CASE("check_matching catches violations") {
  const ArcRow a = row({2}), b = row({1, 1});
  Matching m = minimal_match(a, b);
  CHECK(check_matching(a, b, m).empty());
  Matching bad = m;
  bad.strands[1].weight = 2;
  CHECK_FALSE(check_matching(a, b, bad).empty());
  const ArcRow c = row({1, 1});
  Matching doubled{{{{0, 0}, {0, 0}, Rational(1, 2)}, {{0, 1}, {0, 1}, Rational(1, 2)}, {{1, 0}, {1, 0}, 1}}};
  CHECK(check_matching(c, c, doubled) == "consecutive strands join the same pieces");
}

TEST_CASE("brute force agrees with the greedy matching") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 3, m = 1 + rng() % 3;
    ArcRow a, b;
    std::int64_t total = 0;
    for (std::size_t k = 0; k < n; ++k) {
      a.push_back({static_cast<int>(k), Rational(static_cast<std::int64_t>(1 + rng() % 4), 2)});
      total += a.back().weight.numerator() * (2 / a.back().weight.denominator());
    }
    // Bottom row: random composition of the same total (in halves).
    std::int64_t left = total;
    for (std::size_t k = 0; k + 1 < m && left > 1; ++k) {
      const std::int64_t w = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(left - 1));
      b.push_back({static_cast<int>(k), Rational(w, 2)});
      left -= w;
    }
    b.push_back({static_cast<int>(b.size()), Rational(left, 2)});
    const auto all = brute_force_match(a, b, Rational(1, 4));
    REQUIRE(all.size() == 1);
    const Matching greedy = minimal_match(a, b);
    CHECK(all[0] == greedy);
    CHECK(check_matching(a, b, greedy).empty());
    CHECK(greedy.strands.size() <= n + b.size() - 1);
  }
}

TEST_CASE("two-stage gluing of one surface arc") {
  GluingScene scene;
  scene.circumference = 4;
  scene.basepoint = 0;
  scene.crown = {{1, 2, 0, 2, Rational(1, 2)}};
  scene.surface = {{7, 1, 1, 3}};
  const GluingResult r = glue_crown_to_surface(scene);
  CHECK(r.stage1.strands.size() == 2);
  REQUIRE(r.arcs.size() == 1);
  CHECK(r.arcs[0].weight == Rational(1));
  CHECK(r.arcs[0].surface_id == 7);
  CHECK(r.arcs[0].cusp_i == 2);
  CHECK(r.arcs[0].cusp_j == 2);
}

TEST_CASE("aligned weights need no splitting") {
  GluingScene scene;
  scene.circumference = 10;
  scene.basepoint = Rational(1, 2);
  scene.crown = {{1, 1, 0, 1, 1}, {2, 2, 1, 2, 2}, {3, 3, 0, 2, 3}, {4, 4, 2, 1, 4}};
  scene.surface = {{10, 1, Rational(11, 10), Rational(41, 10)}, {11, 2, Rational(21, 10), Rational(31, 10)}};
  const GluingResult r = glue_crown_to_surface(scene);
  CHECK(r.stage1.strands.size() == 4);
  CHECK(r.arcs.size() == scene.surface.size());
}

TEST_CASE("gluing errors") {
  GluingScene scene;
  scene.circumference = 4;
  scene.crown = {{1, 2, 0, 2, 0}};
  scene.surface = {{7, 1, 1, 3}};
  try {
    glue_crown_to_surface(scene);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == "BasepointCollision");
  }
  const GluingScene cleared = clear_basepoint(scene);
  CHECK(cleared.crown[0].position == Rational(1, 2));
  CHECK_NOTHROW(glue_crown_to_surface(cleared));

  GluingScene heavy = cleared;
  heavy.crown[0].weight = 3;
  try {
    glue_crown_to_surface(heavy);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == "UnbalancedRows");
  }
}

TEST_CASE("randomised gluing scenes") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 500; ++trial) {
    GluingScene scene;
    const int surfaces = 1 + static_cast<int>(rng() % 3);
    const int crowns = 1 + static_cast<int>(rng() % 3);
    std::int64_t surface_total = 0;
    for (int k = 0; k < surfaces; ++k) {
      const std::int64_t w = 1 + static_cast<std::int64_t>(rng() % 4);
      surface_total += w;
      scene.surface.push_back({100 + k, Rational(w, 2), 0, 0});
    }
    // Split twice the surface total among the crown arcs.
    std::int64_t left = 2 * surface_total;
    for (int k = 0; k < crowns; ++k) {
      const std::int64_t w =
          k + 1 == crowns || left <= 1 ? left : 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(left - 1));
      if (w <= 0) break;
      scene.crown.push_back({k, k + 1, static_cast<std::int64_t>(rng() % 3), Rational(w, 2), 0});
      left -= w;
    }
    // Distinct random positions on a circle of circumference 64.
    std::vector<std::int64_t> slots;
    for (std::int64_t s = 1; s < 64; ++s) slots.push_back(s);
    std::shuffle(slots.begin(), slots.end(), rng);
    std::size_t next = 0;
    for (auto& c : scene.crown) c.position = slots[next++];
    for (auto& s : scene.surface) {
      s.end_i = slots[next++];
      s.end_j = slots[next++];
    }
    scene.circumference = 64;
    scene.basepoint = 0;

    const GluingResult r = glue_crown_to_surface(scene);
    // Stage 1 is a minimal matching of the crown row against the half-arcs.
    ArcRow crown_row, half_row;
    for (int k : r.crown_order) crown_row.push_back({k, scene.crown[static_cast<std::size_t>(k)].weight});
    for (const HalfArc& h : r.half_order) half_row.push_back({h.surface, scene.surface[static_cast<std::size_t>(h.surface)].weight});
    CHECK(check_matching(crown_row, half_row, r.stage1).empty());

    // Restriction to the surface: each arc splits into pieces summing to it.
    std::map<int, Rational> per_surface;
    std::map<int, Rational> per_crown;
    for (const CombinedArc& a : r.arcs) {
      per_surface[a.surface_id] += a.weight;
      per_crown[a.crown_i] += a.weight;
      per_crown[a.crown_j] += a.weight;
    }
    for (const SurfaceArc& s : scene.surface) CHECK(per_surface[s.id] == s.weight);
    // Restriction to the crown: every crown arc is used exactly by its weight.
    for (const CrownEnd& c : scene.crown) CHECK(per_crown[c.id] == c.weight);

    // No two output arcs are properly homotopic.
    std::set<std::tuple<int, int, std::int64_t, int, std::int64_t>> signatures;
    for (const CombinedArc& a : r.arcs) {
      CHECK(signatures.insert({a.surface_id, a.cusp_i, a.twist_i, a.cusp_j, a.twist_j}).second);
    }
  }
}
