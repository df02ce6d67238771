// One line per acceptance criterion; exit status 1 when any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "crowngraft/arc_matching.hpp"
#include "crowngraft/crown_lamination.hpp"
#include "crowngraft/error.hpp"
#include "crowngraft/grafting.hpp"
#include "crowngraft/ideal_polygon.hpp"
#include "crowngraft/schwarzian_ode.hpp"

using namespace crowngraft;

namespace {

constexpr double kPi = std::numbers::pi;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first failure and keeps the worst value seen.
class Tally {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok && pass_) {
      pass_ = false;
      first_ = what;
    }
  }
  void worst(double v) { worst_ = std::max(worst_, v); }
  Outcome done(const std::string& summary) const {
    if (!pass_) return {false, first_};
    if (worst_ < 0.0) return {true, summary};
    char buf[64];
    std::snprintf(buf, sizeof buf, ", worst %.3g", worst_);
    return {true, summary + buf};
  }

 private:
  bool pass_ = true;
  std::string first_;
  double worst_ = -1.0;
};

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

IdealPolygon random_polygon(std::mt19937_64& rng, int n, double min_gap) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
  while (true) {
    std::vector<double> angles(static_cast<std::size_t>(n));
    for (double& a : angles) a = u(rng);
    std::sort(angles.begin(), angles.end());
    double gap = 2.0 * kPi - angles.back() + angles.front();
    for (std::size_t k = 1; k < angles.size(); ++k) gap = std::min(gap, angles[k] - angles[k - 1]);
    if (gap < min_gap) continue;
    std::vector<SpherePoint> v;
    for (double a : angles) v.emplace_back(std::polar(1.0, a));
    return IdealPolygon(v);
  }
}

DiagonalSet random_triangulation(std::mt19937_64& rng, int n) {
  std::vector<Diagonal> chosen;
  for (int attempt = 0; attempt < 40 && static_cast<int>(chosen.size()) < n - 3; ++attempt) {
    int i = static_cast<int>(rng() % n), j = static_cast<int>(rng() % n);
    if (i > j) std::swap(i, j);
    const Diagonal d{i, j};
    if (j - i < 2 || (i == 0 && j == n - 1)) continue;
    if (std::any_of(chosen.begin(), chosen.end(), [&](const Diagonal& e) { return e == d || diagonals_cross(e, d); }))
      continue;
    chosen.push_back(d);
  }
  return complete_to_triangulation(DiagonalSet(n, chosen));
}

double angle_gap(double a, double b) { return std::abs(std::remainder(a - b, 2.0 * kPi)); }

Outcome quadrilateral_calibration() {
  const IdealPolygon p = coords_to_polygon({{2.0}});
  const WeightedDiagonals l{DiagonalSet(4, {{0, 2}}), {kPi / 3}};
  graft_forward(p, l);  // warm-up
  const auto start = Clock::now();
  const GraftResult g = graft_forward(coords_to_polygon({{2.0}}), l);
  const double ms = elapsed_ms(start);
  const Complex got = chi(g.tips[0], g.tips[1], g.tips[2], g.tips[3]).value();
  const double err = std::abs(got - 2.0 * std::polar(1.0, -kPi / 3));
  char buf[96];
  std::snprintf(buf, sizeof buf, "error %.3g, graft %.4f ms", err, ms);
  return {err < 1e-10 && ms < 1.0, buf};
}

Outcome grafting_round_trip() {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> wdist(0.0, 2.0 * kPi);
  Tally tally;
  const auto start = Clock::now();
  for (int trial = 0; trial < 500; ++trial) {
    const int d = 2 + trial % 7;
    const IdealPolygon p = random_polygon(rng, d + 2, 0.05);
    const DiagonalSet t = random_triangulation(rng, d + 2);
    std::vector<double> w;
    for (std::size_t k = 0; k < t.size(); ++k) w.push_back(wdist(rng));
    const InverseGraft inv = graft_invert(graft_forward(p, {t, w}).tips, t);
    const CrossRatioCoords want = polygon_to_coords(p);
    const CrossRatioCoords got = polygon_to_coords(inv.polygon);
    for (std::size_t k = 0; k < want.values.size(); ++k) {
      const double e = std::abs(got.values[k] - want.values[k]) / std::max(1.0, want.values[k]);
      tally.worst(e);
      tally.require(e < 1e-8, "coordinate mismatch in trial " + std::to_string(trial));
    }
    for (std::size_t k = 0; k < w.size(); ++k) {
      const double e = angle_gap(inv.weights[k], w[k]);
      tally.worst(e);
      tally.require(e < 1e-8, "weight mismatch in trial " + std::to_string(trial));
    }
  }
  const double ms = elapsed_ms(start);
  tally.require(ms < 10000.0, "took " + std::to_string(ms) + " ms");
  return tally.done("500 instances in " + std::to_string(static_cast<int>(ms)) + " ms");
}

Outcome fiber_invariance() {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> wdist(0.0, 2.0 * kPi);
  Tally tally;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 4 + trial % 7;
    const IdealPolygon p = random_polygon(rng, n, 0.05);
    const DiagonalSet t = random_triangulation(rng, n);
    std::vector<double> w;
    for (std::size_t k = 0; k < t.size(); ++k) w.push_back(wdist(rng));
    const GraftResult base = graft_forward(p, {t, w});
    for (std::size_t k = 0; k < w.size(); ++k) {
      std::vector<double> lifted = w;
      lifted[k] += 2.0 * kPi;
      const GraftResult moved = graft_forward(p, {t, lifted});
      for (int i = 0; i < n; ++i) {
        const double e = chordal_distance(base.tips[i], moved.tips[i]);
        tally.worst(e);
        tally.require(e < 1e-9, "tip moved in trial " + std::to_string(trial));
      }
    }
  }
  return tally.done("100 instances");
}

// All compositions with `parts` entries in 1..5.
void compositions(int parts, std::vector<std::int64_t>& cur, std::vector<std::vector<std::int64_t>>& out) {
  if (static_cast<int>(cur.size()) == parts) {
    out.push_back(cur);
    return;
  }
  for (std::int64_t w = 1; w <= 5; ++w) {
    cur.push_back(w);
    compositions(parts, cur, out);
    cur.pop_back();
  }
}

ArcRow to_row(const std::vector<std::int64_t>& weights) {
  ArcRow r;
  for (std::size_t k = 0; k < weights.size(); ++k) r.push_back({static_cast<int>(k), Rational(weights[k])});
  return r;
}

Outcome matching_uniqueness() {
  std::vector<std::vector<std::vector<std::int64_t>>> by_length(7);
  for (int len = 1; len <= 6; ++len) {
    std::vector<std::int64_t> cur;
    compositions(len, cur, by_length[static_cast<std::size_t>(len)]);
  }
  Tally tally;
  long instances = 0;
  const auto start = Clock::now();
  for (int n = 1; n <= 6; ++n) {
    for (int m = 1; n + m <= 7; ++m) {
      std::map<std::int64_t, std::vector<const std::vector<std::int64_t>*>> bottoms;
      for (const auto& b : by_length[static_cast<std::size_t>(m)]) {
        std::int64_t s = 0;
        for (auto w : b) s += w;
        bottoms[s].push_back(&b);
      }
      for (const auto& a : by_length[static_cast<std::size_t>(n)]) {
        std::int64_t s = 0;
        for (auto w : a) s += w;
        const ArcRow top = to_row(a);
        for (const auto* b : bottoms[s]) {
          const ArcRow bottom = to_row(*b);
          const auto all = brute_force_match(top, bottom, Rational(1));
          ++instances;
          tally.require(all.size() == 1, "not unique at instance " + std::to_string(instances));
          tally.require(!all.empty() && all[0] == minimal_match(top, bottom),
                        "greedy differs at instance " + std::to_string(instances));
        }
      }
    }
  }
  const double ms = elapsed_ms(start);
  tally.require(ms < 60000.0, "took " + std::to_string(ms) + " ms");
  return tally.done(std::to_string(instances) + " instances in " + std::to_string(static_cast<int>(ms)) + " ms");
}

Outcome gluing_properties() {
  std::mt19937_64 rng(5);
  Tally tally;
  for (int trial = 0; trial < 200; ++trial) {
    GluingScene scene;
    const int surfaces = 1 + static_cast<int>(rng() % 3);
    const int crowns = 1 + static_cast<int>(rng() % 3);
    std::int64_t surface_total = 0;
    for (int k = 0; k < surfaces; ++k) {
      const std::int64_t w = 1 + static_cast<std::int64_t>(rng() % 6);
      surface_total += w;
      scene.surface.push_back({100 + k, Rational(w, 3), 0, 0});
    }
    std::int64_t left = 2 * surface_total;
    for (int k = 0; k < crowns && left > 0; ++k) {
      const std::int64_t w =
          k + 1 == crowns || left <= 1 ? left : 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(left - 1));
      scene.crown.push_back({k, 1 + k, static_cast<std::int64_t>(rng() % 3), Rational(w, 3), 0});
      left -= w;
    }
    std::vector<std::int64_t> slots;
    for (std::int64_t s = 1; s < 48; ++s) slots.push_back(s);
    std::shuffle(slots.begin(), slots.end(), rng);
    std::size_t next = 0;
    for (auto& c : scene.crown) c.position = Rational(slots[next++], 4);
    for (auto& s : scene.surface) {
      s.end_i = Rational(slots[next++], 4);
      s.end_j = Rational(slots[next++], 4);
    }
    scene.circumference = 12;
    scene.basepoint = 0;

    const GluingResult r = glue_crown_to_surface(scene);
    const std::string where = " in scene " + std::to_string(trial);
    ArcRow crown_row, half_row;
    for (int k : r.crown_order) crown_row.push_back({k, scene.crown[static_cast<std::size_t>(k)].weight});
    for (const HalfArc& h : r.half_order) {
      half_row.push_back({h.surface, scene.surface[static_cast<std::size_t>(h.surface)].weight});
    }
    tally.require(check_matching(crown_row, half_row, r.stage1).empty(), "stage 1 not minimal" + where);

    std::map<int, Rational> per_surface, per_crown;
    for (const CombinedArc& a : r.arcs) {
      per_surface[a.surface_id] += a.weight;
      per_crown[a.crown_i] += a.weight;
      per_crown[a.crown_j] += a.weight;
    }
    for (const SurfaceArc& s : scene.surface) tally.require(per_surface[s.id] == s.weight, "surface total" + where);
    for (const CrownEnd& c : scene.crown) tally.require(per_crown[c.id] == c.weight, "crown total" + where);

    std::set<std::tuple<int, int, std::int64_t, int, std::int64_t>> signatures;
    for (const CombinedArc& a : r.arcs) {
      tally.require(signatures.insert({a.surface_id, a.cusp_i, a.twist_i, a.cusp_j, a.twist_j}).second,
                    "repeated signature" + where);
    }
  }
  return tally.done("200 scenes");
}

// A random realisable shape on m cusps.
CrownShape random_shape(std::mt19937_64& rng, int m) {
  while (true) {
    CrownShape shape{m, {}, {}};
    CrownLamination lam{m, {}, 0.0};
    for (int c = 1; c <= m; ++c) {
      if (rng() % 2) {
        shape.boundary_cusps.push_back(c);
        lam.arcs.push_back({CuspToBoundary{c, 0, 0.0}, 1.0});
      }
    }
    for (int attempt = 0; attempt < 2; ++attempt) {
      const int i = 1 + static_cast<int>(rng() % m), j = 1 + static_cast<int>(rng() % m);
      const int sides = ((j - i) % m + m) % m;
      if (sides < 2 || sides > m - 2) continue;
      shape.cusp_pairs.push_back({i, j});
      lam.arcs.push_back({CuspToCusp{i, j}, 1.0});
    }
    try {
      lam.validate();
      return shape;
    } catch (const Error&) {
    }
  }
}

Outcome chart_properties() {
  Tally tally;
  long points = 0;
  // Dyadic grid: every product and sum below is exact.
  for (int a = 1; a <= 100; ++a) {
    for (int b = 0; b < 100; ++b) {
      const double l = a / 16.0;
      const double tau = (b - 50) * 0.375;
      const ChartSplit s = chart_split({l, tau});
      const TwistChart back = chart_join(s.t, s.s, l);
      tally.require(back.tau == tau && back.l == l, "join does not invert split");
      const ChartSplit again = chart_split(back);
      tally.require(again.t == s.t && again.s == s.s, "split does not invert join");
      const std::int64_t j = wedge_index({l, tau});
      const auto in = [&](std::int64_t k) {
        return static_cast<double>(k) * l <= tau && tau <= static_cast<double>(k + 1) * l;
      };
      tally.require(in(j), "wedge index outside its wedge");
      // Neighbouring wedges share only their boundary rays.
      tally.require(!in(j + 1), "wedge overlap above");
      tally.require(!in(j - 1) || tau == static_cast<double>(j) * l, "wedge overlap below");
      ++points;
    }
  }

  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const CrownShape shape = random_shape(rng, 1 + static_cast<int>(rng() % 6));
    std::vector<double> weights;
    double l = 0.0;
    for (std::size_t k = 0; k < shape.arc_count(); ++k) {
      weights.push_back(static_cast<double>(1 + rng() % 40) / 8.0);
      if (k < shape.boundary_cusps.size()) l += weights.back();
    }
    double tau = (static_cast<double>(rng() % 2000) - 1000.0) / 16.0;
    if (shape.boundary_cusps.empty()) {
      l = -static_cast<double>(rng() % 8) / 4.0;
      tau = 0.0;
    }
    const LaminationCoords c = lamination_to_coords(coords_to_lamination(shape, weights, {l, tau}));
    const std::string where = " in cell instance " + std::to_string(trial);
    tally.require(c.shape.boundary_cusps == shape.boundary_cusps, "boundary cusps differ" + where);
    tally.require(c.shape.cusp_pairs.size() == shape.cusp_pairs.size(), "cusp pairs differ" + where);
    tally.require(c.weights == weights, "weights differ" + where);
    tally.require(c.chart.l == l && c.chart.tau == tau, "chart differs" + where);
  }
  return tally.done(std::to_string(points) + " grid points, 200 cells");
}

Outcome stokes_exactness() {
  Tally tally;
  for (int d = 1; d <= 20; ++d) {
    const StokesGeometry g = stokes_geometry(d);
    const auto count = static_cast<std::size_t>(d + 2);
    tally.require(g.sector_count() == d + 2 && g.stokes.size() == count && g.anti_stokes.size() == count &&
                      g.sectors.size() == count,
                  "wrong counts for d = " + std::to_string(d));
    for (std::size_t k = 0; k < count && k < g.stokes.size(); ++k) {
      const auto i = static_cast<std::int64_t>(k);
      tally.require(g.stokes[k] == Rational(2 * i + 1, d + 2), "Stokes ray for d = " + std::to_string(d));
      tally.require(g.anti_stokes[k] == Rational(2 * i, d + 2), "anti-Stokes ray for d = " + std::to_string(d));
    }
  }
  return tally.done("d = 1..20");
}

Outcome ode_engine() {
  const auto start = Clock::now();
  const PolynomialQD q(2, {});
  const TipsResult tips = compute_tips(q);
  const double drift = wronskian_drift(q, tips);
  const double residual = rotation_residual(tips.values);
  bool distinct = tips.values.size() == 4;
  for (std::size_t k = 0; distinct && k < 4; ++k) {
    const double sep = chordal_distance(tips.values[k], tips.values[(k + 1) % 4]);
    distinct = sep > tips.estimates[k].error + tips.estimates[(k + 1) % 4].error;
  }
  const double ms = elapsed_ms(start);
  char buf[128];
  std::snprintf(buf, sizeof buf, "%zu tips, drift %.3g, residual %.3g, %.0f ms", tips.values.size(), drift, residual,
                ms);
  return {distinct && drift < 1e-6 && residual < 1e-4 && ms < 60000.0, buf};
}

Outcome pipeline_closure() {
  Tally tally;
  for (const PolynomialQD& q : {PolynomialQD(2, {}), PolynomialQD(4, {Complex(1.0)})}) {
    const TipsResult tips = compute_tips(q);
    const DiagonalSet fan = complete_to_triangulation(DiagonalSet(q.degree() + 2, {}));
    const InverseGraft inv = graft_invert(tips.configuration(), fan);
    const GraftResult again = graft_forward(inv.polygon, {inv.diagonals, inv.weights});
    // Compare tip by tip after sending both configurations to the same frame.
    const auto [a, ma] = normalize_tips(again.tips);
    const auto [b, mb] = normalize_tips(tips.configuration());
    for (int k = 0; k < a.size(); ++k) {
      const double gap = chordal_distance(a[k], b[k]);
      const double bound = 10.0 * tips.estimates[static_cast<std::size_t>(k)].error;
      tally.worst(gap / bound);
      tally.require(gap < bound, "tip " + std::to_string(k) + " outside 10x its error, d = " +
                                     std::to_string(q.degree()));
    }
  }
  return tally.done("z^2 and z^4 + 1, gap / (10 error)");
}

double max_deviation(const std::vector<Complex>& s, Complex expected) {
  double out = 0.0;
  for (const Complex& v : s) {
    if (std::isfinite(v.real())) out = std::max(out, std::abs(v - expected));
  }
  return out;
}

GridSamples sample(Complex origin, double h, int nx, int ny, const std::function<Complex(Complex)>& f) {
  GridSamples g{origin, h, nx, ny, {}};
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) g.values.push_back(f(g.node(i, j)));
  }
  return g;
}

Outcome schwarzian() {
  const double moebius = max_deviation(
      schwarzian_fd(sample(Complex(-1, -1), 0.02, 101, 101, [](Complex z) { return (2.0 * z + 1.0) / (z + 3.0); })),
      0.0);
  const double expo =
      max_deviation(schwarzian_fd(sample(Complex(-1, -1), 0.01, 201, 201, [](Complex z) { return std::exp(z); })), -0.5);
  const PolynomialQD q(2, {});
  const SchwarzianCheck c = schwarzian_check(q, compute_tips(q), 1.0, 2.0, 0.025);
  char buf[160];
  std::snprintf(buf, sizeof buf, "Moebius %.3g, exp %.3g, z^2 relative %.3g over %d nodes", moebius, expo,
                c.max_relative_error, c.nodes);
  return {moebius < 1e-6 && expo < 1e-6 && c.max_relative_error < 1e-3, buf};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"quadrilateral calibration", quadrilateral_calibration},
      {"grafting round trip", grafting_round_trip},
      {"fiber invariance", fiber_invariance},
      {"matching uniqueness", matching_uniqueness},
      {"gluing properties", gluing_properties},
      {"twist chart", chart_properties},
      {"Stokes geometry", stokes_exactness},
      {"ODE engine", ode_engine},
      {"pipeline closure", pipeline_closure},
      {"Schwarzian check", schwarzian},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::printf("%2zu %-26s %s  %s  [%.0f ms]\n", k + 1, criteria[k].first, o.pass ? "PASS" : "FAIL", o.detail.c_str(),
                elapsed_ms(start));
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
