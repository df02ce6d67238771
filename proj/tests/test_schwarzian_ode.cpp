#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "crowngraft/error.hpp"
#include "crowngraft/grafting.hpp"
#include "crowngraft/schwarzian_ode.hpp"

using namespace crowngraft;

namespace {

constexpr double kPi = std::numbers::pi;

std::string error_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return {};
}

GridSamples sample(Complex origin, double h, int nx, int ny, const std::function<Complex(Complex)>& f) {
  GridSamples g{origin, h, nx, ny, {}};
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) g.values.push_back(f(g.node(i, j)));
  }
  return g;
}

double max_deviation(const std::vector<Complex>& s, Complex expected) {
  double out = 0.0;
  for (const Complex& v : s) {
    if (std::isfinite(v.real())) out = std::max(out, std::abs(v - expected));
  }
  return out;
}

}  // namespace

TEST_CASE("Stokes geometry is exact") {
  const StokesGeometry g2 = stokes_geometry(2);
  CHECK(g2.sector_count() == 4);
  CHECK(g2.stokes == std::vector<Rational>{Rational(1, 4), Rational(3, 4), Rational(5, 4), Rational(7, 4)});
  CHECK(g2.anti_stokes == std::vector<Rational>{Rational(0), Rational(1, 2), Rational(1), Rational(3, 2)});
  const StokesGeometry g1 = stokes_geometry(1);
  CHECK(g1.anti_stokes == std::vector<Rational>{Rational(0), Rational(2, 3), Rational(4, 3)});

  for (int d = 1; d <= 20; ++d) {
    const StokesGeometry g = stokes_geometry(d);
    REQUIRE(g.stokes.size() == static_cast<std::size_t>(d + 2));
    REQUIRE(g.anti_stokes.size() == static_cast<std::size_t>(d + 2));
    REQUIRE(g.sectors.size() == static_cast<std::size_t>(d + 2));
    for (int k = 0; k < d + 2; ++k) {
      const auto i = static_cast<std::size_t>(k);
      CHECK(g.stokes[i] >= Rational(0));
      CHECK(g.stokes[i] < Rational(2));
      CHECK(g.stokes[i] * Rational(d + 2) == Rational(2 * k + 1));
      CHECK(g.anti_stokes[i] * Rational(d + 2) == Rational(2 * k));
      if (k > 0) CHECK(g.stokes[i - 1] < g.stokes[i]);
      // Each sector is bisected by its anti-Stokes ray and spans 2/(d+2).
      Rational width = g.sectors[i][1] - g.sectors[i][0];
      if (width < Rational(0)) width += Rational(2);
      CHECK(width == Rational(2, d + 2));
      Rational mid = g.sectors[i][0] + width / Rational(2);
      if (mid >= Rational(2)) mid -= Rational(2);
      CHECK(mid == g.anti_stokes[i]);
    }
  }
  CHECK(to_radians(Rational(3, 4)) == doctest::Approx(3 * kPi / 4));
  CHECK(error_code([] { stokes_geometry(0); }) == "InvalidPolynomial");
}

TEST_CASE("polynomial evaluation") {
  const PolynomialQD q(4, {Complex(1, 2), Complex(0.5), Complex(-3)});
  const Complex z(0.7, -1.3);
  const Complex direct = std::pow(z, 4) - 3.0 * z * z + 0.5 * z + Complex(1, 2);
  CHECK(std::abs(q(z) - direct) < 1e-12);
  const double h = 1e-5;
  const Complex fd = (q(z + h) - q(z - h)) / (2 * h);
  CHECK(std::abs(q.derivative(z) - fd) < 1e-6);
  CHECK(PolynomialQD(1, {})(Complex(2, 1)) == Complex(2, 1));
  CHECK(q.coefficient_radius() == doctest::Approx(std::sqrt(3.0)));
  CHECK(error_code([] { PolynomialQD(2, {1.0, 2.0}); }) == "InvalidPolynomial");
  CHECK(error_code([] { PolynomialQD(0, {}); }) == "InvalidPolynomial");
  CHECK(error_code([] { PolynomialQD(3, {Complex(NAN)}); }) == "InvalidPolynomial");
}

TEST_CASE("recessive solutions decay in their sector and grow next door") {
  const PolynomialQD q(2, {});
  const double r = default_seed_radius(q);
  // Seeded at 2r and integrated inward: |u| grows towards the origin, so it
  // falls monotonically outward beyond the seed scale.
  const auto in = subdominant_solution(q, 0, 2.0 * r, r);
  for (std::size_t i = 1; i < in.state.size(); ++i) {
    CHECK(std::abs(in.state[i][0]) > std::abs(in.state[i - 1][0]));
  }
  CHECK(std::abs(in.state.front()[0]) < 1e-6 * std::abs(in.state.back()[0]));

  // Y_0 from the origin along the neighbouring decay ray grows.
  const TipsResult tips = compute_tips(q);
  const Complex next = std::polar(1.0, decay_angle(2, 1));
  const auto grow = integrate_segment(q, 2.0 * next, r * next, {tips.at_origin[0]}).front();
  for (std::size_t i = 1; i < grow.state.size(); ++i) {
    CHECK(std::abs(grow.state[i][0]) > std::abs(grow.state[i - 1][0]));
  }

  CHECK(error_code([&] { wkb_seed(q, 0, 1.0); }) == "SeedRadiusTooSmall");
  CHECK(error_code([&] { wkb_seed(q, 4, r); }) == "InvalidArgument");
}

TEST_CASE("tips of z^2") {
  const PolynomialQD q(2, {});
  const TipsResult tips = compute_tips(q);
  REQUIRE(tips.values.size() == 4);
  CHECK_NOTHROW(tips.configuration());
  for (int k = 0; k < 4; ++k) {
    const auto& e = tips.estimates[static_cast<std::size_t>(k)];
    CHECK(e.error < 1e-8);
    CHECK(e.error >= e.route_gap);
    CHECK(chordal_distance(tips.values[static_cast<std::size_t>(k)],
                           tips.values[static_cast<std::size_t>((k + 1) % 4)]) > 0.1);
  }
  CHECK(wronskian_drift(q, tips) < 1e-6);
  CHECK(rotation_residual(tips.values) < 1e-4);
}

TEST_CASE("tip counts and rotation symmetry of z^d") {
  for (int d = 1; d <= 6; ++d) {
    const PolynomialQD q(d, {});
    const TipsResult tips = compute_tips(q);
    CHECK(tips.values.size() == static_cast<std::size_t>(d + 2));
    if (d >= 2) {
      CHECK(rotation_residual(tips.values) < 1e-6);
    }
  }
  const TipsResult skew = compute_tips(PolynomialQD(3, {Complex(0.3, -0.2), Complex(1.0)}));
  CHECK(skew.values.size() == 5);
  CHECK(rotation_residual(skew.values) > 1e-3);
}

TEST_CASE("seed radius changes tips only by a Moebius map") {
  for (const PolynomialQD& q : {PolynomialQD(2, {}), PolynomialQD(4, {Complex(1.0)})}) {
    const TipsResult a = compute_tips(q);
    TipParams doubled;
    doubled.radius = 2.0 * a.radius;
    const TipsResult b = compute_tips(q, doubled);
    double bound = 0.0;
    for (const auto& e : a.estimates) bound = std::max(bound, e.error);
    CHECK(tip_distance(a.configuration(), b.configuration()) < bound);
  }
}

TEST_CASE("pipeline closure through the grafting inverse") {
  for (const PolynomialQD& q : {PolynomialQD(2, {}), PolynomialQD(4, {Complex(1.0)})}) {
    const TipsResult tips = compute_tips(q);
    const int n = q.degree() + 2;
    const DiagonalSet fan = complete_to_triangulation(DiagonalSet(n, {}));
    const InverseGraft inv = graft_invert(tips.configuration(), fan);
    const GraftResult again = graft_forward(inv.polygon, WeightedDiagonals{inv.diagonals, inv.weights});
    double bound = 0.0;
    for (const auto& e : tips.estimates) bound = std::max(bound, e.error);
    CHECK(tip_distance(again.tips, tips.configuration()) < 10.0 * bound);
  }
}

TEST_CASE("finite-difference Schwarzian") {
  // Moebius maps have zero Schwarzian.
  const auto moebius = sample(Complex(-1, -1), 0.02, 101, 101, [](Complex z) { return (2.0 * z + 1.0) / (z + 3.0); });
  CHECK(max_deviation(schwarzian_fd(moebius), 0.0) < 1e-6);
  // S(exp) = -1/2.
  const auto expo = sample(Complex(-1, -1), 0.01, 201, 201, [](Complex z) { return std::exp(z); });
  CHECK(max_deviation(schwarzian_fd(expo), -0.5) < 1e-6);
  // S(z^3) = -4 / z^2.
  const auto cube = sample(Complex(1, -0.5), 0.01, 101, 3, [](Complex z) { return z * z * z; });
  const auto s = schwarzian_fd(cube);
  const Complex z = cube.node(50, 1);
  CHECK(std::abs(s[static_cast<std::size_t>(cube.nx + 50)] + 4.0 / (z * z)) < 1e-6);
  CHECK(std::isnan(s[0].real()));
  // f = z^2 has a critical point on the grid.
  const auto square = sample(Complex(-0.5, 0), 0.1, 11, 1, [](Complex w) { return w * w; });
  CHECK(error_code([&] { schwarzian_fd(square); }) == "CriticalPointOnStencil");
}

TEST_CASE("numerical developing map has Schwarzian q") {
  const PolynomialQD q(2, {});
  const TipsResult tips = compute_tips(q);
  const SchwarzianCheck c = schwarzian_check(q, tips, 1.0, 2.0, 0.025);
  CHECK(c.nodes > 1000);
  CHECK(c.max_relative_error < 1e-3);
}
