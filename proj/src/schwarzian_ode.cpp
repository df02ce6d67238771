#include "crowngraft/schwarzian_ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/numeric/odeint.hpp>

#include "crowngraft/error.hpp"

namespace crowngraft {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::vector<Complex>;

constexpr double kPi = std::numbers::pi;
const Complex kNaN(std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN());

// Pieces of at most this much WKB phase are integrated before rescaling.
constexpr double kMaxPhasePerPiece = 200.0;

SpherePoint ratio(const OdeState& top, const OdeState& bottom) {
  return SpherePoint::homogeneous(top[0], bottom[0]);
}

// c_k = W(Y_k, Y_0) / W(Y_k, Y_1) from values at a common point.
std::vector<SpherePoint> wronskian_tips(const std::vector<OdeState>& at_origin) {
  std::vector<SpherePoint> out;
  for (const OdeState& v : at_origin) {
    out.push_back(SpherePoint::homogeneous(wronskian(v, at_origin[0]), wronskian(v, at_origin[1])));
  }
  return out;
}

// Largest chordal distance between corresponding points once the first
// three of each list are sent to 0, inf, 1.
double shift_modulo_moebius(const std::vector<SpherePoint>& a, const std::vector<SpherePoint>& b) {
  const SpherePoint zero(0.0);
  const SpherePoint one(1.0);
  const MoebiusMap ma = map_from_triples(a[0], a[1], a[2], zero, SpherePoint::infinity(), one);
  const MoebiusMap mb = map_from_triples(b[0], b[1], b[2], zero, SpherePoint::infinity(), one);
  double out = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    out = std::max(out, chordal_distance(ma(a[k]), mb(b[k])));
  }
  return out;
}

OdeState rescaled(const OdeState& s, double scale) { return {s[0] / scale, s[1] / scale}; }

double state_norm(const OdeState& s) { return std::max(std::abs(s[0]), std::abs(s[1])); }

// Integrates along the ray at angle dir from radius r0 to r1 in pieces of
// bounded WKB phase, rescaling the states jointly after each piece. Ratios
// and Wronskian ratios are unaffected.
std::vector<OdeState> march(const PolynomialQD& q, Complex dir, double r0, double r1, std::vector<OdeState> states,
                            const IntegratorOptions& options) {
  const double phase = std::abs(wkb_phase(q.degree(), r1) - wkb_phase(q.degree(), r0));
  const int pieces = std::max(1, static_cast<int>(std::ceil(phase / kMaxPhasePerPiece)));
  for (int p = 1; p <= pieces; ++p) {
    const double from = r0 + (r1 - r0) * (p - 1) / pieces;
    const double to = r0 + (r1 - r0) * p / pieces;
    const auto piece = integrate_segment(q, from * dir, to * dir, states, options);
    double scale = 0.0;
    for (std::size_t k = 0; k < states.size(); ++k) {
      states[k] = piece[k].state.back();
      scale = std::max(scale, state_norm(states[k]));
    }
    for (OdeState& st : states) st = rescaled(st, scale);
  }
  return states;
}

std::vector<OdeState> recessive_at_origin(const PolynomialQD& q, double radius, const IntegratorOptions& options) {
  std::vector<OdeState> out;
  for (int k = 0; k < q.degree() + 2; ++k) {
    const Complex dir = std::polar(1.0, decay_angle(q.degree(), k));
    out.push_back(march(q, dir, radius, 0.0, {wkb_seed(q, k, radius)}, options).front());
  }
  return out;
}

// Five-point stencil values f(x + m h), m = -3..3, from a grid row.
struct Derivatives {
  Complex d1, d2, d3;
};

std::optional<Derivatives> stencil(const GridSamples& f, int i, int j) {
  if (i < 3 || i + 3 >= f.nx) {
    return std::nullopt;
  }
  Complex v[7];
  for (int m = -3; m <= 3; ++m) {
    v[m + 3] = f.at(i + m, j);
    if (!std::isfinite(v[m + 3].real()) || !std::isfinite(v[m + 3].imag())) {
      return std::nullopt;
    }
  }
  const double h = f.h;
  Derivatives out;
  out.d1 = (v[1] - 8.0 * v[2] + 8.0 * v[4] - v[5]) / (12.0 * h);
  out.d2 = (-v[1] + 16.0 * v[2] - 30.0 * v[3] + 16.0 * v[4] - v[5]) / (12.0 * h * h);
  out.d3 = (-v[6] + 8.0 * v[5] - 13.0 * v[4] + 13.0 * v[2] - 8.0 * v[1] + v[0]) / (8.0 * h * h * h);
  return out;
}

double stencil_size(const GridSamples& f, int i, int j) {
  double out = 0.0;
  for (int m = -3; m <= 3; ++m) {
    out = std::max(out, std::abs(f.at(i + m, j)));
  }
  return out;
}

}  // namespace

PolynomialQD::PolynomialQD(int d, std::vector<Complex> lower) : d_(d), lower_(std::move(lower)) {
  if (d < 1) {
    fail_domain("InvalidPolynomial", "degree must be at least 1");
  }
  if (static_cast<int>(lower_.size()) > std::max(d - 1, 0)) {
    fail_domain("InvalidPolynomial", "at most d - 1 lower coefficients a_0..a_{d-2} are allowed");
  }
  for (const Complex& a : lower_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      fail_domain("InvalidPolynomial", "coefficients must be finite");
    }
  }
  lower_.resize(static_cast<std::size_t>(std::max(d - 1, 0)), Complex(0.0));
}

Complex PolynomialQD::operator()(Complex z) const {
  Complex acc = z;  // z^d + 0 z^{d-1}, then Horner over the rest
  for (int i = d_ - 2; i >= 0; --i) {
    acc = acc * z + lower_[static_cast<std::size_t>(i)];
  }
  return d_ == 1 ? z : acc;
}

Complex PolynomialQD::derivative(Complex z) const {
  if (d_ == 1) {
    return 1.0;
  }
  Complex acc = static_cast<double>(d_) * z;
  for (int i = d_ - 2; i >= 1; --i) {
    acc = acc * z + static_cast<double>(i) * lower_[static_cast<std::size_t>(i)];
  }
  return acc;
}

double PolynomialQD::coefficient_radius() const {
  double r = 0.0;
  for (int i = 0; i + 2 <= d_; ++i) {
    const double a = std::abs(lower_[static_cast<std::size_t>(i)]);
    if (a > 0.0) {
      r = std::max(r, std::pow(a, 1.0 / (d_ - i)));
    }
  }
  return r;
}

StokesGeometry stokes_geometry(int d) {
  if (d < 1) {
    fail_domain("InvalidPolynomial", "degree must be at least 1");
  }
  StokesGeometry g;
  g.d = d;
  const std::int64_t n = d + 2;
  for (std::int64_t k = 0; k < n; ++k) {
    g.stokes.push_back(Rational(2 * k + 1, n));
    g.anti_stokes.push_back(Rational(2 * k, n));
    Rational lo(2 * k - 1, n);
    if (lo < Rational(0)) {
      lo += Rational(2);
    }
    g.sectors.push_back({lo, Rational(2 * k + 1, n)});
  }
  return g;
}

double to_radians(const Rational& multiple_of_pi) {
  return kPi * static_cast<double>(multiple_of_pi.numerator()) / static_cast<double>(multiple_of_pi.denominator());
}

double decay_angle(int d, int k) { return (2.0 * k + 1.0) * kPi / (d + 2.0); }

std::vector<SolutionSample> integrate_segment(const PolynomialQD& q, Complex a, Complex b,
                                              const std::vector<OdeState>& initial,
                                              const IntegratorOptions& options) {
  const std::size_t n = initial.size();
  std::vector<SolutionSample> out(n);
  const double length = std::abs(b - a);
  const Complex dir = length > 0.0 ? (b - a) / length : Complex(1.0);

  State y(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    y[2 * k] = initial[k][0];
    y[2 * k + 1] = initial[k][1];
  }
  auto record = [&](const State& s, double t, double step) {
    const Complex z = a + t * dir;
    for (std::size_t k = 0; k < n; ++k) {
      out[k].z.push_back(z);
      out[k].state.push_back({s[2 * k], s[2 * k + 1]});
      out[k].step.push_back(step);
    }
  };
  if (length == 0.0) {
    record(y, 0.0, 0.0);
    return out;
  }

  // d/ds along z = a + s dir: u' = dir u_z, u_z' = dir * (-q/2) u.
  auto rhs = [&](const State& s, State& ds, double t) {
    const Complex z = a + t * dir;
    const Complex c = -0.5 * q(z);
    for (std::size_t k = 0; k < n; ++k) {
      ds[2 * k] = dir * s[2 * k + 1];
      ds[2 * k + 1] = dir * c * s[2 * k];
    }
  };
  double last = 0.0;
  auto observer = [&](const State& s, double t) {
    record(s, t, t - last);
    last = t;
  };
  auto stepper = odeint::make_controlled(options.atol, options.rtol, odeint::runge_kutta_fehlberg78<State>());
  const double scale = std::max(1.0, std::pow(std::max(std::abs(a), std::abs(b)), q.degree() / 2.0));
  try {
    odeint::integrate_adaptive(stepper, rhs, y, 0.0, length, std::min(length, 0.05 / scale), observer);
  } catch (const std::exception& e) {
    fail_numerical("StepFailure", std::string("integration failed: ") + e.what());
  }
  if (out[0].z.empty() || std::abs(out[0].z.back() - b) > 1e-12 * std::max(1.0, std::abs(b))) {
    record(y, length, length - last);
  }
  for (std::size_t k = 0; k < n; ++k) {
    out[k].z.back() = b;
    const OdeState& s = out[k].state.back();
    if (!std::isfinite(std::abs(s[0])) || !std::isfinite(std::abs(s[1]))) {
      fail_numerical("StepFailure", "solution overflowed between " + SpherePoint(a).to_string() + " and " +
                                        SpherePoint(b).to_string());
    }
  }
  return out;
}

double wkb_phase(int d, double radius) { return std::sqrt(2.0) * std::pow(radius, (d + 2) / 2.0) / (d + 2); }

double default_seed_radius(const PolynomialQD& q) {
  const int d = q.degree();
  const double r = std::pow(16.0 * (d + 2) / std::sqrt(2.0), 2.0 / (d + 2));
  return std::max(r, 2.0 * (1.0 + q.coefficient_radius()));
}

OdeState wkb_seed(const PolynomialQD& q, int k, double radius) {
  const int d = q.degree();
  if (k < 0 || k >= d + 2) {
    fail_domain("InvalidArgument", "sector index out of range");
  }
  if (wkb_phase(d, radius) < 6.0 || radius < 1.5 * q.coefficient_radius()) {
    fail_domain("SeedRadiusTooSmall", "seed radius " + std::to_string(radius) + " is inside the WKB scale");
  }
  const double theta = decay_angle(d, k);
  const Complex dir = std::polar(1.0, theta);
  const Complex z0 = radius * dir;
  const Complex big_q = -0.5 * q(z0);
  const Complex big_q_prime = -0.5 * q.derivative(z0);
  Complex s = std::sqrt(big_q);
  if ((s * dir).real() < 0.0) {
    s = -s;
  }
  // u = Q^{-1/4} exp(-int s); the overall factor is irrelevant.
  return {Complex(1.0), -s - big_q_prime / (4.0 * big_q)};
}

SolutionSample subdominant_solution(const PolynomialQD& q, int k, double radius, double r_stop,
                                    const IntegratorOptions& options) {
  const Complex dir = std::polar(1.0, decay_angle(q.degree(), k));
  return integrate_segment(q, radius * dir, r_stop * dir, {wkb_seed(q, k, radius)}, options).front();
}

Complex wronskian(const OdeState& a, const OdeState& b) { return a[0] * b[1] - a[1] * b[0]; }

TipsResult compute_tips(const PolynomialQD& q, const TipParams& params) {
  const int d = q.degree();
  const int n = d + 2;
  if (!(params.tol > 0.0) || !(params.growth > 1.0) || params.min_samples < 2 ||
      params.max_samples < params.min_samples) {
    fail_domain("InvalidArgument", "tip parameters out of range");
  }
  TipsResult out;
  out.radius = params.radius.value_or(default_seed_radius(q));
  // Below about 1e-14 the controller cannot meet the request in doubles.
  const double itol = std::max(params.tol * 1e-2, 1e-14);
  const IntegratorOptions options{itol, itol};

  out.at_origin = recessive_at_origin(q, out.radius, options);
  const std::vector<SpherePoint> route2 = wronskian_tips(out.at_origin);
  const std::vector<SpherePoint> reseeded = wronskian_tips(recessive_at_origin(q, 1.5 * out.radius, options));
  // The seed normalisation rescales Y_0 and Y_1 by R-dependent constants,
  // so the configuration is only R-independent up to a Moebius map.
  const double seed_shift = shift_modulo_moebius(route2, reseeded);
  const double cauchy_tol = 100.0 * params.tol;

  for (int k = 0; k < n; ++k) {
    // Route 1: f = Y_0 / Y_1 along the ray where Y_k decays fastest.
    const Complex dir = std::polar(1.0, decay_angle(d, k));
    OdeState y0 = out.at_origin[0];
    OdeState y1 = out.at_origin[1];
    double r = 0.0;
    double target = out.radius;
    std::optional<SpherePoint> previous;
    double change = 1.0;
    int samples = 0;
    while (true) {
      const auto next = march(q, dir, r, target, {y0, y1}, options);
      y0 = next[0];
      y1 = next[1];
      r = target;
      const SpherePoint f = ratio(y0, y1);
      ++samples;
      if (previous) {
        change = chordal_distance(f, *previous);
      }
      previous = f;
      if (samples >= params.min_samples && change < cauchy_tol) {
        break;
      }
      if (samples >= params.max_samples) {
        fail_numerical("NoConvergence", "tip " + std::to_string(k) + " did not stabilise (last change " +
                                            std::to_string(change) + ")");
      }
      target *= params.growth;
    }
    TipEstimate e;
    e.k = k;
    e.value = *previous;
    e.cauchy = change;
    e.route_gap = chordal_distance(*previous, route2[static_cast<std::size_t>(k)]);
    e.seed_shift = seed_shift;
    e.error = std::max({e.cauchy, e.route_gap, e.seed_shift, params.tol});
    out.estimates.push_back(e);
    out.values.push_back(e.value);
  }
  for (int k = 0; k < n; ++k) {
    const TipEstimate& a = out.estimates[static_cast<std::size_t>(k)];
    const TipEstimate& b = out.estimates[static_cast<std::size_t>((k + 1) % n)];
    if (chordal_distance(a.value, b.value) <= a.error + b.error) {
      fail_numerical("ConfigurationInvalid", "tips " + std::to_string(a.k) + " and " + std::to_string(b.k) +
                                                 " agree within their error bounds");
    }
  }
  return out;
}

double wronskian_drift(const PolynomialQD& q, const TipsResult& tips, const IntegratorOptions& options) {
  const Complex w0 = wronskian(tips.at_origin[0], tips.at_origin[1]);
  double out = 0.0;
  for (int k = 0; k < q.degree() + 2; ++k) {
    const Complex end = std::polar(tips.radius, 2.0 * kPi * k / (q.degree() + 2));
    const auto run = integrate_segment(q, 0.0, end, {tips.at_origin[0], tips.at_origin[1]}, options);
    for (std::size_t i = 0; i < run[0].state.size(); ++i) {
      out = std::max(out, std::abs(wronskian(run[0].state[i], run[1].state[i]) - w0) / std::abs(w0));
    }
  }
  return out;
}

double rotation_residual(const std::vector<SpherePoint>& tips) {
  const std::size_t n = tips.size();
  if (n < 4) {
    fail_domain("InvalidArgument", "need at least four tips");
  }
  const MoebiusMap m = map_from_triples(tips[0], tips[1], tips[2], tips[1], tips[2], tips[3]);
  double out = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    out = std::max(out, chordal_distance(m(tips[k]), tips[(k + 1) % n]));
  }
  return out;
}

std::vector<Complex> schwarzian_fd(const GridSamples& f) {
  std::vector<Complex> out(f.values.size(), kNaN);
  for (int j = 0; j < f.ny; ++j) {
    for (int i = 0; i < f.nx; ++i) {
      const auto der = stencil(f, i, j);
      if (!der) {
        continue;
      }
      const double size = std::max(stencil_size(f, i, j), 1.0);
      if (std::abs(der->d1) * f.h < 1e-8 * size) {
        fail_numerical("CriticalPointOnStencil",
                       "f' nearly vanishes at " + SpherePoint(f.node(i, j)).to_string());
      }
      const Complex t = der->d2 / der->d1;
      out[static_cast<std::size_t>(j * f.nx + i)] = der->d3 / der->d1 - 1.5 * t * t;
    }
  }
  return out;
}

SchwarzianCheck schwarzian_check(const PolynomialQD& q, const TipsResult& tips, double r_min, double r_max,
                                 double h, const IntegratorOptions& options) {
  if (!(h > 0.0) || !(r_min >= 0.0) || !(r_max > r_min) || tips.at_origin.size() < 2) {
    fail_domain("InvalidArgument", "bad Schwarzian check parameters");
  }
  const double half = r_max + 3.0 * h;
  const int count = static_cast<int>(std::ceil(2.0 * half / h)) + 1;
  GridSamples g01{Complex(-half, -half), h, count, count, {}};
  GridSamples g10 = g01;
  g01.values.assign(static_cast<std::size_t>(count * count), kNaN);
  g10.values = g01.values;

  for (int j = 0; j < count; ++j) {
    const double y = g01.node(0, j).imag();
    if (std::abs(y) > r_max) {
      continue;
    }
    // Start the row from the origin, then march node to node.
    OdeState y0 = tips.at_origin[0];
    OdeState y1 = tips.at_origin[1];
    Complex z = 0.0;
    for (int i = 0; i < count; ++i) {
      const Complex node = g01.node(i, j);
      const auto step = integrate_segment(q, z, node, {y0, y1}, options);
      y0 = step[0].state.back();
      y1 = step[1].state.back();
      z = node;
      const std::size_t at = static_cast<std::size_t>(j * count + i);
      g01.values[at] = y0[0] / y1[0];
      g10.values[at] = y1[0] / y0[0];
    }
  }

  SchwarzianCheck out;
  for (int j = 0; j < count; ++j) {
    for (int i = 3; i + 3 < count; ++i) {
      const Complex z = g01.node(i, j);
      if (std::abs(z) < r_min || std::abs(z) > r_max) {
        continue;
      }
      // S is Moebius invariant, so use whichever of f, 1/f is smaller here.
      const GridSamples& g = stencil_size(g01, i, j) <= stencil_size(g10, i, j) ? g01 : g10;
      const auto der = stencil(g, i, j);
      if (!der) {
        continue;
      }
      const Complex t = der->d2 / der->d1;
      const Complex s = der->d3 / der->d1 - 1.5 * t * t;
      const Complex expected = q(z);
      const double err = std::abs(s - expected) / std::max(std::abs(expected), 1e-300);
      out.max_relative_error = std::max(out.max_relative_error, err);
      ++out.nodes;
    }
  }
  return out;
}

}  // namespace crowngraft
