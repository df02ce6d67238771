#pragma once

#include <array>
#include <optional>
#include <vector>

#include "crowngraft/arc_matching.hpp"
#include "crowngraft/grafting.hpp"
#include "crowngraft/moebius.hpp"

namespace crowngraft {

// q(z) = z^d + a_{d-2} z^{d-2} + ... + a_0: monic, no z^{d-1} term.
class PolynomialQD {
 public:
  // lower holds a_0, ..., a_{d-2}; missing trailing entries are zero.
  // Throws Error(InvalidPolynomial) for d < 1, too many or non-finite
  // coefficients.
  PolynomialQD(int d, std::vector<Complex> lower);

  int degree() const { return d_; }
  const std::vector<Complex>& lower() const { return lower_; }

  Complex operator()(Complex z) const;
  Complex derivative(Complex z) const;

  // max |a_i|^{1/(d-i)}: beyond a few times this the leading term dominates.
  double coefficient_radius() const;

 private:
  int d_;
  std::vector<Complex> lower_;
};

// Ray angles as rational multiples of pi in [0, 2).
struct StokesGeometry {
  int d = 0;
  std::vector<Rational> stokes;       // (2k+1)/(d+2), sorted
  std::vector<Rational> anti_stokes;  // 2k/(d+2), sorted
  // Sector k is bounded by (2k-1)/(d+2) and (2k+1)/(d+2), k = 0..d+1.
  std::vector<std::array<Rational, 2>> sectors;

  int sector_count() const { return d + 2; }
};

StokesGeometry stokes_geometry(int d);
double to_radians(const Rational& multiple_of_pi);

// Direction along which the solution recessive in sector k decays fastest
// for u'' + q u / 2 = 0 with monic q.
double decay_angle(int d, int k);

struct IntegratorOptions {
  double rtol = 1e-10;
  double atol = 1e-10;
};

// (u, u') at one point.
using OdeState = std::array<Complex, 2>;

struct SolutionSample {
  std::vector<Complex> z;
  std::vector<OdeState> state;
  std::vector<double> step;  // |dz| of the step that reached each node
};

// Integrates u'' = -q u / 2 from a to b along the segment, for each initial
// state. All solutions share the step sequence, so the samples line up.
std::vector<SolutionSample> integrate_segment(const PolynomialQD& q, Complex a, Complex b,
                                              const std::vector<OdeState>& initial,
                                              const IntegratorOptions& options = {});

// sqrt(2) R^{(d+2)/2} / (d+2): modulus of the WKB phase at radius R.
double wkb_phase(int d, double radius);

// Radius where the WKB phase reaches 16, raised to clear the coefficients.
double default_seed_radius(const PolynomialQD& q);

// WKB seed (u, u') of the sector-k recessive solution at radius R along the
// decay direction. Throws Error(SeedRadiusTooSmall).
OdeState wkb_seed(const PolynomialQD& q, int k, double radius);

// Recessive solution of sector k seeded at radius R and integrated along its
// decay ray to radius r_stop (which may be 0).
SolutionSample subdominant_solution(const PolynomialQD& q, int k, double radius, double r_stop,
                                    const IntegratorOptions& options = {});

// u_a u_b' - u_a' u_b; constant along solutions.
Complex wronskian(const OdeState& a, const OdeState& b);

struct TipParams {
  std::optional<double> radius;
  double tol = 1e-10;
  double growth = 1.5;
  int min_samples = 4;
  int max_samples = 12;
};

struct TipEstimate {
  int k = 0;
  SpherePoint value;
  double error = 0.0;
  double cauchy = 0.0;      // last successive-radius change
  double route_gap = 0.0;   // ray limit against the Wronskian formula
  double seed_shift = 0.0;  // change when reseeding further out
};

struct TipsResult {
  std::vector<TipEstimate> estimates;
  std::vector<SpherePoint> values;
  double radius = 0.0;
  // Values at the origin of the recessive solutions, sector by sector.
  std::vector<OdeState> at_origin;

  TipConfiguration configuration() const { return TipConfiguration(values); }
};

// Asymptotic values of f = Y_0 / Y_1 along the decay ray of each sector.
// Throws Error(NoConvergence) and Error(ConfigurationInvalid) (numerical).
TipsResult compute_tips(const PolynomialQD& q, const TipParams& params = {});

// Largest relative change of W(Y_0, Y_1) while integrating both solutions
// from the origin out to the seed radius along every anti-Stokes ray, where
// neither solution dominates.
double wronskian_drift(const PolynomialQD& q, const TipsResult& tips, const IntegratorOptions& options = {});

// Fits the Moebius map M with M(c_k) = c_{k+1} for k = 0, 1, 2 and returns
// max_k chordal(M(c_k), c_{k+1}) cyclically. Near zero for q = z^d.
double rotation_residual(const std::vector<SpherePoint>& tips);

// Uniform grid of samples, x fastest: value at (x0 + i h) + I (y0 + j h).
struct GridSamples {
  Complex origin;
  double h = 0.0;
  int nx = 0;
  int ny = 0;
  std::vector<Complex> values;  // NaN marks nodes outside the domain

  Complex node(int i, int j) const { return origin + Complex(i * h, j * h); }
  Complex at(int i, int j) const { return values[static_cast<std::size_t>(j * nx + i)]; }
};

// Fourth-order finite-difference Schwarzian along the x direction. Nodes
// without a full stencil are NaN. Throws Error(CriticalPointOnStencil) when
// f' nearly vanishes at a computed node.
std::vector<Complex> schwarzian_fd(const GridSamples& f);

struct SchwarzianCheck {
  double max_relative_error = 0.0;
  int nodes = 0;
};

// Samples f = Y_0 / Y_1 on a grid over the annulus r_min <= |z| <= r_max and
// compares its finite-difference Schwarzian with q.
SchwarzianCheck schwarzian_check(const PolynomialQD& q, const TipsResult& tips, double r_min, double r_max,
                                 double h, const IntegratorOptions& options = {1e-12, 1e-14});

}  // namespace crowngraft
