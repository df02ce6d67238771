#pragma once

#include <array>
#include <complex>
#include <string>

namespace crowngraft {

using Complex = std::complex<double>;

// Working tolerances. The defaults are what every operation uses unless a
// caller passes its own set.
struct Tolerances {
  double projective = 1e-10;  // |z1 w2 - z2 w1| below this means p == q
  double determinant = 1e-10;
  double circle = 1e-9;       // | |z| - 1 | allowed for polygon vertices
  double angle = 1e-12;       // weights this close to 2*pi snap to 0
};

inline constexpr Tolerances kDefaultTolerances{};

// A point of the Riemann sphere in homogeneous coordinates (z1 : z2),
// scaled so that max(|z1|, |z2|) == 1. Infinity is (1 : 0).
class SpherePoint {
 public:
  SpherePoint() : z1_(0.0), z2_(1.0) {}
  SpherePoint(Complex z);  // NOLINT: finite points convert implicitly
  SpherePoint(double x) : SpherePoint(Complex(x, 0.0)) {}  // NOLINT

  // Throws Error(DegeneratePoint) for (0 : 0) or non-finite input.
  static SpherePoint homogeneous(Complex z1, Complex z2);
  static SpherePoint infinity() { return SpherePoint(Complex(1.0), Complex(0.0), Raw{}); }

  Complex z1() const { return z1_; }
  Complex z2() const { return z2_; }

  bool is_infinite(double eps = kDefaultTolerances.projective) const { return std::abs(z2_) < eps; }
  bool is_zero(double eps = kDefaultTolerances.projective) const { return std::abs(z1_) < eps; }

  // z1 / z2. Only meaningful for finite points; infinity yields inf/nan.
  Complex value() const { return z1_ / z2_; }

  std::string to_string() const;

 private:
  struct Raw {};
  SpherePoint(Complex z1, Complex z2, Raw) : z1_(z1), z2_(z2) {}

  Complex z1_;
  Complex z2_;
};

// |z1(p) z2(q) - z2(p) z1(q)| for canonical representatives.
double projective_gap(const SpherePoint& p, const SpherePoint& q);

bool projectively_equal(const SpherePoint& p, const SpherePoint& q,
                        double eps = kDefaultTolerances.projective);

// Chordal distance normalised to [0, 1]: |p x q| / (|p| |q|) with Euclidean
// norms on C^2. Equals sin of half the spherical angle.
double chordal_distance(const SpherePoint& p, const SpherePoint& q);

// Element of PSL(2, C), stored with ad - bc = 1. The sign of the matrix is
// not meaningful; comparisons are up to sign.
class MoebiusMap {
 public:
  MoebiusMap() : m_{Complex(1.0), Complex(0.0), Complex(0.0), Complex(1.0)} {}

  // Normalises to unit determinant. Throws Error(DegenerateMap) when the
  // determinant is negligible relative to the entries.
  MoebiusMap(Complex a, Complex b, Complex c, Complex d);

  static MoebiusMap identity() { return {}; }

  Complex a() const { return m_[0]; }
  Complex b() const { return m_[1]; }
  Complex c() const { return m_[2]; }
  Complex d() const { return m_[3]; }
  Complex det() const { return m_[0] * m_[3] - m_[1] * m_[2]; }

  SpherePoint operator()(const SpherePoint& p) const { return apply(p); }
  SpherePoint apply(const SpherePoint& p) const;

  MoebiusMap inverse() const;

  // (this * other)(z) == this(other(z)).
  MoebiusMap operator*(const MoebiusMap& other) const;

 private:
  std::array<Complex, 4> m_;
};

// True when m and n agree up to sign, entrywise within eps.
bool approx_equal(const MoebiusMap& m, const MoebiusMap& n, double eps = kDefaultTolerances.determinant);

// The unique map with p_i -> q_i. Throws Error(DegenerateTriple) when two
// points of either triple coincide projectively.
MoebiusMap map_from_triples(const SpherePoint& p1, const SpherePoint& p2, const SpherePoint& p3,
                            const SpherePoint& q1, const SpherePoint& q2, const SpherePoint& q3,
                            double eps = kDefaultTolerances.projective);

// Cross-ratio coordinate: the image of d under the map sending (a, b, c) to
// (inf, -1, 0). So chi(inf, -1, 0, x) == x.
SpherePoint chi(const SpherePoint& a, const SpherePoint& b, const SpherePoint& c, const SpherePoint& d,
                double eps = kDefaultTolerances.projective);

// Rotation by angle t about the axis with endpoints p and q:
// C^-1 o (z -> e^{-it} z) o C where C(p) = 0, C(q) = inf and C(r) = 1 for
// the first r in {0, 1, i} distinct from p and q.
// Throws Error(DegenerateAxis) when p == q.
MoebiusMap elliptic(const SpherePoint& p, const SpherePoint& q, double t,
                    double eps = kDefaultTolerances.projective);

}  // namespace crowngraft
