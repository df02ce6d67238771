#include "crowngraft/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "crowngraft/error.hpp"

namespace crowngraft {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Sends (p1, p2, p3) to (0, inf, 1). Rows are the linear functionals
// det(., p1) and det(., p2), weighted so that p3 lands on (1 : 1).
MoebiusMap to_standard(const SpherePoint& p1, const SpherePoint& p2, const SpherePoint& p3) {
  auto cross = [](const SpherePoint& u, const SpherePoint& v) { return u.z1() * v.z2() - u.z2() * v.z1(); };
  const Complex alpha = cross(p3, p2);
  const Complex beta = cross(p3, p1);
  return MoebiusMap(alpha * p1.z2(), -alpha * p1.z1(), beta * p2.z2(), -beta * p2.z1());
}

void require_distinct(const SpherePoint& a, const SpherePoint& b, const SpherePoint& c, double eps,
                      const char* code) {
  if (projectively_equal(a, b, eps) || projectively_equal(a, c, eps) || projectively_equal(b, c, eps)) {
    fail_domain(code, "points " + a.to_string() + ", " + b.to_string() + ", " + c.to_string() +
                          " are not pairwise distinct");
  }
}

}  // namespace

SpherePoint::SpherePoint(Complex z) : z1_(z), z2_(1.0) {
  if (!finite(z)) {
    fail_domain("DegeneratePoint", "non-finite coordinate; use SpherePoint::infinity()");
  }
  const double scale = std::max(std::abs(z), 1.0);
  z1_ /= scale;
  z2_ /= scale;
}

SpherePoint SpherePoint::homogeneous(Complex z1, Complex z2) {
  if (!finite(z1) || !finite(z2)) {
    fail_domain("DegeneratePoint", "non-finite homogeneous coordinates");
  }
  const double scale = std::max(std::abs(z1), std::abs(z2));
  if (scale == 0.0) {
    fail_domain("DegeneratePoint", "(0 : 0) is not a point of the sphere");
  }
  return SpherePoint(z1 / scale, z2 / scale, Raw{});
}

std::string SpherePoint::to_string() const {
  std::ostringstream os;
  os.precision(17);
  if (z2_ == Complex(0.0)) {
    os << "inf";
  } else {
    const Complex z = value();
    os << "(" << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i)";
  }
  return os.str();
}

double projective_gap(const SpherePoint& p, const SpherePoint& q) {
  return std::abs(p.z1() * q.z2() - p.z2() * q.z1());
}

bool projectively_equal(const SpherePoint& p, const SpherePoint& q, double eps) {
  return projective_gap(p, q) < eps;
}

double chordal_distance(const SpherePoint& p, const SpherePoint& q) {
  const double np = std::sqrt(std::norm(p.z1()) + std::norm(p.z2()));
  const double nq = std::sqrt(std::norm(q.z1()) + std::norm(q.z2()));
  return projective_gap(p, q) / (np * nq);
}

MoebiusMap::MoebiusMap(Complex a, Complex b, Complex c, Complex d) : m_{a, b, c, d} {
  for (const Complex& e : m_) {
    if (!finite(e)) {
      fail_domain("DegenerateMap", "non-finite matrix entry");
    }
  }
  double scale = 0.0;
  for (const Complex& e : m_) {
    scale = std::max(scale, std::abs(e));
  }
  if (scale == 0.0) {
    fail_domain("DegenerateMap", "zero matrix");
  }
  for (Complex& e : m_) {
    e /= scale;
  }
  const Complex det = m_[0] * m_[3] - m_[1] * m_[2];
  if (std::abs(det) < kDefaultTolerances.determinant) {
    fail_domain("DegenerateMap", "singular matrix");
  }
  const Complex root = std::sqrt(det);
  for (Complex& e : m_) {
    e /= root;
  }
}

SpherePoint MoebiusMap::apply(const SpherePoint& p) const {
  return SpherePoint::homogeneous(m_[0] * p.z1() + m_[1] * p.z2(), m_[2] * p.z1() + m_[3] * p.z2());
}

MoebiusMap MoebiusMap::inverse() const { return MoebiusMap(m_[3], -m_[1], -m_[2], m_[0]); }

MoebiusMap MoebiusMap::operator*(const MoebiusMap& o) const {
  return MoebiusMap(m_[0] * o.m_[0] + m_[1] * o.m_[2], m_[0] * o.m_[1] + m_[1] * o.m_[3],
                    m_[2] * o.m_[0] + m_[3] * o.m_[2], m_[2] * o.m_[1] + m_[3] * o.m_[3]);
}

bool approx_equal(const MoebiusMap& m, const MoebiusMap& n, double eps) {
  const std::array<Complex, 4> x{m.a(), m.b(), m.c(), m.d()};
  const std::array<Complex, 4> y{n.a(), n.b(), n.c(), n.d()};
  double plus = 0.0;
  double minus = 0.0;
  double scale = 1.0;
  for (std::size_t i = 0; i < 4; ++i) {
    plus = std::max(plus, std::abs(x[i] - y[i]));
    minus = std::max(minus, std::abs(x[i] + y[i]));
    scale = std::max({scale, std::abs(x[i]), std::abs(y[i])});
  }
  return std::min(plus, minus) < eps * scale;
}

MoebiusMap map_from_triples(const SpherePoint& p1, const SpherePoint& p2, const SpherePoint& p3,
                            const SpherePoint& q1, const SpherePoint& q2, const SpherePoint& q3, double eps) {
  require_distinct(p1, p2, p3, eps, "DegenerateTriple");
  require_distinct(q1, q2, q3, eps, "DegenerateTriple");
  return to_standard(q1, q2, q3).inverse() * to_standard(p1, p2, p3);
}

SpherePoint chi(const SpherePoint& a, const SpherePoint& b, const SpherePoint& c, const SpherePoint& d,
                double eps) {
  static const SpherePoint kInf = SpherePoint::infinity();
  static const SpherePoint kMinusOne(-1.0);
  static const SpherePoint kZero(0.0);
  return map_from_triples(a, b, c, kInf, kMinusOne, kZero, eps)(d);
}

MoebiusMap elliptic(const SpherePoint& p, const SpherePoint& q, double t, double eps) {
  if (projectively_equal(p, q, eps)) {
    fail_domain("DegenerateAxis", "rotation axis endpoints coincide: " + p.to_string());
  }
  if (t == 0.0) {
    return MoebiusMap::identity();
  }
  const SpherePoint anchors[] = {SpherePoint(0.0), SpherePoint(1.0), SpherePoint(Complex(0.0, 1.0))};
  const SpherePoint* r = nullptr;
  for (const SpherePoint& candidate : anchors) {
    if (!projectively_equal(candidate, p, eps) && !projectively_equal(candidate, q, eps)) {
      r = &candidate;
      break;
    }
  }
  // Three anchors, two excluded points: one always survives.
  const MoebiusMap conj = to_standard(p, q, *r);
  const Complex half = std::polar(1.0, -0.5 * t);
  const MoebiusMap rotation(half, 0.0, 0.0, 1.0 / half);
  return conj.inverse() * rotation * conj;
}

}  // namespace crowngraft
