#include "crowngraft/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "crowngraft/error.hpp"

namespace crowngraft {

namespace {

constexpr double kPi = std::numbers::pi;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", std::abs(x) < 5e-4 ? 0.0 : x);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

// One square panel; model coordinates in [-extent, extent]^2, y up.
class Panel {
 public:
  Panel(double x0, double size, double extent) : x0_(x0), size_(size), extent_(extent) {}

  double sx(double x) const { return x0_ + size_ * (0.5 + 0.45 * x / extent_); }
  double sy(double y) const { return size_ * (0.5 - 0.45 * y / extent_); }
  double scale() const { return 0.45 * size_ / extent_; }

  void circle(std::ostringstream& o, Complex c, double r_model, const std::string& style) const {
    o << "<circle cx=\"" << num(sx(c.real())) << "\" cy=\"" << num(sy(c.imag())) << "\" r=\""
      << num(r_model * scale()) << "\" " << style << "/>\n";
  }
  void dot(std::ostringstream& o, Complex c, double r_px, const std::string& style) const {
    o << "<circle cx=\"" << num(sx(c.real())) << "\" cy=\"" << num(sy(c.imag())) << "\" r=\"" << num(r_px)
      << "\" " << style << "/>\n";
  }
  void line(std::ostringstream& o, Complex a, Complex b, const std::string& style) const {
    o << "<line x1=\"" << num(sx(a.real())) << "\" y1=\"" << num(sy(a.imag())) << "\" x2=\"" << num(sx(b.real()))
      << "\" y2=\"" << num(sy(b.imag())) << "\" " << style << "/>\n";
  }
  void text(std::ostringstream& o, Complex at, const std::string& s, const std::string& style = "") const {
    o << "<text x=\"" << num(sx(at.real())) << "\" y=\"" << num(sy(at.imag())) << "\" font-size=\"11\" "
      << style << ">" << escape(s) << "</text>\n";
  }

  // Hyperbolic geodesic between two points of the unit circle. Returns its
  // midpoint for labels.
  Complex geodesic(std::ostringstream& o, Complex p, Complex q, const std::string& style) const {
    const double cos_theta = (p * std::conj(q)).real();
    if (cos_theta < -1.0 + 1e-9) {
      line(o, p, q, style);
      return 0.0;
    }
    const Complex c = (p + q) / (1.0 + cos_theta);
    const double r = std::abs(p - c);
    if (std::abs(c) > 1e6) {
      line(o, p, q, style);
      return 0.5 * (p + q);
    }
    const double dx = sx(q.real()) - sx(p.real());
    const double dy = sy(q.imag()) - sy(p.imag());
    const double cross = dx * (sy(c.imag()) - sy(p.imag())) - dy * (sx(c.real()) - sx(p.real()));
    o << "<path d=\"M " << num(sx(p.real())) << " " << num(sy(p.imag())) << " A " << num(r * scale()) << " "
      << num(r * scale()) << " 0 0 " << (cross > 0 ? 1 : 0) << " " << num(sx(q.real())) << " "
      << num(sy(q.imag())) << "\" fill=\"none\" " << style << "/>\n";
    return c - r * c / std::abs(c);
  }

 private:
  double x0_;
  double size_;
  double extent_;
};

std::string header(double width, double height) {
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
    << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  return o.str();
}

const char* kDisk = "fill=\"#f4f6fb\" stroke=\"#333\" stroke-width=\"1.2\"";
const char* kVertex = "fill=\"#222\"";
const char* kArc = "stroke=\"#c0392b\" stroke-width=\"1.5\"";
const char* kGraph = "stroke=\"#2471a3\" stroke-width=\"1.2\"";

Complex on_circle(double angle) { return std::polar(1.0, angle); }

void draw_tips(std::ostringstream& o, const Panel& panel, double extent, const std::vector<SpherePoint>& tips,
               const std::vector<double>& errors) {
  panel.circle(o, 0.0, extent, "fill=\"none\" stroke=\"#999\" stroke-dasharray=\"4 3\"");
  panel.line(o, Complex(-extent, 0), Complex(extent, 0), "stroke=\"#ddd\"");
  panel.line(o, Complex(0, -extent), Complex(0, extent), "stroke=\"#ddd\"");
  for (std::size_t k = 0; k < tips.size(); ++k) {
    const SpherePoint& p = tips[k];
    const std::string label = "c" + std::to_string(k);
    if (p.is_infinite(1e-12) || std::abs(p.value()) > extent) {
      // Off the chart: a glyph on the rim in the direction of the point.
      const double angle = p.is_infinite(1e-12) ? kPi / 2 : std::arg(p.value());
      const Complex rim = std::polar(extent, angle);
      panel.dot(o, rim, 5.0, "fill=\"white\" stroke=\"#8e44ad\" stroke-width=\"2\"");
      panel.text(o, rim * 1.08, (p.is_infinite(1e-12) ? "inf " : "far ") + label, "text-anchor=\"middle\"");
      continue;
    }
    const Complex z = p.value();
    if (k < errors.size()) {
      // Chordal radius e near z is about e (1 + |z|^2) in the chart.
      const double r = std::max(errors[k] * (1.0 + std::norm(z)), 1.5 / panel.scale());
      panel.line(o, z - r, z + r, "stroke=\"#8e44ad\"");
      panel.line(o, z - Complex(0, r), z + Complex(0, r), "stroke=\"#8e44ad\"");
      panel.circle(o, z, r, "fill=\"none\" stroke=\"#8e44ad\" stroke-width=\"0.8\"");
    }
    panel.dot(o, z, 3.5, "fill=\"#8e44ad\"");
    panel.text(o, z + Complex(0.04 * extent, 0.04 * extent), label);
  }
}

double chart_extent(const std::vector<SpherePoint>& tips) {
  double m = 1.0;
  for (const SpherePoint& p : tips) {
    if (!p.is_infinite(1e-12) && std::abs(p.value()) <= 1e3) m = std::max(m, std::abs(p.value()));
  }
  return 1.25 * m;
}

}  // namespace

FigureSpec parse_layers(const std::string& list) {
  FigureSpec spec;
  spec.disk = spec.vertices = spec.diagonals = spec.tips = spec.dual_graph = false;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "disk") spec.disk = true;
    else if (item == "vertices") spec.vertices = true;
    else if (item == "diagonals") spec.diagonals = true;
    else if (item == "tips") spec.tips = true;
    else if (item == "dual_graph") spec.dual_graph = true;
    else if (item == "all") spec = FigureSpec{};
    else fail_schema("InvalidLayer", "unknown layer '" + item + "'");
  }
  return spec;
}

std::string render_polygon_svg(const IdealPolygon& polygon, const WeightedDiagonals& diagonals,
                               const std::vector<SpherePoint>& tips, const FigureSpec& spec) {
  const bool tip_panel = spec.tips && !tips.empty();
  const double s = spec.size;
  std::ostringstream o;
  o << header(tip_panel ? 2 * s : s, s);
  const Panel disk(0.0, s, 1.0);
  if (spec.disk) disk.circle(o, 0.0, 1.0, kDisk);
  std::vector<Complex> v;
  for (const SpherePoint& p : polygon.vertices()) v.push_back(p.value());
  for (std::size_t k = 0; k < v.size(); ++k) {
    disk.geodesic(o, v[k], v[(k + 1) % v.size()], "stroke=\"#333\" stroke-width=\"1\"");
  }
  if (spec.diagonals) {
    for (std::size_t k = 0; k < diagonals.set.size(); ++k) {
      const Diagonal& d = diagonals.set.diagonals()[k];
      const Complex mid = disk.geodesic(o, v[static_cast<std::size_t>(d.i)], v[static_cast<std::size_t>(d.j)], kArc);
      if (k < diagonals.weights.size()) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4g", diagonals.weights[k]);
        disk.text(o, mid + Complex(0.02, 0.02), buf, "fill=\"#c0392b\"");
      }
    }
  }
  if (spec.vertices) {
    for (std::size_t k = 0; k < v.size(); ++k) {
      disk.dot(o, v[k], 4.0, kVertex);
      disk.text(o, v[k] * 1.08, "a" + std::to_string(k), "text-anchor=\"middle\"");
    }
  }
  if (tip_panel) {
    const double extent = chart_extent(tips);
    draw_tips(o, Panel(s, s, extent), extent, tips, {});
  }
  o << "</svg>\n";
  return o.str();
}

std::string render_crown_svg(const CrownLamination& lamination, const FigureSpec& spec) {
  lamination.validate();
  const int m = lamination.m;
  const double s = spec.size;
  const double inner = 0.25;
  std::ostringstream o;
  o << header(s, s);
  const Panel panel(0.0, s, 1.0);
  auto cusp_angle = [&](int k) { return kPi / 2 + 2 * kPi * (k - 1) / m; };
  auto cusp = [&](int k) { return on_circle(cusp_angle((k - 1) % m + 1)); };
  if (spec.disk) {
    panel.circle(o, 0.0, 1.0, kDisk);
    panel.circle(o, 0.0, inner, "fill=\"#e8ecf4\" stroke=\"#333\" stroke-width=\"1.5\"");
  }
  std::vector<Complex> side_mid;
  for (int k = 1; k <= m; ++k) {
    side_mid.push_back(panel.geodesic(o, cusp(k), cusp(k + 1), "stroke=\"#333\" stroke-width=\"1\""));
  }
  const double l = boundary_measure(lamination);
  std::vector<int> boundary_cusps;
  if (spec.diagonals) {
    for (const CrownArc& a : lamination.arcs) {
      if (const auto* b = std::get_if<CuspToBoundary>(&a.kind)) {
        const double foot = l > 0 ? kPi / 2 + 2 * kPi * b->offset / l : cusp_angle(b->cusp);
        panel.line(o, cusp(b->cusp), std::polar(inner, foot), kArc);
      } else {
        const auto& c = std::get<CuspToCusp>(a.kind);
        panel.geodesic(o, cusp(c.i), cusp(c.j), kArc);
      }
    }
  }
  for (const CrownArc& a : lamination.arcs) {
    if (const auto* b = std::get_if<CuspToBoundary>(&a.kind)) boundary_cusps.push_back(b->cusp);
  }
  std::sort(boundary_cusps.begin(), boundary_cusps.end());
  if (spec.dual_graph) {
    const DualMetricGraph g = to_dual_graph(lamination);
    std::vector<Complex> pos;
    for (const auto& v : g.vertices) {
      if (v.kind == DualMetricGraph::VertexKind::Leaf) {
        pos.push_back(Complex(0.0, -0.5 * (1.0 + inner)));
      } else if (v.kind == DualMetricGraph::VertexKind::Inner) {
        const auto& c = std::get<CuspToCusp>(lamination.arcs[static_cast<std::size_t>(v.arc)].kind);
        const auto sides = enclosed_sides(m, c);
        const double mid = cusp_angle(c.i) + kPi * static_cast<double>(sides.size()) / m;
        pos.push_back(std::polar(0.9 - 0.3 * static_cast<double>(sides.size()) / m, mid));
      } else if (boundary_cusps.size() <= 1) {
        pos.push_back(std::polar(0.55, kPi / 2 + kPi / m));
      } else {
        const std::size_t r = static_cast<std::size_t>(v.arc);
        const int a = boundary_cusps[r];
        int b = boundary_cusps[(r + 1) % boundary_cusps.size()];
        if (b <= a) b += m;
        pos.push_back(std::polar(0.55, cusp_angle(a) + kPi * (b - a) / m));
      }
    }
    for (const auto& e : g.infinite_edges) {
      panel.line(o, pos[static_cast<std::size_t>(e.vertex)], side_mid[static_cast<std::size_t>(e.side - 1)],
                 "stroke=\"#2471a3\" stroke-width=\"1\" stroke-dasharray=\"3 2\"");
    }
    for (const auto& e : g.edges) {
      const Complex a = pos[static_cast<std::size_t>(e.a)];
      const Complex b = pos[static_cast<std::size_t>(e.b)];
      panel.line(o, a, b, kGraph);
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.4g", e.length);
      panel.text(o, 0.5 * (a + b) + Complex(0.02, 0.02), buf, "fill=\"#2471a3\"");
    }
    for (const Complex& p : pos) panel.dot(o, p, 3.5, "fill=\"#2471a3\"");
  }
  if (spec.vertices) {
    for (int k = 1; k <= m; ++k) {
      panel.dot(o, cusp(k), 4.0, kVertex);
      panel.text(o, cusp(k) * 1.08, std::to_string(k), "text-anchor=\"middle\"");
    }
  }
  o << "</svg>\n";
  return o.str();
}

std::string render_tips_svg(const std::vector<SpherePoint>& tips, const std::vector<double>& errors,
                            const FigureSpec& spec) {
  std::ostringstream o;
  o << header(spec.size, spec.size);
  const double extent = chart_extent(tips);
  draw_tips(o, Panel(0.0, spec.size, extent), extent, tips, errors);
  o << "</svg>\n";
  return o.str();
}

std::string render_matching_svg(const ArcRow& top, const ArcRow& bottom, const Matching& matching,
                                const FigureSpec& spec) {
  const double width = 1.5 * spec.size;
  const double height = 0.6 * spec.size;
  const double margin = 20.0;
  double total = 0.0;
  for (const ArcPiece& p : top) total += boost::rational_cast<double>(p.weight);
  const double unit = total > 0 ? (width - 2 * margin) / total : 0.0;
  const double y_top = margin + 14.0;
  const double y_bottom = height - margin - 14.0;

  std::ostringstream o;
  o << header(width, height);
  auto row = [&](const ArcRow& r, double y, double label_dy) {
    double x = margin;
    for (const ArcPiece& p : r) {
      const double w = boost::rational_cast<double>(p.weight) * unit;
      o << "<rect x=\"" << num(x) << "\" y=\"" << num(y - 4) << "\" width=\"" << num(w)
        << "\" height=\"8\" fill=\"#ddd\" stroke=\"#333\"/>\n";
      o << "<text x=\"" << num(x + w / 2) << "\" y=\"" << num(y + label_dy)
        << "\" font-size=\"11\" text-anchor=\"middle\">" << format_rational(p.weight) << "</text>\n";
      x += w;
    }
  };
  row(top, y_top, -8.0);
  row(bottom, y_bottom, 18.0);
  double x_top = margin;
  double x_bottom = margin;
  for (std::size_t k = 0; k < matching.strands.size(); ++k) {
    const Strand& st = matching.strands[k];
    const double w = boost::rational_cast<double>(st.weight) * unit;
    const char* fill = k % 2 == 0 ? "#a9cce3" : "#f5b7b1";
    o << "<path d=\"M " << num(x_top) << " " << num(y_top + 4) << " L " << num(x_top + w) << " " << num(y_top + 4)
      << " L " << num(x_bottom + w) << " " << num(y_bottom - 4) << " L " << num(x_bottom) << " "
      << num(y_bottom - 4) << " Z\" fill=\"" << fill << "\" fill-opacity=\"0.8\" stroke=\"#555\"/>\n";
    o << "<text x=\"" << num((x_top + x_bottom + w) / 2) << "\" y=\"" << num((y_top + y_bottom) / 2)
      << "\" font-size=\"11\" text-anchor=\"middle\">" << format_rational(st.weight) << "</text>\n";
    x_top += w;
    x_bottom += w;
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace crowngraft
