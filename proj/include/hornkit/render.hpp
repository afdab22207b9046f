// Deterministic SVG figures: the polygon with its lattice points, and solution supports.
#pragma once

#include "solver.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace hornkit::render {

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

struct Frame {
  double xmin, xmax, ymin, ymax, scale, margin;

  double px(double x) const { return margin + (x - xmin) * scale; }
  double py(double y) const { return margin + (ymax - y) * scale; }  // y axis up
  double width() const { return 2 * margin + (xmax - xmin) * scale; }
  double height() const { return 2 * margin + (ymax - ymin) * scale; }
};

inline Frame frame_for(double xmin, double xmax, double ymin, double ymax, double target = 480) {
  if (xmax - xmin < 1) xmax = xmin + 1;
  if (ymax - ymin < 1) ymax = ymin + 1;
  double span = std::max(xmax - xmin, ymax - ymin);
  return {xmin, xmax, ymin, ymax, target / span, 24};
}

inline void header(std::ostringstream &o, const Frame &f, const std::string &title) {
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << num(f.width()) << " " << num(f.height())
    << "\" width=\"" << num(f.width()) << "\" height=\"" << num(f.height()) << "\">\n";
  o << "<title>" << title << "</title>\n";
  o << "<rect x=\"0\" y=\"0\" width=\"" << num(f.width()) << "\" height=\"" << num(f.height())
    << "\" fill=\"white\"/>\n";
}

inline void axes(std::ostringstream &o, const Frame &f) {
  if (f.xmin <= 0 && f.xmax >= 0)
    o << "<line x1=\"" << num(f.px(0)) << "\" y1=\"" << num(f.py(f.ymin)) << "\" x2=\"" << num(f.px(0)) << "\" y2=\""
      << num(f.py(f.ymax)) << "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
  if (f.ymin <= 0 && f.ymax >= 0)
    o << "<line x1=\"" << num(f.px(f.xmin)) << "\" y1=\"" << num(f.py(0)) << "\" x2=\"" << num(f.px(f.xmax))
      << "\" y2=\"" << num(f.py(0)) << "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
}

inline double to_d(const Rat &r) { return r.get_d(); }

// Lattice point p lies in the closed convex polygon (counterclockwise vertices).
inline bool inside(const std::vector<LatticeVec> &v, const LatticeVec &p) {
  for (size_t i = 0; i < v.size(); ++i) {
    const LatticeVec &a = v[i], &b = v[(i + 1) % v.size()];
    if (det(LatticeVec(Int(b.a - a.a), Int(b.b - a.b)), LatticeVec(Int(p.a - a.a), Int(p.b - a.b))) < 0) return false;
  }
  return true;
}

}  // namespace detail

inline std::string polygon_svg(const HornSystem &s) {
  OreSatoPolygon p = build_polygon(s);
  long xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  for (const auto &v : p.vertices) {
    xmin = std::min(xmin, v.a.get_si());
    xmax = std::max(xmax, v.a.get_si());
    ymin = std::min(ymin, v.b.get_si());
    ymax = std::max(ymax, v.b.get_si());
  }
  auto f = detail::frame_for(xmin, xmax, ymin, ymax);
  std::ostringstream o;
  detail::header(o, f, s.name.empty() ? "polygon" : s.name + " polygon");
  o << "<polygon points=\"";
  for (size_t i = 0; i < p.vertices.size(); ++i) {
    if (i) o << ' ';
    o << detail::num(f.px(p.vertices[i].a.get_d())) << ',' << detail::num(f.py(p.vertices[i].b.get_d()));
  }
  o << "\" fill=\"#e8eef8\" stroke=\"#203060\" stroke-width=\"2\"/>\n";
  for (long y = ymax; y >= ymin; --y)
    for (long x = xmin; x <= xmax; ++x) {
      bool in = detail::inside(p.vertices, LatticeVec(x, y));
      o << "<circle cx=\"" << detail::num(f.px(x)) << "\" cy=\"" << detail::num(f.py(y)) << "\" r=\""
        << (in ? "3.5" : "1.5") << "\" fill=\"" << (in ? "#203060" : "#cccccc") << "\"/>\n";
    }
  for (const auto &v : p.vertices)
    o << "<circle cx=\"" << detail::num(f.px(v.a.get_d())) << "\" cy=\"" << detail::num(f.py(v.b.get_d()))
      << "\" r=\"5\" fill=\"#c03030\"/>\n";
  o << "</svg>\n";
  return o.str();
}

// Monomials as filled dots, polynomial supports as linked open dots, persistent ones outlined in red.
inline std::string supports_svg(const HornSystem &s, const std::vector<PuiseuxPolynomial> &basis,
                                const std::vector<bool> &persistent) {
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  for (const auto &f : basis)
    for (const auto &[e, c] : f.terms()) {
      xmin = std::min(xmin, std::floor(detail::to_d(e.x1)));
      xmax = std::max(xmax, std::ceil(detail::to_d(e.x1)));
      ymin = std::min(ymin, std::floor(detail::to_d(e.x2)));
      ymax = std::max(ymax, std::ceil(detail::to_d(e.x2)));
    }
  auto fr = detail::frame_for(xmin, xmax, ymin, ymax);
  std::ostringstream o;
  detail::header(o, fr, s.name.empty() ? "supports" : s.name + " supports");
  for (long y = long(ymax); y >= long(ymin); --y)
    for (long x = long(xmin); x <= long(xmax); ++x)
      o << "<circle cx=\"" << detail::num(fr.px(x)) << "\" cy=\"" << detail::num(fr.py(y))
        << "\" r=\"1\" fill=\"#dddddd\"/>\n";
  detail::axes(o, fr);
  for (size_t k = 0; k < basis.size(); ++k) {
    const auto &f = basis[k];
    bool pers = k < persistent.size() && persistent[k];
    const char *stroke = pers ? "#c03030" : "#203060";
    o << "<g id=\"solution-" << k << "\">\n";
    if (f.size() > 1) {
      o << "<polyline points=\"";
      bool first = true;
      for (const auto &[e, c] : f.terms()) {
        if (!first) o << ' ';
        first = false;
        o << detail::num(fr.px(detail::to_d(e.x1))) << ',' << detail::num(fr.py(detail::to_d(e.x2)));
      }
      o << "\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1\" stroke-opacity=\"0.6\"/>\n";
    }
    for (const auto &[e, c] : f.terms()) {
      o << "<circle cx=\"" << detail::num(fr.px(detail::to_d(e.x1))) << "\" cy=\""
        << detail::num(fr.py(detail::to_d(e.x2))) << "\" r=\"" << (f.size() == 1 ? "4" : "3") << "\" fill=\""
        << (f.size() == 1 ? stroke : "white") << "\" stroke=\"" << stroke << "\" stroke-width=\"1.5\"/>\n";
    }
    o << "</g>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace hornkit::render
