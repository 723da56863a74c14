#pragma once

// Static SVG rendering of the Ford configuration: the real axis, the strip
// walls of the translation, the isometric circles of B, C and BC with their
// footprints, and the bounding geodesics of a discrete verdict. Coordinates
// are written in mathematical units via the viewBox, with the vertical axis
// flipped.

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "fourps/algorithm.hpp"
#include "fourps/canonical.hpp"
#include "fourps/ford.hpp"

namespace fourps {

namespace svg_detail {

inline std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Circle {
  double center, radius;
  const char* cls;
};

struct Segment {
  double lo, hi;
  const char* cls;
};

struct Wall {
  double at;
};

inline void draw_circle(std::ostream& os, const Circle& c) {
  os << "  <circle class=\"" << c.cls << "\" cx=\"" << num(c.center) << "\" cy=\"0\" r=\"" << num(c.radius)
     << "\"/>\n";
}

inline void draw_segment(std::ostream& os, const Segment& s) {
  os << "  <line class=\"" << s.cls << "\" x1=\"" << num(s.lo) << "\" y1=\"0\" x2=\"" << num(s.hi)
     << "\" y2=\"0\"/>\n";
}

inline void draw_arc(std::ostream& os, double a, double b, const char* cls) {
  if (a > b) std::swap(a, b);
  const double r = (b - a) / 2.0;
  os << "  <circle class=\"" << cls << "\" cx=\"" << num((a + b) / 2.0) << "\" cy=\"0\" r=\"" << num(r)
     << "\"/>\n";
}

}  // namespace svg_detail

template <class S>
void emit_svg(std::ostream& os, const ParabolicTriple<S>& t, const Verdict<S>& v) {
  using svg_detail::num;
  const double x = to_double(t.x);
  const double y = to_double(t.y);
  const double z = to_double(t.z);

  std::vector<svg_detail::Circle> circles = {
      {y / 2, y / 2, "gen-b"},
      {-y / 2, y / 2, "gen-b"},
      {x + z / 2, z / 2, "gen-c"},
      {x - z / 2, z / 2, "gen-c"},
  };
  std::vector<svg_detail::Segment> segments = {
      {-y, y, "footprint"},
      {x - z, x + z, "footprint"},
  };

  const auto gens = matrices_from_triple(t);
  const Mat2<S> bc = (gens[1] * gens[2]).eval();
  const double c_bc = to_double(bc(1, 0));
  if (c_bc != 0.0) {
    const double r = 1.0 / std::fabs(c_bc);
    const double fwd = -to_double(bc(1, 1)) / c_bc;
    const double inv = to_double(bc(0, 0)) / c_bc;
    circles.push_back({fwd, r, "prod-bc"});
    circles.push_back({inv, r, "prod-bc"});
  }

  std::vector<svg_detail::Wall> walls;
  std::vector<std::pair<double, double>> arcs;
  if (const auto* d = std::get_if<DiscreteVerdict<S>>(&v)) {
    walls.push_back({to_double(d->certificate.strip_left)});
    walls.push_back({to_double(d->certificate.strip_right)});
    arcs.emplace_back(to_double(d->domain.p), x);
    arcs.emplace_back(x, to_double(d->domain.q));
    arcs.emplace_back(-to_double(d->domain.mirror), 0.0);
  } else {
    walls.push_back({x + z - 2});
    walls.push_back({x + z});
  }

  double lo = -y, hi = x + z, top = std::max({y, z, 0.5});
  for (const auto& c : circles) {
    lo = std::min(lo, c.center - c.radius);
    hi = std::max(hi, c.center + c.radius);
    top = std::max(top, c.radius);
  }
  for (const auto& w : walls) {
    lo = std::min(lo, w.at);
    hi = std::max(hi, w.at);
  }
  for (const auto& [a, b] : arcs) {
    lo = std::min({lo, a, b});
    hi = std::max({hi, a, b});
    top = std::max(top, std::fabs(b - a) / 2);
  }
  const double pad = 0.15 * (hi - lo) + 0.05;
  lo -= pad;
  hi += pad;
  top *= 1.2;

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(lo) << " " << num(-top) << " "
     << num(hi - lo) << " " << num(top + 0.1) << "\">\n";
  os << "<style>\n"
        "  line.axis { stroke: #444; stroke-width: 0.008; }\n"
        "  line.wall { stroke: #888; stroke-width: 0.008; stroke-dasharray: 0.05 0.03; }\n"
        "  line.footprint { stroke: #c02020; stroke-width: 0.02; }\n"
        "  circle { fill: none; stroke-width: 0.01; }\n"
        "  circle.gen-b { stroke: #1f77b4; }\n"
        "  circle.gen-c { stroke: #2ca02c; }\n"
        "  circle.prod-bc { stroke: #9467bd; }\n"
        "  circle.geodesic { stroke: #ff7f0e; stroke-width: 0.012; }\n"
        "</style>\n";
  os << "<g transform=\"scale(1,-1)\">\n";
  os << "  <line class=\"axis\" x1=\"" << num(lo) << "\" y1=\"0\" x2=\"" << num(hi) << "\" y2=\"0\"/>\n";
  for (const auto& w : walls)
    os << "  <line class=\"wall\" x1=\"" << num(w.at) << "\" y1=\"0\" x2=\"" << num(w.at) << "\" y2=\""
       << num(top) << "\"/>\n";
  for (const auto& c : circles) svg_detail::draw_circle(os, c);
  for (const auto& s : segments) svg_detail::draw_segment(os, s);
  for (const auto& [a, b] : arcs) svg_detail::draw_arc(os, a, b, "geodesic");
  os << "</g>\n</svg>\n";
}

}  // namespace fourps
