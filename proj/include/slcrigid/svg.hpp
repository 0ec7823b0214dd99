#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "slcrigid/realize.hpp"
#include "slcrigid/symgraph.hpp"

namespace slc {

namespace detail {

inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", std::abs(x) < 0.005 ? 0.0 : x);
  return buf;
}

}  // namespace detail

/// SVG drawing of a framework. The symmetry center sits at the middle of
/// the canvas; loops are short ticks along their constraint line (normal to
/// q). Vertices, edges and loops fixed by a non-identity element carry the
/// extra class "fixed".
inline std::string render_svg(const Framework& fw, int size = 400) {
  const SymmetricGraph& g = fw.graph;
  const GroupSpec& G = g.group();
  const double half = size / 2.0;
  double extent = 0.0;
  for (const Vec2& x : fw.p) extent = std::max({extent, std::abs(x[0]), std::abs(x[1])});
  if (extent == 0.0) extent = 1.0;
  const double scale = 0.8 * half / extent;
  auto X = [&](double x) { return detail::fmt(half + scale * x); };
  auto Y = [&](double y) { return detail::fmt(half - scale * y); };

  std::vector<char> vfixed(g.num_vertices(), 0), lfixed(g.num_loops(), 0);
  std::vector<Edge> efixed;
  for (const Element e : G.elements()) {
    if (e.is_identity()) continue;
    const ElementAction a = element_action(g, e);
    for (int v = 0; v < g.num_vertices(); ++v) vfixed[v] |= a.vertex[v] == v;
    for (int l = 0; l < g.num_loops(); ++l) lfixed[l] |= a.loop[l] == l;
    for (int k = 0; k < g.num_edges(); ++k)
      if (a.edge[k] == k) efixed.push_back(g.edges()[k]);
  }
  auto cls = [](const char* base, bool fixed) {
    return std::string(" class=\"") + base + (fixed ? " fixed\"" : "\"");
  };

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(size) +
       "\" height=\"" + std::to_string(size) + "\" viewBox=\"0 0 " + std::to_string(size) + " " +
       std::to_string(size) + "\">\n";
  s += "<style>.edge{stroke:#333;stroke-width:2}.loop{stroke:#1565c0;stroke-width:3}"
       ".vertex{fill:#fff;stroke:#000;stroke-width:2}.fixed{stroke:#c62828}.vertex.fixed{fill:#ffcdd2}"
       ".mirror{stroke:#999;stroke-dasharray:6 4}.center{stroke:#c62828;stroke-width:2;fill:none}</style>\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n";

  if (G.has_reflection()) {
    for (const Element e : G.elements()) {
      if (!e.refl) continue;
      const Vec2 d = G.mirror_direction(e);
      const double len = std::hypot(d[0], d[1]);
      const double r = extent * 1.2 / len;
      s += "<line class=\"mirror\" x1=\"" + X(-r * d[0]) + "\" y1=\"" + Y(-r * d[1]) + "\" x2=\"" +
           X(r * d[0]) + "\" y2=\"" + Y(r * d[1]) + "\"/>\n";
    }
  }
  if (G.rotations() > 1) {
    const double c = std::max(4.0, size / 60.0);
    s += "<path class=\"center\" d=\"M" + detail::fmt(half - c) + " " + detail::fmt(half) + " L" +
         detail::fmt(half + c) + " " + detail::fmt(half) + " M" + detail::fmt(half) + " " +
         detail::fmt(half - c) + " L" + detail::fmt(half) + " " + detail::fmt(half + c) + "\"/>\n";
  }
  for (const auto& [u, v] : g.edges()) {
    const bool fixed = std::find(efixed.begin(), efixed.end(), Edge{u, v}) != efixed.end();
    s += "<line" + cls("edge", fixed) + " x1=\"" + X(fw.p[u][0]) + "\" y1=\"" + Y(fw.p[u][1]) +
         "\" x2=\"" + X(fw.p[v][0]) + "\" y2=\"" + Y(fw.p[v][1]) + "\"/>\n";
  }
  const double tick = size * 0.06;
  for (const Loop& l : g.loops()) {
    const Vec2& q = fw.q[l.id];
    const double len = std::hypot(q[0], q[1]);
    const Vec2 t = len > 0 ? Vec2{-q[1] / len, q[0] / len} : Vec2{1.0, 0.0};
    const double cx = half + scale * fw.p[l.vertex][0], cy = half - scale * fw.p[l.vertex][1];
    s += "<line" + cls("loop", lfixed[l.id]) + " x1=\"" + detail::fmt(cx - tick * t[0]) + "\" y1=\"" +
         detail::fmt(cy + tick * t[1]) + "\" x2=\"" + detail::fmt(cx + tick * t[0]) + "\" y2=\"" +
         detail::fmt(cy - tick * t[1]) + "\"/>\n";
  }
  const double radius = std::max(3.0, size / 80.0);
  for (int v = 0; v < g.num_vertices(); ++v)
    s += "<circle" + cls("vertex", vfixed[v]) + " cx=\"" + X(fw.p[v][0]) + "\" cy=\"" + Y(fw.p[v][1]) +
         "\" r=\"" + detail::fmt(radius) + "\"/>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace slc
