// The polygon whose outer normals are the rows, its classification and decomposition.
#pragma once

#include "system.hpp"

#include <map>
#include <vector>

namespace hornkit {

struct PolygonEdge {
  LatticeVec normal;     // primitive outer normal
  LatticeVec direction;  // (-b, a) for normal (a, b)
  Int length;
};

struct OreSatoPolygon {
  std::vector<PolygonEdge> edges;   // counterclockwise
  std::vector<LatticeVec> vertices;  // vertices[i] starts edges[i]

  size_t size() const { return edges.size(); }
};

inline LatticeVec edge_direction(const LatticeVec &n) { return {Int(-n.b), n.a}; }

// Groups primitive normals with multiplicities and sorts them counterclockwise.
inline OreSatoPolygon polygon_from_normals(const std::vector<std::pair<LatticeVec, Int>> &normals) {
  std::vector<std::pair<LatticeVec, Int>> groups;
  for (const auto &[n, k] : normals) {
    if (k == 0) continue;
    bool found = false;
    for (auto &g : groups)
      if (g.first == n) {
        g.second += k;
        found = true;
      }
    if (!found) groups.push_back({n, k});
  }
  std::vector<LatticeVec> ns;
  for (auto &g : groups) ns.push_back(g.first);
  OreSatoPolygon p;
  LatticeVec cur(0, 0);
  for (size_t i : ccw_sort(ns)) {
    PolygonEdge e{groups[i].first, edge_direction(groups[i].first), groups[i].second};
    p.vertices.push_back(cur);
    cur = cur + e.length * e.direction;
    p.edges.push_back(e);
  }
  return p;
}

inline OreSatoPolygon build_polygon(const HornSystem &s) {
  if (!check_nonconfluent(s)) throw error(error_kind::precondition, "polygon requires nonconfluency");
  if (!s.has_rank_two()) throw error(error_kind::precondition, "rows do not span the plane");
  HornSystem n = normalize_rows(s);
  std::vector<std::pair<LatticeVec, Int>> normals;
  for (const auto &r : n.rows) normals.push_back({r, Int(1)});
  return polygon_from_normals(normals);
}

inline size_t vertex_count(const OreSatoPolygon &p) { return p.edges.size(); }

inline bool is_closed(const OreSatoPolygon &p) {
  LatticeVec s(0, 0);
  for (const auto &e : p.edges) s = s + e.length * e.direction;
  return s.is_zero();
}

inline bool is_convex(const OreSatoPolygon &p) {
  size_t q = p.size();
  for (size_t i = 0; i < q; ++i)
    if (det(p.edges[i].direction, p.edges[(i + 1) % q].direction) <= 0) return false;
  return true;
}

enum class PolygonKind { Zonotope, TrianglePlusSegments, Other };

inline const char *kind_name(PolygonKind k) {
  switch (k) {
    case PolygonKind::Zonotope: return "Zonotope";
    case PolygonKind::TrianglePlusSegments: return "TrianglePlusSegments";
    default: return "Other";
  }
}

struct Segment {
  LatticeVec direction;  // primitive edge direction, canonical sign
  Int length;
};

struct Classification {
  PolygonKind kind = PolygonKind::Other;
  std::vector<Segment> segments;
  std::vector<PolygonEdge> triangle;  // empty unless TrianglePlusSegments
};

namespace detail {

// Canonical representative of the unsigned line through a direction.
inline LatticeVec line_key(const LatticeVec &d) {
  if (d.b > 0 || (d.b == 0 && d.a > 0)) return d;
  return -d;
}

struct LineData {
  LatticeVec dir;  // canonical direction
  Int plus = 0;    // length along dir
  Int minus = 0;   // length along -dir
};

inline std::vector<LineData> lines_of(const OreSatoPolygon &p) {
  std::vector<LineData> out;
  for (const auto &e : p.edges) {
    LatticeVec k = line_key(e.direction);
    auto it = std::find_if(out.begin(), out.end(), [&](const LineData &l) { return l.dir == k; });
    if (it == out.end()) {
      out.push_back({k, 0, 0});
      it = std::prev(out.end());
    }
    if (k == e.direction)
      it->plus += e.length;
    else
      it->minus += e.length;
  }
  return out;
}

}  // namespace detail

inline Classification classify(const OreSatoPolygon &p) {
  Classification c;
  auto lines = detail::lines_of(p);
  bool symmetric = std::all_of(lines.begin(), lines.end(), [](const auto &l) { return l.plus == l.minus; });
  for (const auto &l : lines) {
    Int m = l.plus < l.minus ? l.plus : l.minus;
    if (m > 0) c.segments.push_back({l.dir, m});
  }
  if (symmetric) {
    c.kind = PolygonKind::Zonotope;
    return c;
  }
  std::vector<detail::LineData> skew;
  std::copy_if(lines.begin(), lines.end(), std::back_inserter(skew), [](const auto &l) { return l.plus != l.minus; });
  if (skew.size() == 3) {
    LatticeVec sum(0, 0);
    std::vector<std::pair<LatticeVec, Int>> tri;
    for (const auto &l : skew) {
      Int e = l.plus - l.minus;
      LatticeVec d = e > 0 ? l.dir : -l.dir;
      sum = sum + abs_int(e) * d;
      tri.push_back({LatticeVec(d.b, Int(-d.a)), abs_int(e)});  // normal of direction d
    }
    if (sum.is_zero()) {
      c.kind = PolygonKind::TrianglePlusSegments;
      for (const auto &e : polygon_from_normals(tri).edges) c.triangle.push_back(e);
      return c;
    }
  }
  c.kind = PolygonKind::Other;
  c.segments.clear();
  return c;
}

inline Classification minkowski_decompose(const OreSatoPolygon &p) {
  Classification c = classify(p);
  if (c.kind == PolygonKind::Other) throw error(error_kind::precondition, "no decomposition of the required shape");
  return c;
}

// Minkowski sum of the witness summands, as a polygon.
inline OreSatoPolygon minkowski_resum(const Classification &c) {
  std::vector<std::pair<LatticeVec, Int>> normals;
  for (const auto &s : c.segments) {
    LatticeVec n(s.direction.b, Int(-s.direction.a));
    normals.push_back({n, s.length});
    normals.push_back({-n, s.length});
  }
  for (const auto &e : c.triangle) normals.push_back({e.normal, e.length});
  return polygon_from_normals(normals);
}

inline bool same_polygon(const OreSatoPolygon &p, const OreSatoPolygon &q) {
  if (p.size() != q.size()) return false;
  for (size_t i = 0; i < p.size(); ++i)
    if (!(p.edges[i].normal == q.edges[i].normal) || p.edges[i].length != q.edges[i].length) return false;
  return true;
}

inline bool is_maximally_reducible(const HornSystem &s) {
  return classify(build_polygon(s)).kind != PolygonKind::Other;
}

}  // namespace hornkit
