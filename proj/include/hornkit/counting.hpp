// Closed-form counts: rank, persistent dimension, fully supported series per component.
#pragma once

#include "polygon.hpp"

namespace hornkit {

struct ConeQ {
  RatVec2 g1, g2;  // counterclockwise generators
};

struct ComponentRef {
  size_t vertex_index = 0;
  LatticeVec n_prev, n_next;  // outer normals of the two edges meeting at the vertex
};

inline void require_nonconfluent(const HornSystem &s) {
  if (!check_nonconfluent(s))
    throw error(error_kind::precondition, "formula only holds under the nonconfluency assumption");
}

inline Int holonomic_rank(const HornSystem &s) {
  require_nonconfluent(s);
  Int p1 = 0, p2 = 0;
  for (const auto &r : s.rows) {
    if (r.a > 0) p1 += r.a;
    if (r.b > 0) p2 += r.b;
  }
  Int sub = 0;
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j)
      if (!independent(s.rows[i], s.rows[j])) sub += index_nu(s.rows[i], s.rows[j]);
  return p1 * p2 - sub;
}

inline Int persistent_dim(const HornSystem &s) {
  require_nonconfluent(s);
  Int t = 0;
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j)
      if (independent(s.rows[i], s.rows[j])) t += index_nu(s.rows[i], s.rows[j]);
  return t;
}

inline Int fully_supported_count(const HornSystem &s) {
  Int t = 0;
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j) t += abs_int(det(s.rows[i], s.rows[j]));
  return t;
}

inline std::vector<ComponentRef> components(const HornSystem &s) {
  OreSatoPolygon p = build_polygon(s);
  size_t q = p.size();
  std::vector<ComponentRef> out;
  for (size_t v = 0; v < q; ++v) out.push_back({v, p.edges[(v + q - 1) % q].normal, p.edges[v].normal});
  return out;
}

// Recession cone of the complement component at a vertex: spanned by the adjacent normals.
inline ConeQ recession_cone(const ComponentRef &c) {
  return {RatVec2(Rat(c.n_prev.a), Rat(c.n_prev.b)), RatVec2(Rat(c.n_next.a), Rat(c.n_next.b))};
}

namespace detail {

// Counterclockwise angle order measured from base (base itself is the minimum).
inline bool rel_less(const LatticeVec &base, const LatticeVec &u, const LatticeVec &v) {
  auto h = [&](const LatticeVec &w) {
    Int d = det(base, w);
    if (d > 0) return 0;
    if (d == 0 && base.a * w.a + base.b * w.b > 0) return 0;
    return 1;
  };
  int hu = h(u), hv = h(v);
  if (hu != hv) return hu < hv;
  return det(u, v) > 0;
}

inline bool rel_leq(const LatticeVec &base, const LatticeVec &u, const LatticeVec &v) {
  return !rel_less(base, v, u);
}

}  // namespace detail

inline Int convergent_count_S(const HornSystem &s, size_t vertex) {
  require_nonconfluent(s);
  auto comps = components(s);
  if (vertex >= comps.size()) throw error(error_kind::precondition, "invalid vertex index");
  HornSystem n = normalize_rows(s);
  const LatticeVec &ni = comps[vertex].n_prev;
  const LatticeVec &nj = comps[vertex].n_next;
  LatticeVec base = -nj;
  Int total = 0;
  for (const auto &rk : n.rows) {
    if (!detail::rel_less(base, base, rk) || !detail::rel_leq(base, rk, ni)) continue;
    LatticeVec stop = -rk;
    for (const auto &rl : n.rows) {
      if (!detail::rel_leq(base, nj, rl) || !detail::rel_less(base, rl, stop)) continue;
      total += abs_int(det(rl, rk));
    }
  }
  return total;
}

inline Int convergent_dim_by_cone(const HornSystem &s, const ComponentRef &c) {
  require_nonconfluent(s);
  HornSystem n = normalize_rows(s);
  Int t = 0;
  for (size_t i = 0; i < n.size(); ++i)
    for (size_t j = i + 1; j < n.size(); ++j) {
      const auto &u = n.rows[i], &v = n.rows[j];
      if (!independent(u, v)) continue;
      if (in_closed_cone(c.n_prev, u, v) && in_closed_cone(c.n_next, u, v)) t += abs_int(det(u, v));
    }
  return t;
}

}  // namespace hornkit
