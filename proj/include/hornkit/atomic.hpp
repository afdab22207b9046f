// Atomic (two-row) subsystems and their persistent Puiseux polynomial solutions.
#pragma once

#include "operators.hpp"

#include <limits>

namespace hornkit {

struct AtomicSystem {
  size_t i = 0, j = 0;  // row indices into the parent system
  Mat2 M;
  RatVec2 c_tilde;

  HornSystem as_system() const {
    HornSystem s;
    s.rows = {M.r0, M.r1};
    s.params = {c_tilde.x1, c_tilde.x2};
    return s;
  }
  Int nu() const { return index_nu(M.r0, M.r1); }
};

inline AtomicSystem make_atomic(const Mat2 &M, const RatVec2 &c) {
  if (M.determinant() == 0) throw error(error_kind::precondition, "atomic system needs a nonsingular matrix");
  return {0, 1, M, c};
}

struct FrameChange {
  bool flip1 = false, flip2 = false, swap = false;

  bool identity() const { return !flip1 && !flip2 && !swap; }

  // Normalized-frame exponent back to the original frame.
  RatVec2 pull_back(const RatVec2 &s) const {
    RatVec2 t = swap ? RatVec2(s.x2, s.x1) : s;
    if (flip1) t.x1 = -t.x1;
    if (flip2) t.x2 = -t.x2;
    return t;
  }
  RatVec2 push_forward(const RatVec2 &s) const {
    RatVec2 t = s;
    if (flip1) t.x1 = -t.x1;
    if (flip2) t.x2 = -t.x2;
    return swap ? RatVec2(t.x2, t.x1) : t;
  }
  LatticeVec push_row(const LatticeVec &r) const {
    LatticeVec t(flip1 ? Int(-r.a) : r.a, flip2 ? Int(-r.b) : r.b);
    return swap ? LatticeVec(t.b, t.a) : t;
  }
};

inline std::vector<AtomicSystem> enumerate_atomic(const HornSystem &s) {
  std::vector<AtomicSystem> out;
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j)
      if (independent(s.rows[i], s.rows[j]))
        out.push_back({i, j, Mat2{s.rows[i], s.rows[j]}, RatVec2(s.params[i], s.params[j])});
  return out;
}

inline Int atomic_rank(const AtomicSystem &a) { return abs_int(a.M.determinant()) + a.nu(); }

// Rows in opposite open quadrants; first row made positive, then |a1 b2| > |a2 b1|.
inline std::pair<AtomicSystem, FrameChange> normalize_frame(const AtomicSystem &a) {
  if (a.nu() == 0) throw error(error_kind::precondition, "normalization undefined");
  FrameChange f;
  f.flip1 = a.M.r0.a < 0;
  f.flip2 = a.M.r0.b < 0;
  LatticeVec r0 = f.push_row(a.M.r0), r1 = f.push_row(a.M.r1);
  if (abs_int(r0.a * r1.b) < abs_int(r1.a * r0.b)) {
    f.swap = true;
    r0 = f.push_row(a.M.r0);
    r1 = f.push_row(a.M.r1);
  }
  AtomicSystem n = a;
  n.M = {r0, r1};
  return {n, f};
}

namespace detail {

struct AtomicLayout {
  AtomicSystem norm;
  FrameChange frame;
  Int a1, b1, a2, b2;  // normalized entries, a1,b1 > 0 > a2,b2
  Int ru, rv;          // R = [0,ru) x [0,rv)
  Int tu, tv;          // R~ = [0,tu) x [0,tv)
  int chain_axis;      // -1 none, 0 for e_1, 1 for e_2
};

inline AtomicLayout layout(const AtomicSystem &a) {
  auto [n, f] = normalize_frame(a);
  AtomicLayout L{n, f, n.M.r0.a, n.M.r0.b, n.M.r1.a, n.M.r1.b, 0, 0, 0, 0, -1};
  L.ru = L.b1;
  L.rv = abs_int(L.a2);
  L.tu = L.a1 < L.b1 ? L.a1 : L.b1;
  L.tv = abs_int(L.a2) < abs_int(L.b2) ? abs_int(L.a2) : abs_int(L.b2);
  if (L.tu < L.ru) L.chain_axis = 0;
  else if (L.tv < L.rv) L.chain_axis = 1;
  return L;
}

inline RatVec2 lattice_exponent(const AtomicLayout &L, const Int &u, const Int &v) {
  RatVec2 rhs(Rat(-(Rat(u) + L.norm.c_tilde.x1)), Rat(-(Rat(v) + L.norm.c_tilde.x2)));
  return solve(L.norm.M, rhs);
}

}  // namespace detail

inline std::vector<RatVec2> polynomial_exponents(const AtomicSystem &a) {
  std::vector<RatVec2> out;
  if (a.nu() == 0) return out;
  auto L = detail::layout(a);
  for (Int u = 0; u < L.ru; ++u)
    for (Int v = 0; v < L.rv; ++v) out.push_back(L.frame.pull_back(detail::lattice_exponent(L, u, v)));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<PuiseuxPolynomial> persistent_monomials(const AtomicSystem &a) {
  std::vector<PuiseuxPolynomial> out;
  if (a.nu() == 0) return out;
  auto L = detail::layout(a);
  for (Int u = 0; u < L.ru; ++u)
    for (Int v = 0; v < L.rv; ++v) {
      bool inner = u < L.tu && v < L.tv;
      if (inner) out.push_back(PuiseuxPolynomial::monomial(L.frame.pull_back(detail::lattice_exponent(L, u, v))));
    }
  return out;
}

namespace detail {

// Forced closure of x^alpha under both operators, offsets bounded by `bound`.
inline PuiseuxPolynomial atomic_closure(const HornSystem &ns, const RatVec2 &alpha, long bound,
                                        size_t max_terms = std::numeric_limits<size_t>::max()) {
  std::map<RatVec2, Rat> coef;
  std::vector<RatVec2> order{alpha};
  coef[alpha] = 1;
  for (size_t head = 0; head < order.size(); ++head) {
    RatVec2 x = order[head];
    for (int j = 0; j < 2; ++j)
      for (int dir : {+1, -1}) {
        Rat num = dir > 0 ? eval_P(ns, j, x) : eval_Q(ns, j, x);
        if (num == 0) continue;
        RatVec2 y = shifted(x, j == 0 ? dir : 0, j == 1 ? dir : 0);
        if (coef.count(y)) continue;
        Rat den = dir > 0 ? eval_Q(ns, j, y) : eval_P(ns, j, y);
        if (den == 0)
          throw error(error_kind::resonant, "resonant collision: vanishing factor at (" + to_string(y.x1) + ", " +
                                                to_string(y.x2) + ")");
        if (abs(y.x1 - alpha.x1) > bound || abs(y.x2 - alpha.x2) > bound || order.size() >= max_terms)
          throw error(error_kind::internal, "persistent closure exceeds its bound");
        coef[y] = coef[x] * num / den;
        order.push_back(y);
      }
  }
  PuiseuxPolynomial f(std::move(coef));
  if (!is_solution(f, ns)) throw error(error_kind::internal, "persistent closure is not a solution");
  return f;
}

}  // namespace detail

// Points of R outside R~: the chain alpha - k e_i, closed under both operators.
inline std::pair<std::vector<PuiseuxPolynomial>, std::vector<PuiseuxPolynomial>> persistent_chains(
    const AtomicSystem &a) {
  std::vector<PuiseuxPolynomial> monos, polys;
  if (a.nu() == 0) return {monos, polys};
  auto L = detail::layout(a);
  if (L.chain_axis < 0) return {monos, polys};
  HornSystem ns = L.norm.as_system();
  Int span = abs_int(L.a1) + abs_int(L.b1) + abs_int(L.a2) + abs_int(L.b2);
  long bound = 4 * span.get_si();
  for (Int u = 0; u < L.ru; ++u)
    for (Int v = 0; v < L.rv; ++v) {
      if (u < L.tu && v < L.tv) continue;
      PuiseuxPolynomial g = detail::atomic_closure(ns, detail::lattice_exponent(L, u, v), bound);
      PuiseuxPolynomial::map_type pulled;
      for (const auto &[e, c] : g.terms()) pulled.emplace(L.frame.pull_back(e), c);
      PuiseuxPolynomial f(std::move(pulled));
      (f.size() == 1 ? monos : polys).push_back(f.normalized());
    }
  return {monos, polys};
}

inline std::vector<PuiseuxPolynomial> persistent_polynomials(const AtomicSystem &a) {
  return persistent_chains(a).second;
}

// Everything the atomic construction yields: monomials first, then chains.
inline std::vector<PuiseuxPolynomial> atomic_persistent(const AtomicSystem &a) {
  auto out = persistent_monomials(a);
  auto [m, p] = persistent_chains(a);
  out.insert(out.end(), m.begin(), m.end());
  out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace hornkit
