// Recurrence-driven truncated series and window-bounded polynomial harvesting.
#pragma once

#include "atomic.hpp"
#include "counting.hpp"

#include <deque>
#include <limits>
#include <optional>
#include <unordered_map>

namespace hornkit {

struct Offset {
  long p = 0, q = 0;
  friend bool operator==(const Offset &a, const Offset &b) { return a.p == b.p && a.q == b.q; }
  friend bool operator<(const Offset &a, const Offset &b) { return a.p != b.p ? a.p < b.p : a.q < b.q; }
  long norm_inf() const { return std::max(std::labs(p), std::labs(q)); }
};

struct OffsetHash {
  size_t operator()(const Offset &o) const noexcept {
    return std::hash<long>()(o.p) * 1000003u ^ std::hash<long>()(o.q);
  }
};

inline RatVec2 at_offset(const RatVec2 &alpha0, const Offset &o) { return shifted(alpha0, o.p, o.q); }

struct PairRef {
  size_t i = 0, j = 0;
};

inline Mat2 submatrix(const HornSystem &s, const PairRef &I) { return {s.rows[I.i], s.rows[I.j]}; }

// Base points k0 in N^2, one per class of Z^2 modulo the lattice spanned by the two rows.
inline std::vector<std::pair<Int, Int>> branch_base_points(const Mat2 &AI) {
  SmithForm f = smith_normal_form(AI.transposed());
  Int n = abs_int(AI.determinant());
  size_t count = n.get_ui();
  std::vector<std::optional<std::pair<Int, Int>>> reps(count);
  size_t found = 0;
  for (long deg = 0; found < count; ++deg)
    for (long k1 = 0; k1 <= deg && found < count; ++k1) {
      Int a(k1), b(deg - k1);
      size_t idx = residue_index(f, a, b).get_ui();
      if (!reps[idx]) {
        reps[idx] = std::pair<Int, Int>(a, b);
        ++found;
      }
    }
  std::vector<std::pair<Int, Int>> out;
  for (auto &r : reps) out.push_back(*r);
  return out;
}

inline RatVec2 atomic_exponent(const HornSystem &s, const PairRef &I, const Int &k1, const Int &k2) {
  RatVec2 rhs(Rat(-(Rat(k1) + s.params[I.i])), Rat(-(Rat(k2) + s.params[I.j])));
  return solve(submatrix(s, I), rhs);
}

inline RatVec2 branch_exponent(const HornSystem &s, const PairRef &I, size_t branch) {
  auto bases = branch_base_points(submatrix(s, I));
  if (branch >= bases.size()) throw error(error_kind::precondition, "branch index out of range");
  return atomic_exponent(s, I, bases[branch].first, bases[branch].second);
}

inline ConeQ support_cone(const HornSystem &s, const PairRef &I) {
  Mat2 M = submatrix(s, I);
  RatVec2 g1 = -solve(M, RatVec2(Rat(1), Rat(0)));
  RatVec2 g2 = -solve(M, RatVec2(Rat(0), Rat(1)));
  Rat cross = g1.x1 * g2.x2 - g1.x2 * g2.x1;
  if (cross < 0) std::swap(g1, g2);
  return {g1, g2};
}

inline bool in_cone(const ConeQ &c, const RatVec2 &x) {
  Rat d = c.g1.x1 * c.g2.x2 - c.g1.x2 * c.g2.x1;
  Rat l1 = x.x1 * c.g2.x2 - x.x2 * c.g2.x1;
  Rat l2 = c.g1.x1 * x.x2 - c.g1.x2 * x.x1;
  return sgn(l1) * sgn(d) >= 0 && sgn(l2) * sgn(d) >= 0;
}

struct TruncatedSeries {
  PairRef I;
  size_t branch = 0;
  RatVec2 alpha0;
  std::map<Offset, Rat> coeffs;
  long window = 0;
  bool order_consistent = true;  // the e1-first and e2-first sweeps agree

  PuiseuxPolynomial polynomial() const {
    PuiseuxPolynomial::map_type t;
    for (const auto &[o, c] : coeffs) t.emplace(at_offset(alpha0, o), c);
    return PuiseuxPolynomial(std::move(t));
  }
};

namespace detail {

// Breadth-first sweep along nonvanishing numerators; first_axis picks the neighbor order.
inline std::map<Offset, Rat> sweep(const HornSystem &s, const RatVec2 &alpha0, long window, int first_axis,
                                   const ConeQ *cone) {
  std::map<Offset, Rat> coef;
  coef[{0, 0}] = 1;
  std::deque<Offset> queue{{0, 0}};
  while (!queue.empty()) {
    Offset o = queue.front();
    queue.pop_front();
    RatVec2 x = at_offset(alpha0, o);
    Rat cx = coef[o];
    for (int t = 0; t < 2; ++t) {
      int j = t == 0 ? first_axis : 1 - first_axis;
      for (int dir : {+1, -1}) {
        Offset n{o.p + (j == 0 ? dir : 0), o.q + (j == 1 ? dir : 0)};
        if (n.norm_inf() > window) continue;
        RatVec2 y = at_offset(alpha0, n);
        if (cone && !in_cone(*cone, y - alpha0)) continue;
        Rat num = dir > 0 ? eval_P(s, j, x) : eval_Q(s, j, x);
        if (num == 0) continue;
        Rat den = dir > 0 ? eval_Q(s, j, y) : eval_P(s, j, y);
        if (den == 0)
          throw error(error_kind::resonant,
                      "resonant collision at offset (" + std::to_string(n.p) + "," + std::to_string(n.q) + ")");
        if (coef.count(n)) continue;
        coef[n] = cx * num / den;
        queue.push_back(n);
      }
    }
  }
  return coef;
}

}  // namespace detail

namespace detail {

// Gamma(a) up to the common pole factor, for integral a <= 0.
inline Rat pole_residue(const Int &a) {
  Rat r = 1;
  for (Int t = 1; t <= -a; ++t) r /= Rat(t);
  return a % 2 == 0 ? r : Rat(-r);
}

// Gamma(l0 + d) / Gamma(l0) for l0 off the poles.
inline std::optional<Rat> gamma_ratio(const Rat &l0, const Int &d) {
  Rat r = 1;
  if (d >= 0) {
    for (Int t = 0; t < d; ++t) r *= l0 + Rat(t);
  } else {
    for (Int t = 1; t <= -d; ++t) {
      Rat f = l0 - Rat(t);
      if (f == 0) return std::nullopt;
      r /= f;
    }
  }
  if (r == 0) return std::nullopt;
  return r;
}

// Coefficient at alpha0 + o relative to alpha0, zero off the support of the pair.
inline Rat gamma_coefficient(const HornSystem &s, const PairRef &I, const RatVec2 &alpha0, const Offset &o) {
  Rat c = 1;
  for (size_t i = 0; i < s.size(); ++i) {
    Rat l0 = s.rows[i].a * alpha0.x1 + s.rows[i].b * alpha0.x2 + s.params[i];
    Int d = s.rows[i].a * o.p + s.rows[i].b * o.q;
    if (i == I.i || i == I.j) {
      Int l1 = l0.get_num() + d;
      if (l1 > 0) return 0;
      c *= pole_residue(l1) / pole_residue(l0.get_num());
      continue;
    }
    auto r = gamma_ratio(l0, d);
    if (!r)
      throw error(error_kind::resonant,
                  "resonant collision at offset (" + std::to_string(o.p) + "," + std::to_string(o.q) + ")");
    c *= *r;
  }
  return c;
}

}  // namespace detail

inline TruncatedSeries series_from_submatrix(const HornSystem &s, const PairRef &I, size_t branch, long window) {
  if (I.i == I.j || det(s.rows[I.i], s.rows[I.j]) == 0) throw error(error_kind::precondition, "singular submatrix");
  TruncatedSeries t;
  t.I = I;
  t.branch = branch;
  t.alpha0 = branch_exponent(s, I, branch);
  t.window = window;
  ConeQ cone = support_cone(s, I);
  auto first = detail::sweep(s, t.alpha0, window, 0, &cone);
  auto second = detail::sweep(s, t.alpha0, window, 1, &cone);
  t.order_consistent = first == second;
  try {
    for (long p = -window; p <= window; ++p)
      for (long q = -window; q <= window; ++q) {
        Rat c = detail::gamma_coefficient(s, I, t.alpha0, Offset{p, q});
        if (c != 0) t.coeffs[Offset{p, q}] = c;
      }
  } catch (const error &e) {
    if (e.kind() != error_kind::resonant) throw;
    t.coeffs = first;  // integral factors truncate the recurrence
  }
  for (const auto &[o, c] : first) {
    auto it = t.coeffs.find(o);
    t.order_consistent = t.order_consistent && it != t.coeffs.end() && it->second == c;
  }
  return t;
}

// Residuals checked where the whole stencil sits strictly inside the window.
inline bool verify_truncated(const TruncatedSeries &t, const HornSystem &s) {
  auto coef_at = [&](const Offset &o) -> Rat {
    auto it = t.coeffs.find(o);
    return it == t.coeffs.end() ? Rat(0) : it->second;
  };
  long w = t.window - 1;
  for (long p = -w; p <= w; ++p)
    for (long q = -w; q <= w; ++q)
      for (int j = 0; j < 2; ++j) {
        Offset o{p, q}, prev{p - (j == 0), q - (j == 1)};
        if (prev.norm_inf() > w) continue;
        RatVec2 x = at_offset(t.alpha0, o), xp = at_offset(t.alpha0, prev);
        Rat r = coef_at(prev) * eval_P(s, j, xp) - coef_at(o) * eval_Q(s, j, x);
        if (r != 0) return false;
      }
  return true;
}

enum class HarvestOutcome { Finite, ExceedsWindow, Obstructed, Inconsistent };

inline const char *outcome_name(HarvestOutcome o) {
  switch (o) {
    case HarvestOutcome::Finite: return "Finite";
    case HarvestOutcome::ExceedsWindow: return "ExceedsWindow";
    case HarvestOutcome::Obstructed: return "Obstructed";
    default: return "Inconsistent";
  }
}

struct HarvestResult {
  PairRef I;
  size_t branch = 0;
  RatVec2 alpha0;
  HarvestOutcome outcome = HarvestOutcome::ExceedsWindow;
  std::vector<RatVec2> support;
  std::optional<PuiseuxPolynomial> polynomial;
  std::optional<RatVec2> obstruction;  // lattice point with vanishing denominator
};

namespace detail {

// Zero tests only need the integral part of each linear form on alpha0 + Z^2.
class ZeroOracle {
public:
  ZeroOracle(const HornSystem &s, const RatVec2 &alpha0) {
    for (size_t i = 0; i < s.size(); ++i) {
      Row r;
      if (!s.rows[i].a.fits_slong_p() || !s.rows[i].b.fits_slong_p())
        throw error(error_kind::precondition, "matrix entries too large for harvesting");
      r.a = s.rows[i].a.get_si();
      r.b = s.rows[i].b.get_si();
      Rat L = s.form(i, alpha0);
      r.integral = is_integer(L) && L.get_num().fits_slong_p() &&
                   abs_int(L.get_num()) < Int(std::numeric_limits<long>::max() / 4);
      r.base = r.integral ? L.get_num().get_si() : 0;
      rows_.push_back(r);
    }
  }
  // j-th P (numerator of forward steps) or Q vanishes at alpha0 + o.
  bool P_zero(int j, const Offset &o) const { return vanishes(j, o, +1); }
  bool Q_zero(int j, const Offset &o) const { return vanishes(j, o, -1); }

private:
  struct Row {
    long a, b, base;
    bool integral;
  };
  bool vanishes(int j, const Offset &o, int sign) const {
    for (const auto &r : rows_) {
      long e = j == 0 ? r.a : r.b;
      if (e * sign <= 0 || !r.integral) continue;
      long v = r.base + r.a * o.p + r.b * o.q;
      if (v <= 0 && v > -std::labs(e)) return true;
    }
    return false;
  }
  std::vector<Row> rows_;
};

}  // namespace detail

// Forced closure from alpha0 inside the window.
inline HarvestResult explore(const HornSystem &s, const RatVec2 &alpha0, long window) {
  HarvestResult res;
  res.alpha0 = alpha0;
  detail::ZeroOracle z(s, alpha0);
  std::unordered_map<Offset, bool, OffsetHash> seen;
  std::vector<Offset> order{{0, 0}};
  seen[{0, 0}] = true;
  for (size_t head = 0; head < order.size(); ++head) {
    Offset o = order[head];
    for (int j = 0; j < 2; ++j)
      for (int dir : {+1, -1}) {
        bool forced = dir > 0 ? !z.P_zero(j, o) : !z.Q_zero(j, o);
        if (!forced) continue;
        Offset n{o.p + (j == 0 ? dir : 0), o.q + (j == 1 ? dir : 0)};
        bool blocked = dir > 0 ? z.Q_zero(j, n) : z.P_zero(j, n);
        if (blocked) {
          res.outcome = HarvestOutcome::Obstructed;
          res.obstruction = at_offset(alpha0, o);
          return res;
        }
        if (seen.count(n)) continue;
        if (n.norm_inf() > window) {
          res.outcome = HarvestOutcome::ExceedsWindow;
          return res;
        }
        seen[n] = true;
        order.push_back(n);
      }
  }
  // coefficients along the BFS tree
  std::unordered_map<Offset, Rat, OffsetHash> coef;
  coef[{0, 0}] = 1;
  for (const Offset &o : order) {
    RatVec2 x = at_offset(alpha0, o);
    const Rat cx = coef.at(o);
    for (int j = 0; j < 2; ++j)
      for (int dir : {+1, -1}) {
        Offset n{o.p + (j == 0 ? dir : 0), o.q + (j == 1 ? dir : 0)};
        if (coef.count(n) || !seen.count(n)) continue;
        bool forced = dir > 0 ? !z.P_zero(j, o) : !z.Q_zero(j, o);
        if (!forced) continue;
        RatVec2 y = at_offset(alpha0, n);
        Rat num = dir > 0 ? eval_P(s, j, x) : eval_Q(s, j, x);
        Rat den = dir > 0 ? eval_Q(s, j, y) : eval_P(s, j, y);
        coef[n] = cx * num / den;
      }
  }
  PuiseuxPolynomial::map_type terms;
  for (const Offset &o : order) {
    RatVec2 x = at_offset(alpha0, o);
    res.support.push_back(x);
    terms.emplace(x, coef.at(o));
  }
  std::sort(res.support.begin(), res.support.end());
  PuiseuxPolynomial f(std::move(terms));
  if (!is_solution(f, s)) {
    res.outcome = HarvestOutcome::Inconsistent;
    return res;
  }
  res.outcome = HarvestOutcome::Finite;
  res.polynomial = f.normalized();
  return res;
}

inline long default_window(const HornSystem &s) {
  Int r = check_nonconfluent(s) ? holonomic_rank(s) : fully_supported_count(s);
  Int mx = 0;
  for (const auto &row : s.rows) {
    if (abs_int(row.a) > mx) mx = abs_int(row.a);
    if (abs_int(row.b) > mx) mx = abs_int(row.b);
  }
  Int w = 4 * (r + Int(static_cast<long>(s.size())) * mx);
  return w.get_si();
}

inline std::vector<HarvestResult> harvest_polynomials(const HornSystem &s, long window) {
  std::vector<HarvestResult> out;
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j) {
      PairRef I{i, j};
      Mat2 M = submatrix(s, I);
      if (M.determinant() == 0) continue;
      auto bases = branch_base_points(M);
      for (size_t b = 0; b < bases.size(); ++b) {
        HarvestResult r = explore(s, atomic_exponent(s, I, bases[b].first, bases[b].second), window);
        r.I = I;
        r.branch = b;
        out.push_back(std::move(r));
      }
    }
  return out;
}

}  // namespace hornkit
