// Persistent solution space, closed forms, and the constructive reducibility check.
#pragma once

#include "series.hpp"

#include <set>

namespace hornkit {

namespace detail {

// The forced closure of a support point of f under the full system, when it is a solution.
inline std::optional<PuiseuxPolynomial> reclose(const PuiseuxPolynomial &f, const HornSystem &s) {
  if (is_solution(f, s)) return f;
  long bound = 0;
  for (const auto &r : s.rows) bound += 4 * Int(abs_int(r.a) + abs_int(r.b)).get_si();
  for (const auto &[seed, c] : f.terms()) {
    try {
      return atomic_closure(s, seed, bound);
    } catch (const error &) {
    }
  }
  return std::nullopt;
}

// Perturb c generically, move the support with the pair I, and close every point again.
inline bool survives_perturbation(const PuiseuxPolynomial &f, const HornSystem &s, const PairRef &I) {
  HornSystem t = s;
  for (size_t r = 0; r < t.size(); ++r) t.params[r] += make_rat(1, 1009 + 37 * static_cast<long>(r) * (r + 3));
  RatVec2 shift = solve(Mat2{s.rows[I.i], s.rows[I.j]},
                        RatVec2(Rat(s.params[I.i] - t.params[I.i]), Rat(s.params[I.j] - t.params[I.j])));
  long bound = 0;
  for (const auto &r : s.rows) bound += 4 * Int(abs_int(r.a) + abs_int(r.b)).get_si();
  const RatVec2 &first = f.terms().begin()->first;
  Int extent = 0;
  for (const auto &[x, c] : f.terms())
    extent = std::max(extent, Int(abs_int(floor_rat(x.x1 - first.x1)) + abs_int(floor_rat(x.x2 - first.x2))));
  bound += 2 * extent.get_si();
  for (const auto &[x, c] : f.terms()) {
    try {
      atomic_closure(t, x + shift, bound, f.size());
    } catch (const error &) {
      return false;
    }
  }
  return true;
}

}  // namespace detail

inline std::vector<PuiseuxPolynomial> persistent_solutions(const HornSystem &s) {
  require_nonconfluent(s);
  std::set<std::vector<std::pair<RatVec2, Rat>>> seen;
  std::vector<PuiseuxPolynomial> out;
  for (const auto &a : enumerate_atomic(s)) {
    if (a.nu() == 0) continue;
    for (const auto &f : atomic_persistent(a)) {
      auto full = detail::reclose(f, s);
      if (!full) continue;
      PuiseuxPolynomial g = full->normalized();
      std::vector<std::pair<RatVec2, Rat>> key(g.terms().begin(), g.terms().end());
      if (seen.insert(key).second) out.push_back(g);
    }
  }
  std::sort(out.begin(), out.end(), [](const PuiseuxPolynomial &p, const PuiseuxPolynomial &q) {
    return std::lexicographical_compare(p.terms().begin(), p.terms().end(), q.terms().begin(), q.terms().end(),
                                        [](const auto &x, const auto &y) {
                                          if (!(x.first == y.first)) return x.first < y.first;
                                          return x.second < y.second;
                                        });
  });
  return out;
}

// Some pair I witnesses the vanishing pattern on the whole support and keeps it finite when c moves.
inline std::optional<PairRef> persistence_witness(const PuiseuxPolynomial &f, const HornSystem &s) {
  if (f.is_zero() || !is_solution(f, s)) throw error(error_kind::precondition, "input is not a solution");
  auto hits = [&](size_t r, const RatVec2 &x, int l) {
    Int a = abs_int(s.rows[r][l]);
    if (a == 0) return false;
    Rat v = s.form(r, x);
    return is_integer(v) && v <= 0 && v > Rat(-a);
  };
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j) {
      if (!independent(s.rows[i], s.rows[j])) continue;
      bool ok = true;
      for (const auto &[x, c] : f.terms()) {
        for (int l = 0; l < 2 && ok; ++l) ok = hits(i, x, l) || hits(j, x, l);
        if (!ok) break;
      }
      if (ok && detail::survives_perturbation(f, s, PairRef{i, j})) return PairRef{i, j};
    }
  return std::nullopt;
}

inline bool validate_persistence(const PuiseuxPolynomial &f, const HornSystem &s) {
  return persistence_witness(f, s).has_value();
}

struct MonodromyDiagonal {
  std::vector<Rat> axis[2];  // one rotation number per basis element
};

inline MonodromyDiagonal monodromy_exponents(const std::vector<PuiseuxPolynomial> &basis) {
  MonodromyDiagonal m;
  for (const auto &f : basis) {
    if (f.is_zero()) throw error(error_kind::precondition, "zero basis element");
    const RatVec2 &e0 = f.terms().begin()->first;
    for (const auto &[e, c] : f.terms())
      if (!(class_mod_z2(e) == class_mod_z2(e0)))
        throw error(error_kind::precondition, "non-pure element: exponents (" + to_string(e0.x1) + "," +
                                                  to_string(e0.x2) + ") and (" + to_string(e.x1) + "," +
                                                  to_string(e.x2) + ") are incongruent");
    m.axis[0].push_back(frac(e0.x1));
    m.axis[1].push_back(frac(e0.x2));
  }
  return m;
}

// Dimension of the span, computed class by class modulo Z^2.
inline size_t span_dimension(const std::vector<PuiseuxPolynomial> &polys) {
  std::map<RatVec2, std::vector<const PuiseuxPolynomial *>> classes;
  std::vector<PuiseuxPolynomial> split;
  split.reserve(polys.size() * 2);
  for (const auto &f : polys) {
    std::map<RatVec2, PuiseuxPolynomial> parts;
    for (const auto &[e, c] : f.terms()) parts[class_mod_z2(e)].add(e, c);
    for (auto &[k, p] : parts) split.push_back(p);
  }
  for (const auto &p : split) classes[class_mod_z2(p.terms().begin()->first)].push_back(&p);
  size_t total = 0;
  for (const auto &[k, list] : classes) {
    std::vector<RatVec2> cols;
    for (auto *p : list)
      for (const auto &[e, c] : p->terms()) cols.push_back(e);
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    std::vector<std::vector<Rat>> rows;
    for (auto *p : list) {
      std::vector<Rat> r(cols.size(), Rat(0));
      for (const auto &[e, c] : p->terms()) r[std::lower_bound(cols.begin(), cols.end(), e) - cols.begin()] = c;
      rows.push_back(std::move(r));
    }
    size_t rank = 0;
    for (size_t col = 0; col < cols.size() && rank < rows.size(); ++col) {
      size_t piv = rank;
      while (piv < rows.size() && rows[piv][col] == 0) ++piv;
      if (piv == rows.size()) continue;
      std::swap(rows[rank], rows[piv]);
      for (size_t r = rank + 1; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        Rat f = rows[r][col] / rows[rank][col];
        for (size_t c = col; c < cols.size(); ++c) rows[r][c] -= f * rows[rank][c];
      }
      ++rank;
    }
    total += rank;
  }
  return total;
}

// Keeps the members that enlarge the span, in input order.
inline std::vector<PuiseuxPolynomial> independent_subset(const std::vector<PuiseuxPolynomial> &polys) {
  std::vector<PuiseuxPolynomial> basis;
  for (const auto &f : polys) {
    basis.push_back(f);
    if (span_dimension(basis) < basis.size()) basis.pop_back();
  }
  return basis;
}

struct ConstructiveReport {
  Int holonomic_rank;
  Int persistent_dim;
  size_t persistent_found = 0;
  size_t harvested_finite = 0;
  size_t independent = 0;
  bool rank_attained = false;
  bool rank_exceeded = false;  // more independent polynomials than the generic rank
  std::vector<PuiseuxPolynomial> basis;  // persistent first, then harvested
  std::vector<bool> basis_persistent;
  std::vector<HarvestResult> harvest;
};

inline ConstructiveReport check_constructive(const HornSystem &s, long window) {
  ConstructiveReport rep;
  rep.holonomic_rank = holonomic_rank(s);
  rep.persistent_dim = persistent_dim(s);
  auto pers = persistent_solutions(s);
  rep.persistent_found = pers.size();
  rep.harvest = harvest_polynomials(s, window);
  std::vector<PuiseuxPolynomial> all = pers;
  std::vector<bool> flags(pers.size(), true);
  for (const auto &h : rep.harvest)
    if (h.outcome == HarvestOutcome::Finite) {
      ++rep.harvested_finite;
      all.push_back(*h.polynomial);
      flags.push_back(false);
    }
  std::vector<PuiseuxPolynomial> basis;
  for (size_t k = 0; k < all.size(); ++k) {
    basis.push_back(all[k]);
    if (span_dimension(basis) < basis.size()) {
      basis.pop_back();
      continue;
    }
    rep.basis_persistent.push_back(flags[k]);
  }
  rep.basis = std::move(basis);
  rep.independent = rep.basis.size();
  Int found(static_cast<long>(rep.independent));
  rep.rank_attained = found == rep.holonomic_rank;
  rep.rank_exceeded = found > rep.holonomic_rank;
  return rep;
}

struct ClosedFormSolution {
  RatVec2 prefactor;
  struct Factor {
    PuiseuxPolynomial inner;
    Rat exponent;
  };
  std::vector<Factor> factors;
};

inline ClosedFormSolution simplicial_closed_form(const Mat2 &M, const Rat &alpha1, const Rat &alpha2,
                                                 const Rat &alpha3) {
  if (M.determinant() == 0) throw error(error_kind::precondition, "singular matrix");
  ClosedFormSolution cf;
  cf.prefactor = -solve(M, RatVec2(alpha1, alpha2));
  PuiseuxPolynomial inner = PuiseuxPolynomial::monomial(RatVec2(Rat(0), Rat(0)));
  inner.add(-solve(M, RatVec2(Rat(1), Rat(0))), Rat(1));
  inner.add(-solve(M, RatVec2(Rat(0), Rat(1))), Rat(1));
  Rat total = alpha1 + alpha2 + alpha3;
  cf.factors.push_back({inner, Rat(-total)});
  return cf;
}

inline ClosedFormSolution parallelepipedal_closed_form(const Mat2 &M, const RatVec2 &alpha, const RatVec2 &beta) {
  if (M.determinant() == 0) throw error(error_kind::precondition, "singular matrix");
  ClosedFormSolution cf;
  cf.prefactor = -solve(M, alpha);
  for (int j = 0; j < 2; ++j) {
    PuiseuxPolynomial inner = PuiseuxPolynomial::monomial(RatVec2(Rat(0), Rat(0)));
    inner.add(-solve(M, j == 0 ? RatVec2(Rat(1), Rat(0)) : RatVec2(Rat(0), Rat(1))), Rat(1));
    cf.factors.push_back({inner, Rat(-alpha[j] - beta[j])});
  }
  return cf;
}

inline PuiseuxPolynomial expand_closed_form(const ClosedFormSolution &cf) {
  PuiseuxPolynomial out = PuiseuxPolynomial::monomial(cf.prefactor);
  for (const auto &f : cf.factors) {
    if (!is_integer(f.exponent) || f.exponent < 0)
      throw error(error_kind::precondition, "not polynomial-expandable");
    long n = f.exponent.get_num().get_si();
    PuiseuxPolynomial power = PuiseuxPolynomial::monomial(RatVec2(Rat(0), Rat(0)));
    for (long k = 0; k < n; ++k) power = power * f.inner;
    out = out * power;
  }
  return out;
}

// Generic in the effective sense: no resonant circuit and no two atomic points share an exponent.
inline bool exponent_collision(const HornSystem &s) {
  std::set<RatVec2> seen;
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j) {
      PairRef I{i, j};
      if (det(s.rows[i], s.rows[j]) == 0) continue;
      for (const auto &[k1, k2] : branch_base_points(submatrix(s, I)))
        if (!seen.insert(atomic_exponent(s, I, k1, k2)).second) return true;
    }
  return false;
}

inline bool is_generic(const HornSystem &s) {
  HornSystem n = normalize_rows(s);
  return !detect_resonance(n).is_resonant && !exponent_collision(s);
}

struct ParameterSuggestion {
  std::optional<std::vector<Rat>> params;
  std::string diagnostic;
  size_t verified = 0;  // candidates sent through check_constructive
};

namespace detail {

struct LineRows {
  LatticeVec dir;
  std::vector<size_t> plus, minus;
};

inline std::vector<LineRows> group_lines(const HornSystem &s) {
  std::vector<LineRows> out;
  for (size_t i = 0; i < s.size(); ++i) {
    LatticeVec k = detail::line_key(s.rows[i]);
    auto it = std::find_if(out.begin(), out.end(), [&](const LineRows &l) { return l.dir == k; });
    if (it == out.end()) {
      out.push_back({k, {}, {}});
      it = std::prev(out.end());
    }
    (s.rows[i] == k ? it->plus : it->minus).push_back(i);
  }
  return out;
}

inline bool try_verify(const HornSystem &s, long window, size_t &count) {
  ++count;
  try {
    return check_constructive(s, window).rank_attained;
  } catch (const error &) {
    return false;
  }
}

}  // namespace detail

// Bounded search: the input, the input with generic per-line shifts, then a local search on integer parts.
inline ParameterSuggestion suggest_polynomial_parameters(const HornSystem &s, long search_bound, long window = 0,
                                                         size_t max_checks = 400) {
  if (!is_maximally_reducible(s)) throw error(error_kind::precondition, "system is not maximally reducible");
  if (search_bound < 0) throw error(error_kind::precondition, "negative search bound");
  if (window <= 0) window = default_window(s);
  ParameterSuggestion out;
  if (detail::try_verify(s, window, out.verified)) {
    out.params = s.params;
    out.diagnostic = "input parameters verified";
    return out;
  }
  if (!rows_primitive(s)) {
    out.diagnostic = "input parameters failed; candidate search needs primitive rows";
    return out;
  }

  auto lines = detail::group_lines(s);
  // antiparallel pairs and excess rows
  std::vector<std::pair<size_t, size_t>> pairs;
  std::vector<size_t> excess;
  std::vector<Rat> shift(s.size(), Rat(0));
  std::vector<Rat> t(lines.size());
  static const long primes[] = {7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83};
  for (size_t L = 0; L < lines.size(); ++L) t[L] = make_rat(long(L % 5) + 1, primes[L % 20] * long(L / 20 + 1));
  std::vector<size_t> tri_lines;
  for (size_t L = 0; L < lines.size(); ++L) {
    const auto &l = lines[L];
    size_t k = std::min(l.plus.size(), l.minus.size());
    for (size_t q = 0; q < k; ++q) pairs.push_back({l.plus[q], l.minus[q]});
    if (l.plus.size() != l.minus.size()) tri_lines.push_back(L);
  }
  if (tri_lines.size() == 3) {
    // keep the shifted triangle combination integral
    size_t a = tri_lines[0], b = tri_lines[1], c = tri_lines[2];
    Int ea = Int(long(lines[a].plus.size()) - long(lines[a].minus.size()));
    Int eb = Int(long(lines[b].plus.size()) - long(lines[b].minus.size()));
    Int ec = Int(long(lines[c].plus.size()) - long(lines[c].minus.size()));
    t[c] = Rat(-(Rat(ea) * t[a] + Rat(eb) * t[b]) / Rat(ec));
  }
  for (size_t L = 0; L < lines.size(); ++L) {
    for (size_t i : lines[L].plus) shift[i] = t[L];
    for (size_t i : lines[L].minus) shift[i] = -t[L];
  }
  for (size_t L : tri_lines) {
    const auto &l = lines[L];
    const auto &more = l.plus.size() > l.minus.size() ? l.plus : l.minus;
    size_t k = std::min(l.plus.size(), l.minus.size());
    for (size_t q = k; q < more.size(); ++q) excess.push_back(more[q]);
  }

  auto accidental = [&](const HornSystem &cand) {
    for (const auto &c : detect_resonance(cand).circuits) {
      if (!c.resonant) continue;
      Rat v = 0;
      for (size_t k = 0; k < c.rows.size(); ++k) v += Rat(c.lambda[k]) * shift[c.rows[k]];
      if (v != 0) return true;
    }
    return false;
  };

  auto attempt = [&](std::vector<Rat> base, const char *what) -> bool {
    HornSystem cand = s;
    for (size_t i = 0; i < s.size(); ++i) cand.params[i] = base[i] + shift[i];
    if (accidental(cand)) return false;
    if (!detail::try_verify(cand, window, out.verified)) return false;
    out.params = cand.params;
    out.diagnostic = what;
    return true;
  };

  // the input, made generic along the imposed relations
  if (attempt(s.params, "input parameters with generic line shifts verified")) return out;

  // local search over integer parts: pair sums, first entries of pairs, excess rows
  size_t np = pairs.size();
  std::vector<long> state(2 * np + excess.size(), 0);
  for (size_t k = 0; k < np; ++k) state[k] = -1;
  if (!excess.empty()) state[2 * np] = -1;
  auto admissible = [&](const std::vector<long> &x) {
    for (size_t k = 0; k < np; ++k)
      if (x[k] > -1 || x[k] < -search_bound - 1) return false;
    long tri = 0;
    for (size_t k = np; k < x.size(); ++k)
      if (std::abs(x[k]) > search_bound) return false;
    for (size_t e = 0; e < excess.size(); ++e) tri += x[2 * np + e];
    return excess.empty() || tri < 0;
  };
  Int rank = holonomic_rank(s);
  auto score = [&](const std::vector<long> &x) -> std::optional<Int> {
    HornSystem cand = s;
    for (size_t k = 0; k < np; ++k) {
      cand.params[pairs[k].first] = Rat(x[np + k]);
      cand.params[pairs[k].second] = Rat(x[k] - x[np + k]);
    }
    for (size_t e = 0; e < excess.size(); ++e) cand.params[excess[e]] = Rat(x[2 * np + e]);
    for (size_t i = 0; i < s.size(); ++i) cand.params[i] += shift[i];
    if (accidental(cand)) return std::nullopt;
    ++out.verified;
    try {
      Int found(static_cast<long>(check_constructive(cand, window).independent));
      if (found == rank) out.params = cand.params;
      return abs_int(found - rank);
    } catch (const error &) {
      return std::nullopt;
    }
  };
  if (admissible(state)) {
    auto best = score(state);
    while (!out.params && best && out.verified < max_checks) {
      bool moved = false;
      for (size_t k = 0; k < state.size() && !moved && out.verified < max_checks; ++k)
        for (long d : {-1L, 1L}) {
          auto next = state;
          next[k] += d;
          if (!admissible(next)) continue;
          auto v = score(next);
          if (v && *v < *best) {
            state = next;
            best = v;
            moved = true;
            break;
          }
        }
      if (!moved) break;
    }
  }
  if (out.params) {
    out.diagnostic = "searched parameters verified";
    return out;
  }
  if (!out.params)
    out.diagnostic = "no candidate passed verification after " + std::to_string(out.verified) + " checks";
  return out;
}

}  // namespace hornkit
