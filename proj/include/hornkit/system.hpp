// Horn system data: integer rows and rational parameters.
#pragma once

#include "lattice.hpp"

#include <map>
#include <string>
#include <vector>

namespace hornkit {

struct HornSystem {
  std::vector<LatticeVec> rows;
  std::vector<Rat> params;
  std::string name;

  size_t size() const { return rows.size(); }

  // <A_i, s> + c_i
  Rat form(size_t i, const RatVec2 &s) const { return Rat(dot(rows[i], s) + params[i]); }

  bool has_rank_two() const {
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = i + 1; j < rows.size(); ++j)
        if (independent(rows[i], rows[j])) return true;
    return false;
  }

  void validate() const {
    if (rows.size() != params.size())
      throw error(error_kind::parse, "matrix and parameter lists differ in length");
    if (rows.size() < 2) throw error(error_kind::precondition, "a Horn system needs at least two rows");
  }
};

inline HornSystem make_system(std::vector<std::pair<long, long>> rows, std::vector<Rat> params,
                              std::string name = {}) {
  HornSystem s;
  for (auto &[a, b] : rows) s.rows.emplace_back(a, b);
  s.params = std::move(params);
  s.name = std::move(name);
  s.validate();
  return s;
}

inline bool check_nonconfluent(const HornSystem &s) {
  Int x = 0, y = 0;
  for (const auto &r : s.rows) {
    x += r.a;
    y += r.b;
  }
  return x == 0 && y == 0;
}

inline bool rows_primitive(const HornSystem &s) {
  for (const auto &r : s.rows)
    if (r.is_zero() || gcd_int(r.a, r.b) != 1) return false;
  return true;
}

// Gauss multiplication: row N*d with parameter c becomes N copies of d with (c+k)/N.
inline HornSystem normalize_rows(const HornSystem &s) {
  HornSystem out;
  out.name = s.name;
  for (size_t i = 0; i < s.size(); ++i) {
    auto [d, g] = primitive(s.rows[i]);
    if (g == 1) {
      out.rows.push_back(s.rows[i]);
      out.params.push_back(s.params[i]);
      continue;
    }
    for (Int k = 0; k < g; ++k) {
      out.rows.push_back(d);
      Rat c = (s.params[i] + Rat(k)) / Rat(g);
      c.canonicalize();
      out.params.push_back(c);
    }
  }
  return out;
}

struct Circuit {
  std::vector<size_t> rows;
  std::vector<Int> lambda;
  bool resonant = false;
};

struct ResonanceReport {
  std::vector<Circuit> circuits;
  bool is_resonant = false;
  bool is_maximally_resonant = false;
};

inline ResonanceReport detect_resonance(const HornSystem &s) {
  if (!rows_primitive(s)) throw error(error_kind::precondition, "resonance test expects primitive rows");
  ResonanceReport rep;
  auto add = [&](std::vector<size_t> idx, std::vector<Int> lam) {
    Int g = 0;
    for (auto &l : lam) g = gcd_int(g, l);
    for (auto &l : lam) l /= g;
    // first nonzero coefficient positive
    for (auto &l : lam) {
      if (l == 0) continue;
      if (l < 0)
        for (auto &x : lam) x = -x;
      break;
    }
    Rat sum = 0;
    for (size_t k = 0; k < idx.size(); ++k) sum += Rat(lam[k]) * s.params[idx[k]];
    sum.canonicalize();
    Circuit c{std::move(idx), std::move(lam), is_integer(sum)};
    rep.circuits.push_back(std::move(c));
  };
  const auto &A = s.rows;
  size_t m = s.size();
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j)
      if (!independent(A[i], A[j])) {
        // u, v on one line: v.x * u - u.x * v = 0 for a nonzero coordinate x
        const Int &p = A[j].a != 0 ? A[j].a : A[j].b;
        const Int &q = A[j].a != 0 ? A[i].a : A[i].b;
        add({i, j}, {p, Int(-q)});
      }
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j)
      for (size_t k = j + 1; k < m; ++k) {
        if (!independent(A[i], A[j]) || !independent(A[j], A[k]) || !independent(A[i], A[k])) continue;
        add({i, j, k}, {det(A[j], A[k]), det(A[k], A[i]), det(A[i], A[j])});
      }
  rep.is_resonant = false;
  rep.is_maximally_resonant = !rep.circuits.empty();
  for (const auto &c : rep.circuits) {
    rep.is_resonant = rep.is_resonant || c.resonant;
    rep.is_maximally_resonant = rep.is_maximally_resonant && c.resonant;
  }
  return rep;
}

}  // namespace hornkit
