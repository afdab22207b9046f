// Horn operators as factor lists and their action on Puiseux polynomials.
#pragma once

#include "system.hpp"

#include <map>
#include <optional>
#include <vector>

namespace hornkit {

struct AffineFactor {
  LatticeVec normal;
  Rat offset;

  Rat eval(const RatVec2 &s) const { return Rat(dot(normal, s) + offset); }
};

struct HornOperatorPair {
  std::vector<AffineFactor> P[2];
  std::vector<AffineFactor> Q[2];

  static Rat eval(const std::vector<AffineFactor> &fs, const RatVec2 &s) {
    Rat r = 1;
    for (const auto &f : fs) {
      r *= f.eval(s);
      if (r == 0) break;
    }
    return r;
  }
  Rat P_at(int j, const RatVec2 &s) const { return eval(P[j], s); }
  Rat Q_at(int j, const RatVec2 &s) const { return eval(Q[j], s); }
};

inline HornOperatorPair build_operators(const HornSystem &s) {
  HornOperatorPair op;
  for (int j = 0; j < 2; ++j)
    for (size_t i = 0; i < s.size(); ++i) {
      const Int &a = s.rows[i][j];
      if (a == 0) continue;
      Int n = abs_int(a);
      auto &dst = a > 0 ? op.P[j] : op.Q[j];
      for (Int l = 0; l < n; ++l) dst.push_back({s.rows[i], Rat(s.params[i] + Rat(l))});
    }
  return op;
}

// P_j(s) straight from the rows, without materializing factor lists.
inline Rat eval_P(const HornSystem &sys, int j, const RatVec2 &s) {
  Rat r = 1;
  for (size_t i = 0; i < sys.size(); ++i) {
    const Int &a = sys.rows[i][j];
    if (a <= 0) continue;
    Rat L = sys.form(i, s);
    for (Int l = 0; l < a; ++l) r *= L + Rat(l);
  }
  return r;
}

inline Rat eval_Q(const HornSystem &sys, int j, const RatVec2 &s) {
  Rat r = 1;
  for (size_t i = 0; i < sys.size(); ++i) {
    const Int &a = sys.rows[i][j];
    if (a >= 0) continue;
    Rat L = sys.form(i, s);
    for (Int l = 0; l < -a; ++l) r *= L + Rat(l);
  }
  return r;
}

class PuiseuxPolynomial {
public:
  using map_type = std::map<RatVec2, Rat>;

  PuiseuxPolynomial() = default;
  explicit PuiseuxPolynomial(map_type t) : terms_(std::move(t)) { prune(); }
  static PuiseuxPolynomial monomial(const RatVec2 &e, const Rat &c = Rat(1)) {
    PuiseuxPolynomial p;
    p.add(e, c);
    return p;
  }

  void add(const RatVec2 &e, const Rat &c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
      return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }

  const map_type &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  // Coefficient of the lex-smallest exponent becomes 1.
  PuiseuxPolynomial normalized() const {
    if (terms_.empty()) return *this;
    Rat lead = terms_.begin()->second;
    PuiseuxPolynomial out;
    for (const auto &[e, c] : terms_) out.terms_.emplace(e, Rat(c / lead));
    return out;
  }

  // All exponents congruent modulo Z^2.
  bool is_pure() const {
    if (terms_.empty()) return true;
    RatVec2 k = class_mod_z2(terms_.begin()->first);
    for (const auto &[e, c] : terms_)
      if (!(class_mod_z2(e) == k)) return false;
    return true;
  }

  PuiseuxPolynomial operator+(const PuiseuxPolynomial &o) const {
    PuiseuxPolynomial r = *this;
    for (const auto &[e, c] : o.terms_) r.add(e, c);
    return r;
  }
  PuiseuxPolynomial operator*(const Rat &k) const {
    PuiseuxPolynomial r;
    if (k == 0) return r;
    for (const auto &[e, c] : terms_) r.terms_.emplace(e, Rat(c * k));
    return r;
  }
  PuiseuxPolynomial operator*(const PuiseuxPolynomial &o) const {
    PuiseuxPolynomial r;
    for (const auto &[e, c] : terms_)
      for (const auto &[f, d] : o.terms_) r.add(e + f, c * d);
    return r;
  }
  friend bool operator==(const PuiseuxPolynomial &p, const PuiseuxPolynomial &q) { return p.terms_ == q.terms_; }

private:
  void prune() {
    for (auto it = terms_.begin(); it != terms_.end();)
      it = it->second == 0 ? terms_.erase(it) : std::next(it);
  }
  map_type terms_;
};

// Residual x_j P_j(theta) f - Q_j(theta) f, j in {0,1}.
inline PuiseuxPolynomial apply_horn(int j, const PuiseuxPolynomial &f, const HornSystem &s) {
  PuiseuxPolynomial r;
  for (const auto &[e, c] : f.terms()) {
    Rat p = eval_P(s, j, e);
    if (p != 0) r.add(shifted(e, j == 0, j == 1), c * p);
    Rat q = eval_Q(s, j, e);
    if (q != 0) r.add(e, -c * q);
  }
  return r;
}

inline bool is_solution(const PuiseuxPolynomial &f, const HornSystem &s) {
  if (f.is_zero()) throw error(error_kind::precondition, "zero polynomial is trivially a solution; rejected");
  return apply_horn(0, f, s).is_zero() && apply_horn(1, f, s).is_zero();
}

// Scales x^alpha by <A_j, alpha> + c_j - 1; s carries the target parameters.
inline PuiseuxPolynomial apply_intertwiner(size_t j, const PuiseuxPolynomial &f, const HornSystem &s) {
  PuiseuxPolynomial r;
  for (const auto &[e, c] : f.terms()) r.add(e, c * (s.form(j, e) - 1));
  return r;
}

inline HornSystem with_param_shift(const HornSystem &s, size_t j, const Rat &delta) {
  HornSystem t = s;
  t.params[j] += delta;
  return t;
}

}  // namespace hornkit
