// Exact scalars and planar lattice primitives.
#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hornkit {

using Int = mpz_class;
using Rat = mpq_class;

// Error kinds map onto CLI exit codes.
enum class error_kind { parse, precondition, resonant, internal };

class error : public std::runtime_error {
public:
  error(error_kind k, const std::string &msg) : std::runtime_error(msg), kind_(k) {}
  error_kind kind() const noexcept { return kind_; }

private:
  error_kind kind_;
};

inline Rat make_rat(long p, long q = 1) {
  Rat r(p, q);
  r.canonicalize();
  return r;
}

inline Rat make_rat(const Int &p, const Int &q = Int(1)) {
  Rat r(p, q);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rat &r) { return r.get_den() == 1; }

inline Int floor_rat(const Rat &r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

// Fractional part in [0,1).
inline Rat frac(const Rat &r) {
  Rat f = r - Rat(floor_rat(r));
  f.canonicalize();
  return f;
}

// "p/q" wire format; integers bare.
inline std::string to_string(const Rat &r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rat parse_rat(const std::string &s) {
  auto bad = [&] { return error(error_kind::parse, "malformed rational \"" + s + "\""); };
  if (s.empty()) throw bad();
  auto slash = s.find('/');
  auto is_int = [](const std::string &t) {
    if (t.empty()) return false;
    size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    return std::all_of(t.begin() + i, t.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+') throw bad();
  if (num[0] == '+') num.erase(0, 1);
  Int n(num), d(den);
  if (d == 0) throw error(error_kind::parse, "zero denominator in \"" + s + "\"");
  return make_rat(n, d);
}

inline Int abs_int(const Int &x) { return x < 0 ? Int(-x) : x; }

inline Int gcd_int(const Int &a, const Int &b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline int sgn(const Int &x) { return ::sgn(x); }
inline int sgn(const Rat &x) { return ::sgn(x); }

struct LatticeVec {
  Int a, b;

  LatticeVec() = default;
  LatticeVec(Int x, Int y) : a(std::move(x)), b(std::move(y)) {}
  LatticeVec(long x, long y) : a(x), b(y) {}

  bool is_zero() const { return a == 0 && b == 0; }
  const Int &operator[](int j) const { return j == 0 ? a : b; }
  friend bool operator==(const LatticeVec &u, const LatticeVec &v) { return u.a == v.a && u.b == v.b; }
  friend bool operator<(const LatticeVec &u, const LatticeVec &v) {
    return u.a != v.a ? u.a < v.a : u.b < v.b;
  }
  friend LatticeVec operator+(const LatticeVec &u, const LatticeVec &v) { return {Int(u.a + v.a), Int(u.b + v.b)}; }
  friend LatticeVec operator-(const LatticeVec &u) { return {Int(-u.a), Int(-u.b)}; }
  friend LatticeVec operator*(const Int &k, const LatticeVec &u) { return {Int(k * u.a), Int(k * u.b)}; }
};

struct RatVec2 {
  Rat x1, x2;

  RatVec2() = default;
  RatVec2(Rat p, Rat q) : x1(std::move(p)), x2(std::move(q)) {}

  const Rat &operator[](int j) const { return j == 0 ? x1 : x2; }
  Rat &operator[](int j) { return j == 0 ? x1 : x2; }
  friend bool operator==(const RatVec2 &u, const RatVec2 &v) { return u.x1 == v.x1 && u.x2 == v.x2; }
  friend bool operator<(const RatVec2 &u, const RatVec2 &v) {
    return u.x1 != v.x1 ? u.x1 < v.x1 : u.x2 < v.x2;
  }
  friend RatVec2 operator+(const RatVec2 &u, const RatVec2 &v) { return {Rat(u.x1 + v.x1), Rat(u.x2 + v.x2)}; }
  friend RatVec2 operator-(const RatVec2 &u, const RatVec2 &v) { return {Rat(u.x1 - v.x1), Rat(u.x2 - v.x2)}; }
  friend RatVec2 operator-(const RatVec2 &u) { return {Rat(-u.x1), Rat(-u.x2)}; }
};

inline RatVec2 shifted(const RatVec2 &s, long d1, long d2) { return {Rat(s.x1 + d1), Rat(s.x2 + d2)}; }

inline Rat dot(const LatticeVec &u, const RatVec2 &s) { return Rat(u.a * s.x1 + u.b * s.x2); }

inline Int det(const LatticeVec &u, const LatticeVec &v) { return u.a * v.b - u.b * v.a; }

inline bool independent(const LatticeVec &u, const LatticeVec &v) { return det(u, v) != 0; }

// Residue class of an exponent modulo Z^2.
inline RatVec2 class_mod_z2(const RatVec2 &s) { return {frac(s.x1), frac(s.x2)}; }

inline std::pair<LatticeVec, Int> primitive(const LatticeVec &v) {
  if (v.is_zero()) throw error(error_kind::precondition, "zero vector has no primitive direction");
  Int g = gcd_int(v.a, v.b);
  return {LatticeVec(Int(v.a / g), Int(v.b / g)), g};
}

inline bool opposite_open_quadrants(const LatticeVec &u, const LatticeVec &v) {
  if (u.a == 0 || u.b == 0 || v.a == 0 || v.b == 0) return false;
  return sgn(u.a) == -sgn(v.a) && sgn(u.b) == -sgn(v.b);
}

inline Int index_nu(const LatticeVec &u, const LatticeVec &v) {
  if (!opposite_open_quadrants(u, v)) return 0;
  Int p = abs_int(u.a * v.b), q = abs_int(u.b * v.a);
  return p < q ? p : q;
}

// Angular position: upper half-plane (including the positive x1-axis) first.
inline int half_plane(const LatticeVec &v) { return (v.b > 0 || (v.b == 0 && v.a > 0)) ? 0 : 1; }

inline bool angle_less(const LatticeVec &u, const LatticeVec &v) {
  int hu = half_plane(u), hv = half_plane(v);
  if (hu != hv) return hu < hv;
  return det(u, v) > 0;
}

inline bool same_ray(const LatticeVec &u, const LatticeVec &v) {
  return det(u, v) == 0 && sgn(u.a) == sgn(v.a) && sgn(u.b) == sgn(v.b);
}

// Counterclockwise order starting at the positive x1-axis.
inline std::vector<size_t> ccw_sort(const std::vector<LatticeVec> &vs) {
  for (size_t i = 0; i < vs.size(); ++i) {
    if (vs[i].is_zero()) throw error(error_kind::precondition, "zero vector in angular sort");
    for (size_t j = i + 1; j < vs.size(); ++j)
      if (same_ray(vs[i], vs[j])) throw error(error_kind::precondition, "duplicate direction");
  }
  std::vector<size_t> idx(vs.size());
  std::iota(idx.begin(), idx.end(), size_t{0});
  std::sort(idx.begin(), idx.end(), [&](size_t i, size_t j) { return angle_less(vs[i], vs[j]); });
  return idx;
}

// x lies in the closed cone spanned by independent u, v.
inline bool in_closed_cone(const LatticeVec &x, const LatticeVec &u, const LatticeVec &v) {
  Int d = det(u, v);
  Int l1 = det(x, v), l2 = det(u, x);
  return sgn(l1) * sgn(d) >= 0 && sgn(l2) * sgn(d) >= 0;
}

// 2x2 integer matrix, rows r0 and r1.
struct Mat2 {
  LatticeVec r0, r1;
  Int determinant() const { return det(r0, r1); }
  Mat2 transposed() const { return {LatticeVec(r0.a, r1.a), LatticeVec(r0.b, r1.b)}; }
};

// Solves m * s = v.
inline RatVec2 solve(const Mat2 &m, const RatVec2 &v) {
  Int d = m.determinant();
  if (d == 0) throw error(error_kind::precondition, "singular 2x2 matrix");
  Rat s1 = (Rat(m.r1.b) * v.x1 - Rat(m.r0.b) * v.x2) / Rat(d);
  Rat s2 = (Rat(-m.r1.a) * v.x1 + Rat(m.r0.a) * v.x2) / Rat(d);
  s1.canonicalize();
  s2.canonicalize();
  return {s1, s2};
}

struct SmithForm {
  Int d1, d2;   // d1 | d2, both positive
  Int u[2][2];  // unimodular, D = U * M * V
};

inline SmithForm smith_normal_form(const Mat2 &m) {
  Int a[2][2] = {{m.r0.a, m.r0.b}, {m.r1.a, m.r1.b}};
  Int u[2][2] = {{1, 0}, {0, 1}};
  if (m.determinant() == 0) throw error(error_kind::precondition, "singular matrix has no finite residue group");
  auto row_op = [&](int dst, int src, const Int &q) {  // row dst -= q * row src
    for (int k = 0; k < 2; ++k) {
      a[dst][k] -= q * a[src][k];
      u[dst][k] -= q * u[src][k];
    }
  };
  auto row_swap = [&]() {
    for (int k = 0; k < 2; ++k) {
      std::swap(a[0][k], a[1][k]);
      std::swap(u[0][k], u[1][k]);
    }
  };
  auto col_op = [&](int dst, int src, const Int &q) {
    for (int k = 0; k < 2; ++k) a[k][dst] -= q * a[k][src];
  };
  auto col_swap = [&]() {
    for (int k = 0; k < 2; ++k) std::swap(a[k][0], a[k][1]);
  };
  for (;;) {
    // bring a nonzero entry of minimal modulus to (0,0)
    int bi = -1, bj = -1;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        if (a[i][j] != 0 && (bi < 0 || abs_int(a[i][j]) < abs_int(a[bi][bj]))) bi = i, bj = j;
    if (bi == 1) row_swap();
    if (bj == 1) col_swap();
    bool clean = true;
    if (a[1][0] != 0) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), a[1][0].get_mpz_t(), a[0][0].get_mpz_t());
      row_op(1, 0, q);
      if (a[1][0] != 0) clean = false;
    }
    if (a[0][1] != 0) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), a[0][1].get_mpz_t(), a[0][0].get_mpz_t());
      col_op(1, 0, q);
      if (a[0][1] != 0) clean = false;
    }
    if (!clean) continue;
    if (a[1][1] % a[0][0] != 0) {
      row_op(0, 1, Int(-1));  // fold row 1 into row 0 and reduce again
      continue;
    }
    break;
  }
  SmithForm f;
  f.d1 = abs_int(a[0][0]);
  f.d2 = abs_int(a[1][1]);
  if (a[0][0] < 0)
    for (int k = 0; k < 2; ++k) u[0][k] = -u[0][k];
  if (a[1][1] < 0)
    for (int k = 0; k < 2; ++k) u[1][k] = -u[1][k];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) f.u[i][j] = u[i][j];
  return f;
}

// Index of the class of k in Z^2 / (columns of M) Z^2, in [0, |det M|).
inline Int residue_index(const SmithForm &f, const Int &k1, const Int &k2) {
  Int y1 = f.u[0][0] * k1 + f.u[0][1] * k2;
  Int y2 = f.u[1][0] * k1 + f.u[1][1] * k2;
  Int r1, r2;
  mpz_fdiv_r(r1.get_mpz_t(), y1.get_mpz_t(), f.d1.get_mpz_t());
  mpz_fdiv_r(r2.get_mpz_t(), y2.get_mpz_t(), f.d2.get_mpz_t());
  return r1 * f.d2 + r2;
}

}  // namespace hornkit
