// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include "common.hpp"

#include <chrono>
#include <iostream>
#include <set>
#include <sstream>

using namespace hornkit;
using namespace hornkit::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
  bool pass = true;
  std::ostringstream note;

  void require(bool ok, const std::string &what) {
    if (!ok) {
      if (!pass) note << "; ";
      note << what;
      pass = false;
    }
  }
};

bool same_up_to_scaling(const PuiseuxPolynomial &p, const PuiseuxPolynomial &q) {
  return p.normalized() == q.normalized();
}

bool same_set(const std::vector<PuiseuxPolynomial> &a, const std::vector<PuiseuxPolynomial> &b) {
  if (a.size() != b.size()) return false;
  for (const auto &x : a)
    if (std::none_of(b.begin(), b.end(), [&](const auto &y) { return same_up_to_scaling(x, y); })) return false;
  return true;
}

Rat multinomial(const Rat &n, long k1, long k2) {
  Rat r = 1;
  for (long l = 0; l < k1 + k2; ++l) r *= n - l;
  for (long l = 2; l <= k1; ++l) r /= l;
  for (long l = 2; l <= k2; ++l) r /= l;
  return r;
}

Verdict rank_reproduction() {
  Verdict v;
  auto t0 = Clock::now();
  struct Case {
    HornSystem s;
    long rank;
    const char *label;
  };
  std::vector<Case> cases{
      {load_system("zonotope.json"), 31, "zonotope"},
      {load_system("triangle_sides.json"), 40, "triangle+sides"},
      {load_system("triangle_simplex.json"), 4, "simplex triangle"},
      {make_system({{1, 2}, {-1, -1}, {0, -1}}, {make_rat(1, 3), make_rat(1, 5), make_rat(1, 7)}), 2, "single circuit"},
      {normalize_rows(make_system({{-2, 0}, {0, -2}, {1, 1}, {1, 1}}, std::vector<Rat>(4, Rat(0)))), 4, "simplicial"},
      {normalize_rows(load_system("simplicial.json")), 4, "simplicial fixture"}};
  for (const auto &c : cases) {
    Int r = holonomic_rank(c.s);
    v.require(r == c.rank, std::string(c.label) + " rank " + r.get_str());
  }
  double dt = seconds_since(t0);
  v.require(dt < 1.0, "took " + std::to_string(dt) + " s");
  if (v.pass) v.note << "31 40 4 2 4 in " << dt << " s";
  return v;
}

Verdict persistent_dimension() {
  Verdict v;
  for (auto [sys, exp, dim] : {std::tuple{"zonotope.json", "zonotope.expected.json", 6},
                               std::tuple{"triangle_sides.json", "triangle_sides.expected.json", 5},
                               std::tuple{"triangle_simplex.json", "triangle_simplex.expected.json", 1}}) {
    HornSystem s = load_system(sys);
    v.require(persistent_dim(s) == dim, std::string(sys) + " persistent_dim " + persistent_dim(s).get_str());
    auto want = polynomial_list(load_json(exp)["persistent_solutions"]);
    auto got = persistent_solutions(s);
    v.require(same_set(got, want), std::string(sys) + " persistent set differs");
  }
  if (v.pass) v.note << "6 5 1, listed sets reproduced";
  return v;
}

Verdict atomic_lattice() {
  Verdict v;
  HornSystem s = load_system("atomic_32_43.json");
  AtomicSystem a = enumerate_atomic(s).front();
  auto expected = load_json("atomic_32_43.expected.json");
  std::vector<RatVec2> want;
  for (const auto &e : expected["polynomial_exponents"]) want.push_back(io::vec_from_json(e));
  std::sort(want.begin(), want.end());
  v.require(polynomial_exponents(a) == want, "exponent lattice differs");
  auto monos = persistent_monomials(a);
  v.require(same_set(monos, polynomial_list(expected["persistent_monomials"])), "monomials differ");
  auto polys = persistent_polynomials(a);
  bool all_solve = true;
  for (const auto &f : monos) all_solve = all_solve && is_solution(f, s);
  for (const auto &f : polys) all_solve = all_solve && is_solution(f, s);
  v.require(all_solve, "an output fails is_solution");
  auto ref = polynomial_list(expected["reference_binomials"]);
  for (size_t k = 0; k < ref.size(); ++k) {
    bool listed = std::any_of(polys.begin(), polys.end(), [&](const auto &f) { return same_up_to_scaling(f, ref[k]); });
    if (listed) continue;
    std::ostringstream why;
    why << "reference binomial " << k + 1 << " not returned";
    if (!is_solution(ref[k], s)) why << " (it is not a solution: first-operator residual " << apply_horn(0, ref[k], s).size()
                                     << " term; returned its verified 4-term completion instead)";
    v.require(false, why.str());
  }
  if (v.pass) v.note << "8 exponents, 6 monomials, 2 binomials";
  else v.note << "; exponents, monomials and the first binomial match";
  return v;
}

Verdict corpus() {
  Verdict v;
  auto t0 = Clock::now();
  size_t total = 0;
  for (const char *name : {"triangle_simplex.solutions.json", "zonotope.solutions.json", "triangle_sides.solutions.json"}) {
    auto [s, list] = load_solutions(name);
    for (size_t k = 0; k < list.size(); ++k) {
      ++total;
      v.require(apply_horn(0, list[k].f, s).is_zero() && apply_horn(1, list[k].f, s).is_zero(),
                std::string(name) + " #" + std::to_string(k) + " has a residual");
    }
  }
  v.require(total >= 35, "corpus has only " + std::to_string(total) + " items");
  HornSystem s = load_system("triangle_sides.json");
  auto [sys, listed] = load_solutions("triangle_sides.solutions.json");
  std::vector<PuiseuxPolynomial> span;
  for (const auto &l : listed) span.push_back(l.f);
  size_t before = span_dimension(span);
  auto starts = load_json("triangle_sides.expected.json")["harvest_starts"];
  v.require(starts.size() == 5, "expected 5 harvest starts");
  for (const auto &st : starts) {
    HarvestResult h = explore(s, io::vec_from_json(st), default_window(s));
    bool ok = h.outcome == HarvestOutcome::Finite && is_solution(*h.polynomial, s);
    v.require(ok, "no finite solution at " + st.dump());
    if (ok) span.push_back(*h.polynomial);
  }
  size_t after = span_dimension(span);
  v.require(after == before + 5, "span grows " + std::to_string(before) + " -> " + std::to_string(after));
  double dt = seconds_since(t0);
  v.require(dt < 30, "took " + std::to_string(dt) + " s");
  if (v.pass) v.note << total << " listed solutions, 5 harvested starts, " << dt << " s";
  return v;
}

Verdict classification() {
  Verdict v;
  auto kind = [](const char *f) { return classify(build_polygon(load_system(f))).kind; };
  v.require(kind("zonotope.json") == PolygonKind::Zonotope, "zonotope misclassified");
  v.require(kind("triangle_sides.json") == PolygonKind::TrianglePlusSegments, "triangle+sides misclassified");
  v.require(kind("quadrilateral.json") == PolygonKind::Other, "quadrilateral misclassified");
  size_t resummed = 0;
  for (const char *f : {"zonotope.json", "triangle_sides.json", "triangle_simplex.json", "rank_one.json", "maximally_resonant.json",
                        "single_circuit.json", "simplicial.json"}) {
    OreSatoPolygon p = build_polygon(load_system(f));
    v.require(same_polygon(minkowski_resum(minkowski_decompose(p)), p), std::string(f) + " witness does not re-sum");
    ++resummed;
  }
  if (v.pass) v.note << "Zonotope / TrianglePlusSegments / Other, " << resummed << " witnesses re-sum";
  return v;
}

Verdict constructive() {
  Verdict v;
  ConstructiveReport z = check_constructive(load_system("zonotope.json"), 32);
  v.require(z.rank_attained && z.independent == 31, "zonotope found " + std::to_string(z.independent));
  ConstructiveReport t = check_constructive(load_system("triangle_sides.json"), 32);
  v.require(t.rank_attained && t.independent == 40, "triangle+sides found " + std::to_string(t.independent));
  HornSystem q = load_system("quadrilateral.json");
  std::mt19937_64 g(606);
  std::ostringstream counts;
  for (int k = 0; k < 5; ++k) {
    HornSystem r = q;
    do {
      for (auto &c : r.params) c = generic_rat(g);
    } while (!is_generic(r));
    ConstructiveReport rep = check_constructive(r, 32);
    counts << (k ? "," : "") << rep.independent;
    v.require(!rep.rank_attained, "quadrilateral attained rank");
  }
  if (v.pass) v.note << "31/31, 40/40 at window 32; quadrilateral found " << counts.str() << " of 9";
  return v;
}

Verdict combinatorial() {
  Verdict v;
  auto t0 = Clock::now();
  std::mt19937_64 g(7777);
  std::uniform_int_distribution<size_t> m(3, 7);
  for (int trial = 0; trial < 100; ++trial) {
    HornSystem s = random_nonconfluent(g, m(g), 3);
    auto comps = components(s);
    Int S0 = convergent_count_S(s, 0);
    for (size_t k = 0; k < comps.size(); ++k) {
      v.require(convergent_count_S(s, k) == S0, "S varies across vertices");
      v.require(convergent_dim_by_cone(s, comps[k]) == S0, "cone count differs from S");
    }
    v.require(holonomic_rank(s) == S0 + persistent_dim(s), "rank != S + persistent_dim");
    HornSystem n = normalize_rows(s);
    v.require(holonomic_rank(n) == holonomic_rank(s), "normalization changes rank");
    v.require(classify(build_polygon(n)).kind == classify(build_polygon(s)).kind, "normalization changes class");
    if (!v.pass) {
      v.note << " (trial " << trial << ")";
      break;
    }
  }
  double dt = seconds_since(t0);
  v.require(dt < 60, "took " + std::to_string(dt) + " s");
  if (v.pass) v.note << "100 random systems, " << dt << " s";
  return v;
}

Verdict series_oracle() {
  Verdict v;
  HornSystem s = load_system("rank_one.json");
  Rat c1 = make_rat(1, 3), c2 = make_rat(1, 5), c3 = make_rat(1, 7);
  TruncatedSeries t = series_from_submatrix(s, PairRef{1, 2}, 0, 8);
  v.require(t.alpha0 == RatVec2(Rat(-c1), Rat(-c2)), "wrong initial exponent");
  v.require(verify_truncated(t, s), "verify_truncated fails");
  v.require(t.order_consistent, "recurrence order matters");
  Rat n = c1 + c2 - c3;
  size_t literal = 0, twisted = 0, total = 0;
  for (long k1 = 0; k1 <= 8; ++k1)
    for (long k2 = 0; k1 + k2 <= 8; ++k2) {
      auto it = t.coeffs.find(Offset{k1, k2});
      Rat got = it == t.coeffs.end() ? Rat(0) : it->second;
      Rat oracle = multinomial(n, k1, k2) * Rat((k1 + k2) % 2 ? -1 : 1);
      ++total;
      literal += got == oracle;
      twisted += got == oracle * Rat((k1 + k2) % 2 ? -1 : 1);
    }
  v.require(twisted == total, "differs from the expansion even after x -> -x");
  if (literal != total) {
    std::ostringstream why;
    why << "coefficients equal the (1-x1-x2) expansion only up to (-1)^|k| (" << literal << "/" << total
        << " literal, " << twisted << "/" << total << " after x -> -x); no parameter choice reaches the (1-x1-x2) sign";
    v.require(false, why.str());
    v.note << "; verify_truncated and order independence hold";
  }
  if (v.pass) v.note << total << " coefficients exact";
  return v;
}

Verdict resonance() {
  Verdict v;
  std::mt19937_64 g(909);
  std::uniform_int_distribution<long> shift(-30, 30);
  size_t on = 0, off = 0;
  for (int k = 0; k < 20; ++k) {
    Rat c1 = generic_rat(g), c2 = generic_rat(g);
    Rat c3 = Rat(shift(g)) - c1 - c2;
    HornSystem a = make_system({{1, 2}, {-1, -1}, {0, -1}}, {c1, c2, c3});
    on += detect_resonance(a).is_resonant;
    Rat d = generic_rat(g);
    HornSystem b = make_system({{1, 2}, {-1, -1}, {0, -1}}, {c1, c2, Rat(c3 + frac(d))});
    off += !detect_resonance(b).is_resonant;
  }
  v.require(on == 20 && off == 20, std::to_string(on) + "/20 resonant flagged, " + std::to_string(off) + "/20 clear");
  if (v.pass) v.note << "20 integral sums flagged, 20 fractional sums clear";
  return v;
}

HornSystem circuit_system(const Rat &c1, const Rat &c2, const Rat &c3) {
  return make_system({{1, 2}, {-1, -1}, {0, -1}}, {c1, c2, c3});
}

PuiseuxPolynomial f1(const Rat &c1, const Rat &c2) {
  return PuiseuxPolynomial::monomial(RatVec2(Rat(c1 + 2 * c2), Rat(-c1 - c2)));
}

PuiseuxPolynomial f2(const Rat &c1, const Rat &c2, const Rat &c3) {
  Rat total = c1 + c2 + c3;
  long n = -total.get_num().get_si();
  PuiseuxPolynomial base;
  base.add(RatVec2(Rat(1), Rat(0)), Rat(1));
  base.add(RatVec2(Rat(2), Rat(0)), Rat(1));
  base.add(RatVec2(Rat(0), Rat(1)), Rat(1));
  PuiseuxPolynomial power = PuiseuxPolynomial::monomial(RatVec2(Rat(0), Rat(0)));
  for (long k = 0; k < n; ++k) power = power * base;
  PuiseuxPolynomial inner = PuiseuxPolynomial::monomial(RatVec2(Rat(0), Rat(-c1 - c2))) +
                            PuiseuxPolynomial::monomial(RatVec2(Rat(0), c3), Rat(-1)) * power;
  return PuiseuxPolynomial::monomial(RatVec2(Rat(c1 + 2 * c2), Rat(0))) * inner * Rat(1 / total);
}

Verdict intertwiners() {
  Verdict v;
  std::mt19937_64 g(1313);
  for (int k = 0; k < 20; ++k) {
    Rat c1 = generic_rat(g), c2 = generic_rat(g), c3 = generic_rat(g);
    HornSystem target = circuit_system(c1, c2, c3);
    v.require(apply_intertwiner(0, f1(c1 - 1, c2), target).is_zero(), "I1 f1 != 0");
    v.require(apply_intertwiner(1, f1(c1, c2 - 1), target).is_zero(), "I2 f1 != 0");
    v.require(apply_intertwiner(2, f1(c1, c2), target) == f1(c1, c2) * Rat(c1 + c2 + c3 - 1), "I3 f1 scaling");
    // f2 is a Puiseux polynomial when c1 + c2 + c3 is a negative integer
    Rat d3 = Rat(-1 - k % 5) - c1 - c2;
    Rat total = c1 + c2 + d3;
    HornSystem poly_target = circuit_system(c1, c2, d3);
    PuiseuxPolynomial F2 = f2(c1, c2, d3);
    v.require(is_solution(F2, poly_target), "f2 is not a solution");
    PuiseuxPolynomial rhs = F2 * total + f1(c1, c2) * Rat(-1);
    v.require(apply_intertwiner(0, f2(c1 - 1, c2, d3), poly_target) == rhs, "I1 f2 relation");
    v.require(apply_intertwiner(1, f2(c1, c2 - 1, d3), poly_target) == rhs, "I2 f2 relation");
    v.require(apply_intertwiner(2, f2(c1, c2, d3 - 1), poly_target) == F2 * total, "I3 f2 relation");
  }
  size_t mapped = 0;
  for (const char *name : {"zonotope.json", "triangle_sides.json", "triangle_simplex.json"}) {
    HornSystem s = load_system(name);
    for (size_t j = 0; j < s.size(); ++j) {
      for (const auto &f : persistent_solutions(with_param_shift(s, j, Rat(-1)))) {
        PuiseuxPolynomial img = apply_intertwiner(j, f, s);
        if (img.is_zero()) continue;
        v.require(is_solution(img, s), std::string(name) + " intertwiner image is not a solution");
        ++mapped;
      }
      HornSystem up = with_param_shift(s, j, Rat(1));
      for (const auto &f : persistent_solutions(s)) {
        PuiseuxPolynomial img = apply_intertwiner(j, f, up);
        if (img.is_zero()) continue;
        v.require(is_solution(img, up), std::string(name) + " intertwiner image is not a solution");
        ++mapped;
      }
    }
  }
  if (v.pass) v.note << "relations on 20 vectors each, " << mapped << " persistent images verified";
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    const char *title;
    Verdict (*run)();
  };
  const Criterion criteria[] = {{"rank reproduction", rank_reproduction},
                                {"persistent dimension", persistent_dimension},
                                {"atomic exponent lattice", atomic_lattice},
                                {"solution corpus", corpus},
                                {"classification", classification},
                                {"constructive reducibility", constructive},
                                {"combinatorial identities", combinatorial},
                                {"series oracle", series_oracle},
                                {"resonance", resonance},
                                {"intertwiners", intertwiners}};
  int failed = 0, index = 0;
  for (const auto &c : criteria) {
    ++index;
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception &e) {
      v.pass = false;
      v.note << "exception: " << e.what();
    }
    failed += !v.pass;
    std::cout << "criterion " << index << " (" << c.title << "): " << (v.pass ? "PASS" : "FAIL") << " : "
              << v.note.str() << std::endl;
  }
  std::cout << (10 - failed) << "/10 criteria pass" << std::endl;
  return failed ? 1 : 0;
}
