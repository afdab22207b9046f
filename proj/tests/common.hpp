// Fixture loading and random system generation shared by the test binaries.
#pragma once

#include <hornkit/hornkit.hpp>

#include <random>
#include <string>

namespace hornkit::testing {

inline std::string fixture(const std::string &name) { return std::string(HORNKIT_FIXTURES) + "/" + name; }

inline HornSystem load_system(const std::string &name) {
  return io::system_from_json(io::read_json_file(fixture(name)));
}

inline io::json load_json(const std::string &name) { return io::read_json_file(fixture(name)); }

struct ListedSolution {
  PuiseuxPolynomial f;
  bool persistent = false;
};

// Sidecar of the form {"system": file, "solutions": [{terms, persistent}]}.
inline std::pair<HornSystem, std::vector<ListedSolution>> load_solutions(const std::string &name) {
  io::json j = load_json(name);
  HornSystem s = load_system(j["system"].get<std::string>());
  std::vector<ListedSolution> out;
  for (const auto &item : j["solutions"])
    out.push_back({io::polynomial_from_json(item["terms"]), item["persistent"].get<bool>()});
  return {s, out};
}

inline std::vector<PuiseuxPolynomial> polynomial_list(const io::json &j) {
  std::vector<PuiseuxPolynomial> out;
  for (const auto &p : j) out.push_back(io::polynomial_from_json(p));
  return out;
}

inline Rat random_rat(std::mt19937_64 &g, long num_bound, long den_lo, long den_hi) {
  std::uniform_int_distribution<long> n(-num_bound, num_bound), d(den_lo, den_hi);
  Rat r(Int(n(g)), Int(d(g)));
  r.canonicalize();
  return r;
}

// A non-integer rational with a large denominator.
inline Rat generic_rat(std::mt19937_64 &g) {
  for (;;) {
    Rat r = random_rat(g, 100000, 1000, 99991);
    if (!is_integer(r)) return r;
  }
}

// Nonconfluent system with m rows, entries in [-bound, bound], rows spanning the plane.
inline HornSystem random_nonconfluent(std::mt19937_64 &g, size_t m, long bound) {
  std::uniform_int_distribution<long> e(-bound, bound);
  for (;;) {
    HornSystem s;
    long sx = 0, sy = 0;
    bool ok = true;
    for (size_t i = 0; i + 1 < m; ++i) {
      long a = e(g), b = e(g);
      if (a == 0 && b == 0) {
        ok = false;
        break;
      }
      s.rows.emplace_back(a, b);
      sx += a;
      sy += b;
    }
    if (!ok || std::labs(sx) > bound || std::labs(sy) > bound || (sx == 0 && sy == 0)) continue;
    s.rows.emplace_back(-sx, -sy);
    if (!s.has_rank_two()) continue;
    for (size_t i = 0; i < m; ++i) s.params.push_back(generic_rat(g));
    return s;
  }
}

}  // namespace hornkit::testing
