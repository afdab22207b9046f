// JSON wire format: systems, polynomials, reports.
#pragma once

#include "solver.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hornkit::io {

using json = nlohmann::ordered_json;

inline const char *kind_label(error_kind k) {
  switch (k) {
    case error_kind::parse: return "parse";
    case error_kind::precondition: return "precondition";
    case error_kind::resonant: return "resonant";
    default: return "internal";
  }
}

inline json error_json(const error &e) { return json{{"error", kind_label(e.kind())}, {"message", e.what()}}; }

inline Rat rat_from_json(const json &j) {
  if (j.is_number_integer()) return Rat(Int(std::to_string(j.get<long long>())));
  if (j.is_string()) return parse_rat(j.get<std::string>());
  throw error(error_kind::parse, "rational must be a \"p/q\" string or an integer, got " + j.dump());
}

inline json rat_json(const Rat &r) { return to_string(r); }

inline Int int_from_json(const json &j) {
  if (j.is_number_integer()) return Int(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    Rat r = parse_rat(j.get<std::string>());
    if (!is_integer(r)) throw error(error_kind::parse, "expected an integer, got " + j.dump());
    return r.get_num();
  }
  throw error(error_kind::parse, "expected an integer, got " + j.dump());
}

inline json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw error(error_kind::parse, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error &e) {
    throw error(error_kind::parse, std::string("malformed JSON: ") + e.what());
  }
}

inline HornSystem system_from_json(const json &j) {
  if (!j.is_object()) throw error(error_kind::parse, "system must be a JSON object");
  if (!j.contains("matrix") || !j["matrix"].is_array()) throw error(error_kind::parse, "missing \"matrix\" array");
  if (!j.contains("parameters") || !j["parameters"].is_array())
    throw error(error_kind::parse, "missing \"parameters\" array");
  HornSystem s;
  for (const auto &row : j["matrix"]) {
    if (!row.is_array() || row.size() != 2) throw error(error_kind::parse, "matrix rows must be integer pairs");
    s.rows.emplace_back(int_from_json(row[0]), int_from_json(row[1]));
  }
  for (const auto &p : j["parameters"]) s.params.push_back(rat_from_json(p));
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw error(error_kind::parse, "\"name\" must be a string");
    s.name = j["name"].get<std::string>();
  }
  if (s.rows.size() != s.params.size())
    throw error(error_kind::parse, "matrix and parameter lists differ in length");
  s.validate();
  return s;
}

inline json system_json(const HornSystem &s) {
  json j;
  if (!s.name.empty()) j["name"] = s.name;
  json m = json::array();
  for (const auto &r : s.rows) m.push_back(json::array({r.a.get_si(), r.b.get_si()}));
  j["matrix"] = m;
  json p = json::array();
  for (const auto &c : s.params) p.push_back(rat_json(c));
  j["parameters"] = p;
  return j;
}

inline std::string dump(const json &j) { return j.dump(2) + "\n"; }

inline json vec_json(const RatVec2 &v) { return json::array({rat_json(v.x1), rat_json(v.x2)}); }
inline json vec_json(const LatticeVec &v) { return json::array({v.a.get_si(), v.b.get_si()}); }

inline RatVec2 vec_from_json(const json &j) {
  if (!j.is_array() || j.size() != 2) throw error(error_kind::parse, "exponent must be a pair");
  return {rat_from_json(j[0]), rat_from_json(j[1])};
}

// Terms in lex order of exponent.
inline json polynomial_json(const PuiseuxPolynomial &f) {
  json t = json::array();
  for (const auto &[e, c] : f.terms()) t.push_back(json{{"exponent", vec_json(e)}, {"coefficient", rat_json(c)}});
  return t;
}

inline PuiseuxPolynomial polynomial_from_json(const json &j) {
  const json &terms = j.is_object() && j.contains("terms") ? j["terms"] : j;
  if (!terms.is_array()) throw error(error_kind::parse, "polynomial must be a list of terms");
  PuiseuxPolynomial f;
  for (const auto &t : terms) {
    if (!t.is_object() || !t.contains("exponent") || !t.contains("coefficient"))
      throw error(error_kind::parse, "term needs \"exponent\" and \"coefficient\"");
    f.add(vec_from_json(t["exponent"]), rat_from_json(t["coefficient"]));
  }
  return f;
}

inline json polygon_json(const OreSatoPolygon &p) {
  json edges = json::array(), verts = json::array();
  for (const auto &e : p.edges)
    edges.push_back(json{{"normal", vec_json(e.normal)}, {"direction", vec_json(e.direction)}, {"length", e.length.get_si()}});
  for (const auto &v : p.vertices) verts.push_back(vec_json(v));
  return json{{"edges", edges}, {"vertices", verts}};
}

inline json classification_json(const Classification &c) {
  json segs = json::array();
  for (const auto &s : c.segments) segs.push_back(json{{"direction", vec_json(s.direction)}, {"length", s.length.get_si()}});
  json tri = json::array();
  for (const auto &e : c.triangle) tri.push_back(json{{"normal", vec_json(e.normal)}, {"length", e.length.get_si()}});
  json j{{"kind", kind_name(c.kind)}, {"segments", segs}};
  if (!c.triangle.empty()) j["triangle"] = tri;
  return j;
}

inline json resonance_json(const ResonanceReport &r) {
  json list = json::array();
  for (const auto &c : r.circuits) {
    if (!c.resonant) continue;
    json rows = json::array(), lam = json::array();
    for (auto i : c.rows) rows.push_back(i);
    for (const auto &l : c.lambda) lam.push_back(l.get_si());
    list.push_back(json{{"rows", rows}, {"lambda", lam}});
  }
  return json{{"resonant", r.is_resonant},
              {"maximally_resonant", r.is_maximally_resonant},
              {"circuits", r.circuits.size()},
              {"resonant_circuits", list}};
}

inline json solution_json(const PuiseuxPolynomial &f, bool persistent) {
  return json{{"terms", polynomial_json(f)}, {"persistent", persistent}, {"verified", true}};
}

inline json harvest_json(const HarvestResult &h) {
  json j{{"pair", json::array({h.I.i, h.I.j})},
         {"branch", h.branch},
         {"alpha0", vec_json(h.alpha0)},
         {"outcome", outcome_name(h.outcome)}};
  if (h.polynomial) j["terms"] = polynomial_json(*h.polynomial);
  if (h.obstruction) j["obstruction"] = vec_json(*h.obstruction);
  return j;
}

inline json constructive_json(const ConstructiveReport &r) {
  json sols = json::array();
  for (size_t k = 0; k < r.basis.size(); ++k) sols.push_back(solution_json(r.basis[k], r.basis_persistent[k]));
  return json{{"holonomic_rank", r.holonomic_rank.get_si()},
              {"persistent_dim", r.persistent_dim.get_si()},
              {"persistent_found", r.persistent_found},
              {"harvested_finite", r.harvested_finite},
              {"independent", r.independent},
              {"rank_attained", r.rank_attained},
              {"rank_exceeded", r.rank_exceeded},
              {"solutions", sols}};
}

inline json analysis_json(const HornSystem &s, long window) {
  json j;
  bool nc = check_nonconfluent(s);
  j["name"] = s.name;
  j["nonconfluent"] = nc;
  j["window"] = window;
  if (!nc) {
    j["fully_supported_count"] = fully_supported_count(s).get_si();
    return j;
  }
  HornSystem n = normalize_rows(s);
  j["rank"] = holonomic_rank(s).get_si();
  j["persistent_dim"] = persistent_dim(s).get_si();
  j["fully_supported_count"] = fully_supported_count(n).get_si();
  json S = json::array();
  for (size_t v = 0; v < components(s).size(); ++v) S.push_back(convergent_count_S(s, v).get_si());
  j["S_per_vertex"] = S;
  OreSatoPolygon p = build_polygon(s);
  j["polygon"] = polygon_json(p);
  j["classification"] = classification_json(classify(p));
  j["resonance"] = resonance_json(detect_resonance(n));
  auto rep = check_constructive(s, window);
  json pers = json::array();
  for (size_t k = 0; k < rep.basis.size(); ++k)
    if (rep.basis_persistent[k]) pers.push_back(polynomial_json(rep.basis[k]));
  j["persistent_solutions"] = pers;
  j["harvested_polynomials"] = rep.harvested_finite;
  j["independent_polynomials"] = rep.independent;
  j["rank_attained"] = rep.rank_attained;
  j["rank_exceeded"] = rep.rank_exceeded;
  return j;
}

}  // namespace hornkit::io
