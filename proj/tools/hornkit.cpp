// hornkit command-line front end.
#include <hornkit/hornkit.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

using hornkit::io::json;

enum exit_code { ok = 0, internal_failure = 1, parse_failure = 2, precondition_failure = 3 };

struct Options {
  std::string input;
  std::string out;
  long window = 0;
  bool allow_confluent = false;
  // series
  std::vector<size_t> pair{0, 1};
  size_t branch = 0;
  // verify
  std::string solution;
  // suggest-params
  long search_bound = 8;
  size_t max_checks = 400;
  // render
  std::string what = "polygon";
};

long resolve_window(const Options &o, const hornkit::HornSystem &s) {
  if (o.window > 0) return o.window;
  if (const char *env = std::getenv("HORNKIT_WINDOW")) {
    char *end = nullptr;
    long w = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || w <= 0)
      throw hornkit::error(hornkit::error_kind::parse, std::string("HORNKIT_WINDOW is not a positive integer: ") + env);
    return w;
  }
  return hornkit::default_window(s);
}

void emit(const Options &o, const std::string &text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw hornkit::error(hornkit::error_kind::precondition, "cannot write " + o.out);
  f << text;
}

hornkit::HornSystem load(const Options &o) {
  return hornkit::io::system_from_json(hornkit::io::read_json_file(o.input));
}

json cmd_analyze(const Options &o) {
  auto s = load(o);
  if (!o.allow_confluent && !hornkit::check_nonconfluent(s))
    throw hornkit::error(hornkit::error_kind::precondition, "rows do not sum to zero (pass --allow-confluent)");
  return hornkit::io::analysis_json(s, resolve_window(o, s));
}

// Two independent rows: every polynomial solution is persistent.
json solve_atomic(const hornkit::HornSystem &s) {
  auto a = hornkit::enumerate_atomic(s).front();
  json exps = json::array(), sols = json::array();
  for (const auto &e : hornkit::polynomial_exponents(a)) exps.push_back(hornkit::io::vec_json(e));
  for (const auto &f : hornkit::atomic_persistent(a)) {
    if (!hornkit::is_solution(f, s)) throw hornkit::error(hornkit::error_kind::internal, "atomic candidate failed");
    sols.push_back(hornkit::io::solution_json(f, true));
  }
  return json{{"atomic", true},
              {"rank", hornkit::atomic_rank(a).get_si()},
              {"nu", a.nu().get_si()},
              {"polynomial_exponents", exps},
              {"solutions", sols}};
}

json cmd_solve(const Options &o) {
  auto s = load(o);
  if (!hornkit::check_nonconfluent(s)) {
    if (s.size() == 2 && hornkit::independent(s.rows[0], s.rows[1])) return solve_atomic(s);
    throw hornkit::error(hornkit::error_kind::precondition, "rows do not sum to zero");
  }
  long w = resolve_window(o, s);
  auto rep = hornkit::check_constructive(s, w);
  json j = hornkit::io::constructive_json(rep);
  j["window"] = w;
  return j;
}

json cmd_classify(const Options &o) {
  auto s = load(o);
  auto p = hornkit::build_polygon(s);
  auto c = hornkit::classify(p);
  json j{{"polygon", hornkit::io::polygon_json(p)}, {"classification", hornkit::io::classification_json(c)}};
  if (c.kind != hornkit::PolygonKind::Other)
    j["resum_matches"] = hornkit::same_polygon(hornkit::minkowski_resum(c), p);
  return j;
}

json cmd_rank(const Options &o) {
  auto s = load(o);
  json j{{"nonconfluent", hornkit::check_nonconfluent(s)}};
  if (!hornkit::check_nonconfluent(s)) {
    j["fully_supported_count"] = hornkit::fully_supported_count(s).get_si();
    return j;
  }
  j["rank"] = hornkit::holonomic_rank(s).get_si();
  j["persistent_dim"] = hornkit::persistent_dim(s).get_si();
  j["fully_supported_count"] = hornkit::fully_supported_count(hornkit::normalize_rows(s)).get_si();
  json S = json::array();
  for (size_t v = 0; v < hornkit::components(s).size(); ++v) S.push_back(hornkit::convergent_count_S(s, v).get_si());
  j["S_per_vertex"] = S;
  return j;
}

json cmd_series(const Options &o) {
  auto s = load(o);
  if (o.pair.size() != 2 || o.pair[0] >= s.size() || o.pair[1] >= s.size() || o.pair[0] == o.pair[1])
    throw hornkit::error(hornkit::error_kind::precondition, "--pair needs two distinct row indices");
  long w = o.window > 0 ? o.window : 8;
  if (o.window <= 0 && std::getenv("HORNKIT_WINDOW")) w = resolve_window(o, s);
  hornkit::PairRef I{o.pair[0], o.pair[1]};
  auto t = hornkit::series_from_submatrix(s, I, o.branch, w);
  json coeffs = json::array();
  for (const auto &[off, c] : t.coeffs)
    coeffs.push_back(json{{"offset", json::array({off.p, off.q})},
                          {"exponent", hornkit::io::vec_json(hornkit::at_offset(t.alpha0, off))},
                          {"coefficient", hornkit::io::rat_json(c)}});
  return json{{"pair", json::array({I.i, I.j})},
              {"branch", o.branch},
              {"alpha0", hornkit::io::vec_json(t.alpha0)},
              {"window", w},
              {"order_consistent", t.order_consistent},
              {"verified", hornkit::verify_truncated(t, s)},
              {"coefficients", coeffs}};
}

json cmd_verify(const Options &o) {
  auto s = load(o);
  if (o.solution.empty()) throw hornkit::error(hornkit::error_kind::parse, "--solution is required");
  auto f = hornkit::io::polynomial_from_json(hornkit::io::read_json_file(o.solution));
  if (f.is_zero()) throw hornkit::error(hornkit::error_kind::precondition, "solution has no terms");
  bool sol = hornkit::is_solution(f, s);
  json j{{"is_solution", sol}, {"is_persistent", sol && hornkit::validate_persistence(f, s)}};
  json res = json::array();
  for (int k = 0; k < 2 && res.size() < 5; ++k) {
    auto r = hornkit::apply_horn(k, f, s);
    for (const auto &[e, c] : r.terms()) {
      if (res.size() == 5) break;
      res.push_back(json{{"operator", k + 1},
                         {"exponent", hornkit::io::vec_json(e)},
                         {"coefficient", hornkit::io::rat_json(c)}});
    }
  }
  j["residuals"] = res;
  return j;
}

json cmd_suggest(const Options &o) {
  auto s = load(o);
  long w = resolve_window(o, s);
  auto r = hornkit::suggest_polynomial_parameters(s, o.search_bound, w, o.max_checks);
  json j{{"found", r.params.has_value()}, {"diagnostic", r.diagnostic}, {"checks", r.verified}, {"window", w}};
  if (r.params) {
    json p = json::array();
    for (const auto &c : *r.params) p.push_back(hornkit::io::rat_json(c));
    j["parameters"] = p;
  } else {
    j["parameters"] = nullptr;
  }
  return j;
}

std::string cmd_render(const Options &o) {
  if (o.what != "polygon" && o.what != "supports")
    throw hornkit::error(hornkit::error_kind::parse, "--what must be polygon or supports, got " + o.what);
  auto s = load(o);
  if (o.what == "polygon") return hornkit::render::polygon_svg(s);
  auto rep = hornkit::check_constructive(s, resolve_window(o, s));
  return hornkit::render::supports_svg(s, rep.basis, rep.basis_persistent);
}

int fail(int code, const json &err) {
  std::cerr << err.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Bivariate Horn hypergeometric systems: ranks, polygons, Puiseux polynomial solutions"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App *sub) {
    sub->add_option("input", o.input, "system JSON")->required();
    sub->add_option("--window", o.window, "harvest window radius");
    sub->add_option("--out", o.out, "write output to this path");
    sub->add_flag("--allow-confluent", o.allow_confluent, "accept rows that do not sum to zero");
  };
  auto *analyze = app.add_subcommand("analyze", "full report");
  auto *solve = app.add_subcommand("solve", "Puiseux polynomial solutions");
  auto *classify = app.add_subcommand("classify", "polygon class and Minkowski witness");
  auto *rank = app.add_subcommand("rank", "rank and dimension counts");
  auto *series = app.add_subcommand("series", "truncated series for one submatrix branch");
  auto *verify = app.add_subcommand("verify", "check a candidate solution");
  auto *suggest = app.add_subcommand("suggest-params", "search parameters with a polynomial basis");
  auto *render = app.add_subcommand("render", "SVG figure");
  for (auto *sub : {analyze, solve, classify, rank, series, verify, suggest, render}) common(sub);
  series->add_option("--pair", o.pair, "two row indices")->expected(2);
  series->add_option("--branch", o.branch, "branch index");
  verify->add_option("--solution", o.solution, "solution JSON")->required();
  suggest->add_option("--search-bound", o.search_bound, "bound on integer parts");
  suggest->add_option("--max-checks", o.max_checks, "verification budget");
  render->add_option("--what", o.what, "polygon or supports");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    return fail(parse_failure, json{{"error", "parse"}, {"message", e.what()}});
  }

  try {
    if (*render) {
      emit(o, cmd_render(o));
      return ok;
    }
    json j;
    if (*analyze) j = cmd_analyze(o);
    else if (*solve) j = cmd_solve(o);
    else if (*classify) j = cmd_classify(o);
    else if (*rank) j = cmd_rank(o);
    else if (*series) j = cmd_series(o);
    else if (*verify) j = cmd_verify(o);
    else if (*suggest) j = cmd_suggest(o);
    emit(o, hornkit::io::dump(j));
    return ok;
  } catch (const hornkit::error &e) {
    int code = e.kind() == hornkit::error_kind::parse ? parse_failure
               : e.kind() == hornkit::error_kind::internal ? internal_failure
                                                            : precondition_failure;
    return fail(code, hornkit::io::error_json(e));
  } catch (const std::exception &e) {
    return fail(internal_failure, json{{"error", "internal"}, {"message", e.what()}});
  }
}
