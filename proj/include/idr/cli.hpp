// Copyright 2026 The idr-lab Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

/**
 * @file cli.hpp
 * @brief The idr-lab command line: one JSON result line per request.
 *
 * Commands reading `--in FILE|-` accept a stream of JSON documents (JSON
 * lines, or a single pretty-printed document) and answer each with one
 * line {"command": ..., "status": "ok", "payload": {...}}. Parameter-only
 * commands answer with a single line. Exit codes: 0 ok, 1 usage or
 * precondition failure (diagnostic on stderr, an error line on stdout),
 * 2 internal invariant breach.
 */

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "idr/analysis.hpp"
#include "idr/arith.hpp"
#include "idr/families.hpp"
#include "idr/idr.hpp"
#include "idr/newton.hpp"
#include "idr/wire.hpp"

namespace idr::cli {

using nlohmann::json;

namespace detail {

struct Options {
  std::string in = "-";
  std::string method = "both";
  std::string family = "factorial-e";
  std::string rounding = "floor";
  std::string kind = "factorial-power";
  std::string a = "1";
  std::string scale = "1";
  std::string p = "1";
  std::string q = "1";
  std::string modulus = "1";
  unsigned k = 2;
  unsigned r = 0;
  std::optional<std::uint64_t> x_max;
  std::uint64_t n = 0;
};

inline std::vector<json> read_documents(std::istream& in) {
  std::vector<json> docs;
  for (;;) {
    in >> std::ws;
    if (in.peek() == std::char_traits<char>::eof()) break;
    json j;
    in >> j;
    docs.push_back(std::move(j));
  }
  return docs;
}

inline json ok_line(const std::string& command, json payload) {
  return json{{"command", command}, {"status", "ok"}, {"payload", std::move(payload)}};
}

inline json error_line(const std::string& command, const std::string& message) {
  return json{{"command", command}, {"status", "error"}, {"payload", {{"message", message}}}};
}

// --- per-request handlers ------------------------------------------------

inline json newton_to_coeffs(const json& doc) {
  FunctionTable t(wire::integer_list(doc, "values"));
  return json{{"coeffs", wire::from_integers(coeffs_from_values(t).coeffs)}};
}

inline json newton_to_values(const json& doc, const Options& o) {
  NewtonSeries s(wire::integer_list(doc, "coeffs"));
  std::uint64_t x_max = o.x_max ? *o.x_max : s.size() - 1;
  return json{{"values", wire::from_integers(values_from_coeffs(s, x_max).values)},
              {"padding", "coefficients beyond the prefix are zero"}};
}

inline json idr_check(const json& doc, const Options& o) {
  FunctionTable t(wire::integer_list(doc, "values"));
  if (o.method != "brute" && o.method != "newton" && o.method != "both")
    throw std::domain_error("--method must be brute, newton or both");
  json out;
  std::optional<ViolationReport> brute;
  std::optional<CriterionReport> crit;
  if (o.method != "newton") {
    brute = check_idr_bruteforce(t);
    out["bruteforce"] = wire::from_violation_report(*brute);
  }
  if (o.method != "brute") {
    NewtonSeries s = coeffs_from_values(t);
    crit = lcm_criterion(s);
    out["newton"] = wire::from_criterion_report(*crit);
    out["newton"]["coeffs"] = wire::from_integers(s.coeffs);
  }
  if (brute && crit) {
    bool agree = brute->none_found() == crit->holds();
    if (!agree) throw invariant_error("brute-force and lcm-criterion verdicts disagree");
    out["agree"] = agree;
  }
  return out;
}

inline json idr_project(const json& doc) {
  FunctionTable t(wire::integer_list(doc, "values"));
  FunctionTable g = project_idr(t);
  std::vector<Integer> diff;
  for (std::size_t x = 0; x < t.size(); ++x) diff.push_back(t[x] - g[x]);
  return json{{"values", wire::from_integers(g.values)},
              {"coeffs", wire::from_integers(coeffs_from_values(g).coeffs)},
              {"difference", wire::from_integers(diff)}};
}

inline json analyze_gap(const json& doc, const Options& o) {
  GapReport rep = fractional_gap(wire::rational_list(doc, "values"), wire::parse_integer_text(o.modulus));
  return json{{"modulus", wire::from_integer(rep.modulus_A)},
              {"samples", rep.samples},
              {"fractional_parts", wire::from_rationals(rep.fractional_parts)},
              {"max_gap", wire::from_rational(rep.max_gap)}};
}

inline json analyze_polynomial(const json& doc, const Options& o) {
  auto coeffs = wire::rational_list(doc, "coeffs");
  PolynomialVerdict v = polynomial_idr_check(coeffs, o.n);
  json j{{"integral_high_coeffs", v.integral_high_coeffs},
         {"prefix_len", v.prefix_len},
         {"pairs_checked", v.pairs_checked},
         {"scope", "prefix"}};
  j["violation"] = v.violation ? json{{"a", v.violation->a}, {"b", v.violation->b}} : json(nullptr);
  return j;
}

// --- parameter-only commands ---------------------------------------------

inline json idr_lemmas(const Options& o) {
  LemmaReport rep = verify_divisibility_lemmas(o.n);
  json lemmas = json::array();
  for (const auto& l : rep.lemmas) {
    json e{{"name", l.name}, {"cases", l.cases}, {"passed", l.passed()}, {"parameters", l.parameters}};
    e["counterexample"] = l.counterexample ? json(*l.counterexample) : json(nullptr);
    lemmas.push_back(e);
  }
  return json{{"n_max", rep.n_max}, {"all_passed", rep.all_passed()}, {"lemmas", lemmas}};
}

inline json lcm_table_cmd(const Options& o) {
  return json{{"n", o.n}, {"entries", wire::from_integers(lcm_table(o.n).entries())}};
}

inline json family_params(const Options& o) {
  json j{{"family", o.family}, {"a", o.a}, {"rounding", o.rounding}};
  if (o.family == "hyper") {
    j["k"] = o.k;
    j["r"] = o.r;
  }
  return j;
}

inline void require_family(const Options& o) {
  if (o.family != "factorial-e" && o.family != "hyper")
    throw std::domain_error("--family must be factorial-e or hyper");
}

inline json family_eval(const Options& o) {
  require_family(o);
  Integer a = wire::parse_integer_text(o.a);
  Rounding rounding = parse_rounding(o.rounding);
  std::uint64_t x_max = o.x_max.value_or(10);
  std::vector<Integer> values, sums;
  for (std::uint64_t x = 0; x <= x_max; ++x) {
    if (o.family == "factorial-e") {
      values.push_back(closed_form_factorial_e(a, rounding, x));
      sums.push_back(eval_factorial_e(a, x));
    } else {
      values.push_back(closed_form_hyper(a, o.k, o.r, rounding, x));
      sums.push_back(eval_hyper_family(a, o.k, o.r, x));
    }
  }
  json j = family_params(o);
  j["values"] = wire::from_integers(values);
  j["newton_sum"] = wire::from_integers(sums);
  return j;
}

inline json family_verify(const Options& o) {
  require_family(o);
  Integer a = wire::parse_integer_text(o.a);
  Rounding rounding = parse_rounding(o.rounding);
  std::uint64_t x_max = o.x_max.value_or(10);
  VerifyReport rep = o.family == "factorial-e" ? verify_factorial_e(a, rounding, x_max)
                                               : verify_hyper(a, o.k, o.r, rounding, x_max);
  json rows = json::array();
  for (const auto& r : rep.rows) {
    json e{{"x", r.x},
           {"closed_form", wire::from_integer(r.closed_form)},
           {"patched", r.patched},
           {"undecided", r.undecided},
           {"agrees", r.agrees()}};
    e["oracle"] = r.oracle ? wire::from_integer(*r.oracle) : json(nullptr);
    rows.push_back(e);
  }
  json j = family_params(o);
  j["rows"] = rows;
  j["undecided"] = rep.undecided();
  j["all_agree"] = rep.all_agree();
  j["idr"] = wire::from_violation_report(check_idr_bruteforce(rep.table()));
  return j;
}

inline json family_scaled(const Options& o) {
  Integer a = wire::parse_integer_text(o.a);
  Integer s = wire::parse_integer_text(o.scale);
  Rounding rounding = parse_rounding(o.rounding);
  std::uint64_t x_max = o.x_max.value_or(10);
  json rows = json::array();
  std::vector<Integer> closed;
  for (std::uint64_t x = 0; x <= x_max; ++x) {
    Integer c = closed_form_scaled_factorial_e(s, a, rounding, x);
    auto ref = oracle_scaled_factorial_e(s, a, rounding, x);
    json e{{"x", x},
           {"scaled_sum", wire::from_integer(eval_scaled_factorial_e(s, a, x))},
           {"closed_form", wire::from_integer(c)},
           {"guaranteed", scaled_agreement_guaranteed(s, x)}};
    e["reference"] = ref ? wire::from_integer(*ref) : json(nullptr);
    e["matches_reference"] = ref ? json(*ref == c) : json(nullptr);
    rows.push_back(e);
    closed.push_back(c);
  }
  return json{{"a", o.a},
              {"scale", o.scale},
              {"rounding", o.rounding},
              {"rows", rows},
              {"idr", wire::from_violation_report(check_idr_bruteforce(FunctionTable(closed)))}};
}

inline json analyze_witness(const Options& o) {
  if (o.kind == "factorial-power") {
    Integer a = wire::parse_integer_text(o.a);
    FactorialPowerWitness w = witness_factorial_power(a);
    return json{{"kind", o.kind}, {"a", o.a}, {"x", w.x}, {"y", w.y},
                {"divisor", wire::from_integer(w.divisor)}};
  }
  if (o.kind == "floor-factorial") {
    Integer p = wire::parse_integer_text(o.p), q = wire::parse_integer_text(o.q);
    FloorFactorialWitness w = witness_floor_factorial(p, q);
    return json{{"kind", o.kind}, {"p", o.p}, {"q", o.q}, {"a", w.a}, {"b", w.b},
                {"divisor", std::to_string(w.a - w.b)}};
  }
  throw std::domain_error("--kind must be factorial-power or floor-factorial");
}

inline json cf_convergents(const Options& o) {
  Integer a = wire::parse_integer_text(o.a);
  CfConvergents cf = euler_cf_convergents(a, o.n);
  json conv = json::array();
  for (const auto& c : cf.convergents)
    conv.push_back(json{{"p", wire::from_integer(c.p)}, {"q", wire::from_integer(c.q)}});
  json bounds = json::array();
  for (const auto& b : check_convergent_bounds(a, cf))
    bounds.push_back(json{{"n", b.n},
                          {"lower", b.lower_ok},
                          {"upper", b.upper_ok},
                          {"ratio", b.ratio_ok},
                          {"growth", b.growth_ok},
                          {"ok", b.ok()}});
  return json{{"a", o.a}, {"terms", wire::from_integers(cf.terms)}, {"convergents", conv},
              {"bounds", bounds}};
}

}  // namespace detail

/// Runs one invocation. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
               std::ostream& err) {
  detail::Options o;
  CLI::App app{"idr-lab: exact experiments with integral difference ratios", "idr-lab"};
  app.require_subcommand(1);

  auto add_in = [&](CLI::App* c) { c->add_option("--in", o.in, "input file, '-' for stdin"); };
  auto add_xmax = [&](CLI::App* c) { c->add_option("--x-max", o.x_max, "largest argument"); };
  auto add_family = [&](CLI::App* c) {
    c->add_option("--family", o.family, "factorial-e | hyper");
    c->add_option("--a", o.a, "nonzero integer parameter");
    c->add_option("--k", o.k, "period (hyper)");
    c->add_option("--r", o.r, "residue (hyper)");
    c->add_option("--rounding", o.rounding, "floor | ceil");
    add_xmax(c);
  };

  auto* newton = app.add_subcommand("newton", "Newton coefficients <-> values");
  newton->require_subcommand(1);
  auto* to_coeffs = newton->add_subcommand("to-coeffs", "values -> coefficients");
  add_in(to_coeffs);
  auto* to_values = newton->add_subcommand("to-values", "coefficients -> values");
  add_in(to_values);
  add_xmax(to_values);

  auto* idr_cmd = app.add_subcommand("idr", "integral difference ratio checks");
  idr_cmd->require_subcommand(1);
  auto* check = idr_cmd->add_subcommand("check", "check a value prefix");
  add_in(check);
  check->add_option("--method", o.method, "brute | newton | both");
  auto* project = idr_cmd->add_subcommand("project", "nearest IDR function below");
  add_in(project);
  auto* lemmas = idr_cmd->add_subcommand("lemmas", "exhaustive divisibility lemma check");
  lemmas->add_option("--n", o.n, "parameter bound")->required();

  auto* family = app.add_subcommand("family", "closed-form families");
  family->require_subcommand(1);
  auto* feval = family->add_subcommand("eval", "tabulate a closed form");
  add_family(feval);
  auto* fverify = family->add_subcommand("verify", "closed form vs interval oracle");
  add_family(fverify);
  auto* fscaled = family->add_subcommand("scaled", "s * f_a against floor/ceil(s e^{1/a} a^x x!)");
  fscaled->add_option("--a", o.a, "nonzero integer parameter");
  fscaled->add_option("--scale", o.scale, "integer scale s");
  fscaled->add_option("--rounding", o.rounding, "floor | ceil");
  add_xmax(fscaled);

  auto* analyze = app.add_subcommand("analyze", "negative-result tools");
  analyze->require_subcommand(1);
  auto* gap = analyze->add_subcommand("gap", "A-fractional parts and their largest gap");
  add_in(gap);
  gap->add_option("--modulus", o.modulus, "modulus A >= 1")->required();
  auto* witness = analyze->add_subcommand("witness", "explicit IDR violations");
  witness->add_option("--kind", o.kind, "factorial-power | floor-factorial");
  witness->add_option("--a", o.a, "a for a^x x!");
  witness->add_option("--p", o.p, "numerator of alpha");
  witness->add_option("--q", o.q, "denominator of alpha");
  auto* poly = analyze->add_subcommand("polynomial", "polynomial integrality and floored table");
  add_in(poly);
  poly->add_option("--n", o.n, "prefix length")->required();

  auto* lcm = app.add_subcommand("lcm", "lcm(1..k) tables");
  lcm->require_subcommand(1);
  auto* ltable = lcm->add_subcommand("table", "lcm(0..n)");
  ltable->add_option("--n", o.n, "largest index")->required();

  auto* cf = app.add_subcommand("cf", "continued fractions of e^{1/a}");
  cf->require_subcommand(1);
  auto* conv = cf->add_subcommand("convergents", "partial quotients and convergents");
  conv->add_option("--a", o.a, "positive integer a");
  conv->add_option("--n", o.n, "number of partial quotients")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "idr-lab: " << e.what() << "\n";
    return 1;
  }

  struct Route {
    CLI::App* app;
    std::string name;
    std::function<json(const json&)> per_doc;  // consumes --in
    std::function<json()> single;
  };
  const std::vector<Route> routes = {
      {to_coeffs, "newton to-coeffs", [&](const json& d) { return detail::newton_to_coeffs(d); }, {}},
      {to_values, "newton to-values", [&](const json& d) { return detail::newton_to_values(d, o); }, {}},
      {check, "idr check", [&](const json& d) { return detail::idr_check(d, o); }, {}},
      {project, "idr project", [&](const json& d) { return detail::idr_project(d); }, {}},
      {lemmas, "idr lemmas", {}, [&] { return detail::idr_lemmas(o); }},
      {feval, "family eval", {}, [&] { return detail::family_eval(o); }},
      {fverify, "family verify", {}, [&] { return detail::family_verify(o); }},
      {fscaled, "family scaled", {}, [&] { return detail::family_scaled(o); }},
      {gap, "analyze gap", [&](const json& d) { return detail::analyze_gap(d, o); }, {}},
      {witness, "analyze witness", {}, [&] { return detail::analyze_witness(o); }},
      {poly, "analyze polynomial", [&](const json& d) { return detail::analyze_polynomial(d, o); }, {}},
      {ltable, "lcm table", {}, [&] { return detail::lcm_table_cmd(o); }},
      {conv, "cf convergents", {}, [&] { return detail::cf_convergents(o); }},
  };
  auto it = std::find_if(routes.begin(), routes.end(), [](const Route& r) { return r.app->parsed(); });
  if (it == routes.end()) {
    err << "idr-lab: no command given\n";
    return 1;
  }

  const std::string& name = it->name;
  try {
    if (it->single) {
      out << detail::ok_line(name, it->single()).dump() << "\n";
      return 0;
    }
    std::vector<json> docs;
    if (o.in == "-") {
      docs = detail::read_documents(in);
    } else {
      std::ifstream f(o.in);
      if (!f) throw std::domain_error("cannot open input file '" + o.in + "'");
      docs = detail::read_documents(f);
    }
    if (docs.empty()) throw std::domain_error("no JSON input documents");
    for (const auto& d : docs) out << detail::ok_line(name, it->per_doc(d)).dump() << "\n";
    return 0;
  } catch (const json::exception& e) {
    err << "idr-lab: " << name << ": malformed JSON: " << e.what() << "\n";
    out << detail::error_line(name, std::string("malformed JSON: ") + e.what()).dump() << "\n";
    return 1;
  } catch (const invariant_error& e) {
    err << "idr-lab: " << name << ": internal invariant breach: " << e.what() << "\n";
    out << detail::error_line(name, e.what()).dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "idr-lab: " << name << ": " << e.what() << "\n";
    out << detail::error_line(name, e.what()).dump() << "\n";
    return 1;
  }
}

}  // namespace idr::cli
