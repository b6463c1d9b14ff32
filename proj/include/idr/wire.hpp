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

// JSON encoding of exact values. Integers travel as decimal strings so that
// no precision is lost; a Rational is {"num": "<dec>", "den": "<dec>"} with
// den > 0 and the fraction in lowest terms. On input a bare JSON integer,
// or a "p/q" string, is also accepted.

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "idr/arith.hpp"
#include "idr/idr.hpp"
#include "idr/newton.hpp"

namespace idr::wire {

using nlohmann::json;

inline Integer parse_integer_text(const std::string& s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size()) throw std::domain_error("not a decimal integer: '" + s + "'");
  for (std::size_t j = i; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j])))
      throw std::domain_error("not a decimal integer: '" + s + "'");
  Integer v(s[0] == '+' ? s.substr(1) : s, 10);
  return v;
}

inline Integer to_integer(const json& j) {
  if (j.is_string()) return parse_integer_text(j.get<std::string>());
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return parse_integer_text(std::to_string(j.get<std::uint64_t>()));
    return parse_integer_text(std::to_string(j.get<std::int64_t>()));
  }
  throw std::domain_error("expected an integer (decimal string), got " + j.dump());
}

inline Rational to_rational(const json& j) {
  if (j.is_object()) {
    if (!j.contains("num") || !j.contains("den"))
      throw std::domain_error("rational object needs 'num' and 'den': " + j.dump());
    return make_rational(to_integer(j.at("num")), to_integer(j.at("den")));
  }
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    auto slash = s.find('/');
    if (slash != std::string::npos)
      return make_rational(parse_integer_text(s.substr(0, slash)), parse_integer_text(s.substr(slash + 1)));
  }
  return Rational(to_integer(j));
}

inline json from_integer(const Integer& v) { return v.get_str(); }

inline json from_rational(const Rational& q) {
  return json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

inline json from_integers(const std::vector<Integer>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(from_integer(x));
  return a;
}

inline json from_rationals(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(from_rational(x));
  return a;
}

inline std::vector<Integer> integer_list(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key) || !obj.at(key).is_array())
    throw std::domain_error(std::string("input needs an array field '") + key + "'");
  std::vector<Integer> out;
  for (const auto& e : obj.at(key)) out.push_back(to_integer(e));
  if (out.empty()) throw std::domain_error(std::string("field '") + key + "' must be non-empty");
  return out;
}

inline std::vector<Rational> rational_list(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key) || !obj.at(key).is_array())
    throw std::domain_error(std::string("input needs an array field '") + key + "'");
  std::vector<Rational> out;
  for (const auto& e : obj.at(key)) out.push_back(to_rational(e));
  return out;
}

inline json from_violation_report(const ViolationReport& r) {
  json j{{"holds", r.none_found()}, {"pairs_checked", r.pairs_checked}, {"scope", "prefix"}};
  j["violation"] = r.violation ? json{{"a", r.violation->a}, {"b", r.violation->b}} : json(nullptr);
  return j;
}

inline json from_criterion_report(const CriterionReport& r) {
  return json{{"holds", r.holds()}, {"failing_indices", r.failing_indices}, {"scope", "prefix"}};
}

}  // namespace idr::wire
