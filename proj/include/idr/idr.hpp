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
 * @file idr.hpp
 * @brief Integral difference ratios (IDR) on finite prefixes.
 *
 * A function f: N -> Z has integral difference ratios when (a - b) divides
 * f(a) - f(b) for all a > b. Its Newton coefficients then satisfy
 * lcm(k) | a_k, and conversely. Everything here works on a finite prefix
 * f(0..N); verdicts are statements about that prefix only.
 */

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "idr/arith.hpp"
#include "idr/newton.hpp"

namespace idr {

struct Violation {
  std::size_t a;
  std::size_t b;
  bool operator==(const Violation&) const = default;
};

/// Either the first violating pair (a > b) or none within the prefix.
struct ViolationReport {
  std::optional<Violation> violation;
  std::size_t pairs_checked = 0;

  bool none_found() const { return !violation.has_value(); }
};

struct CriterionReport {
  std::vector<std::size_t> failing_indices;

  bool holds() const { return failing_indices.empty(); }
};

/// Scans pairs (a, b), b < a, in lexicographic order and stops at the first
/// violation. pairs_checked counts the pairs examined, including the
/// violating one.
inline ViolationReport check_idr_bruteforce(const FunctionTable& t) {
  ViolationReport rep;
  for (std::size_t a = 1; a < t.size(); ++a) {
    for (std::size_t b = 0; b < a; ++b) {
      ++rep.pairs_checked;
      Integer d = static_cast<unsigned long>(a - b);
      if (!divides(d, t[a] - t[b])) {
        rep.violation = Violation{a, b};
        return rep;
      }
    }
  }
  return rep;
}

inline CriterionReport lcm_criterion(const NewtonSeries& s) {
  LcmTable lcm = lcm_table(s.size() - 1);
  CriterionReport rep;
  for (std::size_t k = 0; k < s.size(); ++k)
    if (!divides(lcm[k], s[k])) rep.failing_indices.push_back(k);
  return rep;
}

inline CriterionReport check_idr_newton(const FunctionTable& t) {
  return lcm_criterion(coeffs_from_values(t));
}

/// k! | a_k for every k in the prefix; sufficient for IDR.
inline bool factorial_criterion(const NewtonSeries& s) {
  Integer fact = 1;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k > 0) fact *= static_cast<unsigned long>(k);
    if (!divides(fact, s[k])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Divisibility lemmas behind the equivalence

struct LemmaResult {
  std::string name;
  std::size_t cases = 0;
  /// Parameters of the first failing instance, in the order stated in
  /// `parameters`.
  std::optional<std::array<std::uint64_t, 3>> counterexample;
  std::string parameters;

  bool passed() const { return !counterexample.has_value(); }
};

struct LemmaReport {
  std::size_t n_max = 0;
  std::array<LemmaResult, 3> lemmas;

  bool all_passed() const {
    for (const auto& l : lemmas)
      if (!l.passed()) return false;
    return true;
  }
};

/// Exhaustive check, for parameters up to n_max, of
///   (1) 0 <= n-k < p <= n            =>  p | lcm(k) C(n,k)
///   (2) k <= b                       =>  n | lcm(k) (C(b+n,k) - C(b,k))
///   (3) k <= b <= a                  =>  (a-b) | lcm(k) (C(a,k) - C(b,k))
inline LemmaReport verify_divisibility_lemmas(std::size_t n_max) {
  LcmTable lcm = lcm_table(n_max);
  LemmaReport rep;
  rep.n_max = n_max;

  LemmaResult& l1 = rep.lemmas[0];
  l1.name = "prime-window";
  l1.parameters = "n,k,p";
  for (std::uint64_t n = 1; n <= n_max && l1.passed(); ++n)
    for (std::uint64_t k = 0; k <= n && l1.passed(); ++k)
      for (std::uint64_t p = n - k + 1; p <= n; ++p) {
        ++l1.cases;
        if (!divides(Integer(static_cast<unsigned long>(p)), lcm[k] * binom(n, k))) {
          l1.counterexample = {n, k, p};
          break;
        }
      }

  LemmaResult& l2 = rep.lemmas[1];
  l2.name = "shifted-difference";
  l2.parameters = "n,k,b";
  for (std::uint64_t k = 0; k <= n_max && l2.passed(); ++k)
    for (std::uint64_t b = k; b <= n_max && l2.passed(); ++b)
      for (std::uint64_t n = 0; n <= n_max; ++n) {
        ++l2.cases;
        Integer v = lcm[k] * (binom(b + n, k) - binom(b, k));
        if (!divides(Integer(static_cast<unsigned long>(n)), v)) {
          l2.counterexample = {n, k, b};
          break;
        }
      }

  LemmaResult& l3 = rep.lemmas[2];
  l3.name = "pair-difference";
  l3.parameters = "a,b,k";
  for (std::uint64_t a = 0; a <= n_max && l3.passed(); ++a)
    for (std::uint64_t b = 0; b <= a && l3.passed(); ++b)
      for (std::uint64_t k = 0; k <= b; ++k) {
        ++l3.cases;
        Integer v = lcm[k] * (binom(a, k) - binom(b, k));
        if (!divides(Integer(static_cast<unsigned long>(a - b)), v)) {
          l3.counterexample = {a, b, k};
          break;
        }
      }
  return rep;
}

// ---------------------------------------------------------------------------
// Algebra of tables

inline FunctionTable table_sum(const FunctionTable& t1, const FunctionTable& t2) {
  if (t1.size() != t2.size()) throw std::domain_error("table_sum: length mismatch");
  std::vector<Integer> out(t1.size());
  for (std::size_t x = 0; x < t1.size(); ++x) out[x] = t1[x] + t2[x];
  return FunctionTable(std::move(out));
}

inline FunctionTable table_product(const FunctionTable& t1, const FunctionTable& t2) {
  if (t1.size() != t2.size()) throw std::domain_error("table_product: length mismatch");
  std::vector<Integer> out(t1.size());
  for (std::size_t x = 0; x < t1.size(); ++x) out[x] = t1[x] * t2[x];
  return FunctionTable(std::move(out));
}

/// result[x] = f[g[x]]; every g value must index into f.
inline FunctionTable table_compose(const FunctionTable& f, const FunctionTable& g) {
  std::vector<Integer> out;
  out.reserve(g.size());
  for (std::size_t x = 0; x < g.size(); ++x) {
    const Integer& gx = g[x];
    if (gx < 0 || gx >= static_cast<unsigned long>(f.size()))
      throw std::domain_error("table_compose: g(" + std::to_string(x) + ") = " + gx.get_str() +
                              " is outside f's index range [0, " + std::to_string(f.size() - 1) +
                              "]");
    out.push_back(f[gx.get_ui()]);
  }
  return FunctionTable(std::move(out));
}

/// Rounds every Newton coefficient down to a multiple of lcm(k)
/// (a_k = lcm(k) q_k + b_k, 0 <= b_k < lcm(k)) and rebuilds the table.
/// The result is IDR and 0 <= f(x) - g(x) <= 2^x lcm(x).
inline FunctionTable project_idr(const FunctionTable& t) {
  NewtonSeries s = coeffs_from_values(t);
  LcmTable lcm = lcm_table(s.size() - 1);
  for (std::size_t k = 0; k < s.size(); ++k) s.coeffs[k] = lcm[k] * floor_div(s.coeffs[k], lcm[k]);
  return values_from_coeffs(s, t.size() - 1);
}

/// Occurrences of z in the prefix. Informational only.
inline std::size_t preimage_finiteness_probe(const FunctionTable& t, const Integer& z) {
  std::size_t n = 0;
  for (const auto& v : t.values)
    if (v == z) ++n;
  return n;
}

}  // namespace idr
