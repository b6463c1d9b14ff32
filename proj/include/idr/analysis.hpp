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

// Concrete witnesses that specific functions are not IDR, the polynomial
// checker, and A-fractional-part gap reports.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "idr/arith.hpp"
#include "idr/idr.hpp"
#include "idr/newton.hpp"

namespace idr {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d <= n / d; d += 2)
    if (n % d == 0) return false;
  return true;
}

/// Least prime strictly greater than n.
inline std::uint64_t next_prime_above(std::uint64_t n) {
  if (n >= std::numeric_limits<std::uint64_t>::max() / 2)
    throw std::domain_error("next_prime_above: argument too large");
  std::uint64_t p = n + 1;
  while (!is_prime(p)) ++p;
  return p;
}

// ---------------------------------------------------------------------------
// a^x x! is not IDR

struct FactorialPowerWitness {
  std::uint64_t x;
  std::uint64_t y;
  Integer divisor;  ///< x - y
};

/// y + 1 is the least prime above |a| and x = 2y + 1, so x - y = y + 1
/// divides a^x x! but not a^y y!.
inline FactorialPowerWitness witness_factorial_power(const Integer& a) {
  if (a == 0) throw std::domain_error("witness_factorial_power: a must be nonzero");
  Integer abs_a = abs(a);
  if (!abs_a.fits_ulong_p()) throw std::domain_error("witness_factorial_power: |a| too large");
  std::uint64_t prime = next_prime_above(abs_a.get_ui());
  FactorialPowerWitness w{2 * (prime - 1) + 1, prime - 1, Integer(static_cast<unsigned long>(prime))};
  Integer fx = pow_int(a, w.x) * factorial(w.x);
  Integer fy = pow_int(a, w.y) * factorial(w.y);
  if (!divides(w.divisor, fx) || divides(w.divisor, fx - fy))
    throw invariant_error("witness_factorial_power: construction failed for a = " + a.get_str());
  return w;
}

// ---------------------------------------------------------------------------
// floor/ceil((p/q) x!) is not IDR

struct FloorFactorialWitness {
  std::uint64_t a;
  std::uint64_t b;
};

namespace detail {

/// (p * prod_{i=1..n, i != skip} i) mod m, for m >= 1.
inline Integer scaled_factorial_mod(const Integer& p, std::uint64_t n, std::uint64_t skip,
                                    std::uint64_t m) {
  Integer mm = static_cast<unsigned long>(m);
  Integer acc = floor_mod(p, mm);
  for (std::uint64_t i = 2; i <= n && acc != 0; ++i) {
    if (i == skip) continue;
    acc = floor_mod(acc * static_cast<unsigned long>(i), mm);
  }
  return acc;
}

}  // namespace detail

/// Least a with a - q prime and a - q > |p| q!; the pair (a, q) violates
/// IDR for both floor and ceil of (p/q) x!. Both values are exact integers
/// there (q | a!, q | q!), so the check runs modulo a - q.
inline FloorFactorialWitness witness_floor_factorial(const Integer& p, const Integer& q) {
  if (p == 0) throw std::domain_error("witness_floor_factorial: p must be nonzero");
  if (q <= 0) throw std::domain_error("witness_floor_factorial: q must be positive");
  if (gcd(p, q) != 1) throw std::domain_error("witness_floor_factorial: gcd(p, q) must be 1");
  if (!q.fits_ulong_p() || q > 20) throw std::domain_error("witness_floor_factorial: q too large");
  const std::uint64_t qq = q.get_ui();
  Integer threshold = abs(p) * factorial(qq);
  if (!threshold.fits_ulong_p() || threshold > Integer("10000000"))
    throw std::domain_error("witness_floor_factorial: |p| q! too large for trial division");
  const std::uint64_t prime = next_prime_above(threshold.get_ui());
  FloorFactorialWitness w{prime + qq, qq};

  // (p/q) a! = p * prod_{i<=a, i != q} i and (p/q) q! = p (q-1)!.
  Integer at_a = detail::scaled_factorial_mod(p, w.a, qq, prime);
  Integer at_b = floor_mod(p * factorial(qq - 1), Integer(static_cast<unsigned long>(prime)));
  if (at_a == at_b)
    throw invariant_error("witness_floor_factorial: construction failed for p/q = " + p.get_str() +
                          "/" + q.get_str());
  return w;
}

// ---------------------------------------------------------------------------
// Polynomials

struct PolynomialVerdict {
  bool integral_high_coeffs = false;
  std::optional<Violation> violation;
  std::size_t prefix_len = 0;
  std::size_t pairs_checked = 0;
};

/// Integrality of the non-constant coefficients, plus a violation search
/// on the floored table floor(P(0..prefix_len-1)). Absence of a violation
/// is a statement about the prefix only.
inline PolynomialVerdict polynomial_idr_check(const std::vector<Rational>& coeffs,
                                              std::size_t prefix_len) {
  if (coeffs.empty()) throw std::domain_error("polynomial_idr_check: no coefficients");
  PolynomialVerdict v;
  v.prefix_len = prefix_len;
  v.integral_high_coeffs = true;
  for (std::size_t i = 1; i < coeffs.size(); ++i)
    if (!is_integer(coeffs[i])) v.integral_high_coeffs = false;
  if (prefix_len == 0) return v;

  std::vector<Integer> values;
  values.reserve(prefix_len);
  for (std::size_t x = 0; x < prefix_len; ++x) {
    Rational px = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
      px = px * Rational(static_cast<unsigned long>(x)) + *it;
    values.push_back(floor_of(px));
  }
  ViolationReport rep = check_idr_bruteforce(FunctionTable(std::move(values)));
  v.violation = rep.violation;
  v.pairs_checked = rep.pairs_checked;
  return v;
}

// ---------------------------------------------------------------------------
// A-fractional parts

/// {t}_A = t - A floor(t/A), in [0, A).
inline Rational fractional_part_mod(const Rational& t, const Integer& A) {
  if (A < 1) throw std::domain_error("fractional part modulus must be >= 1");
  Rational a(A);
  return t - a * Rational(floor_of(t / a));
}

struct GapReport {
  Integer modulus_A;
  std::size_t samples = 0;
  std::vector<Rational> fractional_parts;  ///< in input order
  Rational max_gap;                        ///< largest empty open arc of the circle [0, A)
};

inline GapReport fractional_gap(const std::vector<Rational>& values, const Integer& modulus_A) {
  if (modulus_A < 1) throw std::domain_error("fractional_gap: modulus_A must be >= 1");
  GapReport rep;
  rep.modulus_A = modulus_A;
  rep.samples = values.size();
  for (const auto& v : values) rep.fractional_parts.push_back(fractional_part_mod(v, modulus_A));

  const Rational A(modulus_A);
  if (rep.fractional_parts.empty()) {
    rep.max_gap = A;
    return rep;
  }
  std::vector<Rational> sorted = rep.fractional_parts;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Rational best = sorted.front() + A - sorted.back();  // wrap-around arc
  for (std::size_t i = 1; i < sorted.size(); ++i) best = std::max(best, Rational(sorted[i] - sorted[i - 1]));
  rep.max_gap = best;
  return rep;
}

/// True when every part lies in [0, M] or [A - M, A).
inline bool parts_within_band(const GapReport& rep, const Rational& M) {
  const Rational A(rep.modulus_A);
  for (const auto& p : rep.fractional_parts)
    if (!(p <= M || p >= A - M)) return false;
  return true;
}

}  // namespace idr
