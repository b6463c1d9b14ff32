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
 * @file families.hpp
 * @brief Closed-form IDR families built around a^x x!.
 *
 * f_a(x) = sum_n a^n n! C(x, n) has Newton coefficients a^n n!, hence is IDR,
 * and differs from e^{1/a} a^x x! by a remainder of modulus < 1 whose sign
 * is that of a. Restricting the sum to n = r mod k gives f_{a,k,r}, which
 * tracks F_{k,s}(1/a) a^x x! on x = r + s mod k (F_{k,s} being the
 * generalized hyperbolic functions) with a remainder whose sign is that of
 * a^{k-r}. The floor/ceil closed forms are therefore always f + c with
 * c in {-1, 0, 1}; the small-x patches are the values f(x) + c themselves.
 *
 * Exact Newton sums are authoritative. The interval oracle (verify_*) is an
 * independent cross-check through floor_via_interval.
 */

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "idr/arith.hpp"
#include "idr/newton.hpp"

namespace idr {

enum class Rounding { floor, ceil };

inline const char* to_string(Rounding r) { return r == Rounding::floor ? "floor" : "ceil"; }

inline Rounding parse_rounding(const std::string& s) {
  if (s == "floor") return Rounding::floor;
  if (s == "ceil") return Rounding::ceil;
  throw std::domain_error("rounding must be 'floor' or 'ceil', got '" + s + "'");
}

/// Refinement cap for every interval oracle in this module.
inline constexpr std::size_t kMaxRefinements = 64;

// ---------------------------------------------------------------------------
// Newton sums

namespace detail {

inline void require_nonzero(const Integer& a, const char* who) {
  if (a == 0) throw std::domain_error(std::string(who) + ": a must be nonzero");
}

inline void require_hyper_params(unsigned k, unsigned r, const char* who) {
  if (k < 2) throw std::domain_error(std::string(who) + ": k must be >= 2");
  if (r >= k) throw std::domain_error(std::string(who) + ": r must satisfy 0 <= r < k");
}

/// sum over n <= x with n = r mod k of a^n x!/(x-n)!.
inline Integer falling_sum(const Integer& a, std::uint64_t x, unsigned k, unsigned r) {
  Integer total = 0;
  Integer term = 1;  // a^n x (x-1) ... (x-n+1)
  for (std::uint64_t n = 0; n <= x; ++n) {
    if (n > 0) term *= a * static_cast<unsigned long>(x - n + 1);
    if (n % k == r) total += term;
  }
  return total;
}

inline int sign_of(const Integer& v) { return sgn(v); }

/// Offset c with closed form = exact sum + c, given the sign of the remainder.
inline int rounding_offset(Rounding rounding, int remainder_sign) {
  if (remainder_sign > 0) return rounding == Rounding::floor ? 0 : 1;
  return rounding == Rounding::floor ? -1 : 0;
}

}  // namespace detail

/// f_a(x) = sum_{n<=x} a^n n! C(x, n).
inline Integer eval_factorial_e(const Integer& a, std::uint64_t x) {
  detail::require_nonzero(a, "eval_factorial_e");
  return detail::falling_sum(a, x, 1, 0);
}

/// f_{a,k,r}(x) = sum_{n<=x, n = r mod k} a^n n! C(x, n); zero for x < r.
inline Integer eval_hyper_family(const Integer& a, unsigned k, unsigned r, std::uint64_t x) {
  detail::require_nonzero(a, "eval_hyper_family");
  detail::require_hyper_params(k, r, "eval_hyper_family");
  return detail::falling_sum(a, x, k, r);
}

/// s f_a(x).
inline Integer eval_scaled_factorial_e(const Integer& s, const Integer& a, std::uint64_t x) {
  return s * eval_factorial_e(a, x);
}

// ---------------------------------------------------------------------------
// Closed forms

/// floor/ceil of e^{1/a} a^x x!, patched at a = 1, x = 0 to 1 (floor) and
/// 2 (ceil) so the resulting function is IDR.
inline Integer closed_form_factorial_e(const Integer& a, Rounding rounding, std::uint64_t x) {
  detail::require_nonzero(a, "closed_form_factorial_e");
  return eval_factorial_e(a, x) + detail::rounding_offset(rounding, detail::sign_of(a));
}

/// Integer IDR function agreeing with floor/ceil(s e^{1/a} a^x x!) for
/// x >= |s| e - 1. For s = 1 this is closed_form_factorial_e.
inline Integer closed_form_scaled_factorial_e(const Integer& s, const Integer& a, Rounding rounding,
                                              std::uint64_t x) {
  detail::require_nonzero(a, "closed_form_scaled_factorial_e");
  if (s == 0) return 0;
  return eval_scaled_factorial_e(s, a, x) +
         detail::rounding_offset(rounding, detail::sign_of(s) * detail::sign_of(a));
}

/// x >= |s| e - 1, i.e. x + 1 >= |s| e (decided exactly: e is irrational).
inline bool scaled_agreement_guaranteed(const Integer& s, std::uint64_t x) {
  if (s == 0) return true;
  Integer as = abs(s);
  // |s| e <= |s| * hi(e) < x + 1 suffices; |s| lo(e) >= x + 1 refutes.
  for (std::size_t i = 0; i < kMaxRefinements; ++i) {
    RationalInterval e = enclose_exp_inv(1, halved_width(Rational(1, 1024), i));
    Rational bound = static_cast<unsigned long>(x + 1);
    if (e.hi * Rational(as) < bound) return true;
    if (e.lo * Rational(as) >= bound) return false;
  }
  throw invariant_error("scaled_agreement_guaranteed: could not compare with e");
}

/// Sign of a^{k-r}: the sign of F_{k,s}(1/a) a^x x! - f_{a,k,r}(x).
inline int hyper_remainder_sign(const Integer& a, unsigned k, unsigned r) {
  if (a > 0) return 1;
  return (k - r) % 2 == 0 ? 1 : -1;
}

/// Number of leading arguments whose closed-form value is a patch (the
/// remainder estimate does not apply there): x < r, plus x = 0 when |a| = 1.
inline std::uint64_t hyper_patch_length(const Integer& a, unsigned r) {
  if (r == 0) return abs(a) == 1 ? 1 : 0;
  return r;
}

/// Value of the residue-class closed form at x: floor/ceil of
/// F_{k,s}(1/a) a^x x! on x = r + s mod k, with the small-x patches
/// f_{a,k,r}(x) + c.
inline Integer closed_form_hyper(const Integer& a, unsigned k, unsigned r, Rounding rounding,
                                 std::uint64_t x) {
  detail::require_nonzero(a, "closed_form_hyper");
  detail::require_hyper_params(k, r, "closed_form_hyper");
  return eval_hyper_family(a, k, r, x) +
         detail::rounding_offset(rounding, hyper_remainder_sign(a, k, r));
}

/// The constant assigned to the patched arguments 0..hyper_patch_length-1.
inline Integer hyper_patch_value(const Integer& a, unsigned k, unsigned r, Rounding rounding,
                                 std::uint64_t x) {
  if (x >= hyper_patch_length(a, r)) throw std::domain_error("hyper_patch_value: x not patched");
  return closed_form_hyper(a, k, r, rounding, x);
}

/// s with x = r + s mod k: selects F_{k,s} for argument x >= r.
inline unsigned hyper_residue(unsigned k, unsigned r, std::uint64_t x) {
  return static_cast<unsigned>((x + k - r % k) % k);
}

/// Coefficient vector (index = power of t) of F_{k,r} truncated at degree D.
inline std::vector<Rational> hyper_series_coeffs(unsigned k, unsigned r, std::size_t degree) {
  detail::require_hyper_params(k, r, "hyper_series_coeffs");
  std::vector<Rational> c(degree + 1, Rational(0));
  for (std::size_t e = r; e <= degree; e += k) c[e] = Rational(1) / Rational(factorial(e));
  return c;
}

// ---------------------------------------------------------------------------
// Interval oracles

/// floor/ceil of e^{1/a} a^x x! from enclosures of e^{1/a}.
inline std::optional<Integer> oracle_factorial_e(const Integer& a, Rounding rounding,
                                                 std::uint64_t x) {
  detail::require_nonzero(a, "oracle_factorial_e");
  Rational factor(pow_int(a, x) * factorial(x));
  Rational w0 = initial_width_for(factor);
  RefineFn refine = [&](std::size_t i) { return enclose_exp_inv(a, halved_width(w0, i)); };
  RationalInterval iv = enclose_exp_inv(a, w0);
  return rounding == Rounding::floor ? floor_via_interval(iv, factor, kMaxRefinements, refine)
                                     : ceil_via_interval(iv, factor, kMaxRefinements, refine);
}

/// floor/ceil of s e^{1/a} a^x x!.
inline std::optional<Integer> oracle_scaled_factorial_e(const Integer& s, const Integer& a,
                                                        Rounding rounding, std::uint64_t x) {
  detail::require_nonzero(a, "oracle_scaled_factorial_e");
  if (s == 0) return Integer(0);
  Rational factor(s * pow_int(a, x) * factorial(x));
  Rational w0 = initial_width_for(factor);
  RefineFn refine = [&](std::size_t i) { return enclose_exp_inv(a, halved_width(w0, i)); };
  RationalInterval iv = enclose_exp_inv(a, w0);
  return rounding == Rounding::floor ? floor_via_interval(iv, factor, kMaxRefinements, refine)
                                     : ceil_via_interval(iv, factor, kMaxRefinements, refine);
}

/// floor/ceil of F_{k,s}(1/a) a^x x! with s = (x - r) mod k, for x >= r.
inline std::optional<Integer> oracle_hyper(const Integer& a, unsigned k, unsigned r,
                                           Rounding rounding, std::uint64_t x) {
  detail::require_nonzero(a, "oracle_hyper");
  detail::require_hyper_params(k, r, "oracle_hyper");
  if (x < r) throw std::domain_error("oracle_hyper: x < r has no residue constant");
  unsigned s = hyper_residue(k, r, x);
  Rational factor(pow_int(a, x) * factorial(x));
  Rational w0 = initial_width_for(factor);
  RefineFn refine = [&](std::size_t i) { return enclose_hyper(k, s, a, halved_width(w0, i)); };
  RationalInterval iv = enclose_hyper(k, s, a, w0);
  return rounding == Rounding::floor ? floor_via_interval(iv, factor, kMaxRefinements, refine)
                                     : ceil_via_interval(iv, factor, kMaxRefinements, refine);
}

struct VerifyRow {
  std::uint64_t x = 0;
  Integer closed_form;
  std::optional<Integer> oracle;  ///< empty when patched or undecided
  bool patched = false;
  bool undecided = false;

  bool agrees() const { return patched || undecided || (oracle && *oracle == closed_form); }
};

struct VerifyReport {
  std::vector<VerifyRow> rows;

  std::size_t undecided() const {
    std::size_t n = 0;
    for (const auto& r : rows) n += r.undecided ? 1 : 0;
    return n;
  }
  std::size_t disagreements() const {
    std::size_t n = 0;
    for (const auto& r : rows) n += r.agrees() ? 0 : 1;
    return n;
  }
  bool all_agree() const { return disagreements() == 0; }
  FunctionTable table() const {
    std::vector<Integer> v;
    for (const auto& r : rows) v.push_back(r.closed_form);
    return FunctionTable(std::move(v));
  }
};

inline VerifyReport verify_factorial_e(const Integer& a, Rounding rounding, std::uint64_t x_max) {
  VerifyReport rep;
  for (std::uint64_t x = 0; x <= x_max; ++x) {
    VerifyRow row;
    row.x = x;
    row.closed_form = closed_form_factorial_e(a, rounding, x);
    if (a == 1 && x == 0) {
      row.patched = true;
    } else {
      row.oracle = oracle_factorial_e(a, rounding, x);
      row.undecided = !row.oracle;
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

inline VerifyReport verify_hyper(const Integer& a, unsigned k, unsigned r, Rounding rounding,
                                 std::uint64_t x_max) {
  VerifyReport rep;
  const std::uint64_t patch = hyper_patch_length(a, r);
  for (std::uint64_t x = 0; x <= x_max; ++x) {
    VerifyRow row;
    row.x = x;
    row.closed_form = closed_form_hyper(a, k, r, rounding, x);
    if (x < patch) {
      row.patched = true;
    } else {
      row.oracle = oracle_hyper(a, k, r, rounding, x);
      row.undecided = !row.oracle;
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Family descriptors

struct FactorialE {
  Integer a;
  Rounding rounding = Rounding::floor;
  Integer scale = 1;
};

struct Hyper {
  Integer a;
  unsigned k = 2;
  unsigned r = 0;
  Rounding rounding = Rounding::floor;
};

/// floor(P(x)), coefficients constant term first.
struct Polynomial {
  std::vector<Rational> coeffs;
};

/// floor(alpha base^x).
struct Exponential {
  Rational alpha;
  unsigned base = 2;
};

using FamilySpec = std::variant<FactorialE, Hyper, Polynomial, Exponential>;

inline Rational eval_polynomial(const std::vector<Rational>& coeffs, const Rational& x) {
  Rational acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

inline Integer family_value(const FamilySpec& spec, std::uint64_t x) {
  struct Visitor {
    std::uint64_t x;
    Integer operator()(const FactorialE& f) const {
      if (f.scale == 1) return closed_form_factorial_e(f.a, f.rounding, x);
      return closed_form_scaled_factorial_e(f.scale, f.a, f.rounding, x);
    }
    Integer operator()(const Hyper& h) const { return closed_form_hyper(h.a, h.k, h.r, h.rounding, x); }
    Integer operator()(const Polynomial& p) const {
      if (p.coeffs.empty()) throw std::domain_error("Polynomial family needs coefficients");
      return floor_of(eval_polynomial(p.coeffs, Rational(static_cast<unsigned long>(x))));
    }
    Integer operator()(const Exponential& e) const {
      if (e.base < 2) throw std::domain_error("Exponential family needs base >= 2");
      return floor_of(e.alpha * Rational(pow_int(e.base, x)));
    }
  };
  return std::visit(Visitor{x}, spec);
}

inline FunctionTable family_table(const FamilySpec& spec, std::uint64_t x_max) {
  std::vector<Integer> v;
  v.reserve(x_max + 1);
  for (std::uint64_t x = 0; x <= x_max; ++x) v.push_back(family_value(spec, x));
  return FunctionTable(std::move(v));
}

// ---------------------------------------------------------------------------
// Continued fraction of e^{1/a}

struct Convergent {
  Integer p;
  Integer q;
};

struct CfConvergents {
  std::vector<Integer> terms;
  std::vector<Convergent> convergents;
};

namespace detail {

/// Partial quotients readable from an enclosure, stopping early where the
/// enclosure no longer determines the next floor.
inline std::vector<Integer> cf_terms_from(RationalInterval iv, std::size_t n_terms) {
  std::vector<Integer> terms;
  while (terms.size() < n_terms) {
    if (is_integer(iv.lo) || is_integer(iv.hi)) break;
    Integer fl = floor_of(iv.lo);
    if (fl != floor_of(iv.hi)) break;
    terms.push_back(fl);
    Rational lo = iv.lo - Rational(fl), hi = iv.hi - Rational(fl);
    iv = RationalInterval(Rational(1) / hi, Rational(1) / lo);
  }
  return terms;
}

}  // namespace detail

inline std::vector<Convergent> convergents_of(const std::vector<Integer>& terms) {
  std::vector<Convergent> out;
  Integer p_prev2 = 0, q_prev2 = 1, p_prev = 1, q_prev = 0;
  for (const auto& t : terms) {
    Integer p = t * p_prev + p_prev2;
    Integer q = t * q_prev + q_prev2;
    out.push_back({p, q});
    p_prev2 = p_prev;
    q_prev2 = q_prev;
    p_prev = p;
    q_prev = q;
  }
  return out;
}

/// Partial quotients of e^{1/a} read off shrinking enclosures; the
/// precision (in bits) doubles until n_terms quotients are determined.
inline CfConvergents euler_cf_convergents(const Integer& a, std::size_t n_terms) {
  if (a < 1) throw std::domain_error("euler_cf_convergents: a must be >= 1");
  unsigned long bits = 64;
  for (std::size_t attempt = 0; attempt < kMaxRefinements; ++attempt, bits *= 2) {
    Rational w(1);
    mpq_div_2exp(w.get_mpq_t(), w.get_mpq_t(), bits);
    auto terms = detail::cf_terms_from(enclose_exp_inv(a, w), n_terms);
    if (terms.size() == n_terms) {
      CfConvergents cf;
      cf.convergents = convergents_of(terms);
      cf.terms = std::move(terms);
      return cf;
    }
  }
  throw invariant_error("euler_cf_convergents: enclosures never resolved the expansion");
}

struct ConvergentBoundCheck {
  std::size_t n = 0;
  bool lower_ok = false;  ///< 1/(q_n (q_n + q_{n+1})) < |alpha - p_n/q_n|
  bool upper_ok = false;  ///< |alpha - p_n/q_n| < 1/(q_n q_{n+1})
  bool ratio_ok = false;  ///< q_{n+1}/q_n <= a_{n+1} + 1, strict once q_{n-1} < q_n
  bool growth_ok = false; ///< q_n >= 2^{(n-1)/2}
  bool decided = false;

  bool ok() const { return decided && lower_ok && upper_ok && ratio_ok && growth_ok; }
};

/// Checks the classical convergent inequalities for n = 0..terms-2 against
/// enclosures of e^{1/a}.
inline std::vector<ConvergentBoundCheck> check_convergent_bounds(const Integer& a,
                                                                 const CfConvergents& cf) {
  std::vector<ConvergentBoundCheck> out;
  const auto& cv = cf.convergents;
  for (std::size_t n = 0; n + 1 < cv.size(); ++n) {
    ConvergentBoundCheck c;
    c.n = n;
    const Integer& q = cv[n].q;
    const Integer& q1 = cv[n + 1].q;
    Rational approx = make_rational(cv[n].p, q);
    Rational lower = make_rational(1, q * (q + q1));
    Rational upper = make_rational(1, q * q1);
    // Need an enclosure of alpha - p/q well inside (lower, upper).
    Rational w = lower / 8;
    for (std::size_t i = 0; i < kMaxRefinements && !c.decided; ++i, w /= 4) {
      RationalInterval err = enclose_exp_inv(a, w).shifted(-approx);
      if (err.lo <= 0 && err.hi >= 0) continue;
      RationalInterval mag = err.lo > 0 ? err : RationalInterval(-err.hi, -err.lo);
      bool lo_known = mag.lo > lower || mag.hi <= lower;
      bool up_known = mag.hi < upper || mag.lo >= upper;
      if (!lo_known || !up_known) continue;
      c.decided = true;
      c.lower_ok = mag.lo > lower;
      c.upper_ok = mag.hi < upper;
    }
    Rational ratio = make_rational(q1, q);
    Rational cap = Rational(cf.terms[n + 1] + 1);
    bool strictly_growing = n == 0 || cv[n - 1].q < q;
    c.ratio_ok = strictly_growing ? ratio < cap : ratio <= cap;
    // q_n^2 >= 2^{n-1}
    c.growth_ok = n == 0 || Rational(q * q) >= Rational(pow_int(2, n - 1));
    out.push_back(c);
  }
  return out;
}

}  // namespace idr
