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
 * @file arith.hpp
 * @brief Exact integer/rational kernels shared by every other module.
 *
 * Integers and rationals are GMP values (mpz_class / mpq_class). A
 * RationalInterval is a closed enclosure [lo, hi] of a real constant with
 * reduced rational endpoints; all enclosures below are built from partial
 * sums of power series plus an explicit rational majorant of the tail, so no
 * floating point is involved anywhere.
 */

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace idr {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised when an internal consistency check fails. Never expected to fire.
class invariant_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Integer floor_div(const Integer& n, const Integer& d) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}

/// Floored modulus, result in [0, |d|).
inline Integer floor_mod(const Integer& n, const Integer& d) {
  Integer r;
  mpz_mod(r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return r;
}

inline Integer floor_of(const Rational& q) {
  return floor_div(q.get_num(), q.get_den());
}

inline Integer ceil_of(const Rational& q) {
  Integer c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return c;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// d | v, with the convention that 0 divides only 0.
inline bool divides(const Integer& d, const Integer& v) {
  if (d == 0) return v == 0;
  return mpz_divisible_p(v.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline Integer pow_int(const Integer& base, std::uint64_t e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

inline Rational pow_rat(const Rational& base, std::uint64_t e) {
  return make_rational(pow_int(base.get_num(), e), pow_int(base.get_den(), e));
}

inline Integer factorial(std::uint64_t n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

/// C(n, k); zero when k > n.
inline Integer binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

inline Rational abs_rat(const Rational& q) { return q < 0 ? Rational(-q) : q; }

// ---------------------------------------------------------------------------
// lcm(0..n)

class LcmTable {
 public:
  LcmTable() : entries_{Integer(1)} {}
  explicit LcmTable(std::vector<Integer> entries) : entries_(std::move(entries)) {}

  const Integer& operator[](std::size_t k) const { return entries_.at(k); }
  std::size_t size() const { return entries_.size(); }
  std::size_t n_max() const { return entries_.size() - 1; }
  const std::vector<Integer>& entries() const { return entries_; }

 private:
  std::vector<Integer> entries_;
};

/// entries[k] = lcm(1..k), entries[0] = 1 by convention.
inline LcmTable lcm_table(std::size_t n_max) {
  std::vector<Integer> out;
  out.reserve(n_max + 1);
  out.emplace_back(1);
  for (std::size_t k = 1; k <= n_max; ++k) {
    Integer next;
    mpz_lcm_ui(next.get_mpz_t(), out.back().get_mpz_t(), static_cast<unsigned long>(k));
    out.push_back(std::move(next));
  }
  return LcmTable(std::move(out));
}

// ---------------------------------------------------------------------------
// Rational intervals

struct RationalInterval {
  Rational lo;
  Rational hi;

  RationalInterval() = default;
  RationalInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw std::domain_error("interval with lo > hi");
  }
  static RationalInterval point(const Rational& v) { return {v, v}; }

  Rational width() const { return hi - lo; }
  bool contains(const Rational& v) const { return lo <= v && v <= hi; }
  bool contains(const RationalInterval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool overlaps(const RationalInterval& o) const { return lo <= o.hi && o.lo <= hi; }

  RationalInterval scaled(const Rational& f) const {
    if (f >= 0) return {lo * f, hi * f};
    return {hi * f, lo * f};
  }
  RationalInterval shifted(const Rational& d) const { return {lo + d, hi + d}; }
};

inline RationalInterval operator+(const RationalInterval& a, const RationalInterval& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}

inline RationalInterval operator-(const RationalInterval& a, const RationalInterval& b) {
  return {a.lo - b.hi, a.hi - b.lo};
}

inline RationalInterval operator*(const RationalInterval& a, const RationalInterval& b) {
  Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  Rational lo = c[0], hi = c[0];
  for (const auto& v : c) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return {lo, hi};
}

/// Interval power for non-negative intervals.
inline RationalInterval pow_interval(const RationalInterval& iv, std::uint64_t e) {
  if (iv.lo < 0) throw std::domain_error("pow_interval needs a non-negative interval");
  return {pow_rat(iv.lo, e), pow_rat(iv.hi, e)};
}

/// Encloses e^{1/a} with width at most width_bound.
///
/// For a > 0 the partial sum S_m of sum t^j/j! (t = 1/a) is a lower bound and
/// S_m + 3 t^{m+1}/(m+1)! an upper bound (the Lagrange remainder is
/// e^{theta t} t^{m+1}/(m+1)! with e^{theta t} < 3). For a < 0 the series
/// alternates with non-increasing terms, so consecutive partial sums bracket
/// the value. Smaller width bounds always select a larger m, and both
/// constructions are nested in m.
inline RationalInterval enclose_exp_inv(const Integer& a, const Rational& width_bound) {
  if (a == 0) throw std::domain_error("enclose_exp_inv: a must be nonzero");
  if (width_bound <= 0) throw std::domain_error("enclose_exp_inv: width_bound must be positive");
  const Rational t = make_rational(1, a);
  Rational term = 1;  // t^m / m!
  Rational sum = 1;   // S_m
  for (std::uint64_t m = 0;; ++m) {
    Rational next = term * t / Rational(static_cast<unsigned long>(m + 1));
    if (a > 0) {
      Rational bound = 3 * next;
      if (bound <= width_bound) return {sum, sum + bound};
    } else {
      if (abs_rat(next) <= width_bound) {
        Rational other = sum + next;
        return sum <= other ? RationalInterval(sum, other) : RationalInterval(other, sum);
      }
    }
    term = next;
    sum += next;
  }
}

/// Truncated series of F_{k,s}(t) = sum_n t^{kn+s}/(kn+s)!, keeping the
/// exponents s, s+k, ..., s+k*(terms-1).
inline Rational hyper_partial_sum(unsigned k, unsigned s, const Rational& t, std::size_t terms) {
  Rational sum = 0;
  for (std::size_t n = 0; n < terms; ++n) {
    std::uint64_t e = static_cast<std::uint64_t>(k) * n + s;
    sum += pow_rat(t, e) / Rational(factorial(e));
  }
  return sum;
}

/// Encloses F_{k,s}(t) for |t| <= 1. The tail after the last kept exponent m
/// is bounded in magnitude by 2 |t|^{m+k}/(m+k)! (cosh(1) < 2); it is
/// non-negative when t > 0.
inline RationalInterval enclose_hyper_at(unsigned k, unsigned s, const Rational& t,
                                         const Rational& width_bound) {
  if (k < 2 || s >= k) throw std::domain_error("enclose_hyper: need k >= 2 and 0 <= s < k");
  if (abs_rat(t) > 1) throw std::domain_error("enclose_hyper: need |t| <= 1");
  if (width_bound <= 0) throw std::domain_error("enclose_hyper: width_bound must be positive");
  if (t == 0) return RationalInterval::point(s == 0 ? 1 : 0);

  const Rational at = abs_rat(t);
  std::uint64_t m = s;
  Rational sum = pow_rat(t, m) / Rational(factorial(m));
  for (;;) {
    Rational bound = 2 * pow_rat(at, m + k) / Rational(factorial(m + k));
    if (t > 0) {
      if (bound <= width_bound) return {sum, sum + bound};
    } else {
      if (2 * bound <= width_bound) return {sum - bound, sum + bound};
    }
    m += k;
    sum += pow_rat(t, m) / Rational(factorial(m));
  }
}

/// Encloses F_{k,s}(1/a).
inline RationalInterval enclose_hyper(unsigned k, unsigned s, const Integer& a,
                                      const Rational& width_bound) {
  if (a == 0) throw std::domain_error("enclose_hyper: a must be nonzero");
  return enclose_hyper_at(k, s, make_rational(1, a), width_bound);
}

/// Produces the i-th refinement (i = 1, 2, ...) of an enclosure.
using RefineFn = std::function<RationalInterval(std::size_t)>;

/// floor(v * factor) for v known only through enclosures. Resolved when the
/// scaled interval is a point, or both endpoints are non-integers with the
/// same floor. An integer endpoint counts as unresolved. Returns nullopt
/// (undecided) when max_refinements tighter enclosures did not resolve it.
inline std::optional<Integer> floor_via_interval(const RationalInterval& iv, const Rational& factor,
                                                 std::size_t max_refinements,
                                                 const RefineFn& refine) {
  if (factor == 0) throw std::domain_error("floor_via_interval: factor must be nonzero");
  RationalInterval current = iv;
  for (std::size_t i = 0;; ++i) {
    RationalInterval s = current.scaled(factor);
    if (s.lo == s.hi) return floor_of(s.lo);
    if (!is_integer(s.lo) && !is_integer(s.hi)) {
      Integer fl = floor_of(s.lo);
      if (fl == floor_of(s.hi)) return fl;
    }
    if (i == max_refinements || !refine) return std::nullopt;
    current = refine(i + 1);
  }
}

inline std::optional<Integer> ceil_via_interval(const RationalInterval& iv, const Rational& factor,
                                                std::size_t max_refinements,
                                                const RefineFn& refine) {
  auto f = floor_via_interval(iv, Rational(-factor), max_refinements, refine);
  if (!f) return std::nullopt;
  return Integer(-*f);
}

/// Refinement schedule used by the oracles: the i-th refinement asks for
/// base_width / 2^i.
inline Rational halved_width(const Rational& base_width, std::size_t i) {
  Rational w = base_width;
  mpq_div_2exp(w.get_mpq_t(), w.get_mpq_t(), static_cast<mp_bitcnt_t>(i));
  return w;
}

/// Starting width for rounding v * factor: a sixteenth of a unit after scaling.
inline Rational initial_width_for(const Rational& factor) {
  Rational f = abs_rat(factor);
  if (f < 1) f = 1;
  return Rational(1) / (16 * f);
}

}  // namespace idr
