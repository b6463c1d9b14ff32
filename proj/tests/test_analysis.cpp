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

#include <gtest/gtest.h>

#include <random>

#include "idr/analysis.hpp"
#include "test_support.hpp"

namespace idr {
namespace {

using testing::dec;

// floor((p/q) n!) mod m computed as (n! mod q m) / q, valid once q <= n.
std::uint64_t scaled_factorial_residue(long p, std::uint64_t q, std::uint64_t n, std::uint64_t m) {
  const unsigned __int128 qm = static_cast<unsigned __int128>(q) * m;
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 2; i <= n && acc != 0; ++i) acc = acc * i % qm;
  std::uint64_t quotient = static_cast<std::uint64_t>(acc / q);
  long long pm = static_cast<long long>(p % static_cast<long long>(m));
  if (pm < 0) pm += static_cast<long long>(m);
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(quotient) * pm % m);
}

bool witness_is_violation(long p, std::uint64_t q, const FloorFactorialWitness& w) {
  if (w.b != q || w.a <= w.b) return false;
  std::uint64_t m = w.a - w.b;
  if (!is_prime(m)) return false;
  return scaled_factorial_residue(p, q, w.a, m) != scaled_factorial_residue(p, q, w.b, m);
}

TEST(Primes, Basics) {
  EXPECT_FALSE(is_prime(0));
  EXPECT_FALSE(is_prime(1));
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(97));
  EXPECT_FALSE(is_prime(91));
  EXPECT_EQ(next_prime_above(1), 2u);
  EXPECT_EQ(next_prime_above(2), 3u);
  EXPECT_EQ(next_prime_above(12), 13u);
  EXPECT_EQ(next_prime_above(13), 17u);
}

TEST(FactorialPowerWitness, Examples) {
  auto w1 = witness_factorial_power(1);
  EXPECT_EQ(w1.x, 3u);
  EXPECT_EQ(w1.y, 1u);
  EXPECT_EQ(w1.divisor, 2);
  auto w2 = witness_factorial_power(2);
  EXPECT_EQ(w2.x, 5u);
  EXPECT_EQ(w2.y, 2u);
  EXPECT_EQ(w2.divisor, 3);
  EXPECT_EQ(floor_mod(Integer(32 * 120 - 4 * 2), Integer(3)), 1);
  auto wm = witness_factorial_power(-1);
  EXPECT_EQ(wm.x, 3u);
  EXPECT_EQ(wm.y, 1u);
  EXPECT_THROW(witness_factorial_power(0), std::domain_error);
}

TEST(FactorialPowerWitness, ValidByDirectDivision) {
  for (long a = -10; a <= 10; ++a) {
    if (a == 0) continue;
    auto w = witness_factorial_power(a);
    ASSERT_EQ(Integer(static_cast<unsigned long>(w.x - w.y)), w.divisor);
    ASSERT_TRUE(is_prime(w.y + 1));
    ASSERT_GT(w.y + 1, static_cast<std::uint64_t>(std::labs(a)));
    for (std::uint64_t smaller = std::labs(a) + 1; smaller < w.y + 1; ++smaller) ASSERT_FALSE(is_prime(smaller));
    Integer fx = pow_int(a, w.x) * factorial(w.x), fy = pow_int(a, w.y) * factorial(w.y);
    ASSERT_EQ(fx % w.divisor, 0) << a;
    ASSERT_NE((fx - fy) % w.divisor, 0) << a;
  }
}

TEST(FloorFactorialWitness, Examples) {
  auto w = witness_floor_factorial(1, 2);
  EXPECT_EQ(w.a, 5u);
  EXPECT_EQ(w.b, 2u);
  EXPECT_EQ((factorial(5) / 2 - factorial(2) / 2) % 3, 59 % 3);
  EXPECT_NE(59 % 3, 0);

  auto w1 = witness_floor_factorial(1, 1);
  EXPECT_EQ(w1.a, 3u);
  EXPECT_EQ(w1.b, 1u);

  auto w23 = witness_floor_factorial(2, 3);
  EXPECT_EQ(w23.a, 16u);
  EXPECT_EQ(w23.b, 3u);
  Integer diff = floor_div(2 * factorial(16), Integer(3)) - floor_div(2 * factorial(3), Integer(3));
  EXPECT_NE(diff % 13, 0);
}

TEST(FloorFactorialWitness, PreconditionErrors) {
  EXPECT_THROW(witness_floor_factorial(0, 1), std::domain_error);
  EXPECT_THROW(witness_floor_factorial(1, 0), std::domain_error);
  EXPECT_THROW(witness_floor_factorial(2, 4), std::domain_error);
  EXPECT_THROW(witness_floor_factorial(1, 21), std::domain_error);
}

TEST(FloorFactorialWitness, FullTableViolationForSmallFractions) {
  // Tabulate floor and ceil of (p/q) x! up to the witness and find the pair.
  for (auto [p, q] : std::vector<std::pair<long, long>>{{1, 1}, {1, 2}, {2, 3}, {3, 4}, {-1, 2}, {5, 3}}) {
    auto w = witness_floor_factorial(p, q);
    std::vector<Integer> fl, ce;
    for (std::uint64_t x = 0; x <= w.a; ++x) {
      Rational v = make_rational(Integer(p) * factorial(x), Integer(q));
      fl.push_back(floor_of(v));
      ce.push_back(ceil_of(v));
    }
    Integer d = static_cast<unsigned long>(w.a - w.b);
    EXPECT_FALSE(divides(d, fl[w.a] - fl[w.b])) << p << "/" << q;
    EXPECT_FALSE(divides(d, ce[w.a] - ce[w.b])) << p << "/" << q;
  }
}

TEST(FloorFactorialWitness, ExhaustiveForSmallBound) {
  // Every coprime p/q with |p| q! <= 2000, both signs.
  std::size_t count = 0;
  for (long q = 1; factorial(q) <= 2000; ++q)
    for (long p = 1; Integer(p) * factorial(q) <= 2000; ++p) {
      if (std::gcd(p, q) != 1) continue;
      for (long sp : {p, -p}) {
        auto w = witness_floor_factorial(sp, q);
        ASSERT_TRUE(witness_is_violation(sp, q, w)) << sp << "/" << q;
        ++count;
      }
    }
  EXPECT_GT(count, 2500u);
}

TEST(FloorFactorialWitness, SampledUpToMillion) {
  std::mt19937_64 rng(421);
  std::size_t checked = 0;
  while (checked < 200) {
    long q = 1 + static_cast<long>(rng() % 9);
    Integer qf = factorial(q);
    long p_max = Integer(Integer(1000000) / qf).get_si();
    if (p_max < 1) continue;
    long p = 1 + static_cast<long>(rng() % static_cast<unsigned long>(p_max));
    if (std::gcd(p, q) != 1) continue;
    auto w = witness_floor_factorial(p, q);
    ASSERT_TRUE(witness_is_violation(p, q, w)) << p << "/" << q;
    ++checked;
  }
}

TEST(PolynomialCheck, Examples) {
  auto half = polynomial_idr_check({Rational(0), dec("1", "2")}, 4);
  EXPECT_FALSE(half.integral_high_coeffs);
  ASSERT_TRUE(half.violation);
  EXPECT_EQ(*half.violation, (Violation{2, 0}));

  auto quad = polynomial_idr_check({dec("1", "3"), Rational(2), Rational(5)}, 10);
  EXPECT_TRUE(quad.integral_high_coeffs);
  EXPECT_FALSE(quad.violation);

  auto id = polynomial_idr_check({Rational(0), Rational(1)}, 30);
  EXPECT_TRUE(id.integral_high_coeffs);
  EXPECT_FALSE(id.violation);
  EXPECT_EQ(id.pairs_checked, 30u * 29u / 2u);
  EXPECT_THROW(polynomial_idr_check({}, 3), std::domain_error);
}

TEST(PolynomialCheck, IntegerPolynomialsHaveNoViolation) {
  std::mt19937_64 rng(415);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t degree = rng() % 6;
    std::vector<Rational> c;
    // Non-integral constant term is allowed: flooring removes it uniformly.
    c.push_back(make_rational(testing::random_integer(rng, -50, 50), testing::random_integer(rng, 1, 7)));
    for (std::size_t i = 1; i <= degree; ++i) c.emplace_back(testing::random_integer(rng, -20, 20));
    auto v = polynomial_idr_check(c, 50);
    ASSERT_TRUE(v.integral_high_coeffs);
    ASSERT_FALSE(v.violation) << trial;
  }
}

TEST(PolynomialCheck, NonIntegralCoefficientsAreCaught) {
  // Integer-valued but not integer-coefficient: x(x - 1)/2 is not IDR.
  auto v = polynomial_idr_check({Rational(0), dec("-1", "2"), dec("1", "2")}, 10);
  EXPECT_FALSE(v.integral_high_coeffs);
  EXPECT_TRUE(v.violation);
  for (long den : {2, 3, 5, 7}) {
    auto w = polynomial_idr_check({Rational(0), Rational(0), make_rational(1, den)}, 40);
    EXPECT_TRUE(w.violation) << den;
  }
}

TEST(FractionalGap, Examples) {
  std::vector<Rational> v;
  for (long n = 0; n <= 4; ++n) v.emplace_back(7 * n);
  auto rep = fractional_gap(v, 5);
  EXPECT_EQ(rep.fractional_parts, (std::vector<Rational>{0, 2, 4, 1, 3}));
  EXPECT_EQ(rep.max_gap, 1);
  EXPECT_EQ(rep.samples, 5u);

  EXPECT_EQ(fractional_gap({Rational(0)}, 9).max_gap, 9);
  EXPECT_EQ(fractional_gap({}, 4).max_gap, 4);
  EXPECT_THROW(fractional_gap({Rational(1)}, 0), std::domain_error);
  EXPECT_EQ(fractional_part_mod(dec("-1", "2"), 3), dec("5", "2"));
}

TEST(FractionalGap, IdrTableAtMultiplesOfModulus) {
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 20; ++trial) {
    long A = 1 + static_cast<long>(rng() % 6);
    auto f = testing::random_idr_table(rng, 9 * A);
    std::vector<Rational> samples;
    for (long n = 0; n * A <= 9 * A; ++n) samples.emplace_back(f[n * A] - f[0]);
    auto rep = fractional_gap(samples, A);
    for (const auto& p : rep.fractional_parts) ASSERT_EQ(p, 0);
    ASSERT_EQ(rep.max_gap, A);
  }
}

TEST(FractionalGap, BandAroundIdrTables) {
  std::mt19937_64 rng(4505);
  for (int trial = 0; trial < 50; ++trial) {
    Rational M = make_rational(testing::random_integer(rng, 1, 20), testing::random_integer(rng, 1, 10));
    Integer A = floor_of(2 * M) + testing::random_integer(rng, 1, 5);
    std::size_t count = 12;
    std::uint64_t a = A.get_ui();
    auto f = testing::random_idr_table(rng, count * a, 1000);
    std::vector<Rational> samples;
    for (std::size_t n = 0; n <= count; ++n) {
      Rational delta = M * make_rational(testing::random_integer(rng, -1000, 1000), Integer(1000));
      samples.push_back(Rational(f[n * a]) + delta - Rational(f[0]));
    }
    auto rep = fractional_gap(samples, A);
    ASSERT_TRUE(parts_within_band(rep, M)) << trial;
    ASSERT_GE(rep.max_gap, Rational(A) - 2 * M) << trial;
    for (const auto& p : rep.fractional_parts) {
      ASSERT_GE(p, 0);
      ASSERT_LT(p, Rational(A));
    }
  }
}

TEST(FractionalGap, ContrastWithGeometricSequence) {
  // Rational stand-in 14142135/10^7 for sqrt(2), times 2^n.
  Rational alpha = dec("14142135", "10000000");
  std::vector<Rational> v;
  for (std::uint64_t n = 0; n <= 200; ++n) v.push_back(alpha * Rational(pow_int(2, n)));
  auto rep = fractional_gap(v, 10);
  EXPECT_LT(rep.max_gap, Rational(10 - 2));
  EXPECT_FALSE(parts_within_band(rep, 1));
}

}  // namespace
}  // namespace idr
