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

// Value prefixes f(0..N) and Newton coefficient prefixes a_0..a_N, with
// f(x) = sum_k a_k C(x, k). A prefix of length N+1 determines exactly the
// coefficients a_0..a_N; evaluating past the stored prefix treats the
// missing coefficients as zero.

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "idr/arith.hpp"

namespace idr {

struct FunctionTable {
  std::vector<Integer> values;

  FunctionTable() = default;
  explicit FunctionTable(std::vector<Integer> v) : values(std::move(v)) {
    if (values.empty()) throw std::domain_error("FunctionTable must be non-empty");
  }

  std::size_t size() const { return values.size(); }
  const Integer& operator[](std::size_t x) const { return values.at(x); }
  bool operator==(const FunctionTable&) const = default;
};

struct NewtonSeries {
  std::vector<Integer> coeffs;

  NewtonSeries() = default;
  explicit NewtonSeries(std::vector<Integer> c) : coeffs(std::move(c)) {
    if (coeffs.empty()) throw std::domain_error("NewtonSeries must be non-empty");
  }

  std::size_t size() const { return coeffs.size(); }
  const Integer& operator[](std::size_t k) const { return coeffs.at(k); }
  bool operator==(const NewtonSeries&) const = default;
};

/// a_k = (Delta^k f)(0), computed by iterated forward differences.
inline NewtonSeries coeffs_from_values(const FunctionTable& t) {
  std::vector<Integer> row = t.values;
  std::vector<Integer> out;
  out.reserve(row.size());
  out.push_back(row[0]);
  for (std::size_t k = 1; k < row.size(); ++k) {
    for (std::size_t i = 0; i + k < row.size(); ++i) row[i] = row[i + 1] - row[i];
    out.push_back(row[0]);
  }
  return NewtonSeries(std::move(out));
}

/// f(0..x_max) from the coefficient prefix.
///
/// Walks the difference vector (Delta^0 f(x), ..., Delta^L f(x)) forward one
/// step at a time: Delta^k f(x+1) = Delta^k f(x) + Delta^{k+1} f(x).
inline FunctionTable values_from_coeffs(const NewtonSeries& s, std::size_t x_max) {
  std::vector<Integer> diff = s.coeffs;
  if (diff.size() > x_max + 1) diff.resize(x_max + 1);
  std::vector<Integer> out;
  out.reserve(x_max + 1);
  for (std::size_t x = 0; x <= x_max; ++x) {
    out.push_back(diff[0]);
    for (std::size_t k = 0; k + 1 < diff.size(); ++k) diff[k] += diff[k + 1];
  }
  return FunctionTable(std::move(out));
}

}  // namespace idr
