// Copyright 2026 The sbpwave Authors
//
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

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace sbpwave {

using Rational = boost::multiprecision::cpp_rational;

inline Rational rat(std::int64_t num, std::int64_t den = 1) { return Rational(num, den); }

double to_double(const Rational& r);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);

/// Dense row-major matrix of exact rationals. Only used for certificates and
/// small exact solves, never in time stepping.
struct RationalMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Rational> data;

  RationalMatrix() = default;
  RationalMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

  Rational& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  RationalMatrix transpose() const;
};

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);

/// Minimum Euclidean-norm solution of A x = b over the rationals.
/// Returns false when the system is inconsistent.
bool solve_min_norm(const RationalMatrix& a, const std::vector<Rational>& b,
                    std::vector<Rational>& x);

/// Best rational approximation p/q (q <= max_den) of a positive double, if
/// one is within rel_tol; used to recover exact spacing ratios.
bool recover_ratio(double value, std::int64_t max_den, double rel_tol, std::int64_t& num,
                   std::int64_t& den);

}  // namespace sbpwave
