// Copyright 2026 The ballslab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Log-domain special functions used by the geometry kernels.

#pragma once

#include <cmath>
#include <limits>

namespace ballslab {

inline constexpr double kLn2 = 0.693147180559945309417232121458176568;
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log(Gamma(x)) for x > 0.
double log_gamma(double x);

/// log(B(p, q)) for p, q > 0.
double log_beta(double p, double q);

/// log(exp(a) + exp(b)) without overflow; either argument may be -inf.
inline double log_add_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = a > b ? a : b;
  const double lo = a > b ? b : a;
  return hi + std::log1p(std::exp(lo - hi));
}

/// log(exp(a) - exp(b)) for a >= b.
inline double log_sub_exp(double a, double b) {
  if (b == kNegInf) return a;
  const double d = b - a;
  if (d >= 0.0) return kNegInf;
  if (d > -kLn2) return a + std::log(-std::expm1(d));
  return a + std::log1p(-std::exp(d));
}

/// Split of the complete beta integral at x.
///
/// log_lower = log of int_0^x u^(p-1) (1-u)^(q-1) du
/// log_upper = log of int_x^1 u^(p-1) (1-u)^(q-1) du
///
/// The caller passes both x and y = 1 - x so that a complement known to
/// full relative precision (e.g. (r-t)(r+t)/r^2) is never recomputed as
/// 1 - x.
struct LogBetaSplit {
  double log_lower;
  double log_upper;
};

LogBetaSplit log_incomplete_beta(double p, double q, double x, double y);

}  // namespace ballslab
