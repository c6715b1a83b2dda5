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

#include "ballslab/special_functions.hpp"

#include <cmath>

#include "ballslab/error.hpp"

namespace ballslab {

double log_gamma(double x) {
  detail::require(x > 0.0, "log_gamma: argument must be positive");
  return std::lgamma(x);
}

double log_beta(double p, double q) {
  return log_gamma(p) + log_gamma(q) - log_gamma(p + q);
}

namespace {

// Modified Lentz evaluation of the incomplete-beta continued fraction.
// Converges quickly for x < (p + 1) / (p + q + 2).
double beta_continued_fraction(double p, double q, double x) {
  constexpr int kMaxIterations = 100000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;

  const double qab = p + q;
  const double qap = p + 1.0;
  const double qam = p - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (q - m) * x / ((qam + m2) * (p + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(p + m) * (qab + m) * x / ((p + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw NumericError("log_incomplete_beta: continued fraction did not converge");
}

// log of int_0^x u^(p-1) (1-u)^(q-1) du, valid when x is below the
// continued-fraction switch point.
double log_lower_by_fraction(double p, double q, double x, double y) {
  return p * std::log(x) + q * std::log(y) - std::log(p) +
         std::log(beta_continued_fraction(p, q, x));
}

}  // namespace

LogBetaSplit log_incomplete_beta(double p, double q, double x, double y) {
  detail::require(p > 0.0 && q > 0.0, "log_incomplete_beta: p, q must be positive");
  detail::require(x >= 0.0 && y >= 0.0, "log_incomplete_beta: x, y must be in [0, 1]");
  detail::require(std::fabs(x + y - 1.0) <= 1e-12, "log_incomplete_beta: x + y must equal 1");

  const double log_total = log_beta(p, q);
  if (x == 0.0) return {kNegInf, log_total};
  if (y == 0.0) return {log_total, kNegInf};

  if (x < (p + 1.0) / (p + q + 2.0)) {
    const double lower = log_lower_by_fraction(p, q, x, y);
    return {lower, log_sub_exp(log_total, lower)};
  }
  const double upper = log_lower_by_fraction(q, p, y, x);
  return {log_sub_exp(log_total, upper), upper};
}

}  // namespace ballslab
