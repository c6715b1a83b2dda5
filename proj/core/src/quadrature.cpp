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

#include "ballslab/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "ballslab/error.hpp"

namespace ballslab {
namespace {

// Kronrod abscissae; odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

struct ByError {
  bool operator()(const Panel& lhs, const Panel& rhs) const {
    if (lhs.error != rhs.error) return lhs.error < rhs.error;
    return lhs.a > rhs.a;
  }
};

Panel gauss_kronrod(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * pair;
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  double error = std::fabs(kronrod - gauss);
  if (!std::isfinite(kronrod)) {
    throw NumericError("integrate: integrand produced a non-finite value");
  }
  return {a, b, kronrod, error};
}

bool splittable(const Panel& p) {
  const double mid = 0.5 * (p.a + p.b);
  return mid > p.a && mid < p.b &&
         (p.b - p.a) > 64.0 * std::numeric_limits<double>::epsilon() *
                           std::max(std::fabs(p.a), std::fabs(p.b));
}

}  // namespace

QuadratureResult integrate(const Integrand& f, std::span<const double> breakpoints,
                           const QuadratureOptions& options) {
  detail::require(breakpoints.size() >= 2, "integrate: need at least two breakpoints");
  detail::require(std::is_sorted(breakpoints.begin(), breakpoints.end()),
                  "integrate: breakpoints must be sorted");

  std::priority_queue<Panel, std::vector<Panel>, ByError> active;
  std::vector<Panel> finished;
  QuadratureResult result;

  double total_value = 0.0;
  double total_error = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (breakpoints[i + 1] <= breakpoints[i]) continue;
    Panel p = gauss_kronrod(f, breakpoints[i], breakpoints[i + 1]);
    result.evaluations += 15;
    total_value += p.value;
    total_error += p.error;
    active.push(p);
  }

  auto target = [&] {
    return std::max(options.abs_tolerance, options.rel_tolerance * std::fabs(total_value));
  };

  std::size_t panels = active.size();
  while (!active.empty() && total_error > target()) {
    if (panels >= options.max_panels) break;
    Panel worst = active.top();
    active.pop();
    if (!splittable(worst)) {
      finished.push_back(worst);
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = gauss_kronrod(f, worst.a, mid);
    Panel right = gauss_kronrod(f, mid, worst.b);
    result.evaluations += 30;
    ++panels;
    total_value += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    active.push(left);
    active.push(right);
  }

  while (!active.empty()) {
    finished.push_back(active.top());
    active.pop();
  }
  std::sort(finished.begin(), finished.end(),
            [](const Panel& l, const Panel& r) { return l.a < r.a; });

  // Neumaier summation in ascending panel order.
  double sum = 0.0;
  double compensation = 0.0;
  double error = 0.0;
  for (const Panel& p : finished) {
    const double next = sum + p.value;
    if (std::fabs(sum) >= std::fabs(p.value)) {
      compensation += (sum - next) + p.value;
    } else {
      compensation += (p.value - next) + sum;
    }
    sum = next;
    error += p.error;
  }
  result.value = sum + compensation;
  result.abs_error = error;
  result.panels = finished.size();
  result.converged =
      error <= std::max(options.abs_tolerance, options.rel_tolerance * std::fabs(result.value));
  return result;
}

QuadratureResult integrate(const Integrand& f, double a, double b,
                           const QuadratureOptions& options) {
  const std::array<double, 2> ends = {a, b};
  return integrate(f, ends, options);
}

QuadratureResult integrate_to_infinity(const Integrand& f, double a,
                                       const QuadratureOptions& options) {
  const Integrand mapped = [&f, a](double s) {
    const double one_minus = 1.0 - s;
    const double x = a + s / one_minus;
    const double value = f(x);
    if (value == 0.0) return 0.0;
    return value / (one_minus * one_minus);
  };
  // Endpoint s = 1 is never evaluated by the open Kronrod rule.
  const std::array<double, 5> breaks = {0.0, 0.5, 0.75, 0.9, 1.0};
  return integrate(mapped, breaks, options);
}

}  // namespace ballslab
