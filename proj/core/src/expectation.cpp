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

#include "ballslab/expectation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "ballslab/error.hpp"
#include "ballslab/quadrature.hpp"

namespace ballslab {
namespace {

// The integrands are scaled by |dD_n| / (|D_n| N^{-2/(n-1)}) = n N^{2/(n-1)}
// so that quadrature tolerances are in units of the rate scale.
double log_normalizer(const ApproxParams& p) {
  return std::log(static_cast<double>(p.n)) + 2.0 * p.log_N / (p.n - 1);
}

double log_rate_scale(const BallGeometry& geom, const ApproxParams& p) {
  return geom.log_vol_n - 2.0 * p.log_N / (p.n - 1);
}

// Width of the exit-probability transition layer around r = 1.
double layer_width(const ApproxParams& p) { return p.rate() / (p.n - 1); }

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

constexpr double kLayerMultiples[] = {0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0};

// log of a certified upper bound on int_R^inf r^{n-1} (1 - alpha)^{N/2} dr
// for R >= n^2, using 1 - alpha <= C sqrt(n) / r.
double log_far_tail_bound(const BallGeometry& geom, const ApproxParams& p, double radius) {
  const double n = p.n;
  const double half_facets = 0.5 * std::exp(p.log_N);
  if (!(half_facets > n)) return std::numeric_limits<double>::infinity();
  const double escape = 1.0 - alpha_tail_lower_bound(geom, radius, p.t);
  if (!(escape < 1.0)) return std::numeric_limits<double>::infinity();
  return half_facets * std::log(escape) + n * std::log(radius) - std::log(half_facets - n);
}

// Bound on the outer integrand tail beyond `radius`. Between radius and n^2
// we use monotonicity of 1 - alpha in r and r^{n-1} <= n^{2(n-1)}.
double log_tail_bound(const BallGeometry& geom, const ApproxParams& p, double radius) {
  const double n = p.n;
  const double far = n * n;
  if (radius >= far) return log_far_tail_bound(geom, p, radius);
  const double near = std::log(far - radius) + 2.0 * (n - 1) * std::log(n) +
                      membership_log_prob(geom, p, radius);
  return log_add_exp(near, log_far_tail_bound(geom, p, far));
}

}  // namespace

ExpectationPart expected_inner_deficit(const ApproxParams& params,
                                       const ExpectationOptions& options) {
  params.validate();
  const BallGeometry geom = BallGeometry::of(params.n);
  const double t = params.t;
  const double log_norm = log_normalizer(params);
  const int n = params.n;

  const Integrand f = [&](double r) {
    const double mass = membership_log_mass(geom, params, r);
    if (mass == kNegInf) return 0.0;
    const double escape = -std::expm1(-std::exp(mass));
    return std::exp(log_norm + (n - 1) * std::log(r)) * escape;
  };

  std::vector<double> points = {t, 1.0, 1.0 - params.delta()};
  const double width = layer_width(params);
  for (double k : kLayerMultiples) points.push_back(1.0 - k * width);
  for (double j : {1.0, 2.0, 4.0, 8.0}) points.push_back(1.0 - j / n);
  for (double frac : {1e-3, 1e-2, 0.1, 0.5}) points.push_back(t + frac * (1.0 - t));
  std::erase_if(points, [t](double x) { return x < t || x > 1.0; });
  points = sorted_unique(std::move(points));

  ExpectationPart part;
  if (points.size() < 2) return part;

  QuadratureOptions q;
  q.abs_tolerance = options.tolerance;
  q.rel_tolerance = options.rel_tolerance;
  q.max_panels = options.max_panels;
  const QuadratureResult res = integrate(f, points, q);

  const double scale = std::exp(log_rate_scale(geom, params));
  part.value = res.value * scale;
  part.error_bound = res.abs_error * scale;
  part.converged = res.converged;
  return part;
}

ExpectationPart expected_outer_excess(const ApproxParams& params,
                                      const ExpectationOptions& options) {
  params.validate();
  const BallGeometry geom = BallGeometry::of(params.n);
  const int n = params.n;
  const double log_norm = log_normalizer(params);
  const double log_tol = std::log(options.tolerance);

  const auto log_integrand = [&](double r) {
    return log_norm + (n - 1) * std::log(r) + membership_log_prob(geom, params, r);
  };
  const Integrand f = [&](double r) { return std::exp(log_integrand(r)); };

  const double far = static_cast<double>(n) * n;
  std::vector<double> points = {1.0, 1.0 + params.delta(), 1.0 + 2.0 * params.rate(),
                                1.0 + 2.0 / n, far};
  const double width = layer_width(params);
  for (double k : kLayerMultiples) points.push_back(1.0 + k * width);
  std::erase_if(points, [far](double x) { return x < 1.0 || x > far; });
  points = sorted_unique(std::move(points));

  // Candidate truncation radii: the breakpoints, then doublings past n^2.
  std::vector<double> candidates(points.begin() + 1, points.end());
  for (int k = 1; k <= 64; ++k) candidates.push_back(far * std::ldexp(1.0, k));

  ExpectationPart part;
  part.tail_certified = false;
  double radius = candidates.back();
  double log_tail = std::numeric_limits<double>::infinity();
  for (double candidate : candidates) {
    if (log_integrand(candidate) >= log_tol - 40.0) continue;
    const double bound = log_norm + log_tail_bound(geom, params, candidate);
    if (bound <= log_tol - std::log(10.0)) {
      radius = candidate;
      log_tail = bound;
      part.tail_certified = true;
      break;
    }
  }

  std::erase_if(points, [radius](double x) { return x >= radius; });
  points.push_back(radius);

  QuadratureOptions q;
  q.abs_tolerance = options.tolerance;
  q.rel_tolerance = options.rel_tolerance;
  q.max_panels = options.max_panels;
  const QuadratureResult res = integrate(f, points, q);

  const double scale = std::exp(log_rate_scale(geom, params));
  const double tail = part.tail_certified ? std::exp(log_tail) : 0.0;
  part.value = res.value * scale;
  part.error_bound = (res.abs_error + tail) * scale;
  part.converged = res.converged && part.tail_certified;
  part.truncation_radius = radius;
  return part;
}

ExpectationBreakdown expected_sym_diff(const ApproxParams& params,
                                       const ExpectationOptions& options) {
  const ExpectationPart inner = expected_inner_deficit(params, options);
  const ExpectationPart outer = expected_outer_excess(params, options);
  const BallGeometry geom = BallGeometry::of(params.n);

  ExpectationBreakdown b;
  b.inner_deficit = inner.value;
  b.outer_excess = outer.value;
  b.total = inner.value + outer.value;
  b.normalized = b.total / std::exp(log_rate_scale(geom, params));
  b.quadrature_error_bound = inner.error_bound + outer.error_bound;
  b.tail_certified = outer.tail_certified;
  b.converged = inner.converged && outer.converged &&
                b.quadrature_error_bound <= kConvergedRelativeError * b.total;
  return b;
}

namespace {

QuadratureOptions constant_options() {
  QuadratureOptions q;
  q.abs_tolerance = 1e-16;
  q.rel_tolerance = 1e-15;
  q.max_panels = 10000;
  return q;
}

}  // namespace

double limit_inner_integral(double gamma) {
  detail::require(gamma > 0.0, "limit_inner_integral: gamma must be positive");
  const Integrand f = [gamma](double t) { return -std::expm1(-gamma * t) / t; };
  return integrate(f, 0.0, 1.0, constant_options()).value;
}

double limit_outer_integral(double gamma) {
  detail::require(gamma > 0.0, "limit_outer_integral: gamma must be positive");
  const Integrand f = [gamma](double u) { return std::exp(-gamma * u) / u; };
  return integrate_to_infinity(f, 1.0, constant_options()).value;
}

double limit_sum_derivative(double gamma) {
  detail::require(gamma > 0.0, "limit_sum_derivative: gamma must be positive");
  const Integrand inner = [gamma](double t) { return std::exp(-gamma * t); };
  const Integrand outer = [gamma](double u) { return std::exp(-gamma * u); };
  return integrate(inner, 0.0, 1.0, constant_options()).value -
         integrate_to_infinity(outer, 1.0, constant_options()).value;
}

RateConstants rate_constants() {
  RateConstants c;
  std::uintmax_t iterations = 200;
  const auto bracket = boost::math::tools::toms748_solve(
      [](double g) { return limit_sum_derivative(g); }, 0.1, 2.0,
      boost::math::tools::eps_tolerance<double>(52), iterations);
  c.gamma_star = 0.5 * (bracket.first + bracket.second);
  c.inner = limit_inner_integral(kLn2);
  c.outer = limit_outer_integral(kLn2);
  const double pi_e = std::numbers::pi * std::numbers::e;
  c.ldiv_upper = c.sum() / pi_e;
  c.ldiv_lower = 1.0 / (4.0 * pi_e);
  return c;
}

WidthOptimum optimize_width(int n, double log_N, const ExpectationOptions& options) {
  bool all_converged = true;
  const auto objective = [&](double t) {
    const ExpectationBreakdown b =
        expected_sym_diff(ApproxParams::with_width(n, log_N, t), options);
    all_converged = all_converged && b.converged;
    return b.total;
  };

  std::vector<double> grid;
  for (int k = 1; k < 19; ++k) grid.push_back(0.05 * k);
  for (int k = 7; k <= 104; ++k) {
    const double t = 1.0 - std::exp2(-0.5 * k);
    if (t > grid.back() && t < 1.0) grid.push_back(t);
  }

  // Full scan: for small t the objective sits on a plateau at |D_n|, so an
  // early stop on "no improvement" would lock onto it.
  std::vector<double> values;
  std::size_t best = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    values.push_back(objective(grid[i]));
    if (values[i] < values[best]) best = i;
  }

  double lo = best == 0 ? grid[0] * 0.5 : grid[best - 1];
  double hi = best + 1 < grid.size() ? grid[best + 1] : 0.5 * (1.0 + grid[best]);
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = objective(x1);
  double f2 = objective(x2);
  constexpr double kWidthTolerance = 1e-6;
  int guard = 0;
  while (hi - lo > kWidthTolerance && guard++ < 200) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = objective(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = objective(x2);
    }
  }

  WidthOptimum out;
  out.t = f1 < f2 ? x1 : x2;
  out.value = std::min(f1, f2);
  if (values[best] < out.value) {
    out.t = grid[best];
    out.value = values[best];
  }
  out.converged = all_converged && hi - lo <= kWidthTolerance;
  return out;
}

}  // namespace ballslab
