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

#include "ballslab/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ballslab/error.hpp"

namespace ballslab {
namespace {

constexpr double kClampSlack = 1e-12;

// Indices for the (p, q) = ((n+1)/2, 1/2) beta split used by every cap
// evaluation: with x = 1 - a^2, the lower part is 2 cap(a) and the upper
// part is 2 int_0^a (1 - u^2)^((n-1)/2) du.
LogBetaSplit cap_split(int n, double a, double one_minus_a_sq) {
  return log_incomplete_beta(0.5 * (n + 1), 0.5, one_minus_a_sq, a * a);
}

}  // namespace

double ball_log_volume(int n) {
  detail::require(n >= 1, "ball_log_volume: dimension must be at least 1");
  const double half = 0.5 * n;
  return half * std::log(std::numbers::pi) - log_gamma(half + 1.0);
}

BallGeometry BallGeometry::of(int n) {
  detail::require(n >= 2, "BallGeometry: dimension must be at least 2");
  BallGeometry g;
  g.n = n;
  g.log_vol_n = ball_log_volume(n);
  g.log_vol_n_minus_1 = ball_log_volume(n - 1);
  g.log_surf_n = std::log(static_cast<double>(n)) + g.log_vol_n;
  return g;
}

double BallGeometry::volume() const { return std::exp(log_vol_n); }
double BallGeometry::surface() const { return std::exp(log_surf_n); }
double BallGeometry::log_half_chord_integral() const {
  return log_vol_n - kLn2 - log_vol_n_minus_1;
}

ApproxParams ApproxParams::analytic(int n, double log_N, double gamma) {
  const BallGeometry geom = BallGeometry::of(n);
  ApproxParams p;
  p.n = n;
  p.log_N = log_N;
  p.gamma = gamma;
  p.t = slab_width(geom, log_N, gamma);
  p.validate();
  return p;
}

ApproxParams ApproxParams::with_width(int n, double log_N, double t, double gamma) {
  ApproxParams p;
  p.n = n;
  p.log_N = log_N;
  p.gamma = gamma;
  p.t = t;
  p.validate();
  return p;
}

double ApproxParams::facets() const { return std::exp(log_N); }
double ApproxParams::rate() const { return std::exp(-2.0 * log_N / (n - 1)); }
double ApproxParams::delta() const { return rate() / std::sqrt(n - 1.0); }

void ApproxParams::validate() const {
  detail::require(n >= 2, "ApproxParams: dimension must be at least 2");
  detail::require(gamma > 0.0 && std::isfinite(gamma), "ApproxParams: gamma must be positive");
  detail::require(t > 0.0 && t < 1.0, "ApproxParams: t must lie in (0, 1)");
  detail::require(std::isfinite(log_N) && log_N >= std::log(2.0 * n) - 1e-12,
                  "ApproxParams: need N >= 2n");
}

double log_cap_integral(int n, double a, double one_minus_a_sq) {
  detail::require(n >= 1, "cap_integral: dimension must be at least 1");
  detail::require(a >= 0.0 && a <= 1.0, "cap_integral: lower limit must lie in [0, 1]");
  if (a == 1.0 || one_minus_a_sq <= 0.0) return kNegInf;
  return cap_split(n, a, one_minus_a_sq).log_lower - kLn2;
}

double log_cap_integral(int n, double a) {
  detail::require(a >= 0.0 && a <= 1.0, "cap_integral: lower limit must lie in [0, 1]");
  return log_cap_integral(n, a, (1.0 - a) * (1.0 + a));
}

double cap_integral(int n, double a) { return std::exp(log_cap_integral(n, a)); }

QuadratureResult cap_integral_quadrature(int n, double a, double rel_tolerance) {
  detail::require(n >= 1, "cap_integral: dimension must be at least 1");
  detail::require(a >= 0.0 && a <= 1.0, "cap_integral: lower limit must lie in [0, 1]");
  if (a == 1.0) return {};
  const double theta_max = std::atan2(std::sqrt((1.0 - a) * (1.0 + a)), a);
  const double power = n;
  const Integrand f = [power](double theta) {
    const double s = std::sin(theta);
    return s <= 0.0 ? 0.0 : std::exp(power * std::log(s));
  };
  QuadratureOptions options;
  options.abs_tolerance = 1e-300;
  options.rel_tolerance = rel_tolerance;
  options.max_panels = 20000;
  return integrate(f, 0.0, theta_max, options);
}

ExitProbability exit_probability(const BallGeometry& geom, double r, double t) {
  detail::require(t > 0.0 && t < 1.0, "alpha: t must lie in (0, 1)");
  detail::require(r > 0.0, "alpha: r must be positive");
  ExitProbability ep;
  if (r <= t) return ep;

  const int n = geom.n;
  const double a = t / r;
  const double x = (r - t) * (r + t) / (r * r);  // 1 - a^2
  const LogBetaSplit split = cap_split(n, a, x);
  const double log_cap = split.log_lower - kLn2;
  const double log_head = split.log_upper - kLn2;
  const double log_cone = std::log(a / n) + 0.5 * (n - 1) * std::log(x);
  // Same normalizer as the split itself, so alpha + complement = 1 to
  // rounding; the volume-ratio form differs in the last few digits.
  const double log_total = log_beta(0.5 * (n + 1), 0.5) - kLn2;

  ep.log_alpha = log_add_exp(log_cap, log_cone) - log_total;
  // head >= a (1 - a^2)^((n-1)/2) > cone, so the difference never cancels.
  ep.log_complement = log_sub_exp(log_head, log_cone) - log_total;
  ep.alpha = std::exp(ep.log_alpha);
  ep.complement = std::exp(ep.log_complement);

  if (ep.alpha > 1.0 + kClampSlack) {
    throw NumericError("alpha: exit probability exceeds one by " + std::to_string(ep.alpha - 1.0));
  }
  if (ep.alpha > 1.0) {
    ep.alpha = 1.0;
    ep.log_alpha = 0.0;
  }
  return ep;
}

double alpha(const BallGeometry& geom, double r, double t) {
  return exit_probability(geom, r, t).alpha;
}

namespace {

double width_exponent(const BallGeometry& geom, double log_N, double gamma) {
  detail::require(gamma > 0.0, "slab_width: gamma must be positive");
  const double exponent = (2.0 / (geom.n - 1)) *
                          (std::log(gamma) + geom.log_surf_n - log_N - geom.log_vol_n_minus_1);
  if (!(exponent < 0.0)) {
    throw FacetBudgetError("slab_width: N too small for this gamma (radicand <= 0)");
  }
  return exponent;
}

}  // namespace

double slab_width_defect(const BallGeometry& geom, double log_N, double gamma) {
  return std::exp(width_exponent(geom, log_N, gamma));
}

double slab_width(const BallGeometry& geom, double log_N, double gamma) {
  return std::sqrt(-std::expm1(width_exponent(geom, log_N, gamma)));
}

double membership_log_mass(const BallGeometry& geom, const ApproxParams& params, double r) {
  detail::require(r > 0.0, "membership_log_prob: r must be positive");
  if (r <= params.t) return kNegInf;
  const ExitProbability ep = exit_probability(geom, r, params.t);
  double log_neg_log1m;
  if (ep.log_alpha < -30.0) {
    // -log(1 - a) = a (1 + a/2 + ...)
    log_neg_log1m = ep.log_alpha + 0.5 * ep.alpha;
  } else if (ep.alpha < 0.5) {
    log_neg_log1m = std::log(-std::log1p(-ep.alpha));
  } else {
    log_neg_log1m = std::log(-ep.log_complement);
  }
  return params.log_N - kLn2 + log_neg_log1m;
}

double membership_log_prob(const BallGeometry& geom, const ApproxParams& params, double r) {
  const double mass = membership_log_mass(geom, params, r);
  if (mass == kNegInf) return 0.0;
  return -std::exp(mass);
}

AsymptoticAlpha alpha_asymptotic(const BallGeometry& geom, const ApproxParams& params, double r) {
  detail::require(r > 0.0, "alpha_asymptotic: r must be positive");
  const int n = geom.n;
  AsymptoticAlpha out;
  out.log_value = std::log(2.0 * params.gamma) - params.log_N +
                  (n - 1) * (r - 1.0) * std::exp(2.0 * params.log_N / (n - 1));
  out.value = std::exp(out.log_value);
  out.in_validity_window = std::fabs(r - 1.0) <= params.delta();
  return out;
}

double alpha_tail_lower_bound(const BallGeometry& geom, double r, double t) {
  detail::require(t > 0.0 && t < 1.0, "alpha_tail_lower_bound: t must lie in (0, 1)");
  const double n = geom.n;
  detail::require(r >= n * n, "alpha_tail_lower_bound: requires r >= n^2");
  const double bound = 1.0 - kTailBoundConstant * std::sqrt(n) / r;
  return bound > 0.0 ? bound : 0.0;
}

CapLeadingTerm cap_leading_term(int n, double a) {
  detail::require(n >= 2, "cap_leading_term: dimension must be at least 2");
  detail::require(a > 2.0 / 3.0 && a < 1.0, "cap_leading_term: a must lie in (2/3, 1)");
  const double one_minus_a_sq = (1.0 - a) * (1.0 + a);
  const double log_value =
      0.5 * (n + 1) * std::log(one_minus_a_sq) - std::log(a) - std::log(n - 1.0);
  const double log_exact = log_cap_integral(n, a, one_minus_a_sq);
  return {std::exp(log_value), std::fabs(std::expm1(log_value - log_exact))};
}

}  // namespace ballslab
