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

// Pointwise geometry of the random slab construction.
//
// A slab is the symmetric set {x : |<x, y>| <= t} for a unit normal y, so
// N/2 slabs give a polytope with N facets. The exit probability alpha is
// the chance that a fixed point at radius r leaves one uniformly oriented
// slab:
//
//   alpha(r, t) = (2 |D_{n-1}| / |D_n|) * (cap(t/r) + cone(t/r))
//   cap(a)  = int_a^1 (1 - x^2)^((n-1)/2) dx
//   cone(a) = (a / n) (1 - a^2)^((n-1)/2)
//
// Everything that can underflow is carried as a logarithm. Facet budgets
// are carried as log N so that N = n^n is representable for any n.

#pragma once

#include <cstdint>

#include "ballslab/quadrature.hpp"
#include "ballslab/special_functions.hpp"

namespace ballslab {

/// log |D_n| = (n/2) log(pi) - log Gamma(n/2 + 1).
double ball_log_volume(int n);

/// Log-volumes of the unit ball, its equatorial section, and its sphere.
struct BallGeometry {
  int n = 2;
  double log_vol_n = 0.0;
  double log_vol_n_minus_1 = 0.0;
  double log_surf_n = 0.0;

  /// Requires n >= 2.
  static BallGeometry of(int n);

  double volume() const;
  double surface() const;
  /// log of int_0^1 (1 - x^2)^((n-1)/2) dx = |D_n| / (2 |D_{n-1}|).
  double log_half_chord_integral() const;
};

/// One parameterization of the slab construction.
struct ApproxParams {
  int n = 2;
  /// log of the facet budget N.
  double log_N = 0.0;
  double gamma = kLn2;
  /// Slab half-width, in (0, 1).
  double t = 0.5;

  /// Uses the calibrated width t_{n,N} from slab_width().
  static ApproxParams analytic(int n, double log_N, double gamma = kLn2);
  /// Uses a caller-supplied width.
  static ApproxParams with_width(int n, double log_N, double t, double gamma = kLn2);

  double facets() const;
  /// N^{-2/(n-1)}, the natural rate scale.
  double rate() const;
  /// (n-1)^{-1/2} N^{-2/(n-1)}.
  double delta() const;
  /// Throws InvalidArgument if any invariant is violated.
  void validate() const;
};

/// int_a^1 (1 - x^2)^((n-1)/2) dx through the incomplete-beta identity.
double cap_integral(int n, double a);

/// Same as cap_integral, in log domain; -inf when a == 1.
double log_cap_integral(int n, double a);

/// log of cap_integral where the caller also supplies 1 - a^2 exactly.
double log_cap_integral(int n, double a, double one_minus_a_sq);

/// Independent quadrature route for the cap integral (angle substitution
/// x = cos(theta) turns it into int_0^{acos a} sin^n(theta) d theta).
QuadratureResult cap_integral_quadrature(int n, double a, double rel_tolerance = 1e-13);

/// Exit probability together with its complement, both accurate to full
/// relative precision, and their logarithms.
struct ExitProbability {
  double alpha = 0.0;
  double complement = 1.0;
  double log_alpha = kNegInf;
  double log_complement = 0.0;
};

ExitProbability exit_probability(const BallGeometry& geom, double r, double t);

/// alpha clamped to [0, 1]; 0 for r <= t.
double alpha(const BallGeometry& geom, double r, double t);

/// t_{n,N} = sqrt(1 - (gamma |dD_n| / (N |D_{n-1}|))^{2/(n-1)}).
/// Throws FacetBudgetError when the radicand is not positive.
double slab_width(const BallGeometry& geom, double log_N, double gamma);

/// 1 - t_{n,N}^2, computed without cancellation.
double slab_width_defect(const BallGeometry& geom, double log_N, double gamma);

/// log Pr(x in P) = (N/2) log(1 - alpha) for |x| = r. Exactly 0 for r <= t.
double membership_log_prob(const BallGeometry& geom, const ApproxParams& params, double r);

/// log of -membership_log_prob, i.e. log((N/2) * -log(1 - alpha)); -inf for
/// r <= t. Finite whenever the exit mass is representable in log form.
double membership_log_mass(const BallGeometry& geom, const ApproxParams& params, double r);

/// Leading-order exit probability near the sphere,
/// (2 gamma / N) exp((n-1)(r-1) N^{2/(n-1)}).
struct AsymptoticAlpha {
  double value = 0.0;
  double log_value = 0.0;
  /// False when r lies outside [1 - delta, 1 + delta].
  bool in_validity_window = true;
};

AsymptoticAlpha alpha_asymptotic(const BallGeometry& geom, const ApproxParams& params, double r);

/// Constant in the far-field bound alpha >= 1 - C sqrt(n) / r.
inline constexpr double kTailBoundConstant = 3.0;

/// max(0, 1 - 3 sqrt(n) / r); requires r >= n^2.
double alpha_tail_lower_bound(const BallGeometry& geom, double r, double t);

/// Endpoint-Laplace leading term of the cap integral,
/// (1 - a^2)^((n+1)/2) / (a (n - 1)), with its relative error against
/// cap_integral. Requires a in (2/3, 1).
struct CapLeadingTerm {
  double value = 0.0;
  double relative_error = 0.0;
};

CapLeadingTerm cap_leading_term(int n, double a);

/// Constant C in the near-sphere dominance check cap <= (C / n^2) cone.
inline constexpr double kDominanceConstant = 10.0;

}  // namespace ballslab
