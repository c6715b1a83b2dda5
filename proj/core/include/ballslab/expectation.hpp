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

// Exact expectation of the symmetric volume difference between the unit
// ball and the random slab polytope. By Fubini and polar coordinates
//
//   E|D_n \ P| = |dD_n| int_t^1 r^{n-1} (1 - (1 - alpha)^{N/2}) dr
//   E|P \ D_n| = |dD_n| int_1^inf r^{n-1} (1 - alpha)^{N/2} dr
//
// for every N and t; the N >= n^n regime only matters for the limits.

#pragma once

#include <cstddef>

#include "ballslab/geometry.hpp"

namespace ballslab {

struct ExpectationOptions {
  /// Absolute tolerance on each integral, in units of |D_n| N^{-2/(n-1)}.
  double tolerance = 1e-10;
  /// Relative tolerance floor, for integrals far larger than the rate scale.
  double rel_tolerance = 1e-12;
  std::size_t max_panels = 200000;
};

/// One of the two expectation integrals, in volume units.
struct ExpectationPart {
  double value = 0.0;
  double error_bound = 0.0;
  bool converged = true;
  /// Outer integral only: whether the discarded tail was certified by the
  /// far-field alpha bound.
  bool tail_certified = true;
  /// Where the outer integral was truncated (outer part only).
  double truncation_radius = 0.0;
};

struct ExpectationBreakdown {
  double inner_deficit = 0.0;
  double outer_excess = 0.0;
  double total = 0.0;
  /// total / (N^{-2/(n-1)} |D_n|).
  double normalized = 0.0;
  double quadrature_error_bound = 0.0;
  bool converged = true;
  bool tail_certified = true;
};

/// Relative accuracy a breakdown must reach to count as converged.
inline constexpr double kConvergedRelativeError = 1e-8;

ExpectationPart expected_inner_deficit(const ApproxParams& params,
                                       const ExpectationOptions& options = {});
ExpectationPart expected_outer_excess(const ApproxParams& params,
                                      const ExpectationOptions& options = {});
ExpectationBreakdown expected_sym_diff(const ApproxParams& params,
                                       const ExpectationOptions& options = {});

/// I(gamma) = int_0^1 (1 - e^{-gamma t}) / t dt.
double limit_inner_integral(double gamma);
/// II(gamma) = int_0^inf exp(-gamma e^t) dt = int_1^inf e^{-gamma u} / u du.
double limit_outer_integral(double gamma);
/// d/dgamma (I + II), by quadrature of the differentiated integrands.
double limit_sum_derivative(double gamma);

struct RateConstants {
  double inner = 0.0;  ///< I at gamma = ln 2
  double outer = 0.0;  ///< II at gamma = ln 2
  double gamma_star = 0.0;
  double ldiv_upper = 0.0;  ///< (I + II) / (pi e)
  double ldiv_lower = 0.0;  ///< 1 / (4 pi e)

  double sum() const { return inner + outer; }
  /// 2 I + II + 1/2, the surface-deviation constant.
  double surface_constant() const { return 2.0 * inner + outer + 0.5; }
};

RateConstants rate_constants();

struct WidthOptimum {
  double t = 0.0;
  double value = 0.0;
  bool converged = true;
};

/// Minimizes E[Delta_v] over t in (0, 1): a full scan over a grid that is
/// uniform up to 0.9 and then t = 1 - 2^{-k/2}, followed by golden-section
/// refinement to 1e-6 around the best grid point.
WidthOptimum optimize_width(int n, double log_N, const ExpectationOptions& options = {});

}  // namespace ballslab
