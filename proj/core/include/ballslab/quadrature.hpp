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

// Globally adaptive Gauss-Kronrod (7/15) quadrature.
//
// Panels are refined worst-first from a priority queue; the final sum is
// taken in ascending panel order, so results are bit-reproducible for a
// given integrand and breakpoint list.

#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace ballslab {

struct QuadratureOptions {
  double abs_tolerance = 1e-12;
  double rel_tolerance = 0.0;
  std::size_t max_panels = 100000;
};

struct QuadratureResult {
  double value = 0.0;
  /// Sum of per-panel |K15 - G7| estimates.
  double abs_error = 0.0;
  std::size_t evaluations = 0;
  std::size_t panels = 0;
  bool converged = true;
};

using Integrand = std::function<double(double)>;

/// Integrates f over [breakpoints.front(), breakpoints.back()], using every
/// breakpoint as an initial panel boundary. Breakpoints must be sorted.
QuadratureResult integrate(const Integrand& f, std::span<const double> breakpoints,
                           const QuadratureOptions& options = {});

QuadratureResult integrate(const Integrand& f, double a, double b,
                           const QuadratureOptions& options = {});

/// Integrates f over [a, inf) through the map x = a + s / (1 - s).
QuadratureResult integrate_to_infinity(const Integrand& f, double a,
                                       const QuadratureOptions& options = {});

}  // namespace ballslab
