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

// Closed-form volume and surface bounds for polytopes with N facets, and
// sweeps of the exact expectation along facet-budget schedules.
//
// Every bound is (constant) * N^{-2/(n-1)} * (natural scale), where the
// scale is |D_n| for volume and |dD_n| for surface. The unquantified
// lower-order corrections are reported as a band rather than folded in.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ballslab/expectation.hpp"

namespace ballslab {

/// Which facet regime the constants are quoted for.
enum class ConstantSet {
  /// N >= n^n: constants I + II and 2I + II + 1/2.
  Asymptotic,
  /// N >= 10^n: the outer integral is inflated by 1/(1 - 1/20).
  TenPowN,
};

/// Band constant K in K * n^{-1/2} (relative, for the upper bounds) and in
/// K * N^{-2/(n-1)} (relative, for the asymptotic lower bound).
inline constexpr double kBandConstant = 5.0;

/// Slack allowed between the exact expectation and the upper bound when
/// checking bound ordering outside N >= n^n.
inline constexpr double kOrderingSlack = 3.0;

struct BoundValue {
  double value = 0.0;
  /// Absolute width of the uncertainty band around value.
  double band = 0.0;
  /// False when (n, N) lies outside the regime the bound is proven for.
  bool in_regime = true;
};

/// log N >= n log n, or n log 10 for ConstantSet::TenPowN.
bool in_bound_regime(int n, double log_N, ConstantSet set = ConstantSet::Asymptotic);

/// Volume constant for the given set: I + II, or I + II * 20/19.
double volume_constant(ConstantSet set = ConstantSet::Asymptotic);
/// Surface constant for the given set: 2I + II + 1/2, or 2I + II * 20/19 + 1/2.
double surface_constant(ConstantSet set = ConstantSet::Asymptotic);

/// C_v N^{-2/(n-1)} |D_n|.
BoundValue upper_bound_volume(int n, double log_N, ConstantSet set = ConstantSet::Asymptotic);

/// C_s N^{-2/(n-1)} |dD_n|.
BoundValue upper_bound_surface(int n, double log_N, ConstantSet set = ConstantSet::Asymptotic);

/// Minimum of the symmetric difference over polytopes with N facets.
///
/// With log_surf_P (log |dP|) supplied, returns the Lagrange-point value
///   (|dP| / 2n) (1 - sqrt(1 - (|dP| / (|D_{n-1}| N))^{2/(n-1)})),
/// valid for any N; otherwise (1/4) N^{-2/(n-1)} |D_n|.
/// Throws InvalidArgument when the radicand is not positive.
BoundValue lower_bound_volume(int n, double log_N, std::optional<double> log_surf_P = {});

struct BoundsReport {
  int n = 0;
  double log_N = 0.0;
  ConstantSet constants = ConstantSet::Asymptotic;
  BoundValue upper_volume;
  BoundValue upper_surface;
  BoundValue lower_volume;
  double ldiv_upper = 0.0;
  double ldiv_lower = 0.0;
  /// upper_volume / (N^{-2/(n-1)} |D_n|), and so on.
  double upper_volume_normalized = 0.0;
  double upper_surface_normalized = 0.0;
  double lower_volume_normalized = 0.0;
};

BoundsReport bounds_report(int n, double log_N, ConstantSet set = ConstantSet::Asymptotic);

/// A facet budget as a function of the dimension.
struct FacetSchedule {
  enum class Kind {
    Power,          ///< N = A^n
    SelfPower,      ///< N = n^n, an e^{omega(n)} schedule
    RootExponent,   ///< N = 2^{sqrt n}, an e^{o(n)} schedule
  };
  Kind kind = Kind::Power;
  double base = 10.0;  ///< A, for Kind::Power

  static FacetSchedule power(double base) { return {Kind::Power, base}; }
  static FacetSchedule self_power() { return {Kind::SelfPower, 0.0}; }
  static FacetSchedule root_exponent() { return {Kind::RootExponent, 0.0}; }

  double log_N(int n) const;
  std::string name() const;
};

struct SweepRow {
  int n = 0;
  double log_N = 0.0;
  double t = 0.0;
  /// E[Delta_v] / |D_n|.
  double volume_ratio = 0.0;
  /// E[Delta_v] / (N^{-2/(n-1)} |D_n|).
  double normalized = 0.0;
  bool converged = true;
};

/// Exact expectation at the analytic width for every n, in input order.
std::vector<SweepRow> regime_sweep(std::span<const int> dimensions, const FacetSchedule& schedule,
                                   const ExpectationOptions& options = {}, unsigned threads = 0);

}  // namespace ballslab
