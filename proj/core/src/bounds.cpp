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

#include "ballslab/bounds.hpp"

#include <cmath>
#include <numbers>

#include "ballslab/error.hpp"
#include "ballslab/parallel.hpp"

namespace ballslab {
namespace {

// Inflation of the outer integral when only N >= 10^n is assumed.
constexpr double kTenPowNInflation = 1.0 / (1.0 - 1.0 / 20.0);

const RateConstants& cached_constants() {
  static const RateConstants constants = rate_constants();
  return constants;
}

double log_rate(int n, double log_N) { return -2.0 * log_N / (n - 1); }

void check_args(int n, double log_N) {
  detail::require(n >= 2, "bounds: dimension must be at least 2");
  detail::require(std::isfinite(log_N) && log_N > 0.0, "bounds: need N > 1");
}

}  // namespace

bool in_bound_regime(int n, double log_N, ConstantSet set) {
  const double threshold =
      set == ConstantSet::Asymptotic ? n * std::log(static_cast<double>(n)) : n * std::log(10.0);
  return log_N >= threshold * (1.0 - 1e-12);
}

double volume_constant(ConstantSet set) {
  const RateConstants& c = cached_constants();
  return set == ConstantSet::Asymptotic ? c.sum() : c.inner + c.outer * kTenPowNInflation;
}

double surface_constant(ConstantSet set) {
  const RateConstants& c = cached_constants();
  return set == ConstantSet::Asymptotic ? c.surface_constant()
                                        : 2.0 * c.inner + c.outer * kTenPowNInflation + 0.5;
}

BoundValue upper_bound_volume(int n, double log_N, ConstantSet set) {
  check_args(n, log_N);
  const double scale = std::exp(log_rate(n, log_N) + ball_log_volume(n));
  BoundValue b;
  b.value = volume_constant(set) * scale;
  b.band = kBandConstant / std::sqrt(static_cast<double>(n)) * b.value;
  b.in_regime = in_bound_regime(n, log_N, set);
  return b;
}

BoundValue upper_bound_surface(int n, double log_N, ConstantSet set) {
  check_args(n, log_N);
  const double scale = std::exp(log_rate(n, log_N) + BallGeometry::of(n).log_surf_n);
  BoundValue b;
  b.value = surface_constant(set) * scale;
  b.band = kBandConstant / std::sqrt(static_cast<double>(n)) * b.value;
  b.in_regime = in_bound_regime(n, log_N, set);
  return b;
}

BoundValue lower_bound_volume(int n, double log_N, std::optional<double> log_surf_P) {
  check_args(n, log_N);
  const BallGeometry geom = BallGeometry::of(n);
  const double rate = std::exp(log_rate(n, log_N));
  BoundValue b;
  if (!log_surf_P) {
    b.value = 0.25 * rate * geom.volume();
    b.band = kBandConstant * rate * b.value;
    b.in_regime = in_bound_regime(n, log_N);
    return b;
  }
  // x = (|dP| / (|D_{n-1}| N))^{2/(n-1)}; 1 - sqrt(1 - x) = x / (1 + sqrt(1 - x)).
  const double x = std::exp(2.0 * (*log_surf_P - geom.log_vol_n_minus_1 - log_N) / (n - 1));
  if (!(x < 1.0)) {
    throw InvalidArgument("lower_bound_volume: surface/facet budget inconsistent");
  }
  b.value = std::exp(*log_surf_P) / (2.0 * n) * x / (1.0 + std::sqrt(1.0 - x));
  b.band = 0.0;
  b.in_regime = true;
  return b;
}

BoundsReport bounds_report(int n, double log_N, ConstantSet set) {
  const RateConstants& c = cached_constants();
  const BallGeometry geom = BallGeometry::of(n);
  BoundsReport r;
  r.n = n;
  r.log_N = log_N;
  r.constants = set;
  r.upper_volume = upper_bound_volume(n, log_N, set);
  r.upper_surface = upper_bound_surface(n, log_N, set);
  r.lower_volume = lower_bound_volume(n, log_N);
  r.ldiv_upper = volume_constant(set) / (std::numbers::pi * std::numbers::e);
  r.ldiv_lower = c.ldiv_lower;
  const double rate = std::exp(log_rate(n, log_N));
  r.upper_volume_normalized = r.upper_volume.value / (rate * geom.volume());
  r.upper_surface_normalized = r.upper_surface.value / (rate * geom.surface());
  r.lower_volume_normalized = r.lower_volume.value / (rate * geom.volume());
  return r;
}

double FacetSchedule::log_N(int n) const {
  detail::require(n >= 2, "FacetSchedule: dimension must be at least 2");
  switch (kind) {
    case Kind::Power:
      detail::require(base > 1.0, "FacetSchedule: base must exceed 1");
      return n * std::log(base);
    case Kind::SelfPower:
      return n * std::log(static_cast<double>(n));
    case Kind::RootExponent:
      return std::sqrt(static_cast<double>(n)) * kLn2;
  }
  return 0.0;
}

std::string FacetSchedule::name() const {
  switch (kind) {
    case Kind::Power: {
      std::string b = std::to_string(base);
      b.erase(b.find_last_not_of('0') + 1);
      if (!b.empty() && b.back() == '.') b.pop_back();
      return b + "^n";
    }
    case Kind::SelfPower:
      return "n^n";
    case Kind::RootExponent:
      return "2^sqrt(n)";
  }
  return "";
}

std::vector<SweepRow> regime_sweep(std::span<const int> dimensions, const FacetSchedule& schedule,
                                   const ExpectationOptions& options, unsigned threads) {
  std::vector<SweepRow> rows(dimensions.size());
  parallel_for(
      dimensions.size(),
      [&](std::size_t i) {
        const int n = dimensions[i];
        const ApproxParams params = ApproxParams::analytic(n, schedule.log_N(n));
        const ExpectationBreakdown b = expected_sym_diff(params, options);
        SweepRow& row = rows[i];
        row.n = n;
        row.log_N = params.log_N;
        row.t = params.t;
        row.volume_ratio = b.total / BallGeometry::of(n).volume();
        row.normalized = b.normalized;
        row.converged = b.converged;
      },
      threads);
  return rows;
}

}  // namespace ballslab
