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

// Monte Carlo realizations of the random slab polytope.
//
// P = {x : |<x, y_i>| <= t for all i} is star-shaped about the origin with
// radial function rho(u) = t / max_i |<u, y_i>|, so every volume and
// boundary measure against the unit ball reduces to a spherical average
// over directions u:
//
//   |D cap P| = |D_n| E[min(rho, 1)^n]      |D cup P| = |D_n| E[max(rho, 1)^n]
//   |dD cap P| = |dD_n| Pr(rho >= 1)
//
// Facet areas follow from the cone-volume formula because every facet lies
// at distance t from the origin.
//
// Stream layout: realize() draws from stream 0 of its seed, the volume
// estimator from stream 1, the surface estimator from stream 2, the alpha
// estimator from stream 3 and the membership estimator from stream 4.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ballslab/geometry.hpp"
#include "ballslab/rng.hpp"

namespace ballslab {

/// Monte Carlo value with its standard error.
struct Estimate {
  double value = 0.0;
  /// Sample standard deviation / sqrt(samples).
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// One realization of the slab construction.
struct SlabPolytope {
  int n = 2;
  double t = 0.5;
  /// N/2 unit normals, row-major (slab_count() x n).
  std::vector<double> directions;
  std::uint64_t seed = 0;
  /// False when the normals fail to span R^n (the polytope is unbounded).
  bool bounded = false;

  std::size_t slab_count() const { return directions.size() / static_cast<std::size_t>(n); }
  std::size_t facet_count() const { return 2 * slab_count(); }
  std::span<const double> direction(std::size_t i) const {
    return {directions.data() + i * static_cast<std::size_t>(n), static_cast<std::size_t>(n)};
  }

  /// Builds a polytope from explicit normals (normalized on entry) and runs
  /// the spanning check.
  static SlabPolytope from_directions(int n, double t, std::vector<double> normals,
                                      std::uint64_t seed = 0);
};

/// Writes a uniform direction on S^{n-1} into out (size n).
void sample_direction(CounterRng& rng, std::span<double> out);
std::vector<double> sample_direction(int n, CounterRng& rng);

/// Draws N/2 independent slab normals. N must be an even integer with
/// N/2 >= n. Unbounded draws are flagged, never resampled.
SlabPolytope realize(int n, std::int64_t facets, double t, std::uint64_t seed);

/// Same, with N = exp(params.log_N) which must be an even integer.
SlabPolytope realize(const ApproxParams& params, std::uint64_t seed);

/// rho(u) = t / max_i |<u, y_i>|; +infinity when u is orthogonal to all
/// normals.
double radial(const SlabPolytope& polytope, std::span<const double> u);

/// Radii beyond this are clipped in the volume estimators.
inline constexpr double kClipRadius = 1e6;

struct SymDiffEstimate {
  Estimate sym_diff;
  Estimate intersection_volume;  ///< |D cap P|
  Estimate union_volume;         ///< |D cup P|
  std::uint64_t clipped = 0;
  /// More than 0.1% of the directions hit the clip radius.
  bool clip_warning = false;
};

/// Delta_v(D_n, P) = |D_n| E[max(rho,1)^n - min(rho,1)^n] over M directions.
SymDiffEstimate estimate_sym_diff(const SlabPolytope& polytope, std::uint64_t samples,
                                  std::uint64_t seed);

struct SurfaceEstimate {
  Estimate surface_deviation;   ///< Delta_s(D_n, P)
  Estimate intersection_volume;  ///< |D cap P|
  Estimate union_volume;         ///< |D cup P|
  Estimate sphere_inside;        ///< |dD cap P|
  Estimate sphere_outside;       ///< |dD cap P^c|
  Estimate facets_inside;        ///< |dP cap D|
  Estimate facets_outside;       ///< |dP cap D^c|
  Estimate polytope_surface;     ///< |dP|
  std::uint64_t clipped = 0;
  bool clip_warning = false;
};

/// Surface-area deviation through the cone-volume identities
///   n |D cup P| = t |dP cap D^c| + |dD cap P^c|
///   n |D cap P| = t |dP cap D|   + |dD cap P|.
/// Throws NumericError if a recovered facet area is negative beyond 3 SE.
SurfaceEstimate estimate_surface_deviation(const SlabPolytope& polytope, std::uint64_t samples,
                                           std::uint64_t seed);

/// Frequency of |<x, y>| >= t over M uniform y, for any fixed |x| = r.
Estimate estimate_alpha(int n, double r, double t, std::uint64_t samples, std::uint64_t seed);

/// Frequency over `sets` independent draws of `slabs` normals with which a
/// fixed point at radius r lies inside every slab.
Estimate estimate_membership(int n, double r, double t, std::uint64_t slabs,
                             std::uint64_t sets, std::uint64_t seed);

/// Aggregates over independent realizations. Each value is the mean of the
/// per-realization estimates; std_error is their standard deviation over
/// sqrt(realizations), so it covers both polytope and direction sampling.
struct EnsembleEstimate {
  Estimate sym_diff;
  Estimate surface_deviation;
  Estimate inner_deficit;  ///< |D \ P|
  Estimate outer_excess;   ///< |P \ D|
  /// Per-realization |D cap P| + |D cup P| - |D_n| - (t/n)|dP|, with the
  /// volumes and the facet area taken from independent direction streams.
  Estimate cone_volume_residual;
  std::uint64_t realizations = 0;
  std::uint64_t unbounded = 0;
  std::uint64_t clip_warnings = 0;
};

struct EnsembleOptions {
  std::uint64_t realizations = 200;
  std::uint64_t samples = 20000;
  std::uint64_t seed = 1;
  bool surface = true;
  unsigned threads = 0;
};

EnsembleEstimate estimate_ensemble(int n, std::int64_t facets, double t,
                                   const EnsembleOptions& options);

}  // namespace ballslab
