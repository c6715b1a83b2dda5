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

#include "ballslab/random_polytope.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <string>

#include "ballslab/error.hpp"
#include "ballslab/parallel.hpp"

namespace ballslab {
namespace {

constexpr std::uint64_t kRealizeStream = 0;
constexpr std::uint64_t kVolumeStream = 1;
constexpr std::uint64_t kSurfaceStream = 2;
constexpr std::uint64_t kAlphaStream = 3;
constexpr std::uint64_t kMembershipStream = 4;

// Welford accumulator; fixed update order keeps results bit-reproducible.
class Moments {
 public:
  void add(double x) {
    ++count_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(count_);
    m2_ += d * (x - mean_);
  }
  Estimate estimate(std::uint64_t seed) const {
    Estimate e;
    e.value = mean_;
    e.samples = count_;
    e.seed = seed;
    if (count_ > 1) {
      const double variance = m2_ / static_cast<double>(count_ - 1);
      e.std_error = std::sqrt(variance / static_cast<double>(count_));
    }
    return e;
  }

 private:
  std::uint64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

template <int Dim>
double max_abs_projection_fixed(const double* normals, std::size_t count, const double* u) {
  double best = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double* y = normals + i * Dim;
    double dot = 0.0;
    for (int k = 0; k < Dim; ++k) dot += y[k] * u[k];
    best = std::max(best, std::fabs(dot));
  }
  return best;
}

double max_abs_projection(const SlabPolytope& p, const double* u) {
  const double* y = p.directions.data();
  const std::size_t count = p.slab_count();
  switch (p.n) {
    case 2: return max_abs_projection_fixed<2>(y, count, u);
    case 3: return max_abs_projection_fixed<3>(y, count, u);
    case 4: return max_abs_projection_fixed<4>(y, count, u);
    case 5: return max_abs_projection_fixed<5>(y, count, u);
    case 6: return max_abs_projection_fixed<6>(y, count, u);
    case 7: return max_abs_projection_fixed<7>(y, count, u);
    case 8: return max_abs_projection_fixed<8>(y, count, u);
    default: break;
  }
  const int n = p.n;
  double best = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    double dot = 0.0;
    for (int k = 0; k < n; ++k) dot += y[i * n + k] * u[k];
    best = std::max(best, std::fabs(dot));
  }
  return best;
}

bool spans_space(int n, const std::vector<double>& normals) {
  const std::size_t count = normals.size() / static_cast<std::size_t>(n);
  if (count < static_cast<std::size_t>(n)) return false;
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < count; ++i) {
    Eigen::Map<const Eigen::VectorXd> y(normals.data() + i * n, n);
    gram.selfadjointView<Eigen::Lower>().rankUpdate(y);
  }
  gram = gram.selfadjointView<Eigen::Lower>();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return ev.minCoeff() > 1e-12 * std::max(1.0, ev.maxCoeff());
}

double clipped_radial(const SlabPolytope& p, const double* u, std::uint64_t& clipped) {
  const double m = max_abs_projection(p, u);
  const double rho = m > 0.0 ? p.t / m : std::numeric_limits<double>::infinity();
  if (rho > kClipRadius) {
    ++clipped;
    return kClipRadius;
  }
  return rho;
}

bool clip_warning(std::uint64_t clipped, std::uint64_t samples) {
  return static_cast<double>(clipped) > 1e-3 * static_cast<double>(samples);
}

}  // namespace

SlabPolytope SlabPolytope::from_directions(int n, double t, std::vector<double> normals,
                                           std::uint64_t seed) {
  detail::require(n >= 2, "SlabPolytope: dimension must be at least 2");
  detail::require(t > 0.0 && t < 1.0, "SlabPolytope: t must lie in (0, 1)");
  detail::require(!normals.empty() && normals.size() % static_cast<std::size_t>(n) == 0,
                  "SlabPolytope: normals must be a non-empty multiple of n");
  for (std::size_t i = 0; i < normals.size(); i += n) {
    double norm2 = 0.0;
    for (int k = 0; k < n; ++k) norm2 += normals[i + k] * normals[i + k];
    detail::require(norm2 > 0.0, "SlabPolytope: zero normal");
    const double inv = 1.0 / std::sqrt(norm2);
    for (int k = 0; k < n; ++k) normals[i + k] *= inv;
  }
  SlabPolytope p;
  p.n = n;
  p.t = t;
  p.directions = std::move(normals);
  p.seed = seed;
  p.bounded = spans_space(n, p.directions);
  return p;
}

void sample_direction(CounterRng& rng, std::span<double> out) {
  detail::require(out.size() >= 2, "sample_direction: dimension must be at least 2");
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (double& x : out) {
      x = rng.normal();
      norm2 += x * x;
    }
  } while (norm2 == 0.0);
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& x : out) x *= inv;
}

std::vector<double> sample_direction(int n, CounterRng& rng) {
  detail::require(n >= 2, "sample_direction: dimension must be at least 2");
  std::vector<double> u(static_cast<std::size_t>(n));
  sample_direction(rng, u);
  return u;
}

SlabPolytope realize(int n, std::int64_t facets, double t, std::uint64_t seed) {
  detail::require(n >= 2, "realize: dimension must be at least 2");
  detail::require(t > 0.0 && t < 1.0, "realize: t must lie in (0, 1)");
  detail::require(facets > 0 && facets % 2 == 0, "realize: facet count must be even");
  detail::require(facets / 2 >= n, "realize: need N/2 >= n slabs");

  const auto slabs = static_cast<std::size_t>(facets / 2);
  SlabPolytope p;
  p.n = n;
  p.t = t;
  p.seed = seed;
  p.directions.resize(slabs * static_cast<std::size_t>(n));
  CounterRng rng = CounterRng::stream(seed, kRealizeStream);
  for (std::size_t i = 0; i < slabs; ++i) {
    sample_direction(rng, std::span<double>(p.directions.data() + i * n, n));
  }
  p.bounded = spans_space(n, p.directions);
  return p;
}

SlabPolytope realize(const ApproxParams& params, std::uint64_t seed) {
  params.validate();
  const double facets = params.facets();
  detail::require(facets < 9.0e15, "realize: facet budget too large to realize");
  const auto rounded = static_cast<std::int64_t>(std::llround(facets));
  detail::require(std::fabs(facets - static_cast<double>(rounded)) <= 1e-6 * facets,
                  "realize: N must be an integer");
  return realize(params.n, rounded, params.t, seed);
}

double radial(const SlabPolytope& polytope, std::span<const double> u) {
  detail::require(u.size() == static_cast<std::size_t>(polytope.n),
                  "radial: direction has wrong dimension");
  const double m = max_abs_projection(polytope, u.data());
  return m > 0.0 ? polytope.t / m : std::numeric_limits<double>::infinity();
}

SymDiffEstimate estimate_sym_diff(const SlabPolytope& polytope, std::uint64_t samples,
                                  std::uint64_t seed) {
  detail::require(samples >= 1, "estimate_sym_diff: need at least one sample");
  const int n = polytope.n;
  const double volume = BallGeometry::of(n).volume();
  CounterRng rng = CounterRng::stream(seed, kVolumeStream);
  std::vector<double> u(static_cast<std::size_t>(n));

  Moments diff, inter, uni;
  SymDiffEstimate out;
  for (std::uint64_t s = 0; s < samples; ++s) {
    sample_direction(rng, u);
    const double rho = clipped_radial(polytope, u.data(), out.clipped);
    const double power = std::pow(rho, n);
    const double lo = rho < 1.0 ? power : 1.0;
    const double hi = rho < 1.0 ? 1.0 : power;
    diff.add(volume * (hi - lo));
    inter.add(volume * lo);
    uni.add(volume * hi);
  }
  out.sym_diff = diff.estimate(seed);
  out.intersection_volume = inter.estimate(seed);
  out.union_volume = uni.estimate(seed);
  out.clip_warning = clip_warning(out.clipped, samples);
  return out;
}

SurfaceEstimate estimate_surface_deviation(const SlabPolytope& polytope, std::uint64_t samples,
                                           std::uint64_t seed) {
  detail::require(samples >= 1, "estimate_surface_deviation: need at least one sample");
  const int n = polytope.n;
  const double t = polytope.t;
  const BallGeometry geom = BallGeometry::of(n);
  const double volume = geom.volume();
  const double sphere = geom.surface();
  CounterRng rng = CounterRng::stream(seed, kSurfaceStream);
  std::vector<double> u(static_cast<std::size_t>(n));

  Moments deviation, inter, uni, s_in, s_out, f_in, f_out, f_all;
  SurfaceEstimate out;
  for (std::uint64_t s = 0; s < samples; ++s) {
    sample_direction(rng, u);
    const double rho = clipped_radial(polytope, u.data(), out.clipped);
    const double power = std::pow(rho, n);
    const bool inside = rho >= 1.0;  // the sphere point along u lies in P
    const double lo = inside ? 1.0 : power;
    const double hi = inside ? power : 1.0;
    const double sphere_in = inside ? sphere : 0.0;
    const double sphere_out = sphere - sphere_in;
    // Cone-volume identities, sample by sample.
    const double facet_out = (n * volume * hi - sphere_out) / t;
    const double facet_in = (n * volume * lo - sphere_in) / t;
    deviation.add((facet_out + sphere_out) - (facet_in + sphere_in));
    inter.add(volume * lo);
    uni.add(volume * hi);
    s_in.add(sphere_in);
    s_out.add(sphere_out);
    f_in.add(facet_in);
    f_out.add(facet_out);
    f_all.add(facet_in + facet_out);
  }
  out.surface_deviation = deviation.estimate(seed);
  out.intersection_volume = inter.estimate(seed);
  out.union_volume = uni.estimate(seed);
  out.sphere_inside = s_in.estimate(seed);
  out.sphere_outside = s_out.estimate(seed);
  out.facets_inside = f_in.estimate(seed);
  out.facets_outside = f_out.estimate(seed);
  out.polytope_surface = f_all.estimate(seed);
  out.clip_warning = clip_warning(out.clipped, samples);

  for (const Estimate* area : {&out.facets_inside, &out.facets_outside}) {
    if (area->value < -3.0 * area->std_error) {
      throw NumericError("estimate_surface_deviation: negative facet area " +
                         std::to_string(area->value));
    }
  }
  return out;
}

Estimate estimate_alpha(int n, double r, double t, std::uint64_t samples, std::uint64_t seed) {
  detail::require(n >= 2, "estimate_alpha: dimension must be at least 2");
  detail::require(r > 0.0 && t > 0.0 && t < 1.0, "estimate_alpha: need r > 0, t in (0, 1)");
  detail::require(samples >= 1, "estimate_alpha: need at least one sample");
  Moments hits;
  if (r <= t) {
    for (std::uint64_t s = 0; s < samples; ++s) hits.add(0.0);
    return hits.estimate(seed);
  }
  CounterRng rng = CounterRng::stream(seed, kAlphaStream);
  std::vector<double> y(static_cast<std::size_t>(n));
  for (std::uint64_t s = 0; s < samples; ++s) {
    sample_direction(rng, y);
    hits.add(std::fabs(r * y[0]) >= t ? 1.0 : 0.0);
  }
  return hits.estimate(seed);
}

Estimate estimate_membership(int n, double r, double t, std::uint64_t slabs, std::uint64_t sets,
                             std::uint64_t seed) {
  detail::require(n >= 2, "estimate_membership: dimension must be at least 2");
  detail::require(r > 0.0 && t > 0.0 && t < 1.0, "estimate_membership: need r > 0, t in (0, 1)");
  detail::require(slabs >= 1 && sets >= 1, "estimate_membership: need slabs, sets >= 1");
  CounterRng rng = CounterRng::stream(seed, kMembershipStream);
  std::vector<double> y(static_cast<std::size_t>(n));
  Moments inside;
  for (std::uint64_t s = 0; s < sets; ++s) {
    // Stop at the first slab the point leaves; the draw sequence stays a
    // deterministic function of the seed.
    bool in = true;
    for (std::uint64_t i = 0; i < slabs && in; ++i) {
      sample_direction(rng, y);
      in = std::fabs(r * y[0]) <= t;
    }
    inside.add(in ? 1.0 : 0.0);
  }
  return inside.estimate(seed);
}

EnsembleEstimate estimate_ensemble(int n, std::int64_t facets, double t,
                                   const EnsembleOptions& options) {
  detail::require(options.realizations >= 2, "estimate_ensemble: need at least two realizations");
  const double volume = BallGeometry::of(n).volume();

  struct Slot {
    bool bounded = false;
    bool warned = false;
    double sym_diff = 0.0;
    double surface = 0.0;
    double inner = 0.0;
    double outer = 0.0;
    double residual = 0.0;
  };
  std::vector<Slot> slots(options.realizations);

  parallel_for(
      options.realizations,
      [&](std::size_t k) {
        const std::uint64_t seed = derive_seed(options.seed, k);
        const SlabPolytope p = realize(n, facets, t, seed);
        Slot& slot = slots[k];
        slot.bounded = p.bounded;
        if (!p.bounded) return;
        const SymDiffEstimate v = estimate_sym_diff(p, options.samples, seed);
        slot.sym_diff = v.sym_diff.value;
        slot.inner = volume - v.intersection_volume.value;
        slot.outer = v.union_volume.value - volume;
        slot.warned = v.clip_warning;
        if (options.surface) {
          const SurfaceEstimate s = estimate_surface_deviation(p, options.samples, seed);
          slot.surface = s.surface_deviation.value;
          slot.residual = v.intersection_volume.value + v.union_volume.value - volume -
                          (t / n) * s.polytope_surface.value;
          slot.warned = slot.warned || s.clip_warning;
        }
      },
      options.threads);

  Moments sym, surf, inner, outer, residual;
  EnsembleEstimate out;
  out.realizations = options.realizations;
  for (const Slot& slot : slots) {
    if (!slot.bounded) {
      ++out.unbounded;
      continue;
    }
    if (slot.warned) ++out.clip_warnings;
    sym.add(slot.sym_diff);
    inner.add(slot.inner);
    outer.add(slot.outer);
    if (options.surface) {
      surf.add(slot.surface);
      residual.add(slot.residual);
    }
  }
  out.sym_diff = sym.estimate(options.seed);
  out.inner_deficit = inner.estimate(options.seed);
  out.outer_excess = outer.estimate(options.seed);
  out.surface_deviation = surf.estimate(options.seed);
  out.cone_volume_residual = residual.estimate(options.seed);
  return out;
}

}  // namespace ballslab
