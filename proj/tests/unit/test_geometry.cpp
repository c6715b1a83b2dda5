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

// Pointwise geometry: examples with frozen high-precision references
// (tests/oracles/special_oracle.py, expectation_oracle.py) followed by
// property sweeps over seeded random inputs.

#include "ballslab/geometry.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ballslab/error.hpp"
#include "ballslab/rng.hpp"

namespace ballslab {
namespace {

constexpr double kPi = std::numbers::pi;

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

// ---------------------------------------------------------------------------
// Ball volumes.

TEST(BallLogVolume, LowDimensionsAreClosedForm) {
  EXPECT_NEAR(ball_log_volume(1), std::log(2.0), 1e-15);
  EXPECT_NEAR(ball_log_volume(2), std::log(kPi), 1e-15);
  EXPECT_NEAR(ball_log_volume(3), std::log(4.0 * kPi / 3.0), 1e-15);
}

TEST(BallLogVolume, HighDimensionsMatchReference) {
  EXPECT_NEAR(ball_log_volume(100), -91.24127265930302336, 1e-12);
  EXPECT_LT(rel(ball_log_volume(1000), -2038.9655155354559973), 1e-13);
}

TEST(BallLogVolume, RejectsZeroDimension) { EXPECT_THROW(ball_log_volume(0), InvalidArgument); }

TEST(BallGeometry, SurfaceIsDimensionTimesVolume) {
  for (int n = 2; n <= 500; ++n) {
    const BallGeometry g = BallGeometry::of(n);
    EXPECT_NEAR(g.log_surf_n, std::log(double(n)) + g.log_vol_n, 1e-12 * std::fabs(g.log_surf_n) + 1e-15);
    EXPECT_NEAR(g.log_vol_n_minus_1, ball_log_volume(n - 1), 0.0);
  }
}

TEST(BallGeometry, ConsecutiveVolumeRatioScalesLikeInverseRootN) {
  for (int n = 2; n <= 5000; ++n) {
    const BallGeometry g = BallGeometry::of(n);
    const double ratio = std::exp(g.log_vol_n - g.log_vol_n_minus_1);
    const double root = std::sqrt(double(n));
    EXPECT_GE(ratio, 1.0 / root) << n;
    EXPECT_LE(ratio, 3.0 / root) << n;
  }
}

TEST(BallGeometry, HalfChordIntegralRelatesVolumes) {
  for (int n : {2, 3, 10, 100}) {
    const BallGeometry g = BallGeometry::of(n);
    EXPECT_NEAR(g.log_half_chord_integral(), std::log(cap_integral(n, 0.0)), 1e-12);
  }
}

// ---------------------------------------------------------------------------
// Parameters.

TEST(ApproxParams, ValidateRejectsOutOfRange) {
  EXPECT_THROW(ApproxParams::with_width(4, std::log(100.0), 0.0), InvalidArgument);
  EXPECT_THROW(ApproxParams::with_width(4, std::log(100.0), 1.0), InvalidArgument);
  EXPECT_THROW(ApproxParams::with_width(4, std::log(100.0), 0.5, 0.0), InvalidArgument);
  EXPECT_THROW(ApproxParams::with_width(4, std::log(7.0), 0.5), InvalidArgument);
  EXPECT_NO_THROW(ApproxParams::with_width(4, std::log(8.0), 0.5));
}

TEST(ApproxParams, AnalyticWidthSatisfiesDefiningIdentity) {
  CounterRng rng(11);
  for (int i = 0; i < 300; ++i) {
    const int n = 2 + static_cast<int>(rng.uniform() * 200);
    const double log_N = n * std::log(double(n)) * (0.2 + rng.uniform());
    const double gamma = 0.1 + 2.0 * rng.uniform();
    const BallGeometry g = BallGeometry::of(n);
    ApproxParams p;
    try {
      p = ApproxParams::analytic(n, std::max(log_N, std::log(2.0 * n)), gamma);
    } catch (const FacetBudgetError&) {
      continue;
    }
    const double term = std::exp(2.0 / (n - 1) *
                                 (std::log(gamma) + g.log_surf_n - p.log_N - g.log_vol_n_minus_1));
    EXPECT_NEAR(p.t * p.t + term, 1.0, 1e-12) << n;
  }
}

TEST(ApproxParams, DerivedScales) {
  const ApproxParams p = ApproxParams::analytic(5, std::log(1e5));
  EXPECT_NEAR(p.facets(), 1e5, 1e-9);
  EXPECT_NEAR(p.rate(), std::pow(1e5, -0.5), 1e-15);
  EXPECT_NEAR(p.delta(), std::pow(1e5, -0.5) / 2.0, 1e-15);
}

// ---------------------------------------------------------------------------
// Cap integral.

TEST(CapIntegral, ClosedForms) {
  EXPECT_NEAR(cap_integral(2, 0.0), kPi / 4.0, 1e-15);
  EXPECT_NEAR(cap_integral(3, 0.5), 5.0 / 24.0, 1e-15);
  EXPECT_NEAR(cap_integral(7, 0.3), 0.1827161, 1e-15);
  EXPECT_EQ(cap_integral(5, 1.0), 0.0);
}

TEST(CapIntegral, MatchesReference) {
  EXPECT_LT(rel(cap_integral(50, 0.9), 8.80039113240956014e-21), 1e-13);
  EXPECT_LT(rel(cap_integral(200, 0.5), 2.7245319802003466178e-15), 1e-13);
  EXPECT_LT(rel(log_cap_integral(1000, 0.99), -1967.3750160852314478), 1e-13);
}

TEST(CapIntegral, MatchesBruteForceRiemannSum) {
  // Midpoint rule with 10^7 nodes, Neumaier-summed.
  const int nodes = 10'000'000;
  const double a = 0.9, h = (1.0 - a) / nodes;
  double sum = 0.0, comp = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double x = a + (i + 0.5) * h;
    const double v = std::pow((1.0 - x) * (1.0 + x), 24.5);
    const double s = sum + v;
    comp += std::fabs(sum) >= std::fabs(v) ? (sum - s) + v : (v - s) + sum;
    sum = s;
  }
  EXPECT_LT(rel(cap_integral(50, a), (sum + comp) * h), 1e-9);
}

TEST(CapIntegral, TwoIndependentPathsAgree) {
  for (int n = 2; n <= 200; ++n) {
    for (double a : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99}) {
      const double beta = cap_integral(n, a);
      const QuadratureResult quad = cap_integral_quadrature(n, a);
      ASSERT_TRUE(quad.converged);
      EXPECT_LT(rel(beta, quad.value), 1e-11) << "n=" << n << " a=" << a;
    }
  }
}

TEST(CapIntegral, RejectsLimitOutsideUnitInterval) {
  EXPECT_THROW(cap_integral(3, -0.1), InvalidArgument);
  EXPECT_THROW(cap_integral(3, 1.1), InvalidArgument);
  EXPECT_THROW(cap_integral_quadrature(3, 1.5), InvalidArgument);
}

// ---------------------------------------------------------------------------
// Exit probability.

TEST(Alpha, Examples) {
  EXPECT_NEAR(alpha(BallGeometry::of(2), 1.0, 1.0 / std::sqrt(2.0)), 0.5, 1e-15);
  EXPECT_NEAR(alpha(BallGeometry::of(3), 1.0, 0.9), 0.1, 1e-15);
  for (int n : {2, 5, 50}) EXPECT_EQ(alpha(BallGeometry::of(n), 0.5, 0.9), 0.0);
}

TEST(Alpha, MatchesReference) {
  EXPECT_LT(rel(alpha(BallGeometry::of(5), 1.1, 0.9), 0.046581517655897844), 1e-13);
  EXPECT_LT(rel(alpha(BallGeometry::of(8), 1.0, 0.95), 8.7625239650862554e-5), 1e-13);
  EXPECT_LT(rel(alpha(BallGeometry::of(12), 0.99, 0.5), 0.078338171762916598), 1e-13);
  EXPECT_LT(rel(alpha(BallGeometry::of(50), 1.0, 0.3), 0.032447778616748225), 1e-13);
}

TEST(Alpha, RejectsBadArguments) {
  const BallGeometry g = BallGeometry::of(3);
  EXPECT_THROW(alpha(g, 1.0, 0.0), InvalidArgument);
  EXPECT_THROW(alpha(g, 1.0, 1.0), InvalidArgument);
  EXPECT_THROW(alpha(g, 0.0, 0.5), InvalidArgument);
}

TEST(AlphaProperty, ClosedFormsInTwoAndThreeDimensions) {
  const BallGeometry g2 = BallGeometry::of(2), g3 = BallGeometry::of(3);
  CounterRng rng(21);
  for (int i = 0; i < 2000; ++i) {
    const double t = 0.001 + 0.998 * rng.uniform();
    const double r = t * (1.0 + 20.0 * rng.uniform());
    EXPECT_NEAR(alpha(g2, r, t), 2.0 * std::acos(t / r) / kPi, 1e-12) << r << " " << t;
    EXPECT_NEAR(alpha(g3, r, t), 1.0 - t / r, 1e-12) << r << " " << t;
  }
}

TEST(AlphaProperty, MonotoneInRadiusAndWidth) {
  CounterRng rng(22);
  for (int i = 0; i < 300; ++i) {
    const int n = 2 + static_cast<int>(rng.uniform() * 100);
    const BallGeometry g = BallGeometry::of(n);
    const double t = 0.05 + 0.94 * rng.uniform();
    double previous = 0.0;
    for (double r = t; r < 50.0; r *= 1.07) {
      const double a = alpha(g, r, t);
      EXPECT_GE(a, previous) << n << " " << r << " " << t;
      EXPECT_LE(alpha(g, r, std::min(0.999, t * 1.01)), a + 1e-15);
      previous = a;
    }
  }
}

TEST(AlphaProperty, TendsToOneFarAway) {
  for (int n : {2, 4, 10, 40}) {
    const BallGeometry g = BallGeometry::of(n);
    EXPECT_GT(alpha(g, 1e8, 0.9), 1.0 - 1e-6) << n;
  }
}

TEST(AlphaProperty, ComplementCarriesFullPrecision) {
  CounterRng rng(23);
  for (int i = 0; i < 500; ++i) {
    const int n = 2 + static_cast<int>(rng.uniform() * 300);
    const double t = 0.01 + 0.98 * rng.uniform();
    const double r = t * (1.0 + 3.0 * rng.uniform());
    const ExitProbability e = exit_probability(BallGeometry::of(n), r, t);
    EXPECT_NEAR(e.alpha + e.complement, 1.0, 1e-14);
    EXPECT_NEAR(std::exp(e.log_alpha), e.alpha, 1e-14 * std::max(e.alpha, 1e-300));
    EXPECT_NEAR(std::exp(e.log_complement), e.complement, 1e-14);
  }
}

TEST(AlphaProperty, LogDomainBelowUnderflow) {
  // alpha ~ 1e-855 at n = 1000: only the log is representable.
  const ExitProbability e = exit_probability(BallGeometry::of(1000), 1.0, 0.99);
  EXPECT_EQ(e.alpha, 0.0);
  EXPECT_TRUE(std::isfinite(e.log_alpha));
  EXPECT_LT(e.log_alpha, -1900.0);
}

// ---------------------------------------------------------------------------
// Width and membership.

TEST(SlabWidth, Examples) {
  EXPECT_NEAR(slab_width(BallGeometry::of(3), std::log(100.0), kLn2), 0.9860396101463684038,
              1e-15);
  EXPECT_NEAR(slab_width(BallGeometry::of(10), 10 * std::log(10.0), kLn2),
              0.99563772597605244029, 1e-12);
}

TEST(SlabWidth, IncreasesToOneWithN) {
  const BallGeometry g = BallGeometry::of(3);
  double previous = 0.0;
  for (double log_N = std::log(10.0); log_N < 700.0; log_N += 3.0) {
    const double t = slab_width(g, log_N, kLn2);
    // Strictly increasing until t rounds to 1.
    if (t < 1.0) EXPECT_GT(t, previous);
    else EXPECT_GE(t, previous);
    previous = t;
  }
  EXPECT_NEAR(previous, 1.0, 1e-12);
}

TEST(SlabWidth, DefectAvoidsCancellation) {
  const BallGeometry g = BallGeometry::of(3);
  const double defect = slab_width_defect(g, 600.0, kLn2);
  EXPECT_GT(defect, 0.0);
  EXPECT_NEAR(defect, kLn2 * 4.0 * std::exp(-600.0), 1e-12 * defect);
}

TEST(SlabWidth, SignalsTooFewFacets) {
  EXPECT_THROW(slab_width(BallGeometry::of(3), std::log(2.0), kLn2), FacetBudgetError);
  EXPECT_THROW(ApproxParams::analytic(3, std::log(2.0)), InvalidArgument);
}

TEST(Membership, InsideTheInnerBallIsCertain) {
  const ApproxParams p = ApproxParams::analytic(6, std::log(1e6));
  const BallGeometry g = BallGeometry::of(6);
  EXPECT_EQ(membership_log_prob(g, p, 0.5 * p.t), 0.0);
  EXPECT_EQ(membership_log_prob(g, p, p.t), 0.0);
  EXPECT_EQ(membership_log_mass(g, p, p.t), kNegInf);
}

TEST(Membership, MatchesReferenceAtHugeN) {
  const ApproxParams p4 = ApproxParams::analytic(4, 4 * std::log(10.0));
  EXPECT_LT(rel(membership_log_prob(BallGeometry::of(4), p4, 1.0), -0.69418414044944020613),
            1e-12);

  const ApproxParams p = ApproxParams::analytic(40, 40 * std::log(40.0));
  const BallGeometry g = BallGeometry::of(40);
  EXPECT_LT(rel(membership_log_prob(g, p, 1.0), -0.69334003231432108209), 1e-10);
  EXPECT_LT(rel(membership_log_prob(g, p, 0.9999), -0.00019853497329541813651), 1e-9);
  EXPECT_LT(rel(membership_log_prob(g, p, 1.0001), -214.173408297693817), 1e-9);
}

TEST(Membership, MassIsLogOfNegatedLogProb) {
  const ApproxParams p = ApproxParams::analytic(10, 10 * std::log(10.0));
  const BallGeometry g = BallGeometry::of(10);
  for (double r : {0.999, 1.0, 1.01, 1.5, 3.0}) {
    const double lp = membership_log_prob(g, p, r);
    EXPECT_NEAR(-std::exp(membership_log_mass(g, p, r)), lp, 1e-13 * std::fabs(lp)) << r;
  }
}

TEST(Membership, CalibratedWidthGivesExpMinusGammaAtSphere) {
  // (1 - alpha)^{N/2} -> e^{-gamma} at r = 1 as n grows.
  for (int n : {20, 40, 80}) {
    const ApproxParams p = ApproxParams::analytic(n, n * std::log(double(n)));
    EXPECT_NEAR(membership_log_prob(BallGeometry::of(n), p, 1.0), -kLn2, 2.0 / n) << n;
  }
}

// ---------------------------------------------------------------------------
// Asymptotics and bounds on alpha.

TEST(AlphaAsymptotic, LeadingConstantAtSphere) {
  const ApproxParams p = ApproxParams::analytic(20, 20 * std::log(20.0));
  const AsymptoticAlpha a = alpha_asymptotic(BallGeometry::of(20), p, 1.0);
  EXPECT_NEAR(a.log_value, std::log(2.0 * kLn2) - p.log_N, 1e-12);
  EXPECT_TRUE(a.in_validity_window);
}

TEST(AlphaAsymptotic, RatioWithinBandAndShrinking) {
  double previous = 1.0;
  for (int n : {10, 20, 40}) {
    const ApproxParams p = ApproxParams::analytic(n, n * std::log(double(n)));
    const BallGeometry g = BallGeometry::of(n);
    const ExitProbability exact = exit_probability(g, 1.0, p.t);
    const AsymptoticAlpha approx = alpha_asymptotic(g, p, 1.0);
    const double deviation = std::fabs(std::expm1(exact.log_alpha - approx.log_value));
    EXPECT_LE(deviation, 5.0 / std::sqrt(double(n))) << n;
    EXPECT_LE(deviation, previous) << n;
    previous = deviation;
  }
}

TEST(AlphaAsymptotic, FlagsRadiiOutsideWindow) {
  const ApproxParams p = ApproxParams::analytic(20, 20 * std::log(20.0));
  const BallGeometry g = BallGeometry::of(20);
  EXPECT_TRUE(alpha_asymptotic(g, p, 1.0 + 0.5 * p.delta()).in_validity_window);
  EXPECT_FALSE(alpha_asymptotic(g, p, 1.0 + 2.0 * p.delta()).in_validity_window);
}

TEST(AlphaTailBound, Examples) {
  EXPECT_GE(alpha(BallGeometry::of(4), 16.0, 0.99),
            alpha_tail_lower_bound(BallGeometry::of(4), 16.0, 0.99));
  const BallGeometry g10 = BallGeometry::of(10);
  for (double t : {0.9, 0.99, 0.999}) {
    EXPECT_GE(alpha(g10, 200.0, t), alpha_tail_lower_bound(g10, 200.0, t)) << t;
  }
  EXPECT_GT(alpha_tail_lower_bound(g10, 1e12, 0.9), 1.0 - 1e-10);
  EXPECT_THROW(alpha_tail_lower_bound(g10, 99.0, 0.9), InvalidArgument);
}

TEST(AlphaTailBound, HoldsOnRandomGrid) {
  CounterRng rng(31);
  for (int i = 0; i < 1000; ++i) {
    const int n = 2 + static_cast<int>(rng.uniform() * 60);
    const BallGeometry g = BallGeometry::of(n);
    const double r = n * n * std::exp(6.0 * rng.uniform());
    const double t = 1.0 - std::exp(-12.0 * rng.uniform());
    if (!(t < 1.0)) continue;
    EXPECT_GE(alpha(g, r, t), alpha_tail_lower_bound(g, r, t)) << n << " " << r << " " << t;
  }
}

TEST(CapLeadingTerm, Examples) {
  EXPECT_LE(cap_leading_term(100, 0.9).relative_error, 0.1);
  EXPECT_GE(cap_leading_term(10, 0.8).relative_error,
            50.0 * cap_leading_term(1000, 0.8).relative_error);
  EXPECT_LT(cap_leading_term(50, 1.0 - 1e-9).value, 1e-200);
  EXPECT_THROW(cap_leading_term(10, 0.6), InvalidArgument);
  EXPECT_THROW(cap_leading_term(10, 1.0), InvalidArgument);
}

TEST(CapLeadingTerm, RelativeErrorBelowTenOverN) {
  for (int n = 10; n <= 1000; ++n) {
    for (double a : {0.7, 0.8, 0.9}) {
      EXPECT_LE(cap_leading_term(n, a).relative_error, 10.0 / n) << n << " " << a;
    }
  }
}

TEST(CapConeDominance, CapIsSmallNearSphereForLargeBudgets) {
  for (int n : {10, 20, 40, 80}) {
    const ApproxParams p = ApproxParams::analytic(n, n * std::log(double(n)));
    for (double s : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
      const double r = 1.0 + s * p.delta();
      const double a = p.t / r;
      const double cone = a / n * std::pow((1.0 - a) * (1.0 + a), 0.5 * (n - 1));
      EXPECT_LE(cap_integral(n, a), kDominanceConstant / (double(n) * n) * cone)
          << n << " " << r;
    }
  }
}

}  // namespace
}  // namespace ballslab
