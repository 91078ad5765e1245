// Copyright 2026 The quasikp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "quasikp/bands.hpp"
#include "quasikp/config.hpp"
#include "quasikp/error.hpp"
#include "quasikp/kp1d.hpp"
#include "quasikp/quasi1d.hpp"
#include "quasikp/specfun.hpp"

namespace {

using namespace qkp;
constexpr double kPi = std::numbers::pi;

ModelConfig constant_model(double L, double a, double e_min, double e_max, int grid = 17) {
  ModelConfig c;
  c.lattice_spacing = L;
  c.scattering = ConstantScattering{a};
  c.theta_grid_size = grid;
  c.energy_window = {e_min, e_max};
  return c;
}

// Free quasi-1D states 2n + 1 + k^2 / 2 with kL = theta + 2 pi j, listed independently.
std::vector<double> free_levels(double theta, double L, double e_max) {
  std::vector<double> out;
  for (int n = 0; 2 * n + 1 <= e_max; ++n) {
    for (int j = -50; j <= 50; ++j) {
      const double k = (theta + 2.0 * kPi * j) / L;
      const double e = 2.0 * n + 1.0 + 0.5 * k * k;
      if (e <= e_max) out.push_back(e);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

TEST(SolveBands, FreeBandsIncludeTransverseCopies) {
  const double L = 2.0;
  // Below E = 8 every theta has at least four levels.
  const auto bands = solve_bands(constant_model(L, 0.0, -1.0, 8.0), 4);
  ASSERT_EQ(bands.size(), 4u);
  for (std::size_t i = 0; i < bands[0].points.size(); ++i) {
    const double th = bands[0].points[i].theta;
    const auto ref = free_levels(th, L, 8.0);
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(bands[j].points[i].energy, ref[j], 1e-12);
  }
}

TEST(SolveBands, MatchesReducedKronigPenneyAtLargeSpacing) {
  const double L = 15.0, a = 0.2;
  const auto q1d = solve_bands(constant_model(L, a, -10.0, 3.0, 21), 5);
  const auto kp = kp1d_reduced_bands(L, a, 21, 4);
  const int shift = free_connected_band(ConstantScattering{a});
  ASSERT_EQ(shift, 1);
  for (int j = 0; j < 4; ++j) {
    for (std::size_t i = 0; i < kp[j].points.size(); ++i) {
      EXPECT_NEAR(q1d[j + shift].points[i].energy, kp[j].points[i].energy, 1e-3)
          << "band " << j << " theta " << kp[j].points[i].theta;
    }
  }
  // The extra lowest band is the deep molecular state.
  EXPECT_LT(q1d[0].e_max, 0.0);
}

TEST(SolveBands, ThresholdCopiesAppearAboveThree) {
  const auto config = constant_model(2.0, 0.5, -10.0, 4.0);
  const auto roots = dispersion_roots(config, 1.0, -10.0, 4.0);
  EXPECT_TRUE(std::any_of(roots.begin(), roots.end(), [](double e) { return e > 3.0; }));
  const auto bands = solve_bands(config, 8);
  EXPECT_GT(bands.back().e_max, 3.0);
}

// Away from the next threshold Lambda_e is negligible at L = 15 and the
// quasi-1D dispersion is the Kronig-Penney relation with g = -1 / a1d(E), C
// taken at the same energy. Roots carry a 1e-10 energy error, so the identity
// is checked as a sign change of the Kronig-Penney residual.
double kp_residual_energy_dependent(double e, double theta, double a, double L) {
  const double c = -hurwitz_zeta_half(0.5 * (3.0 - e));
  const double a1d = -0.5 / a * (1.0 - c * a);
  const Kp1dParams p{-1.0 / a1d, L};
  const double e1 = e - 1.0;
  const double rhs =
      e1 >= 0.0 ? kp1d_rhs(std::sqrt(2.0 * e1), p) : kp1d_rhs_negative(std::sqrt(-2.0 * e1), p);
  return rhs - std::cos(theta);
}

TEST(SolveBands, EnergyDependentKronigPenneyIdentity) {
  const double L = 15.0;
  for (double a : {-0.5, 0.2, 0.5}) {
    const auto config = constant_model(L, a, -10.0, 3.0);
    for (double th : {0.3, 1.3, 2.7}) {
      const auto roots = dispersion_roots(config, th, 0.0, 1.6);
      ASSERT_FALSE(roots.empty());
      for (double e : roots) {
        const double lo = kp_residual_energy_dependent(e - 1e-8, th, a, L);
        const double hi = kp_residual_energy_dependent(e + 1e-8, th, a, L);
        EXPECT_LT(lo * hi, 0.0) << "a=" << a << " theta=" << th << " E=" << e;
      }
    }
  }
}

TEST(SolveBands, EvenInTheta) {
  const auto bands = solve_bands(constant_model(3.0, 0.6, -10.0, 5.0), 4);
  for (const auto& b : bands) {
    const auto& p = b.points;
    for (std::size_t i = 0; i < p.size(); ++i) {
      EXPECT_EQ(p[i].theta, -p[p.size() - 1 - i].theta);
      EXPECT_EQ(p[i].energy, p[p.size() - 1 - i].energy);
    }
  }
  const auto config = constant_model(3.0, 0.6, -10.0, 5.0);
  const auto plus = dispersion_roots(config, 1.1, -5.0, 5.0);
  const auto minus = dispersion_roots(config, -1.1, -5.0, 5.0);
  ASSERT_EQ(plus.size(), minus.size());
  for (std::size_t i = 0; i < plus.size(); ++i) EXPECT_NEAR(plus[i], minus[i], 1e-9);
}

TEST(SolveBands, RootsSolveDispersion) {
  const auto config = constant_model(2.5, -0.4, -10.0, 5.0);
  for (double th : {0.2, 1.5, 2.8}) {
    for (double e : dispersion_roots(config, th, -5.0, 5.0)) {
      // Residual changes sign across each root.
      const double lo = dispersion_residual(e - 1e-8, th, config);
      const double hi = dispersion_residual(e + 1e-8, th, config);
      EXPECT_LT(lo * hi, 0.0) << "theta=" << th << " E=" << e;
    }
  }
}

// Dense scan oracle: every sign change is bisected to 1e-12; a root leaves a
// small residual there, a pole a huge one.
std::vector<double> dense_roots(const ModelConfig& config, double theta, double lo, double hi,
                                int n) {
  const auto f_at = [&](double e) {
    try {
      return dispersion_residual(e, theta, config);
    } catch (const Error&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };
  std::vector<double> out;
  double e_prev = lo;
  double f_prev = f_at(lo);
  for (int i = 1; i <= n; ++i) {
    const double e = lo + (hi - lo) * i / n;
    const double f = f_at(e);
    if (std::isnan(f)) continue;
    if (!std::isnan(f_prev) && (f < 0.0) != (f_prev < 0.0)) {
      double a = e_prev, b = e, fa = f_prev, fb = f;
      while (b - a > 1e-12) {
        const double m = 0.5 * (a + b);
        const double fm = f_at(m);
        if (std::isnan(fm)) break;
        if ((fm < 0.0) == (fa < 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
          fb = fm;
        }
      }
      if (std::max(std::abs(fa), std::abs(fb)) < 1e-3) out.push_back(0.5 * (a + b));
    }
    e_prev = e;
    f_prev = f;
  }
  return out;
}

TEST(DispersionRoots, CompleteAgainstDenseScan) {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> uL(1.0, 6.0), ua(-1.5, 1.5), ut(0.05, 3.0);
  for (int trial = 0; trial < 3; ++trial) {
    const double L = uL(rng), a = ua(rng), th = ut(rng);
    const auto config = constant_model(L, a, -10.0, 4.5);
    const double lo = -3.0, hi = 4.5;
    const auto roots = dispersion_roots(config, th, lo, hi);
    const int n = 60000;
    const auto dense = dense_roots(config, th, lo, hi, n);
    for (double d : dense) {
      const bool found = std::any_of(roots.begin(), roots.end(),
                                     [&](double r) { return std::abs(r - d) < 2.0 * (hi - lo) / n; });
      EXPECT_TRUE(found) << "L=" << L << " a=" << a << " theta=" << th << " missed E=" << d;
    }
  }
}

TEST(DispersionRoots, DecoupledFreeStatesAtZoneCentreAndEdge) {
  const double L = 3.0;
  const auto config = constant_model(L, 0.7, -10.0, 6.0);
  const double k0 = 2.0 * kPi / L;
  const auto at0 = dispersion_roots(config, 0.0, -3.0, 6.0);
  EXPECT_TRUE(std::any_of(at0.begin(), at0.end(),
                          [&](double e) { return std::abs(e - (1.0 + 0.5 * k0 * k0)) < 1e-9; }));
  const double kpi = kPi / L;
  const auto atpi = dispersion_roots(config, kPi, -3.0, 6.0);
  EXPECT_TRUE(std::any_of(atpi.begin(), atpi.end(),
                          [&](double e) { return std::abs(e - (1.0 + 0.5 * kpi * kpi)) < 1e-9; }));
}

TEST(DispersionRoots, BoundRootsForBothSigns) {
  for (double a : {0.5, -0.5}) {
    const auto r = dispersion_roots(constant_model(5.0, a, -10.0, 3.0), 0.0, -10.0, 1.0);
    EXPECT_FALSE(r.empty()) << "a=" << a;
  }
}

TEST(BandsVsA, FreeRowHasFreeEdges) {
  const double L = 5.0;
  const auto rows = bands_vs_a(constant_model(L, 0.0, -10.0, 4.0), {0.0}, 3);
  ASSERT_EQ(rows.size(), 3u);
  const auto r0 = free_levels(0.0, L, 4.0);
  const auto rpi = free_levels(kPi, L, 4.0);
  for (int j = 0; j < 3; ++j) {
    EXPECT_TRUE(rows[j].ok);
    EXPECT_NEAR(rows[j].e_theta0, r0[j], 1e-12);
    EXPECT_NEAR(rows[j].e_thetapi, rpi[j], 1e-12);
  }
}

TEST(BandsVsA, EdgesApproachFreeValues) {
  const double L = 5.0;
  const auto rows = bands_vs_a(constant_model(L, 0.0, -10.0, 4.0), {-1e-4, 1e-4}, 3);
  const auto rpi = free_levels(kPi, L, 4.0);
  // For small |a| the lowest free-connected band sits just above its free edge.
  EXPECT_NEAR(rows[0].e_thetapi, rpi[0], 1e-3);
  EXPECT_NEAR(rows[3 + 1].e_thetapi, rpi[0], 1e-3);
}

TEST(BandsVsA, NarrowerBandsAtLargeSpacing) {
  const int rank = free_connected_band(ConstantScattering{0.5});
  auto width = [&](double L) {
    const auto rows = bands_vs_a(constant_model(L, 0.0, -10.0, 6.0), {0.5}, rank + 1);
    return std::abs(rows[rank].e_thetapi - rows[rank].e_theta0);
  };
  EXPECT_LT(width(15.0), width(1.0));
}

TEST(BandsVsA, OverlapFlaggedAtSmallSpacing) {
  const auto rows = bands_vs_a(constant_model(1.0, 0.0, -10.0, 12.0), {0.5}, 4);
  EXPECT_TRUE(std::any_of(rows.begin(), rows.end(), [](const auto& r) { return r.overlaps_next; }));
}

Band synthetic_band(double L, double (*e_of_q)(double)) {
  Band b;
  b.L = L;
  for (int i = -100; i <= 100; ++i) {
    const double th = kPi * i / 100.0;
    b.points.push_back({th, e_of_q(th / L)});
  }
  return b;
}

TEST(EffectiveMass, ExactQuadraticRecovery) {
  const auto b = synthetic_band(4.0, [](double q) { return 2.0 + 0.3 * q * q; });
  const auto fit = effective_mass(b);
  EXPECT_NEAR(fit.eps_b, 2.0, 1e-12);
  EXPECT_NEAR(fit.inv_mass_ratio, 0.6, 1e-12);
  EXPECT_NEAR(fit.A, 0.0, 1e-9);
  EXPECT_NEAR(fit.B, 0.0, 1e-9);
  EXPECT_LT(fit.rms_residual, 1e-12);
}

TEST(EffectiveMass, RecoversHigherCoefficients) {
  const auto b = synthetic_band(2.0, [](double q) { return 1.0 + 0.5 * q * q - 0.1 * q * q * q * q; });
  const auto fit = effective_mass(b, 0.8);
  EXPECT_NEAR(fit.inv_mass_ratio, 1.0, 1e-10);
  EXPECT_NEAR(fit.A, -0.1, 1e-9);
}

TEST(EffectiveMass, NeedsEnoughPoints) {
  Band b;
  b.L = 1.0;
  for (int i = 0; i < 10; ++i) b.points.push_back({0.1 * i, 1.0});
  EXPECT_THROW(effective_mass(b), DomainError);
}

TEST(EffectiveMass, RankDeficientFitFails) {
  Band b;
  b.L = 1.0;
  for (int i = 0; i < 30; ++i) b.points.push_back({i % 2 == 0 ? 0.5 : -0.5, 1.0});
  EXPECT_THROW(effective_mass(b), NumericalError);
}

TEST(EffectiveMass, FreeBandHasBareMass) {
  const auto fit = lowest_band_effective_mass(constant_model(5.0, 0.0, -10.0, 3.0));
  EXPECT_NEAR(fit.inv_mass_ratio, 1.0, 1e-3);
}

TEST(EffectiveMass, NegativeAtLargeScatteringLength) {
  const auto fit = lowest_band_effective_mass(constant_model(5.0, 2.0, -10.0, 3.0));
  EXPECT_LT(fit.inv_mass_ratio, 0.0);
}

TEST(EffectiveMass, FitFractionSensitivityBounded) {
  for (double a : {-1.0, -0.5, -0.25, 0.25, 0.5, 1.0}) {
    const auto config = constant_model(5.0, a, -10.0, 3.0);
    const double m4 = lowest_band_effective_mass(config, 0.4).inv_mass_ratio;
    const double m6 = lowest_band_effective_mass(config, 0.6).inv_mass_ratio;
    EXPECT_LT(std::abs(m6 - m4), 0.05 * std::abs(m4)) << "a=" << a << " m4=" << m4 << " m6=" << m6;
  }
}

TEST(FreeConnectedBand, SkipsMolecularStateForPositiveA) {
  EXPECT_EQ(free_connected_band(ConstantScattering{0.3}), 1);
  EXPECT_EQ(free_connected_band(ConstantScattering{-0.3}), 0);
  EXPECT_EQ(free_connected_band(ConstantScattering{0.0}), 0);
}

}  // namespace
