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


#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "quasikp/error.hpp"
#include "quasikp/kp1d.hpp"

namespace {

using namespace qkp;
constexpr double kPi = std::numbers::pi;

TEST(Kp1dRhs, FreeParticleIsCosine) {
  const Kp1dParams p{0.0, 2.0};
  for (double k : {0.1, 0.7, 2.3}) EXPECT_DOUBLE_EQ(kp1d_rhs(k, p), std::cos(2.0 * k));
}

TEST(Kp1dRhs, CouplingDropsOutAtKLPi) {
  for (double g : {-3.0, 0.5, 10.0}) {
    const Kp1dParams p{g, 1.5};
    EXPECT_NEAR(kp1d_rhs(kPi / 1.5, p), -1.0, 1e-14);
  }
}

TEST(Kp1dRhs, QuarterPeriodValue) {
  const double L = 2.0;
  const Kp1dParams p{1.0 / L, L};
  EXPECT_NEAR(kp1d_rhs(kPi / (2.0 * L), p), 2.0 / kPi, 1e-14);
}

TEST(Kp1dRhsNegative, FreeParticleHasNoBoundBand) {
  const Kp1dParams p{0.0, 3.0};
  for (double kappa : {0.01, 0.5, 2.0}) EXPECT_GT(kp1d_rhs_negative(kappa, p), 1.0);
}

TEST(Kp1dRhsNegative, ContinuousThroughZeroEnergy) {
  const Kp1dParams p{-0.7, 2.0};
  EXPECT_NEAR(kp1d_rhs_negative(1e-7, p), kp1d_rhs(1e-7, p), 1e-10);
  EXPECT_DOUBLE_EQ(kp1d_rhs_negative(0.0, p), kp1d_rhs(0.0, p));
}

TEST(Kp1dRhsNegative, StrongAttractionGivesBoundBand) {
  const double L = 1.0;
  const Kp1dParams p{-2.0 / L, L};
  bool inside = false;
  for (int i = 1; i <= 100000 && !inside; ++i) {
    const double kappa = 5.0 * i / 100000.0;
    inside = std::abs(kp1d_rhs_negative(kappa, p)) <= 1.0;
  }
  EXPECT_TRUE(inside);
  EXPECT_LT(kp1d_bands(p, 0.0, 1).front(), 0.0);
}

TEST(Kp1dBands, FreeBandsAtHalfPi) {
  const double L = 3.0, th = kPi / 2;
  const auto e = kp1d_bands({0.0, L}, th, 4);
  ASSERT_EQ(e.size(), 4u);
  const double ks[] = {th / L, (2 * kPi - th) / L, (2 * kPi + th) / L, (4 * kPi - th) / L};
  for (int j = 0; j < 4; ++j) EXPECT_NEAR(e[j], 0.5 * ks[j] * ks[j], 1e-14);
}

TEST(Kp1dBands, LowestBandMatchesDenseScan) {
  const double L = 1.5;
  const Kp1dParams p{3.0 / L, L};
  const double hi = kPi / L;
  const int n = 100000;
  double k_scan = -1.0;
  double f_prev = kp1d_rhs(0.0, p) - 1.0;
  for (int i = 1; i <= n; ++i) {
    const double k = hi * i / n;
    const double f = kp1d_rhs(k, p) - 1.0;
    if ((f < 0.0) != (f_prev < 0.0)) {
      k_scan = k - 0.5 * hi / n;
      break;
    }
    f_prev = f;
  }
  ASSERT_GT(k_scan, 0.0);
  const double k_solver = std::sqrt(2.0 * kp1d_bands(p, 0.0, 1).front());
  EXPECT_NEAR(k_solver, k_scan, hi / n);
}

TEST(Kp1dBands, RootsSatisfyDispersion) {
  for (double g : {-1.3, 0.4, 2.5}) {
    const Kp1dParams p{g, 2.0};
    for (double th : {0.0, 0.6, 2.1, kPi}) {
      for (double e : kp1d_bands(p, th, 5)) {
        const double rhs = e >= 0.0 ? kp1d_rhs(std::sqrt(2.0 * e), p)
                                    : kp1d_rhs_negative(std::sqrt(-2.0 * e), p);
        EXPECT_NEAR(rhs, std::cos(th), 1e-9) << "g=" << g << " theta=" << th << " E=" << e;
      }
    }
  }
}

TEST(Kp1dBands, SymmetricAndPeriodicInTheta) {
  const Kp1dParams p{0.8, 2.5};
  for (double th : {0.3, 1.2, 2.9}) {
    const auto a = kp1d_bands(p, th, 4);
    const auto b = kp1d_bands(p, -th, 4);
    const auto c = kp1d_bands(p, th + 2 * kPi, 4);
    for (int j = 0; j < 4; ++j) {
      EXPECT_NEAR(a[j], b[j], 1e-12);
      EXPECT_NEAR(a[j], c[j], 1e-12);
    }
  }
}

TEST(Kp1dBands, GapsCloseLinearlyInCoupling) {
  const double L = 2.0;
  auto max_dev = [&](double g) {
    double m = 0.0;
    for (int i = 0; i <= 40; ++i) {
      const double th = kPi * i / 40.0;
      const auto e = kp1d_bands({g, L}, th, 3);
      const auto f = kp1d_bands({0.0, L}, th, 3);
      for (int j = 0; j < 3; ++j) m = std::max(m, std::abs(e[j] - f[j]));
    }
    return m;
  };
  const double d1 = max_dev(1e-3);
  const double d2 = max_dev(2e-3);
  EXPECT_LT(d1, 5e-3);
  EXPECT_NEAR(d2 / d1, 2.0, 0.05);
}

TEST(Kp1dBands, RejectsBadInput) {
  EXPECT_THROW(kp1d_bands({1.0, 0.0}, 0.0, 2), DomainError);
  EXPECT_THROW(kp1d_bands({1.0, 1.0}, 0.0, 0), DomainError);
}

TEST(G1dFromA1d, InverseRelation) {
  EXPECT_DOUBLE_EQ(g1d_from_a1d(0.5), -2.0);
  EXPECT_DOUBLE_EQ(g1d_from_a1d(-0.25), 4.0);
  EXPECT_THROW(g1d_from_a1d(0.0), DomainError);
}

}  // namespace
