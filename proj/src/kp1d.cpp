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

#include "quasikp/kp1d.hpp"

#include "quasikp/error.hpp"
#include "quasikp/format.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace qkp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kSamplesPerInterval = 64;
constexpr int kMaxBisections = 200;

template <typename F>
double bisect(F&& f, double lo, double hi, double f_lo) {
  for (int it = 0; it < kMaxBisections; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) return mid;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = fm;
    } else {
      hi = mid;
    }
  }
  const double mid = 0.5 * (lo + hi);
  if (std::abs(f(mid)) > 1e-10) {
    throw NumericalError("Kronig-Penney root did not converge in [" + format_double(lo) + ", " +
                         format_double(hi) + "]");
  }
  return mid;
}

std::vector<double> free_bands(double theta, double L, int n_bands) {
  const double t = std::abs(std::remainder(theta, 2.0 * kPi));
  std::vector<double> out;
  for (int j = 0; static_cast<int>(out.size()) < n_bands; ++j) {
    const double k = (j % 2 == 0 ? j * kPi + t : (j + 1) * kPi - t) / L;
    out.push_back(0.5 * k * k);
  }
  return out;
}

}  // namespace

double g1d_from_a1d(double a1d) {
  if (a1d == 0.0) throw DomainError("a1d = 0 gives an infinite 1D coupling");
  return -1.0 / a1d;
}

std::vector<double> kp1d_bands(const Kp1dParams& params, double theta, int n_bands) {
  if (n_bands < 1) throw DomainError("n_bands must be at least 1");
  if (!(params.L > 0.0) || !std::isfinite(params.g1d)) {
    throw DomainError("Kronig-Penney parameters need L > 0 and finite g1d");
  }
  if (params.g1d == 0.0) return free_bands(theta, params.L, n_bands);

  const double c = std::cos(theta);
  std::vector<double> energies;

  if (1.0 + params.g1d * params.L < c) {
    // Bound band: the negative-energy continuation is monotone in kappa and
    // crosses cos(theta) exactly once.
    const auto f = [&](double kappa) { return kp1d_rhs_negative(kappa, params) - c; };
    double hi = 1.0 / params.L;
    while (f(hi) < 0.0) hi *= 2.0;
    const double kappa = bisect(f, 0.0, hi, f(0.0));
    energies.push_back(-0.5 * kappa * kappa);
  }

  const auto f = [&](double k) { return kp1d_rhs(k, params) - c; };
  std::vector<double> ks;
  if (std::abs(f(0.0)) < 1e-13) ks.push_back(0.0);
  for (int j = 0; j <= n_bands + 1; ++j) {
    const double lo = j * kPi / params.L;
    const double hi = (j + 1) * kPi / params.L;
    // At kL = (j + 1) pi the right-hand side is exactly +-1, so at theta = 0 or
    // pi the band edge is a root. Its partner can sit arbitrarily close, which
    // the geometric offsets from both ends resolve.
    if (std::abs(std::cos((j + 1) * kPi) - c) < 1e-12) ks.push_back(hi);
    std::vector<double> xs;
    for (int s = 1; s < kSamplesPerInterval; ++s) xs.push_back(lo + (hi - lo) * s / kSamplesPerInterval);
    for (int m = 4; m <= 30; ++m) {
      const double d = (hi - lo) * std::pow(10.0, -0.5 * m);
      xs.push_back(lo + d);
      xs.push_back(hi - d);
    }
    std::sort(xs.begin(), xs.end());
    double k_prev = xs.front();
    double f_prev = f(k_prev);
    for (std::size_t s = 1; s < xs.size(); ++s) {
      const double k = xs[s];
      const double fk = f(k);
      if (fk == 0.0) {
        ks.push_back(k);
      } else if (f_prev != 0.0 && (fk < 0.0) != (f_prev < 0.0)) {
        ks.push_back(bisect(f, k_prev, k, f_prev));
      }
      k_prev = k;
      f_prev = fk;
    }
  }
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end(),
                       [&](double a, double b) { return std::abs(a - b) <= 1e-9 * (1.0 + b); }),
           ks.end());
  for (double k : ks) energies.push_back(0.5 * k * k);
  if (static_cast<int>(energies.size()) < n_bands) {
    throw NumericalError("found only " + std::to_string(energies.size()) + " of " +
                         std::to_string(n_bands) + " Kronig-Penney bands");
  }
  energies.resize(n_bands);
  return energies;
}

}  // namespace qkp
