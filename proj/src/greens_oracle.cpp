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

#include "quasikp/greens_oracle.hpp"

#include "quasikp/error.hpp"
#include "quasikp/format.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace qkp::oracle {

namespace {

constexpr double kPi = std::numbers::pi;
// exp(-kCutoffExponent) is negligible against every quantity summed here.
constexpr double kCutoffExponent = 45.0;

int highest_open_channel(double energy) {
  return std::max(-1, static_cast<int>(std::floor((energy - 1.0) / 2.0)));
}

// Transverse channel n has threshold 2n + 1 and longitudinal energy E - 2n - 1.
double channel_energy(double energy, long n) { return energy - (2.0 * n + 1.0); }

long channel_cap(const ModeSumParams& params) {
  return params.n_max > 0 ? params.n_max : 400'000'000L;
}

}  // namespace

std::complex<double> g1d(double z, double energy, GreenBranch branch) {
  if (energy == 0.0) throw DomainError("1D Green's function is singular at E = 0");
  const double az = std::abs(z);
  if (energy < 0.0) {
    const double kappa = std::sqrt(-2.0 * energy);
    return {2.0 * std::exp(-kappa * az) / (-2.0 * kappa), 0.0};
  }
  const double k = std::sqrt(2.0 * energy);
  const std::complex<double> i(0.0, 1.0);
  switch (branch) {
    case GreenBranch::plus:
      return 2.0 * std::exp(i * (k * az)) / (2.0 * i * k);
    case GreenBranch::minus:
      return 2.0 * std::exp(-i * (k * az)) / (-2.0 * i * k);
    case GreenBranch::feynman:
      break;
  }
  return {2.0 * std::sin(k * az) / (2.0 * k), 0.0};
}

OnAxisGreen g3d_onaxis(double z, double energy, const ModeSumParams& params) {
  if (z == 0.0) throw DomainError("coincident points: on-axis Green's function diverges at z = 0");
  const double az = std::abs(z);
  const int n_star = highest_open_channel(energy);
  OnAxisGreen out;
  for (int n = 0; n <= n_star; ++n) {
    const double e = channel_energy(energy, n);
    out.open += e == 0.0 ? az : g1d(az, e, GreenBranch::feynman).real();
  }
  out.open /= kPi;
  long double closed = 0.0L;
  const long cap = channel_cap(params);
  double kappa = 0.0;
  long n = n_star + 1;
  for (; n - n_star <= cap; ++n) {
    const double e = channel_energy(energy, n);
    kappa = std::sqrt(-2.0 * e);
    closed += g1d(az, e, GreenBranch::feynman).real();
    if (kappa * az > kCutoffExponent) break;
  }
  out.closed = static_cast<double>(closed / kPi);
  // Integral bound on the remaining channels, whose kappa grows like 2 sqrt(n).
  out.tail_bound = std::exp(-kappa * az) / (2.0 * kPi * az);
  return out;
}

Extrapolation extrapolate_to_zero(std::span<const double> h, std::span<const double> f) {
  if (h.size() != f.size() || h.size() < 2) {
    throw DomainError("extrapolation needs at least two matching samples");
  }
  const auto neville = [](std::span<const double> x, std::span<const double> y) {
    std::vector<double> p(y.begin(), y.end());
    const std::size_t n = p.size();
    for (std::size_t m = 1; m < n; ++m) {
      for (std::size_t i = 0; i + m < n; ++i) {
        p[i] = (x[i + m] * p[i] - x[i] * p[i + 1]) / (x[i + m] - x[i]);
      }
    }
    return p[0];
  };
  Extrapolation out;
  out.value = neville(h, f);
  out.residual = std::abs(out.value - neville(h.subspan(1), f.subspan(1)));
  return out;
}

BetaOracle beta_bruteforce(double energy, const ModeSumParams& params) {
  if (params.x_list.size() < 2) throw DomainError("beta oracle needs at least two regulators");
  const int n_star = highest_open_channel(energy);
  const long cap = channel_cap(params);
  std::vector<double> s(params.x_list.size());
  for (std::size_t i = 0; i < params.x_list.size(); ++i) {
    const double x = params.x_list[i];
    if (!(x > 0.0)) throw DomainError("regulators must be positive");
    long double sum = 0.0L;
    for (long n = 1; n <= cap; ++n) {
      const double p = std::sqrt(-2.0 * channel_energy(energy, n_star + n));
      const double px = p * x;
      sum += static_cast<long double>(std::exp(-px) * (1.0 - px) / p);
      if (px > kCutoffExponent) break;
    }
    s[i] = static_cast<double>(sum);
  }
  const auto ex = extrapolate_to_zero(params.x_list, s);
  BetaOracle out;
  out.beta = -ex.value / kPi;
  out.residual = ex.residual / kPi;
  // Open channels contribute sin(k z) / k, which vanishes at z = 0+.
  for (int n = 0; n <= n_star; ++n) {
    const double e = channel_energy(energy, n);
    if (e > 0.0) out.beta_open += g1d(0.0, e, GreenBranch::feynman).real() / kPi;
  }
  if (out.residual > 1e-6) {
    throw OracleError("beta extrapolation residual " + format_double(out.residual) +
                      " exceeds 1e-6 at E = " + format_double(energy));
  }
  return out;
}

double lambda_bruteforce(double energy, double theta, double L, const ModeSumParams& params) {
  if (!(L > 0.0)) throw DomainError("lattice spacing must be positive");
  if (params.abel_eta.size() < 2) throw DomainError("Abel extrapolation needs at least two factors");
  const int n_star = highest_open_channel(energy);

  // Open channels: conditionally convergent in M, Abel-summed.
  std::vector<double> h, open;
  for (double eta : params.abel_eta) {
    if (!(eta > 0.0 && eta < 1.0)) throw DomainError("Abel factors must lie in (0, 1)");
    const long m_max = static_cast<long>(std::ceil(kCutoffExponent / -std::log(eta)));
    long double sum = 0.0L;
    for (int n = 0; n <= n_star; ++n) {
      const double e = channel_energy(energy, n);
      double damp = 1.0;
      for (long m = 1; m <= m_max; ++m) {
        damp *= eta;
        const double z = m * L;
        const double g = e == 0.0 ? z : g1d(z, e, GreenBranch::feynman).real();
        sum += static_cast<long double>(damp * 2.0 * std::cos(m * theta) * g);
      }
    }
    h.push_back(1.0 - eta);
    open.push_back(static_cast<double>(sum / kPi));
  }
  const auto ex = extrapolate_to_zero(h, open);
  if (ex.residual > 1e-6) {
    throw OracleError("Abel extrapolation spread " + format_double(ex.residual) +
                      " exceeds 1e-6 at E = " + format_double(energy));
  }

  // Closed channels: absolutely convergent, summed directly.
  long double closed = 0.0L;
  const long cap = channel_cap(params);
  for (long n = n_star + 1; n - n_star <= cap; ++n) {
    const double e = channel_energy(energy, n);
    const double kappa = std::sqrt(-2.0 * e);
    if (kappa * L > kCutoffExponent) break;
    for (long m = 1; kappa * m * L <= kCutoffExponent; ++m) {
      closed += static_cast<long double>(2.0 * std::cos(m * theta) *
                                         g1d(m * L, e, GreenBranch::feynman).real());
    }
  }
  return ex.value + static_cast<double>(closed / kPi);
}

std::vector<OracleSample> random_oracle_samples(unsigned long long seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<OracleSample> out;
  while (static_cast<int>(out.size()) < count) {
    const OracleSample s{1.0 + 6.0 * u01(rng), kPi * u01(rng), 1.0 + 3.0 * u01(rng)};
    const int n_star = highest_open_channel(s.energy);
    const double eps = s.energy - (2.0 * n_star + 1.0);
    if (eps < 0.05 || eps > 1.95) continue;
    bool near_pole = false;
    for (int n = 0; n <= n_star; ++n) {
      const double k = std::sqrt(2.0 * channel_energy(s.energy, n));
      near_pole = near_pole || std::abs(std::cos(s.theta) - std::cos(k * s.L)) < 0.05;
    }
    if (!near_pole) out.push_back(s);
  }
  return out;
}

}  // namespace qkp::oracle
