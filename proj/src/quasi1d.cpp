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

#include "quasikp/quasi1d.hpp"

#include "quasikp/atomion.hpp"
#include "quasikp/error.hpp"
#include "quasikp/format.hpp"
#include "quasikp/specfun.hpp"
#include "quasikp/units.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <variant>

namespace qkp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr long kMaxClosedTerms = 1'000'000;

// Re[1 / (1 - e^{x + i theta})] written in t = e^{-x} so it stays finite.
double closed_term_re(double x, double cos_theta) {
  const double t = std::exp(-x);
  return (t * t - t * cos_theta) / (1.0 - 2.0 * t * cos_theta + t * t);
}

// Sum over n >= 1 of Re[1/(1 - e^{k_n L + i theta})] / (k_n L).
template <typename ClosedK>
double closed_sum(ClosedK&& k_of_n, double theta, double L) {
  const double c = std::cos(theta);
  double sum = 0.0;
  for (long n = 1;; ++n) {
    const double x = k_of_n(n) * L;
    const double term = closed_term_re(x, c) / x;
    sum += term;
    // Bound on |term| independent of accidental cancellation against cos(theta).
    const double t = std::exp(-x);
    const double bound = t * (1.0 + t) / (x * (1.0 - t) * (1.0 - t));
    if (bound < 1e-14 * std::abs(sum) || bound == 0.0) break;
    if (n >= kMaxClosedTerms) {
      warn("closed-channel sum stopped after " + std::to_string(n) +
           " terms; last term " + format_double(term));
      break;
    }
  }
  return sum;
}

}  // namespace

double ChannelDecomposition::closed_k(int n) const {
  if (n < 1) throw DomainError("closed-channel index starts at 1");
  return 2.0 * std::sqrt(n - 0.5 * epsilon);
}

ChannelDecomposition channels(double energy) {
  if (!std::isfinite(energy)) throw DomainError("energy must be finite");
  ChannelDecomposition ch;
  // No channel is open below E = 1, so everything below uses n* = -1.
  ch.n_star = std::max(-1, static_cast<int>(std::floor((energy - 1.0) / 2.0)));
  ch.e_threshold = 2.0 * ch.n_star + 1.0;
  ch.epsilon = energy - ch.e_threshold;
  if (2.0 - ch.epsilon < kThresholdTolerance) {
    throw ThresholdError("energy " + format_double(energy) + " is just below threshold " +
                             format_double(ch.e_threshold + 2.0),
                         ch.n_star + 1);
  }
  ch.open_k.reserve(ch.n_star + 1);
  for (int n = 0; n <= ch.n_star; ++n) {
    ch.open_k.push_back(2.0 * std::sqrt(std::max(0.0, 0.5 * (energy - 1.0) - n)));
  }
  return ch;
}

double c_of_e(double energy) {
  const auto ch = channels(energy);
  return -hurwitz_zeta_half(1.0 - 0.5 * ch.epsilon);
}

double olshanii_constant() { return -hurwitz_zeta_half(1.0); }

double beta_of_e(double energy) { return c_of_e(energy) / (2.0 * kPi); }

double lambda_p(double energy, double theta, double L) {
  if (!(L > 0.0)) throw DomainError("lattice spacing must be positive");
  const auto ch = channels(energy);
  const double c = std::cos(theta);
  double sum = 0.0;
  for (int n = 0; n <= ch.n_star; ++n) {
    const double kl = ch.open_k[n] * L;
    const double gap = c - std::cos(kl);
    if (std::abs(gap) < kPoleTolerance) {
      throw PoleError("energy " + format_double(energy) + " sits on a pole of open channel " +
                          std::to_string(n),
                      n);
    }
    const double sinc = kl == 0.0 ? 1.0 : std::sin(kl) / kl;
    sum += 0.5 * sinc / gap;
  }
  return sum;
}

double lambda_e(double energy, double theta, double L) {
  if (!(L > 0.0)) throw DomainError("lattice spacing must be positive");
  const auto ch = channels(energy);
  return closed_sum([&](long n) { return 2.0 * std::sqrt(n - 0.5 * ch.epsilon); }, theta, L);
}

double lambda_e_series_approx(double theta, double L) {
  if (!(L > 0.0)) throw DomainError("lattice spacing must be positive");
  return closed_sum([](long n) { return 2.0 * std::sqrt(static_cast<double>(n)); }, theta, L);
}

double lambda_e_h_approx(double theta, double L) {
  if (!(L > 0.0)) throw DomainError("lattice spacing must be positive");
  return -0.5 / L * std::cos(theta) * h_series(2.0 * L);
}

double lambda_of_e(double energy, double theta, double L) {
  return 2.0 * L / kPi * (lambda_p(energy, theta, L) + lambda_e(energy, theta, L));
}

double a1d_olshanii(double a) {
  if (a == 0.0) throw DomainError("free-particle limit; dispersion handled separately");
  return -0.5 / a * (1.0 - olshanii_constant() * a);
}

double scattering_length_at(const ScatteringModel& model, double energy) {
  if (const auto* c = std::get_if<ConstantScattering>(&model)) return c->a;
  const auto& ed = std::get<EnergyDependentScattering>(model);
  if (!ed.table) throw DomainError("energy-dependent model has no table");
  const IonUnits units{ed.r_star_ratio};
  const double e_kin = ed.argument == EnergyArgument::total ? energy : energy - 1.0;
  // Below the 3D collision threshold the zero-energy value is used.
  const double a_ion =
      e_kin <= 0.0 ? ed.table->zero_energy_value() : (*ed.table)(energy_ho_to_ion(e_kin, units));
  return length_ion_to_ho(a_ion, units);
}

double a1d_of_e(double energy, const ScatteringModel& model) {
  const double a = scattering_length_at(model, energy);
  if (a == 0.0) throw DomainError("free-particle limit; dispersion handled separately");
  return -0.5 / a * (1.0 - c_of_e(energy) * a);
}

double dispersion_residual(double energy, double theta, const ModelConfig& config) {
  if (const auto* c = std::get_if<ConstantScattering>(&config.scattering); c && c->a == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  const double L = config.lattice_spacing;
  return a1d_of_e(energy, config.scattering) +
         2.0 * L * (lambda_p(energy, theta, L) + lambda_e(energy, theta, L));
}

double a1d_eff(double theta, double L, const ScatteringModel& model, LambdaEMode mode) {
  const auto* c = std::get_if<ConstantScattering>(&model);
  if (!c) throw DomainError("a1d_eff needs a constant scattering length");
  const double le =
      mode == LambdaEMode::series ? lambda_e_series_approx(theta, L) : lambda_e_h_approx(theta, L);
  return a1d_olshanii(c->a) + 2.0 * L * le;
}

}  // namespace qkp
