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

#pragma once

// Quasi-1D Kronig-Penney dispersion: a row of zero-range scatterers spaced L
// along the axis of a harmonic waveguide. Units hbar = m = a_perp = 1, so
// transverse thresholds sit at E = 2n + 1.

#include <vector>

#include "quasikp/config.hpp"

namespace qkp {

/// Distance below a threshold, and to a Lambda_p pole, inside which the
/// dispersion functions refuse to evaluate.
inline constexpr double kThresholdTolerance = 1e-9;
inline constexpr double kPoleTolerance = 1e-9;

struct ChannelDecomposition {
  int n_star = -1;           ///< highest open transverse channel; -1 when none is open
  double e_threshold = -1.0; ///< 2 n_star + 1
  double epsilon = 0.0;      ///< E - e_threshold; below 2, negative deep below E = -1
  std::vector<double> open_k;  ///< k_n = 2 sqrt((E - 1)/2 - n), n = 0..n_star

  /// Decay constant of the n-th closed channel above the open ones (n >= 1).
  double closed_k(int n) const;
};

/// Splits E into open and closed channels. Throws ThresholdError when E lies
/// within kThresholdTolerance below a threshold, where C(E) diverges.
ChannelDecomposition channels(double energy);

/// C(E) = -zeta_H(1/2, 1 - epsilon/2).
double c_of_e(double energy);

/// The constant C(hbar omega) = -zeta(1/2) = 1.4603545...
double olshanii_constant();

/// Regularized on-axis closed-channel Green's function at coincidence,
/// beta(E) = C(E) / (2 pi).
double beta_of_e(double energy);

/// Open-channel lattice sum. Throws PoleError within kPoleTolerance of a pole.
double lambda_p(double energy, double theta, double L);

/// Closed-channel lattice sum, exponentially small in L.
double lambda_e(double energy, double theta, double L);

/// lambda_e with the closed-channel wavenumbers taken at E = hbar omega,
/// k_n = 2 sqrt(n).
double lambda_e_series_approx(double theta, double L);

/// -(1/2L) cos(theta) H(2L).
double lambda_e_h_approx(double theta, double L);

/// (2L / pi)(Lambda_p + Lambda_e), the lattice sum of the on-axis Green's
/// function over all images.
double lambda_of_e(double energy, double theta, double L);

/// -(1/2a)(1 - C a) with C = C(hbar omega).
double a1d_olshanii(double a);

/// 3D scattering length in a_perp at total energy `energy` (hbar omega).
double scattering_length_at(const ScatteringModel& model, double energy);

/// -(1/2a)(1 - C(E) a) with a = a(E) from the model. Throws DomainError for
/// a = 0, the free-particle limit.
double a1d_of_e(double energy, const ScatteringModel& model);

/// a1d(E) + 2L (Lambda_p + Lambda_e); zero at an eigen-energy. +inf for a
/// model with a = 0.
double dispersion_residual(double energy, double theta, const ModelConfig& config);

enum class LambdaEMode { series, h_approx };

/// a1d(Olshanii) + 2L Lambda_e(theta) for a constant-a model.
double a1d_eff(double theta, double L, const ScatteringModel& model, LambdaEMode mode);

}  // namespace qkp
