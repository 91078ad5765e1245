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

// Band structures from the roots of the quasi-1D dispersion residual, band
// edges as a function of the scattering length, and effective-mass fits.

#include <string>
#include <string_view>
#include <vector>

#include "quasikp/config.hpp"

namespace qkp {

struct DispersionPoint {
  double theta = 0.0;   ///< Bloch phase qL
  double energy = 0.0;  ///< in hbar omega
};

enum class BandModel { constant_a, energy_dependent, kp1d_reduced };

std::string_view to_string(BandModel model);

struct Band {
  int index = 0;  ///< energy rank at each theta; 0 is the lowest
  double L = 1.0;
  BandModel provenance = BandModel::constant_a;
  std::vector<DispersionPoint> points;  ///< sorted by theta over [-pi, pi]
  double edge_theta0 = 0.0;             ///< E(0)
  double edge_thetapi = 0.0;            ///< E(pi)
  double e_min = 0.0;
  double e_max = 0.0;
  /// Set when a jump between neighbouring theta points suggests the rank
  /// ordering switches branches (a crossing or avoided crossing).
  bool crossing = false;
};

/// All eigen-energies at Bloch phase theta in [e_lo, e_hi], ascending. At
/// theta = 0 or pi this includes the free states with a node on every
/// impurity, which sit exactly on poles of the residual.
std::vector<double> dispersion_roots(const ModelConfig& config, double theta, double e_lo,
                                     double e_hi);

/// The n_bands lowest bands on theta_grid_size points over [0, pi], mirrored
/// to [-pi, 0]. The search extends below the energy window until no deeper
/// bound state remains; the window maximum caps it from above.
std::vector<Band> solve_bands(const ModelConfig& config, int n_bands);

/// Bands of the 1D Kronig-Penney model with g1d = -1/a1d(Olshanii), shifted
/// by the transverse zero-point energy so they compare with solve_bands.
std::vector<Band> kp1d_reduced_bands(double L, double a, int theta_grid_size, int n_bands);

struct BandEdgeRow {
  double a = 0.0;
  int band = 0;
  double e_theta0 = 0.0;
  double e_thetapi = 0.0;
  bool overlaps_next = false;  ///< this band reaches into the next one
  bool ok = true;              ///< false when the solver failed for this a
  std::string error;
};

/// Band edges at theta = 0 and pi for each constant scattering length. A
/// solver failure marks that a-value's rows instead of aborting the sweep.
std::vector<BandEdgeRow> bands_vs_a(const ModelConfig& base, const std::vector<double>& a_values,
                                    int band_count);

struct EffectiveMassFit {
  double eps_b = 0.0;           ///< band bottom
  double inv_mass_ratio = 0.0;  ///< m / m_eff
  double A = 0.0;               ///< q^4 coefficient
  double B = 0.0;               ///< q^6 coefficient
  double rms_residual = 0.0;
};

/// Least squares E(q) = eps_b + (m/m_eff) q^2 / 2 + A q^4 + B q^6 over the
/// points with |theta| <= fit_fraction * pi, q = theta / L. Needs at least 20
/// such points; throws NumericalError when the fit is rank deficient.
EffectiveMassFit effective_mass(const Band& band, double fit_fraction = 0.5);

/// Rank of the band adiabatically connected to the free band: 1 when a
/// positive scattering length also binds the deep dimer band, else 0.
int free_connected_band(const ScatteringModel& model);

/// Effective mass of the free-connected band from 50 theta samples over
/// [0, fit_fraction * pi].
EffectiveMassFit lowest_band_effective_mass(const ModelConfig& config, double fit_fraction = 0.5);

}  // namespace qkp
