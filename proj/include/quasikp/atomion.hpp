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

// Atom-ion interaction: the cut-off regularized polarization potential
// V(r) = -C4 / (r^2 + b^2)^2, its closed-form scattering length, bound-state
// thresholds, and Numerov phase shifts. Units: 2m = hbar = R* = 1, so E* = 1
// and C4 = 1.

#include <iosfwd>
#include <span>
#include <vector>

namespace qkp {

struct RegularizedPotential {
  double b = 1.0;  ///< cut-off radius in R*

  double operator()(double r) const {
    const double s = r * r + b * b;
    return -1.0 / (s * s);
  }
  /// |V(0)| = 1 / b^4.
  double depth() const { return 1.0 / (b * b * b * b); }
};

struct ScatteringLength {
  double value = 0.0;  ///< in R*; +-infinity exactly at a bound-state threshold
  bool at_resonance = false;
};

/// Closed-form zero-energy scattering length of the regularized potential.
ScatteringLength a_of_b(double b);

/// b_n = 1 / sqrt(4 n^2 - 1): at b = b_n the n-th bound state appears.
double bound_state_threshold(int n);

/// Number of s-wave bound states supported for cut-off b (b_{n+1} < b < b_n
/// gives n; b > b_1 gives 0).
int bound_state_count(double b);

/// Inverts a_of_b inside the window supporting exactly `bound_states` bound
/// states, where a(b) increases monotonically from -inf to +inf.
double b_for_scattering_length(double a0, int bound_states);

struct RadialGrid {
  double step = 0.0;   ///< initial Numerov step; 0 selects it from the potential depth
  double r_max = 0.0;  ///< outer matching radius; 0 selects it from k
};

struct RadialScattering {
  double k = 0.0;       ///< wavenumber in 1/R*
  double delta0 = 0.0;  ///< s-wave phase shift, reduced to (-pi/2, pi/2]
  double a_eff = 0.0;   ///< -tan(delta0) / k in R*
};

/// s-wave phase shift from Numerov integration, checked by halving the step.
/// Throws GridError when the two grids disagree by more than 1e-6 rad.
RadialScattering numerov_delta0(const RegularizedPotential& pot, double k, RadialGrid grid = {});

struct ZeroEnergySolution {
  double scattering_length = 0.0;  ///< in R*
  int nodes = 0;                   ///< zeros of u(r) on (0, inf)
};

/// Zero-energy solution matched to the exact -1/r^4 tail solutions
/// r sin(1/r) and r cos(1/r). Its node count equals the bound-state count.
ZeroEnergySolution zero_energy_solution(const RegularizedPotential& pot);

/// a(k -> 0) from a quadratic fit of numerov_delta0 at k = 0.005 ... 0.02.
double a_zero_energy_extrapolated(const RegularizedPotential& pot);

/// Low-energy expansion a0 + (pi/3) k. Warns when k R* > 0.3.
double a_low_energy(double a0, double k);

/// Energies (in E*) of the poles of a(E) inside [e_lo, e_hi], located by
/// scanning `samples` points and bisecting to 1e-6 E*.
std::vector<double> find_resonances(const RegularizedPotential& pot, double e_lo, double e_hi,
                                    int samples = 200);

/// Tabulated a(E) with a monotone cubic interpolant in k = sqrt(E).
///
/// Each pole of a(E) splits the table into independent segments; the interval
/// between the two nodes that bracket a pole is excluded and queries inside it
/// throw ResonanceError. A node at E = 0 carries the exact zero-energy value,
/// and six nodes below the first requested energy resolve the threshold region.
class ScatteringLengthTable {
 public:
  struct Interval {
    double lo = 0.0;
    double hi = 0.0;
  };

  ScatteringLengthTable(const RegularizedPotential& pot, std::span<const double> energies);

  /// a(E) in R* for 0 <= E <= max_energy().
  double operator()(double energy) const;

  double zero_energy_value() const { return values_.front(); }
  double max_energy() const { return energies_.back(); }
  double cutoff() const { return b_; }
  const std::vector<double>& energies() const { return energies_; }
  const std::vector<double>& phase_shifts() const { return deltas_; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& poles() const { return poles_; }
  const std::vector<Interval>& excluded() const { return excluded_; }
  bool is_excluded(double energy) const;

  /// CSV with header E_over_Estar,delta0_rad,a_over_Rstar.
  void write_csv(std::ostream& out) const;

 private:
  double b_;
  std::vector<double> energies_;
  std::vector<double> k_;
  std::vector<double> deltas_;
  std::vector<double> values_;
  std::vector<double> slopes_;         // d a / d k at each node, per segment
  std::vector<std::size_t> segment_;  // segment id of each node
  std::vector<double> poles_;
  std::vector<Interval> excluded_;
};

ScatteringLengthTable a_of_e_table(const RegularizedPotential& pot, std::span<const double> energies);

}  // namespace qkp
