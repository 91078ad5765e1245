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

// Brute-force reconstructions of the Green's-function sums behind the
// quasi-1D dispersion relation. They never call the closed forms and exist to
// check them.

#include <complex>
#include <span>
#include <vector>

namespace qkp::oracle {

struct ModeSumParams {
  /// Closed-channel cutoff; 0 picks it from the smallest regulator.
  long n_max = 0;
  std::vector<double> x_list{0.1, 0.05, 0.025, 0.0125, 0.00625};
  std::vector<double> abel_eta{0.996, 0.998, 0.999, 0.9995, 0.99975};
};

enum class GreenBranch { plus, minus, feynman };

/// 1D Green's function with 2m/hbar^2 = 2. Throws DomainError for E = 0.
std::complex<double> g1d(double z, double energy, GreenBranch branch);

struct OnAxisGreen {
  double open = 0.0;        ///< channels with 2n + 1 <= E
  double closed = 0.0;      ///< closed channels up to the cutoff
  double tail_bound = 0.0;  ///< bound on the dropped closed channels
  double total() const { return open + closed; }
};

/// On-axis 3D Green's function as a sum of Feynman 1D Green's functions over
/// transverse modes, (1/pi) sum_n G1D(z | E - 2n - 1). Throws for z = 0.
OnAxisGreen g3d_onaxis(double z, double energy, const ModeSumParams& params = {});

struct Extrapolation {
  double value = 0.0;
  double residual = 0.0;  ///< change from dropping the coarsest sample
};

/// Polynomial (Neville) extrapolation of samples f(h_i) to h = 0.
Extrapolation extrapolate_to_zero(std::span<const double> h, std::span<const double> f);

struct BetaOracle {
  double beta = 0.0;
  double beta_open = 0.0;  ///< open-channel part at z = 0+, identically 0
  double residual = 0.0;
};

/// beta(E) from the exponentially regularized closed-channel sum, extrapolated
/// to zero regulator. Throws OracleError when the residual exceeds 1e-6.
BetaOracle beta_bruteforce(double energy, const ModeSumParams& params = {});

/// sum_{M >= 1} 2 cos(M theta) G3D(M L | E) summed over images directly. The
/// open channels are Abel-summed with eta^M and extrapolated to eta = 1.
/// Throws OracleError when the extrapolation spread exceeds 1e-6.
double lambda_bruteforce(double energy, double theta, double L, const ModeSumParams& params = {});

struct OracleSample {
  double energy = 0.0;
  double theta = 0.0;
  double L = 0.0;
};

/// Seeded random (E, theta, L) with E in (1, 7), theta in (0, pi), L in (1, 4),
/// kept at least 0.05 away from thresholds and Lambda_p poles.
std::vector<OracleSample> random_oracle_samples(unsigned long long seed, int count);

}  // namespace qkp::oracle
