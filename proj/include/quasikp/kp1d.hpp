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

// Textbook 1D Kronig-Penney model: a periodic array of delta barriers
// g1d * sum_j delta(z - jL), in units hbar = m = a_perp = 1 so E = k^2 / 2.

#include <cmath>
#include <vector>

namespace qkp {

struct Kp1dParams {
  double g1d = 0.0;  ///< coupling in hbar^2 / (m a_perp); negative is attractive
  double L = 1.0;    ///< lattice spacing in a_perp
};

/// cos(kL) + g sin(kL) / k, with the k = 0 limit 1 + g L.
template <typename Scalar>
Scalar kp1d_rhs(Scalar k, const Kp1dParams& p) {
  using std::cos;
  using std::sin;
  const Scalar kl = k * Scalar(p.L);
  if (k == Scalar(0)) return Scalar(1) + Scalar(p.g1d) * Scalar(p.L);
  return cos(kl) + Scalar(p.g1d) * sin(kl) / k;
}

/// cosh(kappa L) + g sinh(kappa L) / kappa, the E < 0 continuation.
template <typename Scalar>
Scalar kp1d_rhs_negative(Scalar kappa, const Kp1dParams& p) {
  using std::cosh;
  using std::sinh;
  const Scalar kl = kappa * Scalar(p.L);
  if (kappa == Scalar(0)) return Scalar(1) + Scalar(p.g1d) * Scalar(p.L);
  return cosh(kl) + Scalar(p.g1d) * sinh(kl) / kappa;
}

/// The n_bands lowest energies at Bloch phase theta, ascending. A negative
/// energy appears when the coupling binds (1 + gL < cos theta).
/// Throws NumericalError if a bracketed root does not converge.
std::vector<double> kp1d_bands(const Kp1dParams& params, double theta, int n_bands);

/// g1d = -hbar^2 / (m a1d).
double g1d_from_a1d(double a1d);

}  // namespace qkp
