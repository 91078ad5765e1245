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

// Unit system. Internally hbar = m = a_perp = 1, so energies are in units of
// hbar*omega and lengths in units of the transverse oscillator length. The
// atom-ion layer works in R* and E* = hbar^2 / (2 m R*^2); IonUnits bridges
// the two scales given the ratio R*/a_perp.

namespace qkp {

struct IonUnits {
  double r_star_ratio = 0.0;  ///< R* / a_perp

  /// E* / (hbar omega) = a_perp^2 / (2 R*^2).
  double e_star_ratio() const;
};

double energy_ho_to_ion(double e_ho, const IonUnits& units);
double energy_ion_to_ho(double e_ion, const IonUnits& units);
double length_ho_to_ion(double l_ho, const IonUnits& units);
double length_ion_to_ho(double l_ion, const IonUnits& units);

}  // namespace qkp
