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

// Problem definition shared by the dispersion solver, band assembly and CLI.

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace qkp {

class ScatteringLengthTable;

/// Energy-independent 3D scattering length in units of a_perp.
struct ConstantScattering {
  double a = 0.0;
};

/// Which energy enters a(E) when the table is queried inside the lattice.
enum class EnergyArgument {
  total,           ///< E_kin = E
  above_threshold  ///< E_kin = E - hbar omega
};

/// a(E) from a tabulated atom-ion phase shift. The table is in R*, E* units.
struct EnergyDependentScattering {
  std::shared_ptr<const ScatteringLengthTable> table;
  double r_star_ratio = 0.0;  ///< R* / a_perp
  EnergyArgument argument = EnergyArgument::total;
};

using ScatteringModel = std::variant<ConstantScattering, EnergyDependentScattering>;

struct EnergyWindow {
  double min = -10.0;
  double max = 10.0;
};

struct ModelConfig {
  double lattice_spacing = 1.0;  ///< L / a_perp
  double r_star = 0.0;           ///< R* / a_perp; 0 is a pure contact model
  ScatteringModel scattering = ConstantScattering{};
  int theta_grid_size = 64;
  EnergyWindow energy_window;
};

/// Every problem with `config`, empty when it is usable.
std::vector<std::string> validation_errors(const ModelConfig& config);

/// Returns the normalized config or throws ConfigError listing all problems.
ModelConfig validate(ModelConfig config);

}  // namespace qkp
