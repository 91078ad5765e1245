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

#include "quasikp/units.hpp"

#include "quasikp/config.hpp"
#include "quasikp/error.hpp"

#include <cmath>
#include <string>
#include <type_traits>

namespace qkp {

namespace {

void require_ion_scale(const IonUnits& units) {
  if (!(units.r_star_ratio > 0.0) || !std::isfinite(units.r_star_ratio)) {
    throw DomainError("contact model has no ion scale");
  }
}

}  // namespace

double IonUnits::e_star_ratio() const {
  require_ion_scale(*this);
  return 0.5 / (r_star_ratio * r_star_ratio);
}

double energy_ho_to_ion(double e_ho, const IonUnits& units) {
  require_ion_scale(units);
  return e_ho * 2.0 * units.r_star_ratio * units.r_star_ratio;
}

double energy_ion_to_ho(double e_ion, const IonUnits& units) {
  require_ion_scale(units);
  return e_ion / (2.0 * units.r_star_ratio * units.r_star_ratio);
}

double length_ho_to_ion(double l_ho, const IonUnits& units) {
  require_ion_scale(units);
  return l_ho / units.r_star_ratio;
}

double length_ion_to_ho(double l_ion, const IonUnits& units) {
  require_ion_scale(units);
  return l_ion * units.r_star_ratio;
}

std::vector<std::string> validation_errors(const ModelConfig& config) {
  std::vector<std::string> problems;
  if (!(config.lattice_spacing > 0.0) || !std::isfinite(config.lattice_spacing)) {
    problems.emplace_back("lattice_spacing must be positive");
  }
  if (!(config.r_star >= 0.0) || !std::isfinite(config.r_star)) {
    problems.emplace_back("r_star must be finite and non-negative");
  }
  if (config.theta_grid_size < 2) {
    problems.emplace_back("theta_grid_size must be at least 2");
  }
  const auto& w = config.energy_window;
  if (!std::isfinite(w.min) || !std::isfinite(w.max)) {
    problems.emplace_back("energy_window bounds must be finite");
  } else if (!(w.min < w.max)) {
    problems.emplace_back("empty energy window");
  }
  std::visit(
      [&](const auto& model) {
        using T = std::decay_t<decltype(model)>;
        if constexpr (std::is_same_v<T, ConstantScattering>) {
          if (!std::isfinite(model.a)) problems.emplace_back("scattering.a must be finite");
        } else {
          if (!model.table) problems.emplace_back("scattering.table is missing");
          if (!(model.r_star_ratio > 0.0)) {
            problems.emplace_back("scattering.r_star_ratio must be positive for an energy-dependent model");
          }
          if (config.r_star > 0.0 && model.r_star_ratio > 0.0 &&
              std::abs(config.r_star - model.r_star_ratio) > 1e-12 * model.r_star_ratio) {
            problems.emplace_back("r_star disagrees with scattering.r_star_ratio");
          }
        }
      },
      config.scattering);
  return problems;
}

ModelConfig validate(ModelConfig config) {
  auto problems = validation_errors(config);
  if (!problems.empty()) throw ConfigError(std::move(problems));
  if (const auto* ed = std::get_if<EnergyDependentScattering>(&config.scattering)) {
    config.r_star = ed->r_star_ratio;
  }
  return config;
}

}  // namespace qkp
