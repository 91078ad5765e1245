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

// quasikp: figure data and self-checks for the quasi-1D Kronig-Penney model.

#include <CLI11.hpp>

#include <iostream>

#include "quasikp/commands.hpp"

namespace {

void add_output(CLI::App* cmd, qkp::cli::OutputOptions& out) {
  cmd->add_option("--out", out.out, "Output path, '-' for stdout");
  cmd->add_option("--format", out.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

void add_bound_states(CLI::App* cmd, int& bound_states) {
  auto* n = cmd->add_option("--bound-states", bound_states, "Bound states of the regularized potential");
  cmd->add_flag_callback("--one-bound-state", [&bound_states] { bound_states = 1; },
                         "Shorthand for --bound-states 1")
      ->excludes(n);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace qkp::cli;
  CLI::App app{"Quasi-1D Kronig-Penney band structures and atom-ion scattering lengths"};
  app.set_config("--config", "", "TOML or INI file with option defaults");
  app.require_subcommand(1);

  BandsOptions bands;
  auto* c_bands = app.add_subcommand("bands", "Band structure for constant, energy-dependent and 1D-reduced models");
  c_bands->add_option("--L", bands.L, "Lattice spacing / a_perp");
  c_bands->add_option("--a", bands.a, "Scattering length / a_perp");
  c_bands->add_option("--rstar", bands.rstar, "R* / a_perp; 0 skips the energy-dependent model");
  add_bound_states(c_bands, bands.bound_states);
  c_bands->add_option("--theta-points", bands.theta_points, "Bloch phases on [0, pi]");
  c_bands->add_option("--energy-min", bands.energy_min, "Lower end of the energy window / hbar omega");
  c_bands->add_option("--energy-max", bands.energy_max, "Upper end of the energy window / hbar omega");
  c_bands->add_option("--n-bands", bands.n_bands, "Bands per model");
  c_bands->add_option("--energy-argument", bands.energy_argument, "total or above-threshold")
      ->check(CLI::IsMember({"total", "above-threshold"}));
  c_bands->add_option("--band-table-prefix", bands.band_table_prefix,
                      "Also write theta,qL_over_pi,band_index,E_over_hbaromega tables");
  add_output(c_bands, bands.output);

  BandsVsAOptions sweep;
  auto* c_sweep = app.add_subcommand("bands-vs-a", "Band edges at theta = 0 and pi versus a");
  c_sweep->add_option("--L", sweep.L, "Lattice spacings / a_perp")->delimiter(',');
  c_sweep->add_option("--a", sweep.a, "Scattering lengths / a_perp")->delimiter(',');
  c_sweep->add_option("--n-bands", sweep.n_bands, "Bands per a-value");
  c_sweep->add_option("--energy-min", sweep.energy_min, "Lower end of the energy window / hbar omega");
  c_sweep->add_option("--energy-max", sweep.energy_max, "Upper end of the energy window / hbar omega");
  add_output(c_sweep, sweep.output);

  ScatlenOptions scat;
  auto* c_scat = app.add_subcommand("scatlen", "Energy-dependent atom-ion scattering length");
  c_scat->add_option("--a0", scat.a0, "Target a(0) / R*");
  c_scat->add_option("--b", scat.b, "Cut-off radius / R*");
  add_bound_states(c_scat, scat.bound_states);
  c_scat->add_option("--energy-max", scat.energy_max, "Largest energy / E*");
  c_scat->add_option("--points", scat.points, "Energy samples");
  c_scat->add_option("--table-out", scat.table_out, "Also write E_over_Estar,delta0_rad,a_over_Rstar");
  add_output(c_scat, scat.output);

  A1deffOptions eff;
  auto* c_eff = app.add_subcommand("a1deff", "Effective 1D scattering length versus Bloch phase");
  c_eff->add_option("--a", eff.a, "Scattering length / a_perp");
  c_eff->add_option("--L", eff.L, "Lattice spacings / a_perp")->delimiter(',');
  c_eff->add_option("--theta-points", eff.theta_points, "Bloch phases on [0, pi]");
  c_eff->add_option("--mode", eff.mode, "series, h-approx or both")
      ->check(CLI::IsMember({"series", "h-approx", "both"}));
  add_output(c_eff, eff.output);

  MeffOptions meff;
  auto* c_meff = app.add_subcommand("meff", "Effective mass of the band connected to the free band");
  c_meff->add_option("--a", meff.a, "Scattering lengths / a_perp")->delimiter(',');
  c_meff->add_option("--L", meff.L, "Lattice spacings / a_perp")->delimiter(',');
  c_meff->add_option("--rstar", meff.rstar, "R* / a_perp; > 0 adds the energy-dependent model");
  add_bound_states(c_meff, meff.bound_states);
  c_meff->add_option("--fit-fraction", meff.fit_fraction, "Fit range |theta| <= fraction * pi");
  c_meff->add_option("--energy-max", meff.energy_max, "Upper end of the energy window / hbar omega");
  c_meff->add_option("--energy-argument", meff.energy_argument, "total or above-threshold")
      ->check(CLI::IsMember({"total", "above-threshold"}));
  add_output(c_meff, meff.output);

  SelfcheckOptions check;
  auto* c_check = app.add_subcommand("selfcheck", "Closed forms against brute-force oracles");
  c_check->add_option("--seed", check.seed, "Seed for the random oracle samples");
  c_check->add_option("--samples", check.samples, "Random Lambda samples");
  add_output(c_check, check.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (*c_bands) return cmd_bands(bands, std::cerr);
  if (*c_sweep) return cmd_bands_vs_a(sweep, std::cerr);
  if (*c_scat) return cmd_scatlen(scat, std::cerr);
  if (*c_eff) return cmd_a1deff(eff, std::cerr);
  if (*c_meff) return cmd_meff(meff, std::cerr);
  if (*c_check) return cmd_selfcheck(check, std::cerr);
  return kExitConfig;
}
