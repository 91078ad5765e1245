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

// Subcommands of the quasikp command-line tool. Each returns a process exit
// code: 0 success, 2 invalid configuration, 3 solver failure, 4 self-check
// failure. Results go to `out` ("-" for stdout); messages go to `log`.

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "quasikp/config.hpp"

namespace qkp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSolver = 3;
inline constexpr int kExitSelfcheck = 4;

struct OutputOptions {
  std::string out;  ///< empty selects the command's default file name
  std::string format = "csv";
};

struct BandsOptions {
  double L = 15.0;
  double a = 0.2;       ///< a / a_perp
  double rstar = 0.1;   ///< R* / a_perp; 0 skips the energy-dependent model
  int bound_states = 1;
  int theta_points = 64;
  double energy_min = -10.0;
  double energy_max = 3.0;
  int n_bands = 4;
  std::string energy_argument = "total";
  std::string band_table_prefix;  ///< also write one band table per model
  OutputOptions output;
};

struct BandsVsAOptions {
  std::vector<double> L{1.0, 5.0, 15.0};
  std::vector<double> a;  ///< empty selects -2, -1.9, ..., 2
  int n_bands = 4;
  double energy_min = -10.0;
  double energy_max = 6.0;
  OutputOptions output;
};

struct ScatlenOptions {
  std::optional<double> a0;  ///< target a(0) / R*, inverted to b
  std::optional<double> b;   ///< cut-off / R*
  int bound_states = 1;
  double energy_max = 10.0;  ///< in E*
  int points = 400;
  std::string table_out;  ///< optional E, delta0, a dump
  OutputOptions output;
};

struct A1deffOptions {
  double a = 1.0;
  std::vector<double> L{1.0, 1.5, 3.0};
  int theta_points = 64;
  std::string mode = "both";  ///< series | h-approx | both
  OutputOptions output;
};

struct MeffOptions {
  std::vector<double> a;  ///< empty selects -2, -1.75, ..., 2
  std::vector<double> L{5.0};
  double rstar = 0.0;  ///< > 0 adds the energy-dependent model
  int bound_states = 1;
  double fit_fraction = 0.5;
  double energy_max = 3.0;
  std::string energy_argument = "total";
  OutputOptions output;
};

struct SelfcheckOptions {
  unsigned long long seed = 20260101ULL;
  int samples = 20;
  OutputOptions output;
};

int cmd_bands(const BandsOptions& opt, std::ostream& log);
int cmd_bands_vs_a(const BandsVsAOptions& opt, std::ostream& log);
int cmd_scatlen(const ScatlenOptions& opt, std::ostream& log);
int cmd_a1deff(const A1deffOptions& opt, std::ostream& log);
int cmd_meff(const MeffOptions& opt, std::ostream& log);
int cmd_selfcheck(const SelfcheckOptions& opt, std::ostream& log);

/// Scattering-length table for a(0) = a0 (in R*) with `bound_states` bound
/// states, sampled uniformly in k up to e_max (in E*).
std::shared_ptr<const ScatteringLengthTable> make_table(double a0, int bound_states, double e_max,
                                                        int points);

}  // namespace qkp::cli
