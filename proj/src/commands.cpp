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

#include "quasikp/commands.hpp"

#include "quasikp/atomion.hpp"
#include "quasikp/bands.hpp"
#include "quasikp/error.hpp"
#include "quasikp/format.hpp"
#include "quasikp/greens_oracle.hpp"
#include "quasikp/quasi1d.hpp"
#include "quasikp/specfun.hpp"
#include "quasikp/table.hpp"
#include "quasikp/units.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>

namespace qkp::cli {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <typename Fn>
int guarded(std::ostream& log, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitSolver;
  }
}

void emit(const Table& table, const OutputOptions& output, const std::string& stem, std::ostream& log) {
  const TableFormat format = parse_table_format(output.format);
  std::string path = output.out;
  if (path.empty()) path = stem + (format == TableFormat::csv ? ".csv" : ".json");
  if (path == "-") {
    write_table(table, format, std::cout);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError({"cannot write output file '" + path + "'"});
  write_table(table, format, file);
  log << "wrote " << table.rows.size() << " rows to " << path << '\n';
}

EnergyArgument parse_energy_argument(const std::string& name) {
  if (name == "total") return EnergyArgument::total;
  if (name == "above-threshold") return EnergyArgument::above_threshold;
  throw ConfigError({"energy argument must be total or above-threshold, got '" + name + "'"});
}

std::vector<double> default_grid(double lo, double hi, double step) {
  std::vector<double> v;
  const int n = static_cast<int>(std::lround((hi - lo) / step));
  for (int i = 0; i <= n; ++i) {
    const double x = lo + step * i;
    v.push_back(std::abs(x) < 1e-12 ? 0.0 : x);
  }
  return v;
}

void require(std::vector<std::string>& problems, bool ok, const std::string& message) {
  if (!ok) problems.push_back(message);
}

void throw_if(std::vector<std::string> problems) {
  if (!problems.empty()) throw ConfigError(std::move(problems));
}

// Largest ion-scale kinetic energy the lattice solver can ask for.
double ion_energy_span(double energy_max, EnergyArgument argument, double rstar) {
  const double e_kin = argument == EnergyArgument::total ? energy_max : energy_max - 1.0;
  return std::max(1e-3, 1.05 * energy_ho_to_ion(std::max(0.0, e_kin), IonUnits{rstar}));
}

EnergyDependentScattering energy_dependent_model(double a, double rstar, int bound_states,
                                                 double energy_max, EnergyArgument argument) {
  EnergyDependentScattering ed;
  ed.table = make_table(a / rstar, bound_states, ion_energy_span(energy_max, argument, rstar), 400);
  ed.r_star_ratio = rstar;
  ed.argument = argument;
  return ed;
}

void add_band_rows(Table& table, const std::vector<Band>& bands) {
  for (const auto& band : bands) {
    for (const auto& p : band.points) {
      table.add({std::string(to_string(band.provenance)), p.theta, static_cast<long long>(band.index),
                 p.energy});
    }
  }
}

void write_band_table(const std::vector<Band>& bands, const std::string& path, std::ostream& log) {
  Table t{{"theta", "qL_over_pi", "band_index", "E_over_hbaromega"}, {}};
  for (const auto& band : bands) {
    for (const auto& p : band.points) {
      t.add({p.theta, p.theta / kPi, static_cast<long long>(band.index), p.energy});
    }
  }
  emit(t, OutputOptions{path, "csv"}, path, log);
}

}  // namespace

std::shared_ptr<const ScatteringLengthTable> make_table(double a0, int bound_states, double e_max,
                                                        int points) {
  if (points < 2) throw ConfigError({"table needs at least two points"});
  if (!(e_max > 0.0)) throw ConfigError({"table energy range must be positive"});
  double b = 0.0;
  try {
    b = b_for_scattering_length(a0, bound_states);
  } catch (const DomainError& e) {
    throw ConfigError({std::string("cannot realize a(0) = ") + format_double(a0) + " R* with " +
                       std::to_string(bound_states) + " bound states: " + e.what()});
  }
  std::vector<double> energies;
  const double k_max = std::sqrt(e_max);
  for (int i = 1; i <= points; ++i) {
    const double k = k_max * i / points;
    energies.push_back(k * k);
  }
  return std::make_shared<const ScatteringLengthTable>(RegularizedPotential{b}, energies);
}

int cmd_bands(const BandsOptions& opt, std::ostream& log) {
  return guarded(log, [&] {
    std::vector<std::string> problems;
    require(problems, opt.n_bands >= 1, "n_bands must be at least 1");
    require(problems, opt.rstar >= 0.0, "rstar must be non-negative");
    throw_if(problems);
    const auto argument = parse_energy_argument(opt.energy_argument);

    ModelConfig config;
    config.lattice_spacing = opt.L;
    config.scattering = ConstantScattering{opt.a};
    config.theta_grid_size = opt.theta_points;
    config.energy_window = {opt.energy_min, opt.energy_max};
    config = validate(config);

    Table table{{"model", "theta", "band", "E"}, {}};
    const auto constant = solve_bands(config, opt.n_bands);
    add_band_rows(table, constant);
    std::vector<Band> dependent;
    if (opt.rstar > 0.0) {
      ModelConfig ed = config;
      ed.r_star = opt.rstar;
      ed.scattering =
          energy_dependent_model(opt.a, opt.rstar, opt.bound_states, opt.energy_max, argument);
      dependent = solve_bands(ed, opt.n_bands);
      add_band_rows(table, dependent);
    }
    const auto reduced = kp1d_reduced_bands(opt.L, opt.a, opt.theta_points, opt.n_bands);
    add_band_rows(table, reduced);
    emit(table, opt.output, "fig3_bands", log);

    if (!opt.band_table_prefix.empty()) {
      write_band_table(constant, opt.band_table_prefix + "constant-a.csv", log);
      if (!dependent.empty()) {
        write_band_table(dependent, opt.band_table_prefix + "energy-dependent.csv", log);
      }
      write_band_table(reduced, opt.band_table_prefix + "kp1d-reduced.csv", log);
    }
    return kExitOk;
  });
}

int cmd_bands_vs_a(const BandsVsAOptions& opt, std::ostream& log) {
  return guarded(log, [&] {
    std::vector<std::string> problems;
    require(problems, opt.n_bands >= 1, "n_bands must be at least 1");
    require(problems, !opt.L.empty(), "at least one lattice spacing is required");
    throw_if(problems);
    const auto a_values = opt.a.empty() ? default_grid(-2.0, 2.0, 0.1) : opt.a;

    Table table{{"a_over_aperp", "band", "E_theta0", "E_thetapi", "L_over_aperp", "overlap", "status"},
                {}};
    for (double L : opt.L) {
      ModelConfig base;
      base.lattice_spacing = L;
      base.energy_window = {opt.energy_min, opt.energy_max};
      base = validate(base);
      for (const auto& row : bands_vs_a(base, a_values, opt.n_bands)) {
        table.add({row.a, static_cast<long long>(row.band), row.e_theta0, row.e_thetapi, L,
                   static_cast<long long>(row.overlaps_next), row.ok ? std::string("ok") : row.error});
        if (!row.ok && row.band == 0) log << "warning: a = " << format_double(row.a) << ": " << row.error << '\n';
      }
    }
    emit(table, opt.output, "fig4_bands_vs_a", log);
    return kExitOk;
  });
}

int cmd_scatlen(const ScatlenOptions& opt, std::ostream& log) {
  return guarded(log, [&] {
    std::vector<std::string> problems;
    require(problems, opt.a0.has_value() != opt.b.has_value(), "give exactly one of --a0 and --b");
    require(problems, opt.energy_max > 0.0, "energy_max must be positive");
    require(problems, opt.points >= 2, "points must be at least 2");
    require(problems, !opt.b || *opt.b > 0.0, "b must be positive");
    throw_if(problems);

    double b = 0.0;
    if (opt.b) {
      b = *opt.b;
    } else {
      try {
        b = b_for_scattering_length(*opt.a0, opt.bound_states);
      } catch (const DomainError& e) {
        throw ConfigError({e.what()});
      }
    }
    const RegularizedPotential pot{b};
    log << "b/R* = " << format_double(b) << ", bound states = " << bound_state_count(b)
        << ", closed-form a(0)/R* = " << format_double(a_of_b(b).value) << '\n';

    std::vector<double> energies;
    for (int i = 1; i <= opt.points; ++i) energies.push_back(opt.energy_max * i / opt.points);
    const ScatteringLengthTable table_a(pot, energies);

    Table table{{"E_over_Estar", "a_over_Rstar", "model", "resonance"}, {}};
    std::vector<double> poles = table_a.poles();
    std::size_t next_pole = 0;
    for (std::size_t i = 0; i < table_a.energies().size(); ++i) {
      const double e = table_a.energies()[i];
      while (next_pole < poles.size() && poles[next_pole] < e) {
        table.add({poles[next_pole++], kNaN, std::string("numerov"), 1LL});
      }
      table.add({e, table_a.values()[i], std::string("numerov"), 0LL});
    }
    const double a0 = table_a.zero_energy_value();
    int beyond = 0;
    auto previous = set_warning_handler([&](std::string_view) { ++beyond; });
    for (double e : table_a.energies()) {
      table.add({e, a_low_energy(a0, std::sqrt(e)), std::string("low-energy"), 0LL});
    }
    set_warning_handler(std::move(previous));
    if (beyond > 0) {
      log << "warning: low-energy expansion evaluated beyond k R* = 0.3 at " << beyond << " energies\n";
    }
    for (double p : poles) log << "resonance at E/E* = " << format_double(p) << '\n';
    emit(table, opt.output, "fig2_scatlen", log);
    if (!opt.table_out.empty()) {
      std::ofstream file(opt.table_out, std::ios::binary);
      if (!file) throw ConfigError({"cannot write table file '" + opt.table_out + "'"});
      table_a.write_csv(file);
    }
    return kExitOk;
  });
}

int cmd_a1deff(const A1deffOptions& opt, std::ostream& log) {
  return guarded(log, [&] {
    std::vector<std::string> problems;
    require(problems, opt.theta_points >= 2, "theta_points must be at least 2");
    require(problems, opt.a != 0.0 && std::isfinite(opt.a), "a must be finite and nonzero");
    require(problems, opt.mode == "series" || opt.mode == "h-approx" || opt.mode == "both",
            "mode must be series, h-approx or both");
    for (double L : opt.L) require(problems, L > 0.0, "lattice_spacing must be positive");
    throw_if(problems);

    std::vector<std::pair<std::string, LambdaEMode>> modes;
    if (opt.mode != "h-approx") modes.emplace_back("series", LambdaEMode::series);
    if (opt.mode != "series") modes.emplace_back("h-approx", LambdaEMode::h_approx);
    const ScatteringModel model = ConstantScattering{opt.a};

    Table table{{"theta", "L_over_aperp", "mode", "a1deff_over_aperp"}, {}};
    for (double L : opt.L) {
      for (const auto& [name, mode] : modes) {
        for (int i = 0; i < opt.theta_points; ++i) {
          const double theta = kPi * i / (opt.theta_points - 1);
          table.add({theta, L, name, a1d_eff(theta, L, model, mode)});
        }
      }
    }
    emit(table, opt.output, "fig8_a1deff", log);
    return kExitOk;
  });
}

int cmd_meff(const MeffOptions& opt, std::ostream& log) {
  return guarded(log, [&] {
    std::vector<std::string> problems;
    require(problems, opt.fit_fraction > 0.0 && opt.fit_fraction <= 1.0, "fit_fraction must lie in (0, 1]");
    require(problems, opt.rstar >= 0.0, "rstar must be non-negative");
    require(problems, !opt.L.empty(), "at least one lattice spacing is required");
    throw_if(problems);
    const auto argument = parse_energy_argument(opt.energy_argument);
    const auto a_values = opt.a.empty() ? default_grid(-2.0, 2.0, 0.25) : opt.a;

    Table table{{"a_axis", "L_over_aperp", "model", "m_over_meff", "fit_ok"}, {}};
    for (double L : opt.L) {
      ModelConfig base;
      base.lattice_spacing = L;
      base.energy_window = {-10.0, opt.energy_max};
      base = validate(base);
      for (double a : a_values) {
        ModelConfig config = base;
        config.scattering = ConstantScattering{a};
        try {
          const auto fit = lowest_band_effective_mass(config, opt.fit_fraction);
          table.add({a, L, std::string("constant-a"), fit.inv_mass_ratio, 1LL});
        } catch (const ConfigError&) {
          throw;
        } catch (const Error& e) {
          log << "warning: constant-a fit failed at a = " << format_double(a) << ": " << e.what() << '\n';
          table.add({a, L, std::string("constant-a"), kNaN, 0LL});
        }
        if (opt.rstar > 0.0) {
          try {
            config.r_star = opt.rstar;
            config.scattering =
                energy_dependent_model(a, opt.rstar, opt.bound_states, opt.energy_max, argument);
            const auto fit = lowest_band_effective_mass(config, opt.fit_fraction);
            const double a_eb = scattering_length_at(config.scattering, fit.eps_b);
            table.add({a_eb, L, std::string("energy-dependent"), fit.inv_mass_ratio, 1LL});
          } catch (const ConfigError& e) {
            log << "warning: energy-dependent model skipped at a = " << format_double(a) << ": "
                << e.what() << '\n';
            table.add({a, L, std::string("energy-dependent"), kNaN, 0LL});
          } catch (const Error& e) {
            log << "warning: energy-dependent fit failed at a = " << format_double(a) << ": "
                << e.what() << '\n';
            table.add({a, L, std::string("energy-dependent"), kNaN, 0LL});
          }
        }
      }
    }
    emit(table, opt.output, "fig7_meff", log);
    return kExitOk;
  });
}

int cmd_selfcheck(const SelfcheckOptions& opt, std::ostream& log) {
  return guarded(log, [&] {
    if (opt.samples < 1) throw ConfigError({"samples must be at least 1"});
    Table table{{"check", "observed", "expected", "tolerance", "status"}, {}};
    bool all_ok = true;
    const auto record = [&](const std::string& name, double observed, double expected, double tol) {
      const bool ok = std::abs(observed - expected) <= tol;
      all_ok = all_ok && ok;
      table.add({name, observed, expected, tol, std::string(ok ? "pass" : "fail")});
      if (!ok) {
        log << "FAIL " << name << ": observed " << format_double(observed) << ", expected "
            << format_double(expected) << " +- " << format_double(tol) << '\n';
      }
    };
    const auto attempt = [&](const std::string& name, double tol, const std::function<double()>& fn) {
      try {
        record(name, fn(), 0.0, tol);
      } catch (const Error& e) {
        all_ok = false;
        table.add({name, kNaN, 0.0, tol, std::string("fail")});
        log << "FAIL " << name << ": " << e.what() << '\n';
      }
    };

    record("olshanii_constant", olshanii_constant(), 1.46035, 1e-4);

    attempt("zeta_recurrence_max_error", 1e-10, [] {
      double worst = 0.0;
      for (int i = 1; i <= 100; ++i) {
        const double q = 0.05 * i;
        worst = std::max(worst, std::abs(hurwitz_zeta_half(q) - 1.0 / std::sqrt(q) -
                                         hurwitz_zeta_half(q + 1.0)));
      }
      return worst;
    });

    attempt("zeta_vs_regularized_sum_max_error", 1e-8, [] {
      oracle::ModeSumParams fine;
      fine.x_list = {0.05, 0.025, 0.0125, 0.00625, 0.003125};
      double worst = 0.0;
      // q = 1 - epsilon/2; q > 1 is reached below E = -1.
      for (double q : {0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0}) {
        const double energy = -1.0 + 2.0 * (1.0 - q);
        const double zeta = -2.0 * kPi * oracle::beta_bruteforce(energy, fine).beta;
        worst = std::max(worst, std::abs(zeta - hurwitz_zeta_half(q)));
      }
      return worst;
    });

    attempt("beta_vs_oracle_max_error", 1e-6, [] {
      double worst = 0.0;
      for (double e : {1.2, 2.0, 4.7}) {
        const auto o = oracle::beta_bruteforce(e);
        worst = std::max({worst, std::abs(o.beta - beta_of_e(e)), std::abs(o.beta_open)});
      }
      return worst;
    });

    attempt("lambda_vs_abel_sum_max_error", 1e-6, [&] {
      double worst = 0.0;
      for (const auto& s : oracle::random_oracle_samples(opt.seed, opt.samples)) {
        const double closed = lambda_of_e(s.energy, s.theta, s.L);
        worst = std::max(worst, std::abs(closed - oracle::lambda_bruteforce(s.energy, s.theta, s.L)));
      }
      return worst;
    });

    OutputOptions output = opt.output;
    if (output.out.empty()) output.out = "-";
    emit(table, output, "selfcheck", log);
    return all_ok ? kExitOk : kExitSelfcheck;
  });
}

}  // namespace qkp::cli
