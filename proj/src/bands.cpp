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

#include "quasikp/bands.hpp"

#include "quasikp/atomion.hpp"
#include "quasikp/error.hpp"
#include "quasikp/format.hpp"
#include "quasikp/kp1d.hpp"
#include "quasikp/parallel.hpp"
#include "quasikp/quasi1d.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <variant>

namespace qkp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kScanSamples = 200;
constexpr double kRootTolerance = 1e-10;

bool is_free(const ModelConfig& config) {
  const auto* c = std::get_if<ConstantScattering>(&config.scattering);
  return c && c->a == 0.0;
}

// Longitudinal wavenumbers with cos(kL) = cos(theta), ascending, k <= k_max.
std::vector<double> bloch_wavenumbers(double theta, double L, double k_max) {
  const double t = std::abs(std::remainder(theta, 2.0 * kPi));
  std::vector<double> ks;
  for (int j = 0;; ++j) {
    const double k = (j % 2 == 0 ? j * kPi + t : (j + 1) * kPi - t) / L;
    if (k > k_max) break;
    ks.push_back(k);
  }
  return ks;
}

// Energies 2n + 1 + k^2/2 of free states with Bloch phase theta in [lo, hi].
std::vector<double> free_energies(double theta, double L, double lo, double hi, bool skip_k0) {
  std::vector<double> out;
  for (int n = 0; 2.0 * n + 1.0 <= hi; ++n) {
    const double e0 = 2.0 * n + 1.0;
    for (double k : bloch_wavenumbers(theta, L, std::sqrt(2.0 * std::max(0.0, hi - e0)))) {
      if (skip_k0 && k == 0.0) continue;
      const double e = e0 + 0.5 * k * k;
      if (e >= lo && e <= hi) out.push_back(e);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<double> residual_or_skip(const ModelConfig& config, double e, double theta) {
  try {
    return dispersion_residual(e, theta, config);
  } catch (const ThresholdError&) {
  } catch (const PoleError&) {
  } catch (const ResonanceError&) {
  }
  return std::nullopt;
}

// Bisects a sign change. A pole also changes sign, but there |f| at the
// bracket ends does not shrink; such brackets are rejected.
std::optional<double> bisect_root(const ModelConfig& config, double theta, double lo, double hi,
                                  double f_lo, double f_hi) {
  const double scale = std::max(std::abs(f_lo), std::abs(f_hi));
  while (hi - lo > kRootTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const auto fm = residual_or_skip(config, mid, theta);
    if (!fm) return std::nullopt;
    if (*fm == 0.0) return mid;
    if ((*fm < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = *fm;
    } else {
      hi = mid;
      f_hi = *fm;
    }
  }
  if (std::max(std::abs(f_lo), std::abs(f_hi)) > 0.5 * scale) return std::nullopt;
  return 0.5 * (lo + hi);
}

std::vector<double> scan_points(double lo, double hi) {
  const double len = hi - lo;
  std::vector<double> xs;
  xs.reserve(kScanSamples + 40);
  for (int i = 1; i < kScanSamples; ++i) {
    xs.push_back(lo + 0.5 * len * (1.0 - std::cos(kPi * i / kScanSamples)));
  }
  // Resolve roots crowding against a singular end point.
  for (int m = 2; m <= 18; ++m) {
    const double d = len * std::pow(10.0, -0.5 * m);
    xs.push_back(lo + d);
    xs.push_back(hi - d);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

// Lower end of the search: no eigen-energy lies below a point where the
// residual is positive, since it tends to +inf as E -> -inf.
double search_floor(const ModelConfig& config, double theta) {
  double lo = config.energy_window.min;
  double step = 1.0;
  for (int it = 0; it < 200; ++it) {
    const auto f = residual_or_skip(config, lo, theta);
    if (f && *f > 0.0) return lo;
    lo -= step;
    step *= 1.5;
  }
  throw NumericalError("no lower bound found for the eigen-energy search at theta = " +
                       format_double(theta));
}

std::vector<DispersionPoint> mirrored(const std::vector<DispersionPoint>& half) {
  std::vector<DispersionPoint> out;
  out.reserve(2 * half.size());
  for (auto it = half.rbegin(); it != half.rend(); ++it) {
    if (it->theta != 0.0) out.push_back({-it->theta, it->energy});
  }
  out.insert(out.end(), half.begin(), half.end());
  return out;
}

void finish_band(Band& band) {
  const auto& p = band.points;
  if (p.empty()) return;
  const auto [mn, mx] = std::minmax_element(p.begin(), p.end(), [](const auto& a, const auto& b) {
    return a.energy < b.energy;
  });
  band.e_min = mn->energy;
  band.e_max = mx->energy;
  band.edge_theta0 = std::numeric_limits<double>::quiet_NaN();
  band.edge_thetapi = std::numeric_limits<double>::quiet_NaN();
  for (const auto& pt : p) {
    if (pt.theta == 0.0) band.edge_theta0 = pt.energy;
    if (std::abs(std::abs(pt.theta) - kPi) < 1e-12) band.edge_thetapi = pt.energy;
  }
  // A jump far above both neighbouring steps means the ranks swapped branches.
  for (std::size_t i = 1; i + 2 < p.size(); ++i) {
    const double before = std::abs(p[i].energy - p[i - 1].energy);
    const double jump = std::abs(p[i + 1].energy - p[i].energy);
    const double after = std::abs(p[i + 2].energy - p[i + 1].energy);
    if (jump > 1e-8 && jump > 10.0 * std::max(before, after)) {
      band.crossing = true;
      warn("band " + std::to_string(band.index) + " jumps near theta = " + format_double(p[i].theta) +
           "; branches kept in energy order");
      break;
    }
  }
}

std::vector<Band> assemble(const std::vector<double>& thetas,
                           const std::vector<std::vector<double>>& energies, int n_bands, double L,
                           BandModel model) {
  std::vector<Band> bands;
  for (int j = 0; j < n_bands; ++j) {
    Band band;
    band.index = j;
    band.L = L;
    band.provenance = model;
    std::vector<DispersionPoint> half;
    for (std::size_t i = 0; i < thetas.size(); ++i) {
      if (static_cast<int>(energies[i].size()) > j) half.push_back({thetas[i], energies[i][j]});
    }
    if (half.empty()) break;
    band.points = mirrored(half);
    finish_band(band);
    bands.push_back(std::move(band));
  }
  return bands;
}

std::vector<double> theta_grid(int n, double theta_max) {
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = i == n - 1 ? theta_max : theta_max * i / (n - 1);
  return t;
}

std::vector<double> roots_from_floor(const ModelConfig& config, double theta) {
  const double hi = config.energy_window.max;
  const double lo = is_free(config) ? config.energy_window.min : search_floor(config, theta);
  return dispersion_roots(config, theta, lo, hi);
}

}  // namespace

std::string_view to_string(BandModel model) {
  switch (model) {
    case BandModel::constant_a:
      return "constant-a";
    case BandModel::energy_dependent:
      return "energy-dependent";
    case BandModel::kp1d_reduced:
      return "kp1d-reduced";
  }
  return "unknown";
}

std::vector<double> dispersion_roots(const ModelConfig& config, double theta, double e_lo,
                                     double e_hi) {
  if (!(e_lo < e_hi)) throw DomainError("empty energy range");
  const double L = config.lattice_spacing;
  if (is_free(config)) return free_energies(theta, L, e_lo, e_hi, false);

  // Thresholds and Lambda_p poles split the range into smooth pieces.
  std::vector<double> cuts{e_lo, e_hi};
  for (int j = 0; 2.0 * j + 1.0 < e_hi; ++j) {
    if (2.0 * j + 1.0 > e_lo) cuts.push_back(2.0 * j + 1.0);
  }
  const auto poles = free_energies(theta, L, e_lo, e_hi, false);
  cuts.insert(cuts.end(), poles.begin(), poles.end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(b)); }),
             cuts.end());

  std::vector<double> roots;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double lo = cuts[c], hi = cuts[c + 1];
    if (hi - lo <= 2.0 * kRootTolerance) continue;
    std::optional<double> prev_f;
    double prev_e = lo;
    for (double e : scan_points(lo, hi)) {
      const auto f = residual_or_skip(config, e, theta);
      if (!f) continue;
      if (*f == 0.0) {
        roots.push_back(e);
      } else if (prev_f && *prev_f != 0.0 && (*f < 0.0) != (*prev_f < 0.0)) {
        if (auto r = bisect_root(config, theta, prev_e, e, *prev_f, *f)) roots.push_back(*r);
      }
      prev_f = f;
      prev_e = e;
    }
  }

  // At theta = 0 or pi the free states with sin(kz) along the axis vanish on
  // every impurity and stay eigenstates for any coupling.
  if (std::abs(std::sin(theta)) < 1e-12) {
    const auto decoupled = free_energies(theta, L, e_lo, e_hi, true);
    roots.insert(roots.end(), decoupled.begin(), decoupled.end());
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double a, double b) { return std::abs(a - b) <= 1e-9; }),
              roots.end());
  return roots;
}

std::vector<Band> solve_bands(const ModelConfig& raw, int n_bands) {
  if (n_bands < 1) throw DomainError("n_bands must be at least 1");
  const ModelConfig config = validate(raw);
  const auto thetas = theta_grid(config.theta_grid_size, kPi);
  std::vector<std::vector<double>> energies(thetas.size());
  parallel_for(thetas.size(), [&](std::size_t i) {
    auto r = roots_from_floor(config, thetas[i]);
    if (static_cast<int>(r.size()) > n_bands) r.resize(n_bands);
    energies[i] = std::move(r);
  });
  const BandModel model = std::holds_alternative<ConstantScattering>(config.scattering)
                              ? BandModel::constant_a
                              : BandModel::energy_dependent;
  return assemble(thetas, energies, n_bands, config.lattice_spacing, model);
}

std::vector<Band> kp1d_reduced_bands(double L, double a, int theta_grid_size, int n_bands) {
  if (theta_grid_size < 2) throw DomainError("theta grid needs at least two points");
  const Kp1dParams params{a == 0.0 ? 0.0 : g1d_from_a1d(a1d_olshanii(a)), L};
  const auto thetas = theta_grid(theta_grid_size, kPi);
  std::vector<std::vector<double>> energies(thetas.size());
  parallel_for(thetas.size(), [&](std::size_t i) {
    auto e = kp1d_bands(params, thetas[i], n_bands);
    for (double& x : e) x += 1.0;
    energies[i] = std::move(e);
  });
  return assemble(thetas, energies, n_bands, L, BandModel::kp1d_reduced);
}

std::vector<BandEdgeRow> bands_vs_a(const ModelConfig& base, const std::vector<double>& a_values,
                                    int band_count) {
  if (band_count < 1) throw DomainError("band_count must be at least 1");
  std::vector<std::vector<BandEdgeRow>> per_a(a_values.size());
  parallel_for(a_values.size(), [&](std::size_t i) {
    const double a = a_values[i];
    auto& rows = per_a[i];
    try {
      ModelConfig config = base;
      config.scattering = ConstantScattering{a};
      config = validate(config);
      const auto r0 = roots_from_floor(config, 0.0);
      const auto rpi = roots_from_floor(config, kPi);
      for (int j = 0; j < band_count; ++j) {
        BandEdgeRow row;
        row.a = a;
        row.band = j;
        const bool have = j < static_cast<int>(r0.size()) && j < static_cast<int>(rpi.size());
        row.e_theta0 = have ? r0[j] : std::numeric_limits<double>::quiet_NaN();
        row.e_thetapi = have ? rpi[j] : std::numeric_limits<double>::quiet_NaN();
        if (!have) {
          row.ok = false;
          row.error = "band above the energy window";
        }
        rows.push_back(row);
      }
      for (int j = 0; j + 1 < band_count; ++j) {
        auto& cur = rows[j];
        const auto& next = rows[j + 1];
        if (cur.ok && next.ok) {
          cur.overlaps_next = std::max(cur.e_theta0, cur.e_thetapi) >
                              std::min(next.e_theta0, next.e_thetapi) + 1e-9;
        }
      }
    } catch (const Error& e) {
      rows.clear();
      for (int j = 0; j < band_count; ++j) {
        BandEdgeRow row;
        row.a = a;
        row.band = j;
        row.e_theta0 = row.e_thetapi = std::numeric_limits<double>::quiet_NaN();
        row.ok = false;
        row.error = e.what();
        rows.push_back(row);
      }
    }
  });
  std::vector<BandEdgeRow> out;
  for (auto& rows : per_a) out.insert(out.end(), rows.begin(), rows.end());
  return out;
}

EffectiveMassFit effective_mass(const Band& band, double fit_fraction) {
  if (!(fit_fraction > 0.0 && fit_fraction <= 1.0)) {
    throw DomainError("fit_fraction must lie in (0, 1]");
  }
  const double theta_max = fit_fraction * kPi;
  std::vector<DispersionPoint> pts;
  for (const auto& p : band.points) {
    if (std::abs(p.theta) <= theta_max * (1.0 + 1e-12)) pts.push_back(p);
  }
  if (pts.size() < 20) {
    throw DomainError("effective-mass fit needs at least 20 points, got " + std::to_string(pts.size()));
  }
  // Fit in u = theta / theta_max for conditioning, then rescale to q = theta / L.
  Eigen::MatrixXd design(pts.size(), 4);
  Eigen::VectorXd rhs(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double u2 = std::pow(pts[i].theta / theta_max, 2);
    design(i, 0) = 1.0;
    design(i, 1) = u2;
    design(i, 2) = u2 * u2;
    design(i, 3) = u2 * u2 * u2;
    rhs(i) = pts[i].energy;
  }
  const auto qr = design.colPivHouseholderQr();
  if (qr.rank() < 4) throw NumericalError("rank-deficient effective-mass fit");
  const Eigen::VectorXd d = qr.solve(rhs);
  const double s2 = std::pow(band.L / theta_max, 2);
  EffectiveMassFit fit;
  fit.eps_b = d(0);
  fit.inv_mass_ratio = 2.0 * d(1) * s2;
  fit.A = d(2) * s2 * s2;
  fit.B = d(3) * s2 * s2 * s2;
  fit.rms_residual = std::sqrt((design * d - rhs).squaredNorm() / static_cast<double>(pts.size()));
  return fit;
}

int free_connected_band(const ScatteringModel& model) {
  if (const auto* c = std::get_if<ConstantScattering>(&model)) return c->a > 0.0 ? 1 : 0;
  const auto& ed = std::get<EnergyDependentScattering>(model);
  if (!ed.table) throw DomainError("energy-dependent model has no table");
  return ed.table->zero_energy_value() > 0.0 ? 1 : 0;
}

EffectiveMassFit lowest_band_effective_mass(const ModelConfig& raw, double fit_fraction) {
  const ModelConfig config = validate(raw);
  const int rank = free_connected_band(config.scattering);
  constexpr int kSamples = 50;
  const auto thetas = theta_grid(kSamples, fit_fraction * kPi);
  std::vector<double> energies(kSamples);
  parallel_for(thetas.size(), [&](std::size_t i) {
    const auto r = roots_from_floor(config, thetas[i]);
    if (static_cast<int>(r.size()) <= rank) {
      throw NumericalError("band " + std::to_string(rank) + " not found below E = " +
                           format_double(config.energy_window.max));
    }
    energies[i] = r[rank];
  });
  Band band;
  band.index = rank;
  band.L = config.lattice_spacing;
  std::vector<DispersionPoint> half;
  for (int i = 0; i < kSamples; ++i) half.push_back({thetas[i], energies[i]});
  band.points = mirrored(half);
  return effective_mass(band, fit_fraction);
}

}  // namespace qkp
