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

#include "quasikp/atomion.hpp"

#include "quasikp/error.hpp"
#include "quasikp/format.hpp"
#include "quasikp/numerov.hpp"
#include "quasikp/parallel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

namespace qkp {

namespace {

constexpr double kPi = std::numbers::pi;

// Phase accuracy of the automatic grid and the grid-refinement tolerance.
constexpr double kPhasePerStep = 0.02;
constexpr double kGridTolerance = 1e-6;

double wrap_half_pi(double d) {
  // Reduce an angle difference to (-pi/2, pi/2].
  d = std::remainder(d, kPi);
  if (d <= -0.5 * kPi) d += kPi;
  return d;
}

double auto_r_max(double k) { return std::max({50.0, 20.0 / k, 316.0 / std::sqrt(k)}); }

numerov::StepPolicy policy_for(const RegularizedPotential& pot, double k, double step) {
  const double auto_step = kPhasePerStep / std::sqrt(pot.depth() + k * k);
  numerov::StepPolicy p;
  p.initial_step = step > 0.0 ? step : auto_step;
  p.max_step = std::max(p.initial_step, 0.05);
  p.phase_per_step = kPhasePerStep * p.initial_step / auto_step;
  return p;
}

numerov::StepPolicy halved(numerov::StepPolicy p) {
  p.initial_step *= 0.5;
  p.max_step *= 0.5;
  p.phase_per_step *= 0.5;
  return p;
}

// delta - pi/2 with delta taken mod pi in [0, pi).
double offset_from_pole(double delta) {
  double d = std::fmod(delta, kPi);
  if (d < 0.0) d += kPi;
  return d - 0.5 * kPi;
}

bool crosses_pole(double g0, double g1) {
  return (g0 < 0.0) != (g1 < 0.0) && std::abs(g0) < 0.25 * kPi && std::abs(g1) < 0.25 * kPi;
}

double delta_at_energy(const RegularizedPotential& pot, double e) {
  return numerov_delta0(pot, std::sqrt(e)).delta0;
}

double bisect_pole(const RegularizedPotential& pot, double lo, double hi, double g_lo) {
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    const double g = offset_from_pole(delta_at_energy(pot, mid));
    if ((g < 0.0) == (g_lo < 0.0)) {
      lo = mid;
      g_lo = g;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

ScatteringLength a_of_b(double b) {
  if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("cut-off b must be positive and finite");
  const double s = std::sqrt(1.0 + 1.0 / (b * b));
  const double half = 0.5 * s;
  const double prefactor = std::sqrt(1.0 + b * b);
  if (std::abs(half - std::round(half)) < 1e-13 * half) {
    // cot has a pole here: a new bound state enters.
    const double side = std::cos(0.5 * kPi * s) / std::sin(0.5 * kPi * s);
    return {std::copysign(std::numeric_limits<double>::infinity(), side), true};
  }
  const double arg = 0.5 * kPi * s;
  return {prefactor * std::cos(arg) / std::sin(arg), false};
}

double bound_state_threshold(int n) {
  if (n < 1) throw DomainError("bound-state index starts at 1");
  return 1.0 / std::sqrt(4.0 * n * n - 1.0);
}

int bound_state_count(double b) {
  if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("cut-off b must be positive and finite");
  int count = 0;
  for (int n = 1;; ++n) {
    const double bn = bound_state_threshold(n);
    if (std::abs(b - bn) <= 1e-13 * bn) {
      throw ThresholdError("cut-off b sits on a bound-state threshold", n);
    }
    if (b > bn) break;
    ++count;
  }
  return count;
}

double b_for_scattering_length(double a0, int bound_states) {
  if (!std::isfinite(a0)) throw DomainError("target scattering length must be finite");
  if (bound_states < 0) throw DomainError("bound-state count must be non-negative");
  const auto f = [a0](double b) { return a_of_b(b).value - a0; };
  double lo = bound_state_threshold(bound_states + 1);
  double hi;
  if (bound_states == 0) {
    if (a0 >= 0.0) throw DomainError("without bound states the scattering length is negative");
    hi = 2.0 * lo;
    while (f(hi) < 0.0) hi *= 2.0;
  } else {
    hi = bound_state_threshold(bound_states);
  }
  // a(b) rises from -inf at lo to +inf (or 0-) at hi.
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

RadialScattering numerov_delta0(const RegularizedPotential& pot, double k, RadialGrid grid) {
  if (!(pot.b > 0.0)) throw DomainError("cut-off b must be positive");
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("wavenumber must be positive");
  const double r_max = grid.r_max > 0.0 ? grid.r_max : auto_r_max(k);
  if (r_max < 50.0 || k * r_max < 20.0) {
    throw DomainError("radial grid must reach r >= 50 R* and k r >= 20");
  }
  const auto coarse = policy_for(pot, k, grid.step);
  const double d1 = numerov::phase_shift(pot, k, r_max, coarse);
  const double d2 = numerov::phase_shift(pot, k, r_max, halved(coarse));
  const double diff = wrap_half_pi(d2 - d1);
  if (std::abs(diff) > kGridTolerance) {
    throw GridError("phase shift changed by " + format_double(diff) + " rad when halving the step");
  }
  RadialScattering out;
  out.k = k;
  out.delta0 = wrap_half_pi(d2 + diff / 15.0);
  out.a_eff = -std::tan(out.delta0) / k;
  return out;
}

ZeroEnergySolution zero_energy_solution(const RegularizedPotential& pot) {
  if (!(pot.b > 0.0)) throw DomainError("cut-off b must be positive");
  constexpr double r_end = 400.0;
  numerov::StepPolicy policy;
  policy.initial_step = 0.005 / std::sqrt(pot.depth());
  policy.phase_per_step = 0.005;
  policy.max_step = 0.25;

  int nodes = 0;
  double prev = 0.0;
  double ra = 0.0, ua = 0.0, rb = 0.0, ub = 0.0;
  bool have_a = false;
  numerov::integrate(pot, 0.0, r_end, policy, [&](double r, double u, double) {
    if (r > 0.0) {
      if (prev != 0.0 && (u < 0.0) != (prev < 0.0)) ++nodes;
      prev = u;
    }
    if (!have_a && r >= 0.5 * r_end) {
      ra = r;
      ua = u;
      have_a = true;
    }
    rb = r;
    ub = u;
  });
  // u = alpha r sin(1/r) + beta r cos(1/r) outside; u -> alpha + beta r.
  const double s_a = ra * std::sin(1.0 / ra), c_a = ra * std::cos(1.0 / ra);
  const double s_b = rb * std::sin(1.0 / rb), c_b = rb * std::cos(1.0 / rb);
  const double det = s_a * c_b - s_b * c_a;
  const double alpha = (ua * c_b - ub * c_a) / det;
  const double beta = (s_a * ub - s_b * ua) / det;
  ZeroEnergySolution out;
  out.scattering_length = -alpha / beta;
  // A last zero beyond r_end sits at x = 1/r with tan x = -beta / alpha.
  const double t = -beta / alpha;
  if (t > 0.0 && std::atan(t) < 1.0 / rb) ++nodes;
  out.nodes = nodes;
  return out;
}

double a_zero_energy_extrapolated(const RegularizedPotential& pot) {
  constexpr std::array<double, 5> ks{0.004, 0.008, 0.012, 0.016, 0.02};
  std::array<double, ks.size()> a{};
  parallel_for(ks.size(), [&](std::size_t i) { a[i] = numerov_delta0(pot, ks[i]).a_eff; });
  Eigen::Matrix<double, ks.size(), 3> design;
  Eigen::Matrix<double, ks.size(), 1> rhs;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = ks[i];
    design(i, 2) = ks[i] * ks[i];
    rhs(i) = a[i];
  }
  const Eigen::Vector3d coeff = design.colPivHouseholderQr().solve(rhs);
  return coeff(0);
}

double a_low_energy(double a0, double k) {
  if (k > 0.3) warn("low-energy expansion used at k R* = " + format_double(k) + " > 0.3");
  return a0 + kPi / 3.0 * k;
}

std::vector<double> find_resonances(const RegularizedPotential& pot, double e_lo, double e_hi,
                                    int samples) {
  if (!(e_lo > 0.0) || !(e_hi > e_lo)) throw DomainError("resonance search needs 0 < e_lo < e_hi");
  if (samples < 2) throw DomainError("resonance search needs at least two samples");
  std::vector<double> es(samples), g(samples);
  for (int i = 0; i < samples; ++i) es[i] = e_lo + (e_hi - e_lo) * i / (samples - 1);
  parallel_for(es.size(), [&](std::size_t i) { g[i] = offset_from_pole(delta_at_energy(pot, es[i])); });
  std::vector<double> out;
  for (int i = 0; i + 1 < samples; ++i) {
    if (crosses_pole(g[i], g[i + 1])) out.push_back(bisect_pole(pot, es[i], es[i + 1], g[i]));
  }
  return out;
}

ScatteringLengthTable::ScatteringLengthTable(const RegularizedPotential& pot,
                                             std::span<const double> energies)
    : b_(pot.b) {
  if (energies.empty()) throw DomainError("scattering-length table needs at least one energy");
  for (std::size_t i = 0; i < energies.size(); ++i) {
    if (!(energies[i] > 0.0) || !std::isfinite(energies[i])) {
      throw DomainError("table energies must be positive and finite");
    }
    if (i > 0 && !(energies[i] > energies[i - 1])) {
      throw DomainError("table energies must be strictly increasing");
    }
  }
  // a(k) - a(0) - (pi/3) k behaves like k^2 ln k, which a single cubic on
  // [0, k_first] resolves poorly; extra nodes halve k towards the threshold.
  constexpr int kThresholdNodes = 6;
  energies_.assign(1, 0.0);
  for (int m = kThresholdNodes; m >= 1; --m) energies_.push_back(energies.front() * std::ldexp(1.0, -2 * m));
  energies_.insert(energies_.end(), energies.begin(), energies.end());
  const std::size_t n = energies_.size();
  k_.resize(n);
  deltas_.assign(n, 0.0);
  values_.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) k_[i] = std::sqrt(energies_[i]);

  values_[0] = zero_energy_solution(pot).scattering_length;
  parallel_for(n - 1, [&](std::size_t j) {
    const auto rs = numerov_delta0(pot, k_[j + 1]);
    deltas_[j + 1] = rs.delta0;
    values_[j + 1] = rs.a_eff;
  });

  segment_.assign(n, 0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double g0 = offset_from_pole(deltas_[i]);
    const double g1 = offset_from_pole(deltas_[i + 1]);
    segment_[i + 1] = segment_[i];
    if (crosses_pole(g0, g1)) {
      poles_.push_back(bisect_pole(pot, energies_[i], energies_[i + 1], g0));
      excluded_.push_back({energies_[i], energies_[i + 1]});
      ++segment_[i + 1];
    }
  }

  // Monotone cubic in k: three-point slopes, then the Fritsch-Carlson limiter,
  // computed separately on each segment.
  slopes_.assign(n, 0.0);
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start;
    while (end + 1 < n && segment_[end + 1] == segment_[start]) ++end;
    const std::size_t m = end - start + 1;
    if (m >= 2) {
      std::vector<double> secant(m - 1);
      for (std::size_t i = 0; i + 1 < m; ++i) {
        const std::size_t a = start + i;
        secant[i] = (values_[a + 1] - values_[a]) / (k_[a + 1] - k_[a]);
      }
      const auto width = [&](std::size_t i) { return k_[start + i + 1] - k_[start + i]; };
      for (std::size_t i = 1; i + 1 < m; ++i) {
        const double s0 = secant[i - 1], s1 = secant[i];
        const double h0 = width(i - 1), h1 = width(i);
        slopes_[start + i] = s0 * s1 <= 0.0 ? 0.0 : (h1 * s0 + h0 * s1) / (h0 + h1);
      }
      if (m == 2) {
        slopes_[start] = slopes_[end] = secant.front();
      } else {
        const auto one_sided = [](double s0, double s1, double h0, double h1) {
          const double d = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
          if (d * s0 <= 0.0) return 0.0;
          if (s0 * s1 <= 0.0 && std::abs(d) > 3.0 * std::abs(s0)) return 3.0 * s0;
          return d;
        };
        slopes_[start] = one_sided(secant[0], secant[1], width(0), width(1));
        slopes_[end] = one_sided(secant[m - 2], secant[m - 3], width(m - 2), width(m - 3));
      }
      // The 1/r^4 tail fixes the threshold slope: a(k) = a(0) + (pi/3) k + ...
      if (k_[start] == 0.0) slopes_[start] = std::numbers::pi / 3.0;
      for (std::size_t i = 0; i + 1 < m; ++i) {
        const std::size_t a = start + i;
        if (secant[i] == 0.0) {
          slopes_[a] = slopes_[a + 1] = 0.0;
          continue;
        }
        const double alpha = slopes_[a] / secant[i];
        const double beta = slopes_[a + 1] / secant[i];
        const double r2 = alpha * alpha + beta * beta;
        if (r2 > 9.0) {
          const double tau = 3.0 / std::sqrt(r2);
          slopes_[a] = tau * alpha * secant[i];
          slopes_[a + 1] = tau * beta * secant[i];
        }
      }
    }
    start = end + 1;
  }
}

bool ScatteringLengthTable::is_excluded(double energy) const {
  return std::any_of(excluded_.begin(), excluded_.end(),
                     [energy](const Interval& iv) { return energy > iv.lo && energy < iv.hi; });
}

double ScatteringLengthTable::operator()(double energy) const {
  if (!(energy >= 0.0) || energy > max_energy()) {
    throw DomainError("energy " + format_double(energy) + " E* outside the tabulated range [0, " +
                      format_double(max_energy()) + "]");
  }
  if (is_excluded(energy)) {
    throw ResonanceError("energy " + format_double(energy) + " E* lies inside a resonance interval");
  }
  const auto it = std::upper_bound(energies_.begin(), energies_.end(), energy);
  if (it == energies_.end()) return values_.back();
  const std::size_t hi = static_cast<std::size_t>(it - energies_.begin());
  const std::size_t lo = hi - 1;
  if (energy == energies_[lo]) return values_[lo];
  const double k = std::sqrt(energy);
  const double h = k_[hi] - k_[lo];
  const double t = (k - k_[lo]) / h;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  const double h10 = t3 - 2.0 * t2 + t;
  const double h01 = -2.0 * t3 + 3.0 * t2;
  const double h11 = t3 - t2;
  return h00 * values_[lo] + h10 * h * slopes_[lo] + h01 * values_[hi] + h11 * h * slopes_[hi];
}

void ScatteringLengthTable::write_csv(std::ostream& out) const {
  out << "E_over_Estar,delta0_rad,a_over_Rstar\n";
  for (std::size_t i = 1; i < energies_.size(); ++i) {
    out << format_double(energies_[i]) << ',' << format_double(deltas_[i]) << ','
        << format_double(values_[i]) << '\n';
  }
}

ScatteringLengthTable a_of_e_table(const RegularizedPotential& pot, std::span<const double> energies) {
  return ScatteringLengthTable(pot, energies);
}

}  // namespace qkp
