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

// Numerov integration of the s-wave radial equation u'' = (V(r) - E) u in
// units 2m = hbar = 1, starting from u(0) = 0 with unit slope.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>

namespace qkp::numerov {

/// Step-size policy: the step starts at `initial_step` and doubles whenever the
/// local wavenumber allows it, never exceeding `max_step`.
struct StepPolicy {
  double initial_step = 1e-3;
  double max_step = 0.05;
  /// Target value of h * sqrt(|V(r) - E|); controls the doubling.
  double phase_per_step = 0.04;
};

/// Integrates outward to r >= r_end and calls `visit(r, u, h)` after every
/// accepted point (including r = 0). The solution is rescaled when it grows
/// large; visitors that need absolute amplitude must only use ratios.
template <typename Potential, typename Visitor>
void integrate(const Potential& potential, double energy, double r_end, const StepPolicy& policy,
               Visitor&& visit) {
  // Summed form: with w = (1 - h^2 f / 12) u the recurrence is
  // w[n+1] - w[n] = (w[n] - w[n-1]) + h^2 f[n] u[n]. Carrying the difference
  // keeps the slope accurate over very long, slowly varying tails.
  double h = policy.initial_step;
  double c = h * h / 12.0;
  const auto f_at = [&](double r) { return potential(r) - energy; };
  double r_anchor = 0.0;
  long steps = 1;
  double r1 = h;
  double u0 = 0.0, u1 = h;
  double f0 = f_at(0.0), f1 = f_at(r1);
  double w1 = (1.0 - c * f1) * u1;
  double d = w1 - (1.0 - c * f0) * u0;
  // Point two steps back, used to switch to a doubled step.
  double r_back = 0.0, u_back = 0.0, f_back = 0.0;
  double r0 = 0.0;
  bool have_back = false;
  visit(0.0, u0, h);
  visit(r1, u1, h);
  while (r1 < r_end) {
    d += h * h * f1 * u1;
    const double w2 = w1 + d;
    ++steps;
    const double r2 = r_anchor + steps * h;
    const double f2 = f_at(r2);
    const double u2 = w2 / (1.0 - c * f2);
    r_back = r0;
    u_back = u0;
    f_back = f0;
    have_back = true;
    r0 = r1;
    u0 = u1;
    f0 = f1;
    r1 = r2;
    u1 = u2;
    f1 = f2;
    w1 = w2;
    if (std::abs(u1) > 1e150) {
      u0 *= 1e-150;
      u1 *= 1e-150;
      u_back *= 1e-150;
      w1 *= 1e-150;
      d *= 1e-150;
    }
    visit(r1, u1, h);

    const double h2 = 2.0 * h;
    if (have_back && h2 <= policy.max_step) {
      // The doubled step must resolve the wavenumber at every point it spans.
      const double k_loc = std::sqrt(std::max(std::abs(f1), std::abs(f0)));
      if (h2 * k_loc <= policy.phase_per_step) {
        // Points r_back, r1 are 2h apart: restart from them.
        h = h2;
        c = h * h / 12.0;
        r0 = r_back;
        u0 = u_back;
        f0 = f_back;
        r_anchor = r0;
        steps = 1;
        w1 = (1.0 - c * f1) * u1;
        d = w1 - (1.0 - c * f0) * u0;
        have_back = false;
      }
    }
  }
}

/// s-wave phase shift (mod pi, in (-pi/2, pi/2]) from matching u to
/// A sin(k r + delta) at r_end and at the first grid point past
/// r_end - pi / (2k). A quarter wavelength keeps the two-point fit well
/// conditioned.
template <typename Potential>
double phase_shift(const Potential& potential, double k, double r_end, const StepPolicy& policy) {
  const double r_first = r_end - 0.5 * std::numbers::pi / k;
  double ra = 0.0, ua = 0.0, rb = 0.0, ub = 0.0;
  bool have_a = false;
  integrate(potential, k * k, r_end, policy, [&](double r, double u, double) {
    if (!have_a && r >= r_first) {
      ra = r;
      ua = u;
      have_a = true;
    }
    rb = r;
    ub = u;
  });
  const double num = ua * std::sin(k * rb) - ub * std::sin(k * ra);
  const double den = ub * std::cos(k * ra) - ua * std::cos(k * rb);
  double delta = std::atan(num / den);
  if (delta <= -0.5 * std::numbers::pi) delta += std::numbers::pi;
  return delta;
}

}  // namespace qkp::numerov
