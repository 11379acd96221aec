// Copyright 2026 The ctcsim Authors
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

#include <numbers>

#include "ctcsim/hilbert.hpp"

namespace ctc {

/// An N-level clock with equally spaced energies E_n = e1 + (n-1)*de, hbar = 1.
///
/// The default spacing 2*pi/N gives an orthogonalisation time of exactly 1,
/// so every time argument can be read as a multiple of t_perp.
struct ClockSpec {
  int levels = 2;
  double e1 = 0.0;
  double de = std::numbers::pi;

  /// Clock with unit orthogonalisation time. Throws DomainError for N < 2.
  static ClockSpec unit_tick(int levels, double e1 = 0.0);

  /// Throws DomainError unless levels >= 2 and de > 0.
  void validate() const;

  /// Vacuum-extended dimension N + 1.
  Eigen::Index extended_dim() const { return levels + 1; }
  double energy(int n) const { return e1 + (n - 1) * de; }
  double t_perp() const { return 2.0 * std::numbers::pi / (levels * de); }
};

/// Labels R^k(delay)|phi>: the clock after k passes through a delay.
struct EvolvedClockLabel {
  int windings = 1;
  double delay = 0.0;
};

/// Uniform superposition over clock levels, embedded at indices 1..N of the
/// vacuum-extended space (vacuum amplitude 0).
StateVector clock_state(const ClockSpec& spec);

/// R^k(delay)|phi>, vacuum-extended. Phases are evaluated directly as
/// k*E_n*delay rather than by repeated multiplication.
StateVector evolved_clock(const ClockSpec& spec, EvolvedClockLabel label);

/// R(t) = exp(-i H t) on the N-dimensional clock subspace.
Operator evolution(const ClockSpec& spec, double t);

/// |0><0| (+) u. Throws DomainError if u is not unitary within 1e-10.
Operator vacuum_extend(const Operator& u);

/// <phi(t)|phi(t + dt)> from the closed-form sum over levels.
Complex clock_overlap(const ClockSpec& spec, double dt);

/// sqrt(omega)|0> + sqrt(1 - omega)|phi>. Throws DomainError for omega
/// outside [0, 1].
StateVector vacuum_clock(const ClockSpec& spec, double omega);

}  // namespace ctc
