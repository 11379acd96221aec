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

#include "ctcsim/clock.hpp"

#include <cmath>
#include <sstream>

namespace ctc {

ClockSpec ClockSpec::unit_tick(int levels, double e1) {
  if (levels < 2) throw DomainError("a clock needs at least 2 levels");
  ClockSpec spec;
  spec.levels = levels;
  spec.e1 = e1;
  spec.de = 2.0 * std::numbers::pi / levels;
  return spec;
}

void ClockSpec::validate() const {
  if (levels < 2) {
    std::ostringstream os;
    os << "clock dimension must be >= 2, got " << levels;
    throw DomainError(os.str());
  }
  if (!(de > 0.0) || !std::isfinite(de)) throw DomainError("level spacing must be > 0");
  if (!std::isfinite(e1)) throw DomainError("ground energy must be finite");
}

StateVector clock_state(const ClockSpec& spec) {
  spec.validate();
  Vector v = Vector::Zero(spec.extended_dim());
  v.tail(spec.levels).setConstant(1.0 / std::sqrt(static_cast<double>(spec.levels)));
  return StateVector(std::move(v));
}

StateVector evolved_clock(const ClockSpec& spec, EvolvedClockLabel label) {
  spec.validate();
  if (label.windings < 0) throw DomainError("winding number must be >= 0");
  const double amp = 1.0 / std::sqrt(static_cast<double>(spec.levels));
  Vector v = Vector::Zero(spec.extended_dim());
  for (int n = 1; n <= spec.levels; ++n) {
    const double phase = label.windings * spec.energy(n) * label.delay;
    v(n) = std::polar(amp, -phase);
  }
  return StateVector(std::move(v));
}

Operator evolution(const ClockSpec& spec, double t) {
  spec.validate();
  Matrix r = Matrix::Zero(spec.levels, spec.levels);
  for (int n = 1; n <= spec.levels; ++n) {
    r(n - 1, n - 1) = std::polar(1.0, -spec.energy(n) * t);
  }
  return Operator(std::move(r));
}

Operator vacuum_extend(const Operator& u) {
  if (!u.is_square()) throw DimensionError("vacuum_extend needs a square operator");
  const double defect = u.unitarity_defect();
  if (defect > 1e-10) {
    std::ostringstream os;
    os << "vacuum_extend: operator is not unitary (defect " << defect << ")";
    throw DomainError(os.str());
  }
  const Eigen::Index n = u.dim_in();
  Matrix m = Matrix::Zero(n + 1, n + 1);
  m(0, 0) = 1.0;
  m.bottomRightCorner(n, n) = u.matrix();
  return Operator(std::move(m));
}

Complex clock_overlap(const ClockSpec& spec, double dt) {
  spec.validate();
  const int n_levels = spec.levels;
  const double ratio = dt / spec.t_perp();
  Complex sum = 0.0;
  for (int n = 1; n <= n_levels; ++n) {
    sum += std::polar(1.0, -2.0 * std::numbers::pi * (n - 1) * ratio / n_levels);
  }
  return std::polar(1.0, -spec.e1 * dt) * sum / static_cast<double>(n_levels);
}

StateVector vacuum_clock(const ClockSpec& spec, double omega) {
  if (!(omega >= 0.0 && omega <= 1.0)) {
    std::ostringstream os;
    os << "vacuum weight omega must lie in [0, 1], got " << omega;
    throw DomainError(os.str());
  }
  Vector v = std::sqrt(1.0 - omega) * clock_state(spec).amplitudes();
  v(0) = std::sqrt(omega);
  return StateVector(std::move(v));
}

}  // namespace ctc
