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

#include "ctcsim/pctc.hpp"

#include <cmath>
#include <sstream>

namespace ctc {

namespace {

void require_ideal_legs(const CircuitSpec& c) {
  if (c.t_in != 0.0 || c.t_out != 0.0) {
    throw DomainError("closed-form P-CTC results assume t_in = t_out = 0");
  }
}

void check_omega(double omega) {
  if (!(omega >= 0.0 && omega <= 1.0)) throw DomainError("omega must lie in [0, 1]");
}

[[noreturn]] void forbid(double norm_squared) {
  std::ostringstream os;
  os << "post-selection norm^2 " << norm_squared
     << " vanishes: the input is annihilated by destructive interference";
  throw ForbiddenInitialData(os.str(), norm_squared);
}

}  // namespace

void ConstraintParams::validate() const {
  if (p < 1) throw DomainError("constraint parameter p must be >= 1");
  if (q < 0) throw DomainError("constraint parameter q must be >= 0");
}

double ConstraintParams::delay(const ClockSpec& clock) const {
  validate();
  return p * clock.levels * clock.t_perp();
}

double ConstraintParams::ground_energy(const ClockSpec& clock) const {
  validate();
  return std::numbers::pi * (1 + 2 * q) / (p * clock.levels * clock.t_perp());
}

CircuitSpec constrained_circuit(const ClockSpec& base, ConstraintParams params) {
  base.validate();
  CircuitSpec c;
  c.clock = base;
  c.clock.e1 = params.ground_energy(base);
  c.dt = params.delay(base);
  return c;
}

Operator reduced_operator(const CircuitSpec& circuit) {
  require_ideal_legs(circuit);
  const Operator r = evolution(circuit.clock, circuit.dt);
  const Eigen::Index n = circuit.clock.levels;
  Matrix w = Matrix::Zero(n + 1, n + 1);
  w(0, 0) = 1.0 + r.trace();
  w.bottomRightCorner(n, n) = Matrix::Identity(n, n) + r.matrix();
  return Operator(std::move(w));
}

Operator reduced_operator_numeric(const CircuitSpec& circuit) {
  return partial_trace(circuit_unitary(circuit), Slot::CR, circuit.dims());
}

StateVector canonical_phase(const StateVector& psi) {
  const Vector& a = psi.amplitudes();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (std::abs(a(i)) > 1e-12) {
      const Complex gauge = std::conj(a(i)) / std::abs(a(i));
      return StateVector(a * gauge);
    }
  }
  return psi;
}

StateVector pctc_apply(const Operator& w, const StateVector& psi) {
  if (!psi.is_normalized()) throw DomainError("pctc_apply needs a normalized input");
  const StateVector out = w * psi;
  const double n2 = out.amplitudes().squaredNorm();
  if (n2 < kForbiddenNormSquared) forbid(n2);
  return canonical_phase(out.normalized());
}

double pctc_normalization(const CircuitSpec& circuit, double omega) {
  check_omega(omega);
  require_ideal_legs(circuit);
  const ClockSpec& clock = circuit.clock;
  const Complex tr_r = evolution(clock, circuit.dt).trace();
  const Complex tr_ext = 1.0 + tr_r;
  return omega * std::norm(tr_ext) +
         (1.0 - omega) * (2.0 + 2.0 * tr_r.real() / clock.levels);
}

StateVector pctc_output(const CircuitSpec& circuit, double omega) {
  const double norm2 = pctc_normalization(circuit, omega);
  if (norm2 < kForbiddenNormSquared) forbid(norm2);
  const ClockSpec& clock = circuit.clock;
  const Complex tr_ext = 1.0 + evolution(clock, circuit.dt).trace();
  Vector v = std::sqrt(1.0 - omega) * (clock_state(clock).amplitudes() +
                                       evolved_clock(clock, {1, circuit.dt}).amplitudes());
  v(0) = std::sqrt(omega) * tr_ext;
  return canonical_phase(StateVector(v / std::sqrt(norm2)));
}

PctcObservables pctc_observables(const CircuitSpec& circuit, double omega) {
  PctcObservables obs;
  obs.normalization = pctc_normalization(circuit, omega);
  if (obs.normalization < kForbiddenNormSquared) forbid(obs.normalization);
  const ClockSpec& clock = circuit.clock;
  const double nn = obs.normalization;
  const Operator r = evolution(clock, circuit.dt);
  const Complex tr_r = r.trace();
  const auto n_levels = static_cast<double>(clock.levels);

  obs.populations.resize(static_cast<std::size_t>(clock.levels + 1));
  obs.populations[0] = omega * std::norm(1.0 + tr_r) / nn;
  for (int n = 1; n <= clock.levels; ++n) {
    obs.populations[static_cast<std::size_t>(n)] =
        (1.0 - omega) * std::norm(1.0 + r(n - 1, n - 1)) / (n_levels * nn);
  }
  const Complex tr_orth = (evolution(clock, clock.t_perp()).adjoint() * r).trace();
  obs.p_unevolved = (1.0 - omega) * std::norm(1.0 + tr_r / n_levels) / nn;
  obs.p_orthogonal = (1.0 - omega) * std::norm(tr_orth / n_levels) / nn;
  return obs;
}

// --- record experiment ----------------------------------------------------------

BipartiteState::BipartiteState(Matrix amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) throw DimensionError("bipartite state must be nonempty");
  if (std::abs(amps_.norm() - 1.0) > 1e-9) {
    throw DomainError("bipartite state must have unit norm");
  }
}

Eigen::VectorXd BipartiteState::schmidt_coefficients() const {
  Eigen::JacobiSVD<Matrix> svd(amps_);
  return svd.singularValues();
}

int BipartiteState::schmidt_rank(double tol) const {
  const Eigen::VectorXd s = schmidt_coefficients();
  return static_cast<int>((s.array() > tol).count());
}

double BipartiteState::record_vacuum_probability() const {
  return amps_.row(0).squaredNorm();
}

StateVector BipartiteState::as_state_vector() const {
  Vector v(amps_.size());
  for (Eigen::Index r = 0; r < amps_.rows(); ++r)
    for (Eigen::Index c = 0; c < amps_.cols(); ++c) v(r * amps_.cols() + c) = amps_(r, c);
  return StateVector(std::move(v));
}

BipartiteState BipartiteState::swapped() const { return BipartiteState(amps_.transpose()); }

BipartiteState record_input(const ClockSpec& clock, double omega) {
  check_omega(omega);
  const Vector phi = clock_state(clock).amplitudes();
  Matrix a = std::sqrt(1.0 - omega) * phi * phi.transpose();
  a(0, 0) = std::sqrt(omega);
  return BipartiteState(std::move(a));
}

RecordResult record_experiment(const Operator& w, const BipartiteState& input) {
  if (w.dim_in() != input.cr_dim() || !w.is_square()) {
    throw DimensionError("reduced operator does not act on the CR factor");
  }
  // (1 (x) W) sum A_rc |r>|c>  ->  A W^T
  const Matrix out = input.amplitudes() * w.matrix().transpose();
  const double n2 = out.squaredNorm();
  if (n2 < kForbiddenNormSquared) forbid(n2);
  BipartiteState state(out / std::sqrt(n2));
  const int rank = state.schmidt_rank();
  const double p0 = state.record_vacuum_probability();
  return RecordResult{std::move(state), rank, p0};
}

RecordResult record_experiment(const CircuitSpec& circuit,
                               std::optional<ConstraintParams> constrained,
                               double omega) {
  const CircuitSpec effective =
      constrained ? constrained_circuit(circuit.clock, *constrained) : circuit;
  return record_experiment(reduced_operator(effective), record_input(effective.clock, omega));
}

}  // namespace ctc
