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

// Post-selected teleportation (P-CTC) treatment: the CR input evolves under
// W = tr_CV[U] and is renormalised afterwards.

#pragma once

#include <optional>
#include <vector>

#include "ctcsim/gates.hpp"

namespace ctc {

/// Squared post-selection norms below this are treated as exact zeros.
inline constexpr double kForbiddenNormSquared = 1e-12;

/// Delay and ground energy that make every non-vacuum history interfere
/// destructively: dt = p N t_perp, E1 = pi (1 + 2q) / (p N t_perp).
struct ConstraintParams {
  int p = 1;
  int q = 0;

  void validate() const;
  double delay(const ClockSpec& clock) const;
  double ground_energy(const ClockSpec& clock) const;
};

/// Circuit with the constrained delay and ground energy; level count and
/// spacing are taken from `base`.
CircuitSpec constrained_circuit(const ClockSpec& base, ConstraintParams params);

/// tr[R~(dt)]|0><0| + 1_clock + R(dt), from the closed form.
Operator reduced_operator(const CircuitSpec& circuit);
/// tr_CV[U] by explicit partial trace of the circuit unitary.
Operator reduced_operator_numeric(const CircuitSpec& circuit);

/// Multiplies the first amplitude with modulus above 1e-12 onto the positive
/// real axis.
StateVector canonical_phase(const StateVector& psi);

/// W psi / ||W psi|| in canonical phase. Throws ForbiddenInitialData when
/// ||W psi||^2 < kForbiddenNormSquared.
StateVector pctc_apply(const Operator& w, const StateVector& psi);

/// ||W |phi~>||^2 from the closed form.
double pctc_normalization(const CircuitSpec& circuit, double omega);

/// Closed-form renormalised output for the vacuum-clock input.
StateVector pctc_output(const CircuitSpec& circuit, double omega);

struct PctcObservables {
  std::vector<double> populations;  // n = 0..N
  double p_unevolved = 0.0;
  double p_orthogonal = 0.0;
  double normalization = 0.0;
};

/// Closed-form populations and clock probabilities. Throws
/// ForbiddenInitialData when the normalisation vanishes.
PctcObservables pctc_observables(const CircuitSpec& circuit, double omega);

/// Pure state on record (x) CR stored as an amplitude matrix A with
/// |psi> = sum_rc A_rc |r>|c>.
class BipartiteState {
 public:
  static constexpr double kSchmidtTol = 1e-10;

  /// Throws DomainError unless ||A||_F = 1 within 1e-9.
  explicit BipartiteState(Matrix amplitudes);

  Eigen::Index record_dim() const { return amps_.rows(); }
  Eigen::Index cr_dim() const { return amps_.cols(); }
  const Matrix& amplitudes() const { return amps_; }

  Eigen::VectorXd schmidt_coefficients() const;
  int schmidt_rank(double tol = kSchmidtTol) const;
  /// Probability that the record reads |0>.
  double record_vacuum_probability() const;
  /// Flattened with the record as the first tensor factor.
  StateVector as_state_vector() const;
  /// Same state with the two factors exchanged.
  BipartiteState swapped() const;

 private:
  Matrix amps_;
};

/// sqrt(omega)|0>|0> + sqrt(1-omega)|phi>|phi>; omega = 1/2 is the equal
/// superposition.
BipartiteState record_input(const ClockSpec& clock, double omega = 0.5);

struct RecordResult {
  BipartiteState output;
  int schmidt_rank = 0;
  double record_vacuum_prob = 0.0;
};

/// Applies 1_rec (x) w to `input` and renormalises.
RecordResult record_experiment(const Operator& w, const BipartiteState& input);

/// The record experiment on `circuit`, or on the constrained circuit built
/// from its clock when `constrained` is set.
RecordResult record_experiment(const CircuitSpec& circuit,
                               std::optional<ConstraintParams> constrained,
                               double omega = 0.5);

}  // namespace ctc
