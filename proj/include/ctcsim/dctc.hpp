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

// Deutsch-consistent (D-CTC) treatment of the vacuum-extended billiard-ball
// circuit. The chronology-violating (CV) state theta must be a fixed point of
//
//     theta -> tr_CR[ U (sigma (x) theta) U^dag ],
//
// and the chronology-respecting (CR) output is the complementary marginal.
// Two routes are provided: numerical (iteration / eigen-analysis of the
// vectorized map) and the closed-form winding series.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ctcsim/gates.hpp"

namespace ctc {

struct FixedPointQuery {
  CircuitSpec circuit;
  double omega = 0.0;
  /// Vacuum weight of the trapped state; 1/(N+1) when unset.
  std::optional<double> g;
  double truncation_eps = 1e-12;
  /// Diagonal density on the N-level clock subspace. Used by the Omega = 1
  /// solution and as the clock part of the iteration seed. Maximally mixed
  /// when unset.
  std::optional<DensityOperator> seed_mixture;

  static double default_g(int levels) { return 1.0 / (levels + 1); }
  double vacuum_weight() const { return g.value_or(default_g(circuit.clock.levels)); }
  /// Seed mixture embedded into the vacuum-extended space.
  Matrix seed_mixture_extended() const;

  /// Throws DomainError on out-of-range omega, g or eps, or a non-diagonal
  /// seed mixture.
  void validate() const;
};

/// Input density |phi~><phi~| of the CR channel.
DensityOperator input_density(const ClockSpec& clock, double omega);

/// The CV consistency map and its complementary output map for a fixed CR
/// input sigma. Both are linear in theta, so they accept any square matrix.
class CvChannel {
 public:
  CvChannel(const CircuitSpec& circuit, const DensityOperator& sigma);

  Eigen::Index dim() const { return dims_.cv; }
  Matrix apply(const Matrix& theta) const;
  Matrix output(const Matrix& theta) const;

 private:
  Matrix joint(const Matrix& theta) const;

  Matrix unitary_;
  Matrix sigma_;
  BipartiteDims dims_;
};

DensityOperator cv_map(const CircuitSpec& circuit, const DensityOperator& sigma,
                       const DensityOperator& theta);
DensityOperator output_map(const CircuitSpec& circuit, const DensityOperator& sigma,
                           const DensityOperator& theta);

struct EcpResult {
  DensityOperator state;
  int iterations = 0;
  /// Trace distance between the last two iterates.
  double last_step = 0.0;
  /// trace_distance(cv_map(state), state).
  double residual = 0.0;
  std::vector<std::string> warnings;
};

/// Iterates the CV map from g|0><0| + (1-g)rho until successive iterates are
/// closer than `tol` in trace distance. Throws ConvergenceError after
/// `max_iter` map applications.
EcpResult ecp_solve(const FixedPointQuery& query, double tol, int max_iter);

/// Same iteration from an arbitrary seed.
EcpResult ecp_iterate(const CircuitSpec& circuit, const DensityOperator& sigma,
                      const DensityOperator& seed, double tol, int max_iter);

/// Affine set of Hermitian, trace-one fixed points of the CV map.
struct FixedPointFamily {
  int dimension = 0;
  /// Least Frobenius-norm trace-one fixed point.
  Matrix reference;
  /// Hermitian, traceless, Frobenius-orthonormal fixed directions.
  std::vector<Matrix> directions;
  /// Largest ||map(X) - X||_max over the reference and directions.
  double max_residual = 0.0;
  /// Delay is an integer multiple of N*t_perp: all windings coincide.
  bool degenerate_delay = false;

  Matrix member(std::span<const double> coefficients) const;
  /// The member closest to `reference` with <0|theta|0> = g. Throws
  /// SolverError when no direction moves the vacuum population.
  Matrix with_vacuum_population(double g) const;
};

/// Eigenvalue-one analysis of the vectorized CV map restricted to Hermitian
/// matrices. Singular values of (map - 1) below `null_tol` count as null.
FixedPointFamily fixed_space(const CircuitSpec& circuit, const DensityOperator& sigma,
                             double null_tol = 1e-9);

/// True when dt is an integer multiple of N*t_perp (including 0).
bool is_degenerate_delay(const CircuitSpec& circuit);

/// Normalised winding weights w_k proportional to (1 - omega) omega^(k-1),
/// k = 1..K with K = ceil(ln eps / ln omega). omega = 0 yields {1}.
/// Throws DomainError for omega outside [0, 1).
std::vector<double> winding_weights(double omega, double eps);

/// Closed-form trapped state.
DensityOperator analytic_cv(const FixedPointQuery& query);
/// Closed-form CR output including the vacuum-clock coherences.
DensityOperator analytic_output(const FixedPointQuery& query);

struct DctcPopulations {
  std::vector<double> cv;      // <n|theta|n>, n = 0..N
  std::vector<double> output;  // <n|D|n>,     n = 0..N
};

DctcPopulations dctc_populations(const FixedPointQuery& query);

/// Residuals of the linear relations between trapped and output clock
/// probabilities.
struct LinearRelationResiduals {
  /// out_unevolved - (g + (1 - omega) cv_unevolved)
  double unevolved_additive_g = 0.0;
  /// out_unevolved - (1 - omega)(g + cv_unevolved)
  double unevolved_scaled_g = 0.0;
  /// out_orthogonal - (1 - omega) cv_orthogonal
  double orthogonal = 0.0;
};

struct DctcClockProbabilities {
  double cv_unevolved = 0.0;
  double cv_orthogonal = 0.0;
  double out_unevolved = 0.0;
  double out_orthogonal = 0.0;
  LinearRelationResiduals relations;
};

/// Probabilities of finding |phi(0)> and |phi(t_perp)> in the trapped and
/// output states, from the winding series.
DctcClockProbabilities dctc_clock_probabilities(const FixedPointQuery& query);

}  // namespace ctc
