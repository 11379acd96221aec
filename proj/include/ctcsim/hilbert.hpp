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

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "ctcsim/errors.hpp"

namespace ctc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Largest number of matrix entries a tensor product may produce.
inline constexpr std::size_t kDefaultEntryCap = std::size_t{1} << 20;

/// Pure state over a finite basis. Basis index 0 is the vacuum whenever the
/// space is vacuum-extended; clock level |n> sits at index n.
class StateVector {
 public:
  explicit StateVector(Vector amplitudes);

  static StateVector basis(Eigen::Index dim, Eigen::Index index);

  Eigen::Index dim() const { return amps_.size(); }
  const Vector& amplitudes() const { return amps_; }
  Complex operator[](Eigen::Index i) const { return amps_(i); }

  double norm() const { return amps_.norm(); }
  bool is_normalized(double tol = 1e-9) const;
  /// Throws DomainError on a (numerically) zero vector.
  StateVector normalized() const;

 private:
  Vector amps_;
};

/// General (possibly rectangular, possibly non-unitary) linear operator.
class Operator {
 public:
  explicit Operator(Matrix m);

  static Operator identity(Eigen::Index dim);

  Eigen::Index dim_in() const { return m_.cols(); }
  Eigen::Index dim_out() const { return m_.rows(); }
  bool is_square() const { return m_.rows() == m_.cols(); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

  Operator adjoint() const { return Operator(m_.adjoint()); }
  Complex trace() const;

  /// max |(U^dag U - 1)_ij|; throws for non-square operators.
  double unitarity_defect() const;
  bool is_unitary(double tol = 1e-10) const { return unitarity_defect() <= tol; }

  Operator operator*(const Operator& rhs) const;
  StateVector operator*(const StateVector& v) const;

 private:
  Matrix m_;
};

/// Hermitian, positive semidefinite, unit-trace matrix. The invariants are
/// checked on construction.
class DensityOperator {
 public:
  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kTraceTol = 1e-12;
  static constexpr double kEigenTol = -1e-10;

  /// Validates and stores `m`; the stored matrix is symmetrised.
  static DensityOperator from_matrix(const Matrix& m);
  static DensityOperator pure(const StateVector& psi);
  static DensityOperator maximally_mixed(Eigen::Index dim);

  Eigen::Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

  /// Real diagonal entry <i|rho|i>.
  double population(Eigen::Index i) const { return m_(i, i).real(); }
  /// <psi|rho|psi> for a state of matching dimension.
  double expectation(const StateVector& psi) const;

 private:
  explicit DensityOperator(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

/// Slot of a bipartite space. CR is the first tensor factor, CV the second.
enum class Slot { CR, CV };

struct BipartiteDims {
  Eigen::Index cr;
  Eigen::Index cv;
};

// Kronecker products; the left operand occupies the first (CR) slot.
Operator tensor(const Operator& a, const Operator& b,
                std::size_t entry_cap = kDefaultEntryCap);
StateVector tensor(const StateVector& a, const StateVector& b,
                   std::size_t entry_cap = kDefaultEntryCap);
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b,
                       std::size_t entry_cap = kDefaultEntryCap);

/// Traces out the slot that is not `keep`.
Matrix partial_trace(const Matrix& m, Slot keep, BipartiteDims dims);
Operator partial_trace(const Operator& op, Slot keep, BipartiteDims dims);
DensityOperator partial_trace(const DensityOperator& rho, Slot keep,
                              BipartiteDims dims);

/// Half the trace norm of (a - b).
double trace_distance(const DensityOperator& a, const DensityOperator& b);
/// Same metric on raw Hermitian matrices, used inside iterative solvers.
double trace_distance(const Matrix& a, const Matrix& b);

/// |<a|b>|^2 for normalized inputs.
double fidelity_pure(const StateVector& a, const StateVector& b);

/// max_ij |m_ij|
double max_abs(const Matrix& m);

}  // namespace ctc
