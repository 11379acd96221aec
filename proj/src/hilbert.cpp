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

#include "ctcsim/hilbert.hpp"

#include <cmath>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

namespace ctc {

namespace {

void check_entry_cap(Eigen::Index rows, Eigen::Index cols, std::size_t cap) {
  const double entries = static_cast<double>(rows) * static_cast<double>(cols);
  if (entries > static_cast<double>(cap)) {
    std::ostringstream os;
    os << "tensor product of shape " << rows << "x" << cols
       << " exceeds the entry cap " << cap;
    throw DimensionError(os.str());
  }
}

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

// --- StateVector -------------------------------------------------------------

StateVector::StateVector(Vector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) throw DimensionError("state vector must have dim >= 1");
}

StateVector StateVector::basis(Eigen::Index dim, Eigen::Index index) {
  if (index < 0 || index >= dim) {
    throw DimensionError("basis index out of range");
  }
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return StateVector(std::move(v));
}

bool StateVector::is_normalized(double tol) const {
  return std::abs(norm() - 1.0) <= tol;
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n < 1e-300) throw DomainError("cannot normalize a zero vector");
  return StateVector(amps_ / n);
}

// --- Operator ----------------------------------------------------------------

Operator::Operator(Matrix m) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.cols() == 0) {
    throw DimensionError("operator must have nonzero shape");
  }
}

Operator Operator::identity(Eigen::Index dim) {
  return Operator(Matrix::Identity(dim, dim));
}

Complex Operator::trace() const {
  if (!is_square()) throw DimensionError("trace of a non-square operator");
  return m_.trace();
}

double Operator::unitarity_defect() const {
  if (!is_square()) throw DimensionError("unitarity of a non-square operator");
  return max_abs(m_.adjoint() * m_ - Matrix::Identity(m_.rows(), m_.cols()));
}

Operator Operator::operator*(const Operator& rhs) const {
  if (dim_in() != rhs.dim_out()) throw DimensionError("operator product shape mismatch");
  return Operator(m_ * rhs.m_);
}

StateVector Operator::operator*(const StateVector& v) const {
  if (dim_in() != v.dim()) throw DimensionError("operator/state shape mismatch");
  return StateVector(m_ * v.amplitudes());
}

// --- DensityOperator -----------------------------------------------------------

DensityOperator DensityOperator::from_matrix(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionError("density operator must be square and nonempty");
  }
  const double herm = max_abs(m - m.adjoint());
  if (herm > kHermitianTol) {
    std::ostringstream os;
    os << "matrix is not Hermitian (deviation " << herm << ")";
    throw DomainError(os.str());
  }
  const Complex tr = m.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    std::ostringstream os;
    os << "density trace deviates from 1 by " << std::abs(tr - 1.0);
    throw DomainError(os.str());
  }
  Matrix h = hermitian_part(m);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw SolverError("eigen-decomposition failed");
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < kEigenTol) {
    std::ostringstream os;
    os << "matrix is not positive semidefinite (min eigenvalue " << min_eig << ")";
    throw DomainError(os.str());
  }
  return DensityOperator(std::move(h));
}

DensityOperator DensityOperator::pure(const StateVector& psi) {
  if (!psi.is_normalized()) throw DomainError("pure density from unnormalized state");
  const Vector& v = psi.amplitudes();
  return DensityOperator(v * v.adjoint());
}

DensityOperator DensityOperator::maximally_mixed(Eigen::Index dim) {
  if (dim <= 0) throw DimensionError("dimension must be positive");
  return DensityOperator(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

double DensityOperator::expectation(const StateVector& psi) const {
  if (psi.dim() != dim()) throw DimensionError("expectation shape mismatch");
  const Vector& v = psi.amplitudes();
  return v.dot(m_ * v).real();
}

// --- free functions ---------------------------------------------------------------

Operator tensor(const Operator& a, const Operator& b, std::size_t entry_cap) {
  check_entry_cap(a.dim_out() * b.dim_out(), a.dim_in() * b.dim_in(), entry_cap);
  return Operator(Eigen::kroneckerProduct(a.matrix(), b.matrix()).eval());
}

StateVector tensor(const StateVector& a, const StateVector& b, std::size_t entry_cap) {
  check_entry_cap(a.dim() * b.dim(), 1, entry_cap);
  return StateVector(Eigen::kroneckerProduct(a.amplitudes(), b.amplitudes()).eval());
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b,
                       std::size_t entry_cap) {
  const Eigen::Index d = a.dim() * b.dim();
  check_entry_cap(d, d, entry_cap);
  return DensityOperator::from_matrix(
      Eigen::kroneckerProduct(a.matrix(), b.matrix()).eval());
}

Matrix partial_trace(const Matrix& m, Slot keep, BipartiteDims dims) {
  const Eigen::Index total = dims.cr * dims.cv;
  if (dims.cr <= 0 || dims.cv <= 0 || m.rows() != total || m.cols() != total) {
    std::ostringstream os;
    os << "partial trace: operator is " << m.rows() << "x" << m.cols()
       << " but slots are " << dims.cr << "x" << dims.cv;
    throw DimensionError(os.str());
  }
  if (keep == Slot::CR) {
    Matrix out = Matrix::Zero(dims.cr, dims.cr);
    for (Eigen::Index a = 0; a < dims.cr; ++a)
      for (Eigen::Index b = 0; b < dims.cr; ++b)
        for (Eigen::Index i = 0; i < dims.cv; ++i)
          out(a, b) += m(a * dims.cv + i, b * dims.cv + i);
    return out;
  }
  Matrix out = Matrix::Zero(dims.cv, dims.cv);
  for (Eigen::Index a = 0; a < dims.cr; ++a)
    out += m.block(a * dims.cv, a * dims.cv, dims.cv, dims.cv);
  return out;
}

Operator partial_trace(const Operator& op, Slot keep, BipartiteDims dims) {
  return Operator(partial_trace(op.matrix(), keep, dims));
}

DensityOperator partial_trace(const DensityOperator& rho, Slot keep,
                              BipartiteDims dims) {
  return DensityOperator::from_matrix(partial_trace(rho.matrix(), keep, dims));
}

double trace_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    throw DimensionError("trace distance shape mismatch");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(a - b),
                                           Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw SolverError("eigen-decomposition failed");
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const DensityOperator& a, const DensityOperator& b) {
  return trace_distance(a.matrix(), b.matrix());
}

double fidelity_pure(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw DimensionError("fidelity shape mismatch");
  if (!a.is_normalized() || !b.is_normalized()) {
    throw DomainError("fidelity_pure requires normalized states");
  }
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace ctc
