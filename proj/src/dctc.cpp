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

#include "ctcsim/dctc.hpp"

#include <cmath>
#include <sstream>

namespace ctc {

namespace {

constexpr std::size_t kMaxWindings = 10'000'000;

void require_ideal_legs(const CircuitSpec& c) {
  if (c.t_in != 0.0 || c.t_out != 0.0) {
    throw DomainError("closed-form solutions assume t_in = t_out = 0");
  }
}

// tr[R^k(dt)] without forming R^k.
Complex winding_trace(const ClockSpec& clock, int k, double dt) {
  Complex sum = 0.0;
  for (int n = 1; n <= clock.levels; ++n) sum += std::polar(1.0, -k * clock.energy(n) * dt);
  return sum;
}

// tr[R^dag(t_perp) R^k(dt)]
Complex orthogonal_winding_trace(const ClockSpec& clock, int k, double dt) {
  const double tp = clock.t_perp();
  Complex sum = 0.0;
  for (int n = 1; n <= clock.levels; ++n) {
    sum += std::polar(1.0, clock.energy(n) * (tp - k * dt));
  }
  return sum;
}

// sum_k w_k |phi^(k)><phi^(k)| on the extended space (vacuum row/column zero).
Matrix winding_mixture(const ClockSpec& clock, double dt, const std::vector<double>& w) {
  const int n_levels = clock.levels;
  Matrix m = Matrix::Zero(n_levels + 1, n_levels + 1);
  for (int a = 1; a <= n_levels; ++a) {
    for (int b = a; b <= n_levels; ++b) {
      const double gap = clock.energy(a) - clock.energy(b);
      Complex s = 0.0;
      for (std::size_t k = 0; k < w.size(); ++k) {
        s += w[k] * std::polar(1.0, -static_cast<double>(k + 1) * gap * dt);
      }
      m(a, b) = s / static_cast<double>(n_levels);
      m(b, a) = std::conj(m(a, b));
    }
  }
  return m;
}

Matrix projector(const StateVector& v) {
  return v.amplitudes() * v.amplitudes().adjoint();
}

// Hermitian matrices as a real vector space, orthonormal under Re tr(A^dag B).
std::vector<Matrix> hermitian_basis(Eigen::Index d) {
  std::vector<Matrix> basis;
  basis.reserve(static_cast<std::size_t>(d * d));
  const double s = 1.0 / std::sqrt(2.0);
  for (Eigen::Index i = 0; i < d; ++i) {
    Matrix e = Matrix::Zero(d, d);
    e(i, i) = 1.0;
    basis.push_back(std::move(e));
  }
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) {
      Matrix re = Matrix::Zero(d, d);
      re(i, j) = s;
      re(j, i) = s;
      basis.push_back(std::move(re));
      Matrix im = Matrix::Zero(d, d);
      im(i, j) = Complex(0.0, -s);
      im(j, i) = Complex(0.0, s);
      basis.push_back(std::move(im));
    }
  }
  return basis;
}

double real_inner(const Matrix& a, const Matrix& b) {
  return (a.conjugate().cwiseProduct(b)).sum().real();
}

}  // namespace

// --- FixedPointQuery -----------------------------------------------------------

Matrix FixedPointQuery::seed_mixture_extended() const {
  const int n_levels = circuit.clock.levels;
  Matrix m = Matrix::Zero(n_levels + 1, n_levels + 1);
  if (seed_mixture) {
    m.bottomRightCorner(n_levels, n_levels) = seed_mixture->matrix();
  } else {
    m.bottomRightCorner(n_levels, n_levels).diagonal().setConstant(1.0 / n_levels);
  }
  return m;
}

void FixedPointQuery::validate() const {
  circuit.clock.validate();
  if (!(omega >= 0.0 && omega <= 1.0)) throw DomainError("omega must lie in [0, 1]");
  const double gv = vacuum_weight();
  if (!(gv >= 0.0 && gv <= 1.0)) throw DomainError("g must lie in [0, 1]");
  if (!(truncation_eps > 0.0 && truncation_eps < 1.0)) {
    throw DomainError("truncation_eps must lie in (0, 1)");
  }
  if (seed_mixture) {
    if (seed_mixture->dim() != circuit.clock.levels) {
      throw DimensionError("seed mixture must live on the N-level clock subspace");
    }
    Matrix off = seed_mixture->matrix();
    off.diagonal().setZero();
    if (max_abs(off) > 1e-12) {
      throw DomainError("seed mixture must be diagonal in the energy basis");
    }
  }
}

DensityOperator input_density(const ClockSpec& clock, double omega) {
  return DensityOperator::pure(vacuum_clock(clock, omega));
}

// --- channel -------------------------------------------------------------------

CvChannel::CvChannel(const CircuitSpec& circuit, const DensityOperator& sigma)
    : unitary_(circuit_unitary(circuit).matrix()),
      sigma_(sigma.matrix()),
      dims_(circuit.dims()) {
  if (sigma.dim() != dims_.cr) throw DimensionError("CR input has the wrong dimension");
}

Matrix CvChannel::joint(const Matrix& theta) const {
  if (theta.rows() != dims_.cv || theta.cols() != dims_.cv) {
    throw DimensionError("CV state has the wrong dimension");
  }
  const Eigen::Index d = dims_.cv;
  // U (sigma (x) theta) U^dag, assembled blockwise.
  Matrix prod(d * d, d * d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b)
      prod.block(a * d, b * d, d, d) = sigma_(a, b) * theta;
  return unitary_ * prod * unitary_.adjoint();
}

Matrix CvChannel::apply(const Matrix& theta) const {
  return partial_trace(joint(theta), Slot::CV, dims_);
}

Matrix CvChannel::output(const Matrix& theta) const {
  return partial_trace(joint(theta), Slot::CR, dims_);
}

DensityOperator cv_map(const CircuitSpec& circuit, const DensityOperator& sigma,
                       const DensityOperator& theta) {
  return DensityOperator::from_matrix(CvChannel(circuit, sigma).apply(theta.matrix()));
}

DensityOperator output_map(const CircuitSpec& circuit, const DensityOperator& sigma,
                           const DensityOperator& theta) {
  return DensityOperator::from_matrix(CvChannel(circuit, sigma).output(theta.matrix()));
}

// --- iteration -------------------------------------------------------------------

EcpResult ecp_iterate(const CircuitSpec& circuit, const DensityOperator& sigma,
                      const DensityOperator& seed, double tol, int max_iter) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  if (max_iter < 1) throw DomainError("max_iter must be >= 1");
  const CvChannel channel(circuit, sigma);
  Matrix current = seed.matrix();
  double step = 0.0;
  int it = 0;
  bool converged = false;
  while (it < max_iter) {
    Matrix next = channel.apply(current);
    step = trace_distance(next, current);
    current = std::move(next);
    ++it;
    if (step < tol) {
      converged = true;
      break;
    }
  }
  const double residual = trace_distance(channel.apply(current), current);
  if (!converged) {
    std::ostringstream os;
    os << "fixed-point iteration did not converge in " << max_iter
       << " steps (last step " << step << ", residual " << residual << ")";
    throw ConvergenceError(os.str(), it, residual);
  }
  return EcpResult{DensityOperator::from_matrix(current), it, step, residual, {}};
}

EcpResult ecp_solve(const FixedPointQuery& query, double tol, int max_iter) {
  query.validate();
  const double g = query.vacuum_weight();
  Matrix seed = (1.0 - g) * query.seed_mixture_extended();
  seed(0, 0) += g;

  std::vector<std::string> warnings;
  const double om = query.omega;
  if (om > 0.0 && om < 1.0) {
    const double predicted = std::ceil(std::log(tol) / std::log(om));
    if (om >= 0.99 || predicted > max_iter) {
      std::ostringstream os;
      os << "omega = " << om << " contracts slowly: about " << predicted
         << " iterations expected (max_iter " << max_iter << ")";
      warnings.push_back(os.str());
    }
  }
  EcpResult result = ecp_iterate(query.circuit, input_density(query.circuit.clock, om),
                                 DensityOperator::from_matrix(seed), tol, max_iter);
  result.warnings = std::move(warnings);
  return result;
}

// --- eigen-analysis ---------------------------------------------------------------

bool is_degenerate_delay(const CircuitSpec& circuit) {
  const double period = circuit.clock.levels * circuit.clock.t_perp();
  const double x = circuit.dt / period;
  return std::abs(x - std::round(x)) < 1e-9;
}

Matrix FixedPointFamily::member(std::span<const double> coefficients) const {
  if (coefficients.size() != directions.size()) {
    throw DimensionError("coefficient count does not match the family dimension");
  }
  Matrix m = reference;
  for (std::size_t i = 0; i < directions.size(); ++i) m += coefficients[i] * directions[i];
  return m;
}

Matrix FixedPointFamily::with_vacuum_population(double g) const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(directions.size()));
  for (std::size_t i = 0; i < directions.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = directions[i](0, 0).real();
  }
  const double gap = g - reference(0, 0).real();
  const double vn = v.squaredNorm();
  if (vn < 1e-24) {
    if (std::abs(gap) < 1e-12) return reference;
    throw SolverError("no fixed point with the requested vacuum population");
  }
  const Eigen::VectorXd a = v * (gap / vn);
  return member(std::span<const double>(a.data(), static_cast<std::size_t>(a.size())));
}

FixedPointFamily fixed_space(const CircuitSpec& circuit, const DensityOperator& sigma,
                             double null_tol) {
  const CvChannel channel(circuit, sigma);
  const Eigen::Index d = channel.dim();
  const std::vector<Matrix> basis = hermitian_basis(d);
  const auto nb = static_cast<Eigen::Index>(basis.size());

  std::vector<Matrix> images;
  images.reserve(basis.size());
  for (const Matrix& b : basis) images.push_back(channel.apply(b));

  Eigen::MatrixXd gen(nb, nb);
  for (Eigen::Index j = 0; j < nb; ++j)
    for (Eigen::Index k = 0; k < nb; ++k)
      gen(j, k) = real_inner(basis[j], images[k]) - (j == k ? 1.0 : 0.0);
  if (!gen.allFinite()) throw SolverError("vectorized CV map contains non-finite entries");

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(gen, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  std::vector<Eigen::Index> null_cols;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) < null_tol) null_cols.push_back(i);
  if (null_cols.empty()) throw SolverError("CV map has no eigenvalue-one Hermitian eigenvectors");

  const auto r = static_cast<Eigen::Index>(null_cols.size());
  std::vector<Matrix> fixed;
  Eigen::VectorXd traces(r);
  for (Eigen::Index c = 0; c < r; ++c) {
    Matrix h = Matrix::Zero(d, d);
    for (Eigen::Index j = 0; j < nb; ++j) h += svd.matrixV()(j, null_cols[c]) * basis[j];
    traces(c) = h.trace().real();
    fixed.push_back(std::move(h));
  }
  if (traces.norm() < 1e-12) throw SolverError("fixed space contains no trace-one member");

  FixedPointFamily family;
  family.dimension = static_cast<int>(r - 1);
  family.degenerate_delay = is_degenerate_delay(circuit);

  const Eigen::VectorXd ref_coeffs = traces / traces.squaredNorm();
  family.reference = Matrix::Zero(d, d);
  for (Eigen::Index c = 0; c < r; ++c) family.reference += ref_coeffs(c) * fixed[c];

  // Columns 1..r-1 of the Householder Q are orthonormal and orthogonal to the
  // trace functional.
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(traces);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(r, r);
  for (Eigen::Index c = 1; c < r; ++c) {
    Matrix dir = Matrix::Zero(d, d);
    for (Eigen::Index k = 0; k < r; ++k) dir += q(k, c) * fixed[k];
    family.directions.push_back(std::move(dir));
  }

  family.max_residual = max_abs(channel.apply(family.reference) - family.reference);
  for (const Matrix& dir : family.directions) {
    family.max_residual = std::max(family.max_residual, max_abs(channel.apply(dir) - dir));
  }
  return family;
}

// --- closed forms -------------------------------------------------------------------

std::vector<double> winding_weights(double omega, double eps) {
  if (!(omega >= 0.0 && omega < 1.0)) {
    throw DomainError("winding series needs omega in [0, 1)");
  }
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("truncation eps must lie in (0, 1)");
  if (omega == 0.0) return {1.0};
  const double k_real = std::ceil(std::log(eps) / std::log(omega));
  if (k_real > static_cast<double>(kMaxWindings)) {
    std::ostringstream os;
    os << "omega = " << omega << " needs " << k_real << " windings; too close to 1";
    throw DomainError(os.str());
  }
  const auto k_max = static_cast<std::size_t>(std::max(1.0, k_real));
  std::vector<double> w(k_max);
  double p = 1.0 - omega;
  double total = 0.0;
  for (std::size_t k = 0; k < k_max; ++k) {
    w[k] = p;
    total += p;
    p *= omega;
  }
  for (double& x : w) x /= total;
  return w;
}

DensityOperator analytic_cv(const FixedPointQuery& query) {
  query.validate();
  require_ideal_legs(query.circuit);
  const double g = query.vacuum_weight();
  const ClockSpec& clock = query.circuit.clock;
  Matrix theta;
  if (query.omega == 1.0) {
    theta = (1.0 - g) * query.seed_mixture_extended();
  } else {
    theta = (1.0 - g) * winding_mixture(clock, query.circuit.dt,
                                        winding_weights(query.omega, query.truncation_eps));
  }
  theta(0, 0) += g;
  return DensityOperator::from_matrix(theta);
}

DensityOperator analytic_output(const FixedPointQuery& query) {
  query.validate();
  require_ideal_legs(query.circuit);
  const ClockSpec& clock = query.circuit.clock;
  const Eigen::Index d = clock.extended_dim();
  const double om = query.omega;
  if (om == 1.0) return DensityOperator::pure(StateVector::basis(d, 0));

  const double g = query.vacuum_weight();
  const double dt = query.circuit.dt;
  const std::vector<double> w = winding_weights(om, query.truncation_eps);

  // Coherence row sum_k w_k tr[R^k]/N <phi^(k)|.
  Vector row = Vector::Zero(d);
  for (std::size_t k = 0; k < w.size(); ++k) {
    const int windings = static_cast<int>(k + 1);
    const Complex overlap = winding_trace(clock, windings, dt) / static_cast<double>(clock.levels);
    row += w[k] * overlap * evolved_clock(clock, {windings, dt}).amplitudes().conjugate();
  }

  Matrix series = (1.0 - om) * winding_mixture(clock, dt, w);
  series(0, 0) += om;
  const double cross = std::sqrt(om) * std::sqrt(1.0 - om);
  series.row(0) += cross * row.transpose();
  series.col(0) += cross * row.conjugate();

  Matrix out = g * projector(vacuum_clock(clock, om)) + (1.0 - g) * series;
  return DensityOperator::from_matrix(out);
}

DctcPopulations dctc_populations(const FixedPointQuery& query) {
  query.validate();
  const int n_levels = query.circuit.clock.levels;
  const double g = query.vacuum_weight();
  const double om = query.omega;
  DctcPopulations pops;
  pops.cv.assign(static_cast<std::size_t>(n_levels + 1), (1.0 - g) / n_levels);
  pops.output.assign(static_cast<std::size_t>(n_levels + 1), (1.0 - om) / n_levels);
  pops.cv[0] = g;
  pops.output[0] = om;
  if (om == 1.0) {
    const Matrix rho = query.seed_mixture_extended();
    for (int n = 1; n <= n_levels; ++n) pops.cv[static_cast<std::size_t>(n)] = (1.0 - g) * rho(n, n).real();
  }
  return pops;
}

DctcClockProbabilities dctc_clock_probabilities(const FixedPointQuery& query) {
  query.validate();
  require_ideal_legs(query.circuit);
  const ClockSpec& clock = query.circuit.clock;
  const double g = query.vacuum_weight();
  const double om = query.omega;
  const double n2 = static_cast<double>(clock.levels) * clock.levels;

  DctcClockProbabilities p;
  if (om == 1.0) {
    const Matrix rho = query.seed_mixture_extended();
    const Vector u = clock_state(clock).amplitudes();
    const Vector v = evolved_clock(clock, {1, clock.t_perp()}).amplitudes();
    p.cv_unevolved = (1.0 - g) * u.dot(rho * u).real();
    p.cv_orthogonal = (1.0 - g) * v.dot(rho * v).real();
  } else {
    const std::vector<double> w = winding_weights(om, query.truncation_eps);
    double s_unevolved = 0.0;
    double s_orthogonal = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      const int windings = static_cast<int>(k + 1);
      s_unevolved += w[k] * std::norm(winding_trace(clock, windings, query.circuit.dt)) / n2;
      s_orthogonal +=
          w[k] * std::norm(orthogonal_winding_trace(clock, windings, query.circuit.dt)) / n2;
    }
    // The vacuum branch of the trapped state passes |phi~> through unchanged;
    // its overlap with |phi(t_perp)> is tr[R(t_perp)]/N, which vanishes.
    const double pass_orth = std::norm(clock_overlap(clock, clock.t_perp()));
    p.cv_unevolved = (1.0 - g) * s_unevolved;
    p.cv_orthogonal = (1.0 - g) * s_orthogonal;
    p.out_unevolved = g * (1.0 - om) + (1.0 - g) * (1.0 - om) * s_unevolved;
    p.out_orthogonal = g * (1.0 - om) * pass_orth + (1.0 - g) * (1.0 - om) * s_orthogonal;
  }
  p.relations.unevolved_additive_g = p.out_unevolved - (g + (1.0 - om) * p.cv_unevolved);
  p.relations.unevolved_scaled_g = p.out_unevolved - (1.0 - om) * (g + p.cv_unevolved);
  p.relations.orthogonal = p.out_orthogonal - (1.0 - om) * p.cv_orthogonal;
  return p;
}

}  // namespace ctc
