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

#include <cmath>
#include <random>

#include "ctcsim/dctc.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace ctc;

namespace {

CircuitSpec make(int n, double dt, double e1 = 0.0) {
  CircuitSpec c;
  c.clock = ClockSpec::unit_tick(n, e1);
  c.dt = dt;
  return c;
}

FixedPointQuery query(int n, double omega, double dt, double g) {
  FixedPointQuery q;
  q.circuit = make(n, dt);
  q.omega = omega;
  q.g = g;
  return q;
}

Matrix projector(const Vector& v) { return v * v.adjoint(); }

}  // namespace

TEST_CASE("trapped-state map agrees with the expanded form and the Kraus sum") {
  std::mt19937 rng(101);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 3;
    const double om = unit(rng);
    const double dt = 2.0 * unit(rng);
    const CircuitSpec c = make(n, dt);
    const DensityOperator sigma = input_density(c.clock, om);
    const Matrix theta = oracle::random_density(rng, n + 1);
    const Matrix mapped = cv_map(c, sigma, DensityOperator::from_matrix(theta)).matrix();
    CHECK(max_abs(mapped - oracle::cv_map(theta, n, om, dt)) < 1e-13);

    const auto ks = oracle::kraus(oracle::circuit(n, dt), oracle::vacuum_clock(n, om), n + 1);
    Matrix kraus_sum = Matrix::Zero(n + 1, n + 1);
    for (const Matrix& k : ks) kraus_sum += k * theta * k.adjoint();
    CHECK(max_abs(mapped - kraus_sum) < 1e-13);
  }
}

TEST_CASE("trapped-state map is trace preserving and keeps the vacuum population") {
  std::mt19937 rng(202);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 4;
    const CircuitSpec c = make(n, 3.0 * unit(rng), unit(rng));
    const DensityOperator sigma = input_density(c.clock, unit(rng));
    const DensityOperator theta = DensityOperator::from_matrix(oracle::random_density(rng, n + 1));
    const DensityOperator out = cv_map(c, sigma, theta);
    CHECK(std::abs(out.matrix().trace() - 1.0) < 1e-13);
    CHECK(std::abs(out.population(0) - theta.population(0)) <= 1e-13);
    const DensityOperator d = output_map(c, sigma, theta);
    CHECK(std::abs(d.population(0) - sigma.population(0)) <= 1e-13);
  }
}

TEST_CASE("winding weights") {
  CHECK(winding_weights(0.0, 1e-12) == std::vector<double>{1.0});
  const auto w = winding_weights(0.5, 1e-12);
  CHECK(w.size() == 40);
  double total = 0.0;
  for (double x : w) total += x;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(w[1] / w[0] == doctest::Approx(0.5));
  CHECK_THROWS_AS(winding_weights(1.0, 1e-12), DomainError);
  CHECK_THROWS_AS(winding_weights(0.5, 0.0), DomainError);
  CHECK_THROWS_AS(winding_weights(1.0 - 1e-12, 1e-12), DomainError);
}

TEST_CASE("closed-form trapped state is a fixed point on the full grid") {
  for (int n : {2, 3, 5}) {
    for (double om : {0.0, 0.25, 0.5, 0.75}) {
      for (double dt : {0.0, 0.5, 1.0, 1.5, 2.0}) {
        for (double g : {0.0, 1.0 / 3.0, 1.0}) {
          const FixedPointQuery q = query(n, om, dt, g);
          const DensityOperator theta = analytic_cv(q);
          const DensityOperator sigma = input_density(q.circuit.clock, om);
          CHECK(trace_distance(cv_map(q.circuit, sigma, theta), theta) <= 1e-9);
          CHECK(trace_distance(output_map(q.circuit, sigma, theta), analytic_output(q)) <= 1e-9);
        }
      }
    }
  }
}

TEST_CASE("at dt = t_perp the windings fold onto N clock states") {
  for (int n : {2, 3, 4}) {
    for (double om : {0.2, 0.6}) {
      const double g = 0.3;
      const FixedPointQuery q = query(n, om, 1.0, g);
      Matrix expect = Matrix::Zero(n + 1, n + 1);
      expect(0, 0) = g;
      for (int m = 1; m <= n; ++m) {
        const double weight = (1.0 - om) * std::pow(om, m - 1) / (1.0 - std::pow(om, n));
        expect += (1.0 - g) * weight * projector(oracle::vacuum_clock(n, 0.0, 0.0, m));
      }
      CHECK(max_abs(analytic_cv(q).matrix() - expect) < 1e-11);
    }
  }
}

TEST_CASE("clock input with no vacuum at dt = t_perp") {
  for (int n : {2, 3, 5}) {
    for (double g : {0.0, 0.25, 1.0}) {
      const FixedPointQuery q = query(n, 0.0, 1.0, g);
      const Matrix expect = g * projector(oracle::vacuum_clock(n, 0.0)) +
                            (1.0 - g) * projector(oracle::vacuum_clock(n, 0.0, 0.0, 1.0));
      CHECK(max_abs(analytic_output(q).matrix() - expect) <= 1e-10);
      Eigen::SelfAdjointEigenSolver<Matrix> es(analytic_output(q).matrix());
      const auto ev = es.eigenvalues();
      CHECK(ev(ev.size() - 1) == doctest::Approx(std::max(g, 1.0 - g)).epsilon(1e-10));
    }
  }
}

TEST_CASE("populations are constant in the delay") {
  for (double dt = 0.0; dt <= 2.0; dt += 0.125) {
    const FixedPointQuery q = query(3, 0.4, dt, 0.2);
    const DctcPopulations pops = dctc_populations(q);
    const DensityOperator theta = analytic_cv(q);
    const DensityOperator out = analytic_output(q);
    CHECK(pops.cv[0] == doctest::Approx(0.2));
    CHECK(pops.output[0] == doctest::Approx(0.4));
    for (int k = 0; k <= 3; ++k) {
      CHECK(std::abs(pops.cv[k] - theta.population(k)) <= 1e-12);
      CHECK(std::abs(pops.output[k] - out.population(k)) <= 1e-12);
    }
    for (int k = 1; k <= 3; ++k) {
      CHECK(pops.cv[k] == doctest::Approx(0.8 / 3));
      CHECK(pops.output[k] == doctest::Approx(0.6 / 3));
    }
  }
}

TEST_CASE("clock probabilities match matrix elements of the solved states") {
  std::mt19937 rng(303);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 3;
    const FixedPointQuery q = query(n, 0.75 * unit(rng), 2.0 * unit(rng), unit(rng));
    const DctcClockProbabilities p = dctc_clock_probabilities(q);
    const Matrix theta = analytic_cv(q).matrix();
    const Matrix out = output_map(q.circuit, input_density(q.circuit.clock, q.omega),
                                  analytic_cv(q))
                           .matrix();
    const Vector u = oracle::vacuum_clock(n, 0.0);
    const Vector v = oracle::vacuum_clock(n, 0.0, 0.0, 1.0);
    CHECK(std::abs(p.cv_unevolved - u.dot(theta * u).real()) < 1e-11);
    CHECK(std::abs(p.cv_orthogonal - v.dot(theta * v).real()) < 1e-11);
    CHECK(std::abs(p.out_unevolved - u.dot(out * u).real()) < 1e-11);
    CHECK(std::abs(p.out_orthogonal - v.dot(out * v).real()) < 1e-11);
  }
}

TEST_CASE("output and trapped clock probabilities are linearly related") {
  for (double om : {0.0, 0.3, 0.6}) {
    for (double g : {0.0, 0.4, 1.0}) {
      for (double dt : {0.2, 0.9, 1.7}) {
        const DctcClockProbabilities p = dctc_clock_probabilities(query(2, om, dt, g));
        CHECK(std::abs(p.relations.unevolved_scaled_g) <= 1e-12);
        CHECK(std::abs(p.relations.orthogonal) <= 1e-12);
        // The vacuum offset enters scaled by (1 - omega), so the unscaled
        // form is off by exactly g omega.
        CHECK(p.relations.unevolved_additive_g == doctest::Approx(-g * om).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("all-vacuum input: trapped state is free, output is the vacuum") {
  FixedPointQuery q = query(2, 1.0, 0.6, 0.25);
  Matrix rho = Matrix::Zero(2, 2);
  rho(0, 0) = 0.7;
  rho(1, 1) = 0.3;
  q.seed_mixture = DensityOperator::from_matrix(rho);
  const DensityOperator theta = analytic_cv(q);
  CHECK(theta.population(1) == doctest::Approx(0.75 * 0.7));
  const DensityOperator sigma = input_density(q.circuit.clock, 1.0);
  CHECK(trace_distance(cv_map(q.circuit, sigma, theta), theta) < 1e-14);
  CHECK(analytic_output(q).population(0) == doctest::Approx(1.0));

  const DctcClockProbabilities p = dctc_clock_probabilities(query(2, 1.0, 0.6, 1.0 / 3.0));
  CHECK(p.cv_unevolved == doctest::Approx(1.0 / 3.0));
  CHECK(p.cv_orthogonal == doctest::Approx(1.0 / 3.0));

  Matrix coherent = Matrix::Constant(2, 2, 0.5);
  q.seed_mixture = DensityOperator::from_matrix(coherent);
  CHECK_THROWS_AS(q.validate(), DomainError);
}

TEST_CASE("query validation") {
  FixedPointQuery q = query(2, 0.5, 0.3, 0.2);
  CHECK(q.vacuum_weight() == 0.2);
  q.g.reset();
  CHECK(q.vacuum_weight() == doctest::Approx(1.0 / 3.0));
  q.omega = 1.5;
  CHECK_THROWS_AS(q.validate(), DomainError);
  q.omega = 0.5;
  q.g = -0.1;
  CHECK_THROWS_AS(q.validate(), DomainError);
  q.g = 0.5;
  q.truncation_eps = 0.0;
  CHECK_THROWS_AS(q.validate(), DomainError);
  q.truncation_eps = 1e-12;
  q.circuit.t_in = 0.1;
  CHECK_THROWS_AS(analytic_cv(q), DomainError);
  CHECK_THROWS_AS(dctc_clock_probabilities(q), DomainError);
}

TEST_CASE("iteration from the seed reaches the closed form") {
  for (double om : {0.0, 0.25, 0.5, 0.75}) {
    for (int n : {2, 3}) {
      const FixedPointQuery q = query(n, om, 0.37, 0.3);
      const int budget = om == 0.0 ? 6 : static_cast<int>(std::ceil(std::log(1e-8) / std::log(om))) + 5;
      const EcpResult r = ecp_solve(q, 1e-8 * (1.0 - om), budget);
      CHECK(r.iterations <= budget);
      CHECK(trace_distance(r.state, analytic_cv(q)) <= 1e-8);
      CHECK(r.state.population(0) == doctest::Approx(0.3).epsilon(1e-14));
      CHECK(r.warnings.empty());
    }
  }
}

TEST_CASE("iteration from random seeds lands on the g-line") {
  std::mt19937 rng(404);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 2;
    const double om = 0.1 + 0.6 * unit(rng);
    const CircuitSpec c = make(n, 0.37 + unit(rng));
    const DensityOperator seed = DensityOperator::from_matrix(oracle::random_density(rng, n + 1));
    const EcpResult r = ecp_iterate(c, input_density(c.clock, om), seed, 1e-13, 2000);
    FixedPointQuery q;
    q.circuit = c;
    q.omega = om;
    q.g = seed.population(0);
    CHECK(trace_distance(r.state, analytic_cv(q)) < 1e-10);
  }
}

TEST_CASE("iteration reports non-convergence and slow contraction") {
  const FixedPointQuery q = query(2, 0.9, 0.37, 0.3);
  CHECK_THROWS_AS(ecp_solve(q, 1e-12, 3), ConvergenceError);
  try {
    ecp_solve(q, 1e-12, 3);
  } catch (const ConvergenceError& e) {
    CHECK(e.iterations() == 3);
    CHECK(e.residual() > 0.0);
  }
  const EcpResult slow = ecp_solve(query(2, 0.995, 0.37, 0.3), 1e-3, 5000);
  CHECK_FALSE(slow.warnings.empty());
  CHECK_THROWS_AS(ecp_solve(q, 0.0, 10), DomainError);
}

TEST_CASE("fixed space dimension agrees with the superoperator nullity") {
  struct Case {
    int n;
    double omega;
    double dt;
    double e1;
  };
  const std::vector<Case> cases{{2, 0.25, 0.37, 0.0}, {3, 0.5, 0.37, 0.0}, {2, 1.0, 0.37, 0.3},
                                {3, 1.0, 0.37, 0.3},  {2, 0.5, 0.0, 0.0},  {3, 0.25, 3.0, 0.0},
                                {4, 0.5, 0.61, 0.0},  {5, 0.0, 0.37, 0.0}};
  for (const Case& k : cases) {
    CAPTURE(k.n);
    CAPTURE(k.omega);
    CAPTURE(k.dt);
    const CircuitSpec c = make(k.n, k.dt, k.e1);
    const FixedPointFamily fam = fixed_space(c, input_density(c.clock, k.omega));
    const Matrix s = oracle::superoperator(oracle::kraus(
        oracle::circuit(k.n, k.dt, k.e1), oracle::vacuum_clock(k.n, k.omega), k.n + 1));
    const Matrix gen = s - Matrix::Identity(s.rows(), s.cols());
    CHECK(fam.dimension == oracle::nullity(gen, 1e-9) - 1);
    CHECK(fam.max_residual < 1e-10);
    CHECK(std::abs(fam.reference.trace() - 1.0) < 1e-12);
    for (const Matrix& d : fam.directions) CHECK(std::abs(d.trace()) < 1e-12);
  }
}

TEST_CASE("generic delays give the g-line; all-vacuum input gives N") {
  for (int n : {2, 3}) {
    for (double om : {0.25, 0.5}) {
      const CircuitSpec c = make(n, 0.37);
      const FixedPointFamily fam = fixed_space(c, input_density(c.clock, om));
      CHECK(fam.dimension == 1);
      CHECK_FALSE(fam.degenerate_delay);
      FixedPointQuery q;
      q.circuit = c;
      q.omega = om;
      q.g = 0.6;
      CHECK(max_abs(fam.with_vacuum_population(0.6) - analytic_cv(q).matrix()) < 1e-9);
    }
    const CircuitSpec c = make(n, 0.37, 0.3);
    CHECK(fixed_space(c, input_density(c.clock, 1.0)).dimension == n);
  }
  CHECK(is_degenerate_delay(make(2, 0.0)));
  CHECK(is_degenerate_delay(make(3, 6.0)));
  CHECK_FALSE(is_degenerate_delay(make(3, 1.0)));
}

TEST_CASE("fixed-space members are fixed points") {
  const CircuitSpec c = make(3, 0.0);
  const DensityOperator sigma = input_density(c.clock, 0.5);
  const FixedPointFamily fam = fixed_space(c, sigma);
  CHECK(fam.degenerate_delay);
  CHECK(fam.dimension > 1);
  std::vector<double> coeffs(fam.directions.size(), 0.01);
  const Matrix m = fam.member(coeffs);
  CHECK(max_abs(CvChannel(c, sigma).apply(m) - m) < 1e-10);
  CHECK_THROWS_AS(fam.member(std::vector<double>{1.0}), DimensionError);
}

TEST_CASE("degenerate delays add the vacuum-clock coherence pair") {
  for (int n = 2; n <= 5; ++n) {
    for (double om : {0.0, 0.25, 0.5, 0.75}) {
      for (double dt : {0.37, 1.0, 1.5}) {
        const CircuitSpec c = make(n, dt);
        CHECK(fixed_space(c, input_density(c.clock, om)).dimension == 1);
      }
      for (int periods : {0, 1, 2}) {
        const CircuitSpec c = make(n, periods * n);
        const FixedPointFamily fam = fixed_space(c, input_density(c.clock, om));
        CHECK(fam.degenerate_delay);
        CHECK(fam.dimension == 3);
      }
    }
  }
}
