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

#include "ctcsim/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "ctcsim/dctc.hpp"
#include "ctcsim/pctc.hpp"
#include "ctcsim/sweep.hpp"

namespace ctc {

namespace {

class Checks {
 public:
  explicit Checks(double tol) : tol_(tol) {}

  void add(std::string name, double residual) {
    const bool ok = std::isfinite(residual) && residual <= tol_;
    checks_.push_back({std::move(name), residual, tol_, ok});
  }
  /// A boolean property reported as residual 0 or 1.
  void require(std::string name, bool ok) { add(std::move(name), ok ? 0.0 : 1.0); }

  std::vector<CheckResult> take() { return std::move(checks_); }

 private:
  double tol_;
  std::vector<CheckResult> checks_;
};

std::string label(std::initializer_list<std::pair<const char*, double>> parts) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : parts) {
    os << (first ? "" : ",") << k << '=' << v;
    first = false;
  }
  return os.str();
}

CircuitSpec unit_circuit(int levels, double dt, double e1 = 0.0) {
  CircuitSpec c;
  c.clock = ClockSpec::unit_tick(levels, e1);
  c.dt = dt;
  return c;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::vector<double> diagonal(const Matrix& m) {
  std::vector<double> d(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) d[static_cast<std::size_t>(i)] = m(i, i).real();
  return d;
}

void unitarity(Checks& out) {
  for (int n = 2; n <= 16; ++n) {
    out.add("vacuum_swap N=" + std::to_string(n), vacuum_swap(n).unitarity_defect());
    for (double dt : {0.0, 0.37, 1.0}) {
      out.add("circuit " + label({{"N", n}, {"dt", dt}}),
              circuit_unitary(unit_circuit(n, dt, 0.3)).unitarity_defect());
    }
  }
  for (int n = 2; n <= 8; ++n) {
    const ClockSpec clock = ClockSpec::unit_tick(n);
    out.add("orthogonalisation N=" + std::to_string(n),
            std::abs(clock_overlap(clock, clock.t_perp())));
  }
}

void fixedpoint(Checks& out) {
  for (int n : {2, 3, 5}) {
    for (double om : {0.0, 0.25, 0.5, 0.75}) {
      for (double dt : {0.0, 0.5, 1.0, 1.5, 2.0}) {
        for (double g : {0.0, 1.0 / 3.0, 1.0}) {
          FixedPointQuery q;
          q.circuit = unit_circuit(n, dt);
          q.omega = om;
          q.g = g;
          const DensityOperator theta = analytic_cv(q);
          const DensityOperator sigma = input_density(q.circuit.clock, om);
          const std::string tag = label({{"N", n}, {"omega", om}, {"dt", dt}, {"g", g}});
          out.add("cv residual " + tag,
                  trace_distance(cv_map(q.circuit, sigma, theta), theta));
          out.add("output " + tag,
                  trace_distance(output_map(q.circuit, sigma, theta), analytic_output(q)));
        }
      }
    }
  }
}

void oracle(Checks& out) {
  std::mt19937 rng(20261019);
  std::uniform_int_distribution<int> levels(2, 4);
  std::uniform_real_distribution<double> omega(0.0, 0.75);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> delay(0.0, 2.0);
  for (int i = 0; i < 30; ++i) {
    FixedPointQuery q;
    q.circuit = unit_circuit(levels(rng), delay(rng));
    q.omega = omega(rng);
    q.g = unit(rng);
    const std::string tag = "sample " + std::to_string(i);

    const int max_iter =
        q.omega == 0.0 ? 5 : static_cast<int>(std::ceil(std::log(1e-13) / std::log(q.omega))) + 10;
    const EcpResult ecp = ecp_solve(q, 1e-12 * (1.0 - q.omega), max_iter);
    const DensityOperator sigma = input_density(q.circuit.clock, q.omega);
    const DensityOperator out_state = output_map(q.circuit, sigma, ecp.state);
    const DctcPopulations pops = dctc_populations(q);
    out.add("dctc cv populations " + tag, max_abs_diff(pops.cv, diagonal(ecp.state.matrix())));
    out.add("dctc output populations " + tag,
            max_abs_diff(pops.output, diagonal(out_state.matrix())));

    const ClockSpec& clock = q.circuit.clock;
    const StateVector phi0_ext = clock_state(clock);
    const StateVector phi_perp_ext = evolved_clock(clock, {1, clock.t_perp()});
    const DctcClockProbabilities probs = dctc_clock_probabilities(q);
    out.add("dctc clock probabilities " + tag,
            max_abs_diff({probs.cv_unevolved, probs.cv_orthogonal, probs.out_unevolved,
                          probs.out_orthogonal},
                         {ecp.state.expectation(phi0_ext), ecp.state.expectation(phi_perp_ext),
                          out_state.expectation(phi0_ext),
                          out_state.expectation(phi_perp_ext)}));

    try {
      const StateVector psi =
          pctc_apply(reduced_operator_numeric(q.circuit), vacuum_clock(clock, q.omega));
      const PctcObservables obs = pctc_observables(q.circuit, q.omega);
      std::vector<double> numeric(static_cast<std::size_t>(clock.levels + 1));
      for (int k = 0; k <= clock.levels; ++k) numeric[static_cast<std::size_t>(k)] = std::norm(psi[k]);
      out.add("pctc populations " + tag, max_abs_diff(obs.populations, numeric));
      const double pu = std::norm(phi0_ext.amplitudes().dot(psi.amplitudes()));
      const double po = std::norm(phi_perp_ext.amplitudes().dot(psi.amplitudes()));
      out.add("pctc clock probabilities " + tag,
              max_abs_diff({obs.p_unevolved, obs.p_orthogonal}, {pu, po}));
    } catch (const ForbiddenInitialData&) {
      out.require("pctc sample allowed " + tag, false);
    }
  }
}

void constraints(Checks& out) {
  for (int n : {2, 3}) {
    for (int p : {1, 2}) {
      for (int qq : {0, 1}) {
        const ConstraintParams params{p, qq};
        const CircuitSpec c = constrained_circuit(ClockSpec::unit_tick(n), params);
        const std::string tag = label({{"N", n}, {"p", p}, {"q", qq}});
        Matrix expected = Matrix::Zero(n + 1, n + 1);
        expected(0, 0) = 1.0 - n;
        out.add("collapsed operator " + tag,
                max_abs(reduced_operator_numeric(c).matrix() - expected));
        bool forbidden = false;
        try {
          pctc_apply(reduced_operator(c), vacuum_clock(c.clock, 0.0));
        } catch (const ForbiddenInitialData&) {
          forbidden = true;
        }
        out.require("clock input forbidden " + tag, forbidden);
        const RecordResult rec = record_experiment(c, params);
        out.add("record collapse " + tag, 1.0 - std::norm(rec.output.amplitudes()(0, 0)));
        out.require("record schmidt rank 1 " + tag, rec.schmidt_rank == 1);
      }
    }
  }
}

using Curves = std::map<std::pair<double, std::string>, std::vector<std::pair<double, double>>>;

// (omega, observable) -> [(dt, value)]
Curves sweep_curves(Model model) {
  RunConfig cfg;
  cfg.model = model;
  cfg.levels = 2;
  cfg.omega.clear();
  for (double s : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}) cfg.omega.push_back(s * s);
  const SweepResult res = run_sweep(cfg);
  Curves curves;
  for (const SweepRow& r : res.rows) {
    if (r.value) curves[{r.omega, r.observable}].emplace_back(r.dt_over_tperp, *r.value);
  }
  return curves;
}

double value_at(const std::vector<std::pair<double, double>>& curve, double dt) {
  for (const auto& [x, v] : curve)
    if (std::abs(x - dt) < 1e-12) return v;
  return NAN;
}

void figures(Checks& out) {
  const Curves pctc = sweep_curves(Model::Pctc);
  out.add("pctc p_unevolved(0) at omega=0",
          std::abs(value_at(pctc.at({0.0, "p_unevolved"}), 0.0) - 1.0));
  out.add("pctc p_orthogonal(t_perp) at omega=0",
          std::abs(value_at(pctc.at({0.0, "p_orthogonal"}), 1.0) - 0.5));
  const double best = value_at(pctc.at({0.0, "p_orthogonal"}), 1.0);
  double worst_gap = 0.0;
  for (const auto& [key, curve] : pctc) {
    if (key.second == "p_orthogonal") {
      worst_gap = std::max(worst_gap, value_at(curve, 1.0) - best);
    }
  }
  out.add("pctc p_orthogonal(t_perp) maximal at omega=0", std::max(0.0, worst_gap));

  const Curves dctc = sweep_curves(Model::Dctc);
  const double flat = (1.0 - 1.0 / 3.0) / 2.0;
  for (const char* obs : {"cv_p_unevolved", "cv_p_orthogonal"}) {
    double dev = 0.0;
    for (const auto& [dt, v] : dctc.at({1.0, obs})) dev = std::max(dev, std::abs(v - flat));
    out.add(std::string("dctc ") + obs + " flat at omega=1", dev);
  }
  double pop_dev = 0.0;
  for (const auto& [key, curve] : dctc) {
    if (key.second.rfind("pop_", 0) != 0 && key.second.rfind("cv_pop_", 0) != 0) continue;
    for (const auto& [dt, v] : curve) pop_dev = std::max(pop_dev, std::abs(v - curve.front().second));
  }
  out.add("dctc populations constant in dt", pop_dev);
}

}  // namespace

std::string_view to_string(Suite s) {
  switch (s) {
    case Suite::Unitarity: return "unitarity";
    case Suite::FixedPoint: return "fixedpoint";
    case Suite::Oracle: return "oracle";
    case Suite::Constraints: return "constraints";
    case Suite::Figures: return "figures";
  }
  return "?";
}

std::optional<Suite> parse_suite(std::string_view name) {
  for (Suite s : all_suites())
    if (to_string(s) == name) return s;
  return std::nullopt;
}

std::vector<Suite> all_suites() {
  return {Suite::Unitarity, Suite::FixedPoint, Suite::Oracle, Suite::Constraints,
          Suite::Figures};
}

double default_tolerance(Suite s) {
  switch (s) {
    case Suite::FixedPoint:
    case Suite::Oracle: return 1e-9;
    default: return 1e-12;
  }
}

bool VerifyReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

VerifyReport verify(Suite suite, double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  Checks checks(tol);
  switch (suite) {
    case Suite::Unitarity: unitarity(checks); break;
    case Suite::FixedPoint: fixedpoint(checks); break;
    case Suite::Oracle: oracle(checks); break;
    case Suite::Constraints: constraints(checks); break;
    case Suite::Figures: figures(checks); break;
  }
  return VerifyReport{suite, checks.take()};
}

}  // namespace ctc
