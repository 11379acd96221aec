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

#include "ctcsim/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <sstream>
#include <tuple>

#include "ctcsim/dctc.hpp"
#include "ctcsim/pctc.hpp"

namespace ctc {

namespace {

constexpr double kPopulationSumTol = 1e-10;

std::vector<std::string> population_names(const std::string& prefix, int levels) {
  std::vector<std::string> names;
  for (int n = 0; n <= levels; ++n) names.push_back(prefix + std::to_string(n));
  return names;
}

void check_population_sum(const std::vector<double>& pops, const char* what) {
  const double sum = std::accumulate(pops.begin(), pops.end(), 0.0);
  if (std::abs(sum - 1.0) > kPopulationSumTol) {
    std::ostringstream os;
    os << what << " populations sum to " << format_number(sum);
    throw std::logic_error(os.str());
  }
}

class RowSink {
 public:
  RowSink(std::vector<SweepRow>& rows, double dt, double omega, std::optional<double> g)
      : rows_(rows), dt_(dt), omega_(omega), g_(g) {}

  void add(std::string name, double value) {
    rows_.push_back({dt_, omega_, g_, std::move(name), value, {}});
  }
  void add_all(const std::vector<std::string>& names, const std::vector<double>& values) {
    for (std::size_t i = 0; i < names.size(); ++i) add(names[i], values[i]);
  }
  void forbid(const std::vector<std::string>& names, const std::string& reason) {
    for (const auto& n : names) rows_.push_back({dt_, omega_, g_, n, std::nullopt, reason});
  }

 private:
  std::vector<SweepRow>& rows_;
  double dt_;
  double omega_;
  std::optional<double> g_;
};

bool wants(const std::vector<Observable>& obs, Observable o) {
  return std::find(obs.begin(), obs.end(), o) != obs.end();
}

void dctc_point(const RunConfig& cfg, const ClockSpec& clock, double dt, double omega,
                double g, std::vector<SweepRow>& rows) {
  const auto obs = cfg.effective_observables();
  FixedPointQuery query;
  query.circuit.clock = clock;
  query.circuit.dt = dt * clock.t_perp();
  query.omega = omega;
  query.g = g;
  RowSink sink(rows, dt, omega, g);

  if (wants(obs, Observable::Populations)) {
    const DctcPopulations pops = dctc_populations(query);
    check_population_sum(pops.output, "output");
    check_population_sum(pops.cv, "trapped");
    sink.add_all(population_names("pop_", clock.levels), pops.output);
    sink.add_all(population_names("cv_pop_", clock.levels), pops.cv);
  }
  if (wants(obs, Observable::ClockProbs) || wants(obs, Observable::CvProbs)) {
    const DctcClockProbabilities p = dctc_clock_probabilities(query);
    if (wants(obs, Observable::ClockProbs)) {
      sink.add("p_unevolved", p.out_unevolved);
      sink.add("p_orthogonal", p.out_orthogonal);
    }
    if (wants(obs, Observable::CvProbs)) {
      sink.add("cv_p_unevolved", p.cv_unevolved);
      sink.add("cv_p_orthogonal", p.cv_orthogonal);
    }
  }
}

void pctc_point(const RunConfig& cfg, const ClockSpec& clock, double dt, double omega,
                std::vector<SweepRow>& rows) {
  const auto obs = cfg.effective_observables();
  CircuitSpec circuit;
  circuit.clock = clock;
  circuit.dt = dt * clock.t_perp();
  RowSink sink(rows, dt, omega, std::nullopt);

  std::vector<std::string> names;
  if (wants(obs, Observable::Populations)) names = population_names("pop_", clock.levels);
  if (wants(obs, Observable::ClockProbs)) {
    names.emplace_back("p_unevolved");
    names.emplace_back("p_orthogonal");
  }
  try {
    const PctcObservables o = pctc_observables(circuit, omega);
    if (wants(obs, Observable::Populations)) {
      check_population_sum(o.populations, "P-CTC");
      sink.add_all(population_names("pop_", clock.levels), o.populations);
    }
    if (wants(obs, Observable::ClockProbs)) {
      sink.add("p_unevolved", o.p_unevolved);
      sink.add("p_orthogonal", o.p_orthogonal);
    }
  } catch (const ForbiddenInitialData&) {
    sink.forbid(names, "forbidden initial data: post-selection norm vanishes");
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

bool SweepResult::any_forbidden() const {
  return std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return !r.value; });
}

SweepResult run_sweep(const RunConfig& config) {
  validate(config);
  const ClockSpec clock = config.clock();
  SweepResult result;
  for (double dt : config.delays()) {
    for (double omega : config.omega) {
      if (config.model == Model::Dctc) {
        for (double g : config.g) dctc_point(config, clock, dt, omega, g, result.rows);
      } else {
        pctc_point(config, clock, dt, omega, result.rows);
      }
    }
  }
  std::stable_sort(result.rows.begin(), result.rows.end(),
                   [](const SweepRow& a, const SweepRow& b) {
                     return std::tie(a.dt_over_tperp, a.omega, a.g, a.observable) <
                            std::tie(b.dt_over_tperp, b.omega, b.g, b.observable);
                   });
  return result;
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(std::ostream& os, const SweepResult& result) {
  os << kCsvHeader << '\n';
  for (const SweepRow& r : result.rows) {
    os << format_number(r.dt_over_tperp) << ',' << format_number(r.omega) << ','
       << (r.g ? format_number(*r.g) : std::string()) << ',' << csv_field(r.observable) << ','
       << (r.value ? format_number(*r.value) : std::string("NA")) << ','
       << csv_field(r.reason) << '\n';
  }
}

std::string to_csv(const SweepResult& result) {
  std::ostringstream os;
  write_csv(os, result);
  return os.str();
}

}  // namespace ctc
