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

// Run configuration for parameter sweeps.
//
// A configuration is a flat UTF-8 document of `key = value` lines; `#` starts
// a comment. Command-line flags are applied afterwards as extra settings, so
// they override anything read from a file.
//
//   model       dctc | pctc
//   N           clock levels (>= 2)
//   omega       comma list of vacuum weights in [0, 1]
//   sqrt_omega  comma list of sqrt(omega) values in [0, 1]
//   g           comma list of trapped vacuum weights (dctc only)
//   dt_grid     START:STOP:POINTS in units of t_perp (POINTS >= 2)
//   dt          single delay in units of t_perp (replaces the grid)
//   e1          ground-state energy (t_perp = 1 units)
//   constrained P,Q   sets e1 = pi(1+2Q)/(P N); the interference null sits
//                     at dt = P N
//   observables comma list of populations | clock_probs | cv_probs
//   out         output path, "-" for stdout

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ctcsim/pctc.hpp"

namespace ctc {

enum class Model { Dctc, Pctc };
enum class Observable { Populations, ClockProbs, CvProbs };

std::string_view to_string(Model m);
std::string_view to_string(Observable o);

struct DtGrid {
  double start = 0.0;
  double stop = 2.0;
  int points = 201;

  /// start + (stop - start) i / (points - 1), endpoints exact.
  std::vector<double> values() const;
};

struct RunConfig {
  Model model = Model::Dctc;
  int levels = 2;
  std::vector<double> omega{0.0, 0.04, 0.16, 0.36, 0.64, 1.0};
  std::vector<double> g{1.0 / 3.0};
  DtGrid dt_grid;
  std::optional<double> single_dt;
  double e1 = 0.0;
  std::optional<ConstraintParams> constrained;
  /// Empty means every observable defined for the model.
  std::vector<Observable> observables;
  std::string output_path = "-";

  bool g_set = false;
  bool e1_set = false;

  bool single_point() const { return single_dt.has_value(); }
  std::vector<double> delays() const;
  std::vector<Observable> effective_observables() const;
  /// Clock with t_perp = 1 and the configured (or constrained) ground energy.
  ClockSpec clock() const;
};

/// Validation failure; `where()` is "line N" or the offending flag.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string where, const std::string& message)
      : std::runtime_error(where.empty() ? message : where + ": " + message),
        where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

struct Setting {
  std::string key;
  std::string value;
  std::string where;
};

/// Splits a config document into settings tagged with line numbers.
std::vector<Setting> read_settings(std::string_view text);

/// Applies file settings, then overrides, then validates.
RunConfig parse_config(std::string_view text, const std::vector<Setting>& overrides = {});

void apply_setting(RunConfig& config, const Setting& setting);
/// Throws ConfigError for cross-field violations.
void validate(const RunConfig& config);

}  // namespace ctc
