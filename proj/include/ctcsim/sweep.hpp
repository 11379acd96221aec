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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ctcsim/config.hpp"

namespace ctc {

/// One observable at one grid point. `g` is empty for P-CTC rows; `value` is
/// empty when the point is forbidden, with `reason` saying why.
struct SweepRow {
  double dt_over_tperp = 0.0;
  double omega = 0.0;
  std::optional<double> g;
  std::string observable;
  std::optional<double> value;
  std::string reason;
};

struct SweepResult {
  std::vector<SweepRow> rows;

  bool any_forbidden() const;
};

inline constexpr const char* kCsvHeader = "dt_over_tperp,omega,g,observable,value,reason";

/// Evaluates the closed-form observables at every grid point. Rows are sorted
/// by (dt, omega, g, observable).
SweepResult run_sweep(const RunConfig& config);

/// 17 significant digits, "%.17g".
std::string format_number(double x);

void write_csv(std::ostream& os, const SweepResult& result);
std::string to_csv(const SweepResult& result);

}  // namespace ctc
