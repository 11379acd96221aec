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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ctc {

enum class Suite { Unitarity, FixedPoint, Oracle, Constraints, Figures };

std::string_view to_string(Suite s);
std::optional<Suite> parse_suite(std::string_view name);
std::vector<Suite> all_suites();
double default_tolerance(Suite s);

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyReport {
  Suite suite = Suite::Unitarity;
  std::vector<CheckResult> checks;

  bool pass() const;
};

/// Runs one suite. A check passes when its residual is at most `tol`.
VerifyReport verify(Suite suite, double tol);

}  // namespace ctc
