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
#include <numbers>

#include "ctcsim/config.hpp"
#include "doctest.h"

using namespace ctc;

TEST_CASE("defaults") {
  const RunConfig c = parse_config("");
  CHECK(c.model == Model::Dctc);
  CHECK(c.levels == 2);
  CHECK(c.omega.size() == 6);
  CHECK(c.omega[2] == doctest::Approx(0.16));
  CHECK(c.delays().size() == 201);
  CHECK(c.delays().back() == 2.0);
  CHECK(c.delays()[100] == doctest::Approx(1.0));
  CHECK(c.effective_observables().size() == 3);
  CHECK(c.output_path == "-");
}

TEST_CASE("settings with comments and whitespace") {
  const RunConfig c = parse_config(
      "# figure preset\n"
      "model = pctc\n"
      "N=3   # three levels\n"
      "\n"
      "sqrt_omega = 0, 0.5 ,1\n"
      "dt_grid = 0:1:11\n"
      "observables = clock_probs\n"
      "out = run.csv\n");
  CHECK(c.model == Model::Pctc);
  CHECK(c.levels == 3);
  REQUIRE(c.omega.size() == 3);
  CHECK(c.omega[1] == doctest::Approx(0.25));
  CHECK(c.delays().size() == 11);
  CHECK(c.effective_observables() == std::vector<Observable>{Observable::ClockProbs});
  CHECK(c.output_path == "run.csv");
}

TEST_CASE("overrides win over the file") {
  const RunConfig c = parse_config("N = 3\nomega = 0.5\n", {{"N", "4", "--N"}});
  CHECK(c.levels == 4);
  CHECK(c.omega == std::vector<double>{0.5});
}

TEST_CASE("errors name the offending line or flag") {
  auto where = [](const std::string& text, const std::vector<Setting>& o = {}) {
    try {
      parse_config(text, o);
    } catch (const ConfigError& e) {
      return e.where();
    }
    return std::string("no error");
  };
  CHECK(where("N = 2\nbogus = 1\n") == "line 2");
  CHECK(where("N = x\n") == "line 1");
  CHECK(where("N = 1\n") == "line 1");
  CHECK(where("omega = 0.2, 1.3\n") == "line 1");
  CHECK(where("just text\n") == "line 1");
  CHECK(where("dt_grid = 0:2\n") == "line 1");
  CHECK(where("dt_grid = 2:0:5\n") == "line 1");
  CHECK(where("dt_grid = 0:2:1\n") == "line 1");
  CHECK(where("constrained = 0,1\n") == "line 1");
  CHECK(where("observables = everything\n") == "line 1");
  CHECK(where("model = deutsch\n") == "line 1");
  CHECK(where("", {{"omega", "nan", "--omega"}}) == "--omega");
}

TEST_CASE("cross-field rules") {
  CHECK_THROWS_AS(parse_config("model = pctc\ng = 0.5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("model = pctc\nobservables = cv_probs\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("e1 = 0.1\nconstrained = 1,0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("dt = 1\n"), ConfigError);  // six default omegas
  CHECK_NOTHROW(parse_config("dt = 1\nomega = 0\n"));
  CHECK_THROWS_AS(parse_config("dt = 1\nomega = 0\ng = 0.1,0.2\n"), ConfigError);
}

TEST_CASE("constrained scenario sets the ground energy") {
  const RunConfig c = parse_config("N = 3\nconstrained = 2,1\n");
  CHECK(c.clock().e1 == doctest::Approx(std::numbers::pi * 3 / 6));
  CHECK(c.clock().t_perp() == doctest::Approx(1.0));
  const RunConfig plain = parse_config("e1 = 0.25\n");
  CHECK(plain.clock().e1 == 0.25);
}

TEST_CASE("grid endpoints are exact") {
  const DtGrid g{0.1, 0.7, 7};
  const auto v = g.values();
  CHECK(v.front() == 0.1);
  CHECK(v.back() == 0.7);
  CHECK(v[3] == doctest::Approx(0.4));
}
