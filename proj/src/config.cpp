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

#include "ctcsim/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace ctc {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    parts.push_back(trim(s.substr(pos, next == std::string_view::npos ? next : next - pos)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return parts;
}

double parse_real(std::string_view token, const std::string& where) {
  token = trim(token);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size() ||
      !std::isfinite(v)) {
    throw ConfigError(where, "malformed number '" + std::string(token) + "'");
  }
  return v;
}

int parse_int(std::string_view token, const std::string& where) {
  token = trim(token);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
    throw ConfigError(where, "malformed integer '" + std::string(token) + "'");
  }
  return v;
}

std::vector<double> parse_unit_list(std::string_view value, const std::string& where,
                                    const char* name) {
  std::vector<double> out;
  for (std::string_view tok : split(value, ',')) {
    const double v = parse_real(tok, where);
    if (v < 0.0 || v > 1.0) {
      std::ostringstream os;
      os << name << " value " << v << " is out of range [0, 1]";
      throw ConfigError(where, os.str());
    }
    out.push_back(v);
  }
  return out;
}

Observable parse_observable(std::string_view tok, const std::string& where) {
  if (tok == "populations") return Observable::Populations;
  if (tok == "clock_probs") return Observable::ClockProbs;
  if (tok == "cv_probs") return Observable::CvProbs;
  throw ConfigError(where, "unknown observable '" + std::string(tok) + "'");
}

}  // namespace

std::string_view to_string(Model m) { return m == Model::Dctc ? "dctc" : "pctc"; }

std::string_view to_string(Observable o) {
  switch (o) {
    case Observable::Populations: return "populations";
    case Observable::ClockProbs: return "clock_probs";
    case Observable::CvProbs: return "cv_probs";
  }
  return "?";
}

std::vector<double> DtGrid::values() const {
  std::vector<double> v(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    v[static_cast<std::size_t>(i)] = start + (stop - start) * i / (points - 1);
  }
  v.back() = stop;
  return v;
}

std::vector<double> RunConfig::delays() const {
  if (single_dt) return {*single_dt};
  return dt_grid.values();
}

std::vector<Observable> RunConfig::effective_observables() const {
  if (!observables.empty()) return observables;
  if (model == Model::Dctc) {
    return {Observable::Populations, Observable::ClockProbs, Observable::CvProbs};
  }
  return {Observable::Populations, Observable::ClockProbs};
}

ClockSpec RunConfig::clock() const {
  ClockSpec c = ClockSpec::unit_tick(levels, e1);
  if (constrained) c.e1 = constrained->ground_energy(c);
  return c;
}

std::vector<Setting> read_settings(std::string_view text) {
  std::vector<Setting> settings;
  int line_no = 0;
  for (std::string_view raw : split(text, '\n')) {
    ++line_no;
    const std::string where = "line " + std::to_string(line_no);
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(where, "expected key=value, got '" + std::string(line) + "'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(where, "empty key");
    settings.push_back({std::string(key), std::string(trim(line.substr(eq + 1))), where});
  }
  return settings;
}

void apply_setting(RunConfig& config, const Setting& s) {
  const std::string& w = s.where;
  const std::string_view v = s.value;
  if (s.key == "model") {
    if (v == "dctc") {
      config.model = Model::Dctc;
    } else if (v == "pctc") {
      config.model = Model::Pctc;
    } else {
      throw ConfigError(w, "model must be dctc or pctc, got '" + s.value + "'");
    }
  } else if (s.key == "N") {
    config.levels = parse_int(v, w);
    if (config.levels < 2) throw ConfigError(w, "N must be >= 2");
  } else if (s.key == "omega") {
    config.omega = parse_unit_list(v, w, "omega");
  } else if (s.key == "sqrt_omega") {
    config.omega = parse_unit_list(v, w, "sqrt_omega");
    for (double& x : config.omega) x *= x;
  } else if (s.key == "g") {
    config.g = parse_unit_list(v, w, "g");
    config.g_set = true;
  } else if (s.key == "dt_grid") {
    const auto parts = split(v, ':');
    if (parts.size() != 3) throw ConfigError(w, "dt_grid must be START:STOP:POINTS");
    DtGrid grid{parse_real(parts[0], w), parse_real(parts[1], w), parse_int(parts[2], w)};
    if (grid.points < 2) throw ConfigError(w, "dt_grid needs at least 2 points");
    if (!(grid.stop > grid.start)) throw ConfigError(w, "dt_grid STOP must exceed START");
    config.dt_grid = grid;
    config.single_dt.reset();
  } else if (s.key == "dt") {
    config.single_dt = parse_real(v, w);
  } else if (s.key == "e1") {
    config.e1 = parse_real(v, w);
    config.e1_set = true;
  } else if (s.key == "constrained") {
    const auto parts = split(v, ',');
    if (parts.size() != 2) throw ConfigError(w, "constrained must be P,Q");
    ConstraintParams c{parse_int(parts[0], w), parse_int(parts[1], w)};
    if (c.p < 1 || c.q < 0) throw ConfigError(w, "constrained needs P >= 1 and Q >= 0");
    config.constrained = c;
  } else if (s.key == "observables") {
    config.observables.clear();
    for (std::string_view tok : split(v, ',')) {
      const Observable o = parse_observable(tok, w);
      if (std::find(config.observables.begin(), config.observables.end(), o) ==
          config.observables.end()) {
        config.observables.push_back(o);
      }
    }
  } else if (s.key == "out") {
    if (v.empty()) throw ConfigError(w, "out must not be empty");
    config.output_path = s.value;
  } else {
    throw ConfigError(w, "unknown key '" + s.key + "'");
  }
}

void validate(const RunConfig& config) {
  if (config.levels < 2) throw ConfigError("", "N must be >= 2");
  if (config.omega.empty()) throw ConfigError("", "omega list is empty");
  if (config.g.empty()) throw ConfigError("", "g list is empty");
  if (config.model == Model::Pctc && config.g_set) {
    throw ConfigError("", "g is only meaningful for model=dctc");
  }
  if (config.constrained && config.e1_set) {
    throw ConfigError("", "e1 and constrained are mutually exclusive");
  }
  if (config.model == Model::Pctc) {
    for (Observable o : config.observables) {
      if (o == Observable::CvProbs) {
        throw ConfigError("", "cv_probs is only defined for model=dctc");
      }
    }
  }
  if (config.single_point() && (config.omega.size() != 1 || config.g.size() != 1)) {
    throw ConfigError("", "a single-point run (dt=...) takes exactly one omega and one g");
  }
}

RunConfig parse_config(std::string_view text, const std::vector<Setting>& overrides) {
  RunConfig config;
  for (const Setting& s : read_settings(text)) apply_setting(config, s);
  for (const Setting& s : overrides) apply_setting(config, s);
  validate(config);
  return config;
}

}  // namespace ctc
