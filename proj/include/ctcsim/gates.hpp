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

#include "ctcsim/clock.hpp"

namespace ctc {

/// The billiard-ball circuit: a clock, the time `dt` spent on the loop, and
/// optional inbound/outbound legs applied to the CR channel only.
struct CircuitSpec {
  ClockSpec clock;
  double dt = 0.0;
  double t_in = 0.0;
  double t_out = 0.0;

  Eigen::Index extended_dim() const { return clock.extended_dim(); }
  BipartiteDims dims() const { return {extended_dim(), extended_dim()}; }
};

/// SWAP on clock (x) clock, dimension N^2.
Operator swap(int levels);

/// SWAP on the vacuum-extended pair: any product containing the vacuum is
/// left alone, clock levels are exchanged. Dimension (N+1)^2.
Operator vacuum_swap(int levels);

/// [1 (x) R~(dt)] S~, wrapped by R~(t_in)/R~(t_out) on CR when nonzero.
Operator circuit_unitary(const CircuitSpec& spec);

}  // namespace ctc
