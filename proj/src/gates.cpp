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

#include "ctcsim/gates.hpp"

namespace ctc {

Operator swap(int levels) {
  if (levels < 2) throw DomainError("swap needs N >= 2");
  const Eigen::Index n = levels;
  Matrix s = Matrix::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) s(j * n + i, i * n + j) = 1.0;
  return Operator(std::move(s));
}

Operator vacuum_swap(int levels) {
  if (levels < 2) throw DomainError("vacuum_swap needs N >= 2");
  const Eigen::Index d = levels + 1;
  Matrix s = Matrix::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const bool touches_vacuum = (i == 0 || j == 0);
      const Eigen::Index from = i * d + j;
      const Eigen::Index to = touches_vacuum ? from : j * d + i;
      s(to, from) = 1.0;
    }
  }
  return Operator(std::move(s));
}

Operator circuit_unitary(const CircuitSpec& spec) {
  spec.clock.validate();
  const Eigen::Index d = spec.extended_dim();
  const Operator rot = vacuum_extend(evolution(spec.clock, spec.dt));
  Operator u = tensor(Operator::identity(d), rot) * vacuum_swap(spec.clock.levels);
  if (spec.t_in != 0.0) {
    u = u * tensor(vacuum_extend(evolution(spec.clock, spec.t_in)), Operator::identity(d));
  }
  if (spec.t_out != 0.0) {
    u = tensor(vacuum_extend(evolution(spec.clock, spec.t_out)), Operator::identity(d)) * u;
  }
  return u;
}

}  // namespace ctc
