// Copyright 2026 The dqmasim developers
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

#include <catch2/catch_amalgamated.hpp>

#include "dqma/random.hpp"
#include "dqma/state.hpp"

namespace dqma::test {

inline Rng rng(std::uint64_t seed) { return Rng(seed); }

inline RegisterLayout qubits(const std::string& name, int n, int owner = -1) {
  return RegisterLayout({{name, n, owner}});
}

/// Random state that is pure or mixed with equal probability.
inline QuantumState random_state(RegisterLayout layout, Rng& r) {
  std::uniform_int_distribution<int> coin(0, 1);
  if (coin(r) == 0) return haar_random_pure(std::move(layout), r);
  const int env = 1 + coin(r);
  return haar_random_mixed(std::move(layout), env, r);
}

}  // namespace dqma::test

using Catch::Approx;
