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

#include <string>
#include <vector>

#include "dqma/ff.hpp"
#include "dqma/state.hpp"

namespace dqma {

/// Register shape of a polynomial fingerprint: two field registers and a
/// step counter.
struct FingerprintShape {
  int field_qubits = 0;    // ceil(log2 p), twice
  int counter_qubits = 0;  // ceil(log2 (r+1))
  int total_qubits() const { return 2 * field_qubits + counter_qubits; }
};

inline int bits_for(std::uint64_t values) {
  int bits = 0;
  while ((std::uint64_t{1} << bits) < values) ++bits;
  return std::max(bits, 1);
}

inline FingerprintShape fingerprint_shape(std::uint64_t p, int r) {
  FingerprintShape shape;
  shape.field_qubits = bits_for(p);
  shape.counter_qubits = bits_for(static_cast<std::uint64_t>(r) + 1);
  return shape;
}

/// Sub-register names of one fingerprint block.
inline std::vector<std::string> fingerprint_names(const std::string& prefix) {
  return {prefix + "s", prefix + "t", prefix + "nu"};
}

inline RegisterLayout fingerprint_layout(std::uint64_t p, int r,
                                         const std::string& prefix,
                                         int owner = -1) {
  const FingerprintShape shape = fingerprint_shape(p, r);
  return RegisterLayout({{prefix + "s", shape.field_qubits, owner},
                         {prefix + "t", shape.field_qubits, owner},
                         {prefix + "nu", shape.counter_qubits, owner}});
}

/// The uniform fingerprint superposition (1/sqrt p) sum_s |s>|q(s)>|0>.
inline QuantumState build_fingerprint_state(const ListPolynomial& poly, int r,
                                            const std::string& prefix,
                                            int owner = -1) {
  const std::uint64_t p = poly.modulus();
  const FingerprintShape shape = fingerprint_shape(p, r);
  if (shape.total_qubits() > kMaxPureQubits)
    throw CapacityError("fingerprint state for p=" + std::to_string(p) +
                        ", r=" + std::to_string(r) + " needs " +
                        std::to_string(shape.total_qubits()) +
                        " qubits, above the pure-state cap");
  RegisterLayout layout = fingerprint_layout(p, r, prefix, owner);
  Vec amps = Vec::Zero(static_cast<Eigen::Index>(layout.dim()));
  const double amp = 1.0 / std::sqrt(static_cast<double>(p));
  const int q = shape.field_qubits;
  const int c = shape.counter_qubits;
  for (std::uint64_t s = 0; s < p; ++s) {
    const std::uint64_t idx = ((s << q) | poly.eval(s)) << c;
    amps(static_cast<Eigen::Index>(idx)) = amp;
  }
  return QuantumState::pure_state(std::move(layout), std::move(amps));
}

/// The per-node fingerprint update G as a permutation of the computational
/// basis. On |s>|t>|nu> with s, t in the field:
///   nu = 0, q(s) != 0:  t -> q(s) * t
///   nu = 0, q(s) == 0:  nu -> 1
///   1 <= nu <= r-1:     nu -> nu + 1
/// Basis states outside the specified domain (s or t >= p, or nu >= r) are
/// matched to the unused range states in lexicographic order, which keeps
/// the map a permutation without touching honest executions.
inline Unitary build_g_unitary(const ListPolynomial& poly, int r,
                               std::vector<std::string> targets) {
  if (targets.size() != 3)
    throw ArgumentError("G unitary acts on (s, t, counter) registers");
  const std::uint64_t p = poly.modulus();
  const FingerprintShape shape = fingerprint_shape(p, r);
  const int q = shape.field_qubits;
  const int c = shape.counter_qubits;
  const std::uint64_t dim = std::uint64_t{1} << shape.total_qubits();
  constexpr std::uint32_t kUnset = 0xffffffffu;
  std::vector<std::uint32_t> perm(dim, kUnset);
  std::vector<bool> hit(dim, false);

  auto encode = [&](std::uint64_t s, std::uint64_t t, std::uint64_t nu) {
    return ((s << q) | t) << c | nu;
  };

  for (std::uint64_t s = 0; s < p; ++s) {
    const std::uint64_t qs = poly.eval(s);
    for (std::uint64_t t = 0; t < p; ++t) {
      // nu = 0 row.
      std::uint64_t image = (qs != 0) ? encode(s, ffdetail::mulmod(qs, t, p), 0)
                                      : encode(s, t, 1);
      perm[encode(s, t, 0)] = static_cast<std::uint32_t>(image);
      hit[image] = true;
      for (std::uint64_t nu = 1; nu + 1 <= static_cast<std::uint64_t>(r) &&
                                 nu + 1 < (std::uint64_t{1} << c);
           ++nu) {
        image = encode(s, t, nu + 1);
        perm[encode(s, t, nu)] = static_cast<std::uint32_t>(image);
        hit[image] = true;
      }
    }
  }

  std::vector<std::uint64_t> free_range;
  for (std::uint64_t i = 0; i < dim; ++i)
    if (!hit[i]) free_range.push_back(i);
  std::size_t next_free = 0;
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (perm[i] == kUnset)
      perm[i] = static_cast<std::uint32_t>(free_range[next_free++]);
  }

  return Unitary::basis_permutation(std::move(targets), std::move(perm));
}

/// Classical walk of the G-chain rules for a single field point; test oracle
/// for the composed honest action.
struct ChainPoint {
  std::uint64_t t = 0;
  std::uint64_t nu = 0;
};

inline ChainPoint chain_walk(const SetEqInstance& inst, Side side,
                             std::uint64_t s) {
  const ListPolynomial first =
      (side == Side::A) ? inst.alpha(0) : inst.beta(0);
  ChainPoint point{first.eval(s), 0};
  for (int j = 1; j <= inst.r; ++j) {
    const ListPolynomial poly =
        (side == Side::A) ? inst.alpha(j) : inst.beta(j);
    const std::uint64_t qs = poly.eval(s);
    if (point.nu == 0) {
      if (qs != 0)
        point.t = ffdetail::mulmod(qs, point.t, inst.p);
      else
        point.nu = 1;
    } else if (point.nu <= static_cast<std::uint64_t>(inst.r) - 1) {
      ++point.nu;
    }
  }
  return point;
}

}  // namespace dqma
