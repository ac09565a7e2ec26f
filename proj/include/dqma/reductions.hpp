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

namespace dqma {

// Encoders turning equality instances into Set Equality instances. They are
// the constructive halves of lower-bound reductions; each produces an
// instance whose multisets agree exactly when the encoded strings do.

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned __int128>(n - k + i) /
          static_cast<unsigned __int128>(i);
    if (acc > static_cast<unsigned __int128>(UINT64_MAX))
      throw ArgumentError("binomial coefficient overflows 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

inline std::uint64_t bits_to_value(std::string_view bits) {
  std::uint64_t v = 0;
  for (char ch : bits) {
    if (ch != '0' && ch != '1')
      throw ArgumentError("bitstring must contain only 0s and 1s");
    v = (v << 1) | static_cast<std::uint64_t>(ch - '0');
  }
  return v;
}

/// Smallest list length with C(3l, l) >= 2^n.
inline int min_list_length_for(int n_bits) {
  if (n_bits < 1 || n_bits > 55)
    throw ArgumentError("encoder supports 1..55-bit strings");
  for (int ell = 1;; ++ell)
    if (binomial(3 * ell, ell) >= (std::uint64_t{1} << n_bits)) return ell;
}

/// Combinatorial unranking: the `rank`-th weight-`weight` subset of
/// {1,..,length} in lexicographic order of its indicator string.
inline std::vector<std::uint64_t> unrank_combination(std::uint64_t rank,
                                                     int length, int weight) {
  std::vector<std::uint64_t> positions;
  int need = weight;
  for (int pos = 1; pos <= length && need > 0; ++pos) {
    const std::uint64_t with_one = binomial(length - pos, need - 1);
    if (rank < with_one) {
      positions.push_back(static_cast<std::uint64_t>(pos));
      --need;
    } else {
      rank -= with_one;
    }
  }
  if (need != 0) throw ArgumentError("rank exceeds the number of subsets");
  return positions;
}

/// Injection of n-bit strings into weight-l indicator strings of length 3l.
inline std::vector<std::uint64_t> weighted_injection(std::string_view bits,
                                                     int ell) {
  return unrank_combination(bits_to_value(bits), 3 * ell, ell);
}

/// Small-universe encoder: substring counts of x at the left end, of y at
/// the right end, padding element everywhere else.
inline SetEqInstance reduction_case1(const std::string& x,
                                     const std::string& y,
                                     std::uint64_t universe, int ell,
                                     int r = 3, std::uint64_t c_tilde = 4) {
  if (universe < 2 || universe >= static_cast<std::uint64_t>(ell))
    throw ArgumentError("case 1 needs 2 <= |U| < ell");
  const int sub_bits = static_cast<int>(std::floor(
      std::log2(static_cast<double>(ell) / static_cast<double>(universe))));
  if (sub_bits < 1)
    throw ArgumentError("case 1 needs ell >= 2|U| for one bit per substring");
  const std::size_t n = (universe - 1) * static_cast<std::size_t>(sub_bits);
  if (x.size() != n || y.size() != n)
    throw ArgumentError("case 1 inputs must have (|U|-1)*floor(log(ell/|U|)) "
                        "bits, here " + std::to_string(n));

  const std::uint64_t pad = universe - 1;  // the padding element u_|U|
  auto encode = [&](const std::string& bits) {
    std::vector<std::uint64_t> list;
    std::uint64_t used = 0;
    for (std::uint64_t i = 0; i + 1 < universe; ++i) {
      const std::uint64_t count = bits_to_value(std::string_view(bits).substr(
          static_cast<std::size_t>(i) * static_cast<std::size_t>(sub_bits),
          static_cast<std::size_t>(sub_bits)));
      for (std::uint64_t c = 0; c < count; ++c) list.push_back(i);
      used += count;
    }
    while (used++ < static_cast<std::uint64_t>(ell)) list.push_back(pad);
    return list;
  };

  SetEqInstance inst;
  inst.r = r;
  inst.ell = ell;
  inst.universe = universe;
  inst.p = choose_modulus(ell, r, universe, c_tilde);
  inst.nodes.resize(static_cast<std::size_t>(r + 1));
  const std::vector<std::uint64_t> padding(static_cast<std::size_t>(ell), pad);
  for (auto& node : inst.nodes) {
    node.a = padding;
    node.b = padding;
  }
  inst.nodes.front().a = encode(x);
  inst.nodes.back().b = encode(y);
  inst.validate();
  return inst;
}

/// Weight-l indicator encoder over the universe {0,1,..,3l}; 0 pads.
inline SetEqInstance reduction_case2(const std::string& x,
                                     const std::string& y, int r = 3,
                                     std::uint64_t c_tilde = 4) {
  if (x.size() != y.size())
    throw ArgumentError("case 2 inputs must have equal length");
  const int n = static_cast<int>(x.size());
  const int ell = min_list_length_for(n);
  SetEqInstance inst;
  inst.r = r;
  inst.ell = ell;
  inst.universe = 3 * static_cast<std::uint64_t>(ell) + 1;
  inst.p = choose_modulus(ell, r, inst.universe, c_tilde);
  inst.nodes.resize(static_cast<std::size_t>(r + 1));
  const std::vector<std::uint64_t> zeros(static_cast<std::size_t>(ell), 0);
  for (auto& node : inst.nodes) {
    node.a = zeros;
    node.b = zeros;
  }
  inst.nodes.front().a = weighted_injection(x, ell);
  inst.nodes.back().b = weighted_injection(y, ell);
  inst.validate();
  return inst;
}

/// Per-pair case-2 encodings over disjoint universes on an odd-length line:
/// v_i holds the encoding of x_i, v_{r-i} the one of y_i, middle nodes pad.
inline SetEqInstance reduction_case3(const std::vector<std::string>& xs,
                                     const std::vector<std::string>& ys,
                                     int r, std::uint64_t c_tilde = 4) {
  if (r % 2 == 0) throw ArgumentError("case 3 needs an odd line length");
  const int k = (r - 1) / 2;
  if (xs.size() != static_cast<std::size_t>(k) ||
      ys.size() != static_cast<std::size_t>(k))
    throw ArgumentError("case 3 needs k = (r-1)/2 string pairs");
  int n = -1;
  for (const auto& s : xs) {
    if (n < 0) n = static_cast<int>(s.size());
    if (static_cast<int>(s.size()) != n)
      throw ArgumentError("case 3 strings must have equal length");
  }
  for (const auto& s : ys)
    if (static_cast<int>(s.size()) != n)
      throw ArgumentError("case 3 strings must have equal length");

  const int ell = min_list_length_for(n);
  SetEqInstance inst;
  inst.r = r;
  inst.ell = ell;
  inst.universe = 3 * static_cast<std::uint64_t>(k) *
                      static_cast<std::uint64_t>(ell) +
                  1;
  inst.p = choose_modulus(ell, r, inst.universe, c_tilde);
  inst.nodes.resize(static_cast<std::size_t>(r + 1));
  const std::vector<std::uint64_t> zeros(static_cast<std::size_t>(ell), 0);
  for (auto& node : inst.nodes) {
    node.a = zeros;
    node.b = zeros;
  }
  for (int i = 0; i < k; ++i) {
    const std::uint64_t offset =
        3 * static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(ell);
    auto shift = [&](std::vector<std::uint64_t> list) {
      for (auto& v : list) v += offset;
      return list;
    };
    inst.nodes[static_cast<std::size_t>(i)].a =
        shift(weighted_injection(xs[static_cast<std::size_t>(i)], ell));
    inst.nodes[static_cast<std::size_t>(r - i)].b =
        shift(weighted_injection(ys[static_cast<std::size_t>(i)], ell));
  }
  inst.validate();
  return inst;
}

}  // namespace dqma
