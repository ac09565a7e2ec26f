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

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "dqma/common.hpp"

namespace dqma {

namespace ffdetail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b,
                            std::uint64_t m) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp,
                            std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

}  // namespace ffdetail

/// Deterministic Miller-Rabin, valid for all 64-bit integers.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = ffdetail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = ffdetail::mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

inline std::uint64_t next_prime(std::uint64_t n) {
  while (!is_prime(n)) ++n;
  return n;
}

/// Element of the prime field Z_p.
class FieldElement {
 public:
  FieldElement(std::uint64_t value, std::uint64_t p) : p_(p) {
    if (!is_prime(p)) throw ArgumentError("field modulus must be prime");
    value_ = value % p;
  }

  std::uint64_t value() const { return value_; }
  std::uint64_t modulus() const { return p_; }

  friend FieldElement operator+(FieldElement a, FieldElement b) {
    a.check(b);
    return FieldElement((a.value_ + b.value_) % a.p_, a.p_);
  }
  friend FieldElement operator-(FieldElement a, FieldElement b) {
    a.check(b);
    return FieldElement((a.value_ + a.p_ - b.value_) % a.p_, a.p_);
  }
  friend FieldElement operator*(FieldElement a, FieldElement b) {
    a.check(b);
    return FieldElement(ffdetail::mulmod(a.value_, b.value_, a.p_), a.p_);
  }
  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.p_ == b.p_ && a.value_ == b.value_;
  }

 private:
  void check(const FieldElement& other) const {
    if (p_ != other.p_)
      throw ArgumentError("field elements have different moduli");
  }
  std::uint64_t value_;
  std::uint64_t p_;
};

/// The monic polynomial with the node's input list as roots:
/// q(s) = prod_i (s - root_i) over Z_p.
class ListPolynomial {
 public:
  ListPolynomial(std::vector<std::uint64_t> roots, std::uint64_t p)
      : roots_(std::move(roots)), p_(p) {
    if (roots_.empty())
      throw ArgumentError("list polynomial needs at least one root");
    if (!is_prime(p_)) throw ArgumentError("field modulus must be prime");
    for (std::uint64_t r : roots_)
      if (r >= p_) throw ArgumentError("root outside the field");
  }

  std::uint64_t eval(std::uint64_t s) const {
    if (s >= p_) throw ArgumentError("argument outside the field");
    std::uint64_t acc = 1 % p_;
    for (std::uint64_t r : roots_)
      acc = ffdetail::mulmod(acc, (s + p_ - r) % p_, p_);
    return acc;
  }

  FieldElement eval(const FieldElement& s) const {
    if (s.modulus() != p_) throw ArgumentError("modulus mismatch");
    return FieldElement(eval(s.value()), p_);
  }

  int ell() const { return static_cast<int>(roots_.size()); }
  std::uint64_t modulus() const { return p_; }
  const std::vector<std::uint64_t>& roots() const { return roots_; }

 private:
  std::vector<std::uint64_t> roots_;
  std::uint64_t p_;
};

/// Per-node input lists of a Set Equality instance.
struct NodeInput {
  std::vector<std::uint64_t> a;
  std::vector<std::uint64_t> b;
};

/// A Set Equality instance on the line v_0..v_r: each node holds two lists
/// of `ell` elements of a universe {0,..,universe-1}, embedded into Z_p.
struct SetEqInstance {
  int r = 1;
  int ell = 1;
  std::uint64_t universe = 2;
  std::uint64_t p = 5;
  std::vector<NodeInput> nodes;  // r + 1 entries

  void validate() const {
    if (r < 1) throw ArgumentError("set equality instance needs r >= 1");
    if (ell < 1) throw ArgumentError("list length must be >= 1");
    if (nodes.size() != static_cast<std::size_t>(r + 1))
      throw ArgumentError("instance must have r + 1 node inputs");
    if (!is_prime(p)) throw ArgumentError("field modulus must be prime");
    if (universe > p)
      throw ArgumentError("universe does not embed into the field");
    for (const NodeInput& node : nodes) {
      if (node.a.size() != static_cast<std::size_t>(ell) ||
          node.b.size() != static_cast<std::size_t>(ell))
        throw ArgumentError("node lists must have length ell");
      for (std::uint64_t v : node.a)
        if (v >= universe) throw ArgumentError("list entry outside universe");
      for (std::uint64_t v : node.b)
        if (v >= universe) throw ArgumentError("list entry outside universe");
    }
  }

  ListPolynomial alpha(int j) const {
    return ListPolynomial(nodes[static_cast<std::size_t>(j)].a, p);
  }
  ListPolynomial beta(int j) const {
    return ListPolynomial(nodes[static_cast<std::size_t>(j)].b, p);
  }

  /// Ground truth: are the A and B multisets equal?
  bool multisets_equal() const {
    std::map<std::uint64_t, int> counts;
    for (const NodeInput& node : nodes) {
      for (std::uint64_t v : node.a) ++counts[v];
      for (std::uint64_t v : node.b) --counts[v];
    }
    for (const auto& [v, c] : counts)
      if (c != 0) return false;
    return true;
  }

  /// Whether p meets the soundness bound p >= c_tilde * ell * (r+1) * |U|.
  bool field_bound_ok(std::uint64_t c_tilde) const {
    return p >= c_tilde * static_cast<std::uint64_t>(ell) *
                    static_cast<std::uint64_t>(r + 1) * universe;
  }
};

enum class Side { A, B };

/// p_A(s) or p_B(s): the product of all per-node list polynomials.
inline std::uint64_t global_poly_eval(const SetEqInstance& inst, Side side,
                                      std::uint64_t s) {
  std::uint64_t acc = 1 % inst.p;
  for (int j = 0; j <= inst.r; ++j) {
    const ListPolynomial poly =
        (side == Side::A) ? inst.alpha(j) : inst.beta(j);
    acc = ffdetail::mulmod(acc, poly.eval(s), inst.p);
  }
  return acc;
}

/// Smallest prime meeting the soundness bound for the given parameters.
inline std::uint64_t choose_modulus(int ell, int r, std::uint64_t universe,
                                    std::uint64_t c_tilde = 4) {
  const std::uint64_t floor_value = c_tilde * static_cast<std::uint64_t>(ell) *
                                    static_cast<std::uint64_t>(r + 1) *
                                    universe;
  return next_prime(std::max<std::uint64_t>(floor_value, 2));
}

/// Random instance with A = B as multisets: one multiset drawn from the
/// universe, independently shuffled into the a- and b-lists.
inline SetEqInstance random_equal_instance(int r, int ell,
                                           std::uint64_t universe,
                                           std::uint64_t p, Rng& rng) {
  SetEqInstance inst;
  inst.r = r;
  inst.ell = ell;
  inst.universe = universe;
  inst.p = p;
  const int total = (r + 1) * ell;
  std::uniform_int_distribution<std::uint64_t> pick(0, universe - 1);
  std::vector<std::uint64_t> pool(static_cast<std::size_t>(total));
  for (auto& v : pool) v = pick(rng);
  std::vector<std::uint64_t> pool_b = pool;
  std::shuffle(pool.begin(), pool.end(), rng);
  std::shuffle(pool_b.begin(), pool_b.end(), rng);
  inst.nodes.resize(static_cast<std::size_t>(r + 1));
  for (int j = 0; j <= r; ++j) {
    auto& node = inst.nodes[static_cast<std::size_t>(j)];
    node.a.assign(pool.begin() + j * ell, pool.begin() + (j + 1) * ell);
    node.b.assign(pool_b.begin() + j * ell, pool_b.begin() + (j + 1) * ell);
  }
  inst.validate();
  return inst;
}

/// Random instance with A != B as multisets.
inline SetEqInstance random_unequal_instance(int r, int ell,
                                             std::uint64_t universe,
                                             std::uint64_t p, Rng& rng) {
  if (universe < 2)
    throw ArgumentError("universe too small for unequal multisets");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    SetEqInstance inst = random_equal_instance(r, ell, universe, p, rng);
    std::uniform_int_distribution<int> node_pick(0, r);
    std::uniform_int_distribution<int> slot_pick(0, ell - 1);
    std::uniform_int_distribution<std::uint64_t> value_pick(0, universe - 1);
    auto& list = inst.nodes[static_cast<std::size_t>(node_pick(rng))].b;
    auto& slot = list[static_cast<std::size_t>(slot_pick(rng))];
    slot = value_pick(rng);
    if (!inst.multisets_equal()) return inst;
  }
  throw ArgumentError("failed to generate an unequal instance");
}

}  // namespace dqma
