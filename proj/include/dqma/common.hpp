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

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace dqma {

using cdouble = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Register name clashes, unknown registers, incompatible layouts.
struct LayoutError : Error {
  using Error::Error;
};

/// Bad argument values (size mismatches, invalid parameters).
struct ArgumentError : Error {
  using Error::Error;
};

/// Requested simulation exceeds the dense-state qubit caps.
struct CapacityError : Error {
  using Error::Error;
};

/// Conditioning on a measurement branch of (near-)zero probability.
struct DegenerateBranchError : Error {
  using Error::Error;
};

/// A node program touched a register it does not own.
struct LocalityError : Error {
  using Error::Error;
};

/// Malformed experiment configuration.
struct ConfigError : Error {
  using Error::Error;
};

// Dense simulation caps. Pure states are stored as amplitude vectors,
// mixed states as density matrices, so the mixed cap is half the pure one.
inline constexpr int kMaxPureQubits = 22;
inline constexpr int kMaxMixedQubits = 11;

// Numerical tolerances, by role.
inline constexpr double kAlgebraTol = 1e-10;  // algebraic identities
inline constexpr double kPsdTol = 1e-9;       // eigenvalue floor for PSD checks
inline constexpr double kOptTol = 1e-6;       // optimisation-attained maxima
inline constexpr double kBranchEps = 1e-14;   // branch probabilities treated as zero

using Rng = std::mt19937_64;

/// splitmix64 finaliser; used to derive independent seed streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives a seed for a (trial, node) substream of a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0) {
  return splitmix64(splitmix64(master ^ (a * 0x9e3779b97f4a7c15ULL)) ^
                    (b * 0xd1b54a32d192ed03ULL));
}

/// Extracts the sub-index addressed by `shifts` (most significant bit first)
/// from a global basis index.
inline std::uint64_t extract_bits(std::uint64_t global,
                                  std::span<const int> shifts) {
  std::uint64_t sub = 0;
  for (int s : shifts) sub = (sub << 1) | ((global >> s) & 1ULL);
  return sub;
}

/// Inverse of extract_bits: places the bits of `sub` at the given positions.
inline std::uint64_t scatter_bits(std::uint64_t sub,
                                  std::span<const int> shifts) {
  std::uint64_t global = 0;
  const std::size_t n = shifts.size();
  for (std::size_t i = 0; i < n; ++i) {
    if ((sub >> (n - 1 - i)) & 1ULL) global |= 1ULL << shifts[i];
  }
  return global;
}

/// Decodes a Lehmer index into the corresponding permutation of {0,..,n-1}.
inline std::vector<int> permutation_from_index(std::uint64_t index, int n) {
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  std::vector<int> perm;
  perm.reserve(n);
  std::uint64_t radix = 1;
  for (int i = 2; i <= n; ++i) radix *= i;
  for (int i = n; i >= 1; --i) {
    radix /= i;
    const auto pos = static_cast<std::size_t>(index / radix);
    index %= radix;
    perm.push_back(pool[pos]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pos));
  }
  return perm;
}

inline std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

}  // namespace dqma
