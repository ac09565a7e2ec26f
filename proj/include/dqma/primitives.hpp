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

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "dqma/distance.hpp"
#include "dqma/state.hpp"

namespace dqma {

namespace detail {

/// Global-index involution exchanging the bits of two equal-sized register
/// groups.
class SwapIndexMap {
 public:
  SwapIndexMap(const RegisterLayout& layout,
               std::span<const std::string> group1,
               std::span<const std::string> group2)
      : s1_(layout.shifts_of(group1)), s2_(layout.shifts_of(group2)) {
    if (s1_.size() != s2_.size())
      throw ArgumentError("swapped register groups must have equal sizes");
    mask_ = scatter_bits((std::uint64_t{1} << s1_.size()) - 1, s1_) |
            scatter_bits((std::uint64_t{1} << s2_.size()) - 1, s2_);
  }

  std::uint64_t operator()(std::uint64_t g) const {
    const std::uint64_t a = extract_bits(g, s1_);
    const std::uint64_t b = extract_bits(g, s2_);
    return (g & ~mask_) | scatter_bits(b, s1_) | scatter_bits(a, s2_);
  }

 private:
  std::vector<int> s1_, s2_;
  std::uint64_t mask_;
};

inline Vec swap_apply(const Vec& in, const SwapIndexMap& swap) {
  Vec out(in.size());
  for (Eigen::Index g = 0; g < in.size(); ++g)
    out(static_cast<Eigen::Index>(swap(static_cast<std::uint64_t>(g)))) = in(g);
  return out;
}

}  // namespace detail

/// tr(SWAP . rho) restricted to the two register groups; the groups may be
/// entangled with the rest of the state.
inline double swap_expectation(const QuantumState& state,
                               std::span<const std::string> r1,
                               std::span<const std::string> r2) {
  detail::SwapIndexMap swap(state.layout(), r1, r2);
  const std::size_t dim = state.layout().dim();
  cdouble sum = 0;
  if (state.is_pure()) {
    const Vec& psi = state.amplitudes();
    for (std::size_t g = 0; g < dim; ++g)
      sum += std::conj(psi(static_cast<Eigen::Index>(g))) *
             psi(static_cast<Eigen::Index>(swap(g)));
  } else {
    const Mat& rho = state.density();
    for (std::size_t g = 0; g < dim; ++g)
      sum += rho(static_cast<Eigen::Index>(swap(g)),
                 static_cast<Eigen::Index>(g));
  }
  return sum.real();
}

/// Acceptance probability of the SWAP test on the two register groups:
/// tr(Pi_sym rho) = 1/2 + tr(SWAP rho)/2. Equals 1/2 + tr(s1 s2)/2 for
/// product inputs.
inline double swap_test_accept_prob(const QuantumState& state,
                                    std::span<const std::string> r1,
                                    std::span<const std::string> r2) {
  const double p = 0.5 + 0.5 * swap_expectation(state, r1, r2);
  return std::clamp(p, 0.0, 1.0);
}

/// Projective SWAP-test branches {Pi_sym, Pi_anti}; outcome 0 accepts.
inline std::vector<MeasurementBranch> swap_test_branches(
    const QuantumState& state, std::span<const std::string> r1,
    std::span<const std::string> r2) {
  detail::SwapIndexMap swap(state.layout(), r1, r2);
  std::vector<MeasurementBranch> branches(2);
  if (state.is_pure()) {
    const Vec& psi = state.amplitudes();
    const Vec swapped = detail::swap_apply(psi, swap);
    for (int k = 0; k < 2; ++k) {
      Vec proj = 0.5 * (psi + (k == 0 ? 1.0 : -1.0) * swapped);
      branches[k].outcome = k;
      branches[k].probability = proj.squaredNorm();
      if (branches[k].probability > kBranchEps) {
        proj /= std::sqrt(branches[k].probability);
        branches[k].post =
            QuantumState::pure_state(state.layout(), std::move(proj));
      }
    }
  } else {
    const Mat& rho = state.density();
    const Eigen::Index dim = rho.rows();
    Mat srho(dim, dim), rhos(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      const auto si = static_cast<Eigen::Index>(
          swap(static_cast<std::uint64_t>(i)));
      srho.row(i) = rho.row(si);
      rhos.col(i) = rho.col(si);
    }
    Mat srhos(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
      srhos.row(i) =
          rhos.row(static_cast<Eigen::Index>(swap(static_cast<std::uint64_t>(i))));
    for (int k = 0; k < 2; ++k) {
      const double sign = (k == 0) ? 1.0 : -1.0;
      Mat proj = 0.25 * (rho + sign * srho + sign * rhos + srhos);
      branches[k].outcome = k;
      branches[k].probability = proj.trace().real();
      if (branches[k].probability > kBranchEps) {
        proj /= branches[k].probability;
        branches[k].post =
            QuantumState::mixed_state(state.layout(), std::move(proj));
      }
    }
  }
  return branches;
}

/// Samples one SWAP-test run; returns (accepted, post-state).
inline std::pair<bool, QuantumState> swap_test_execute(
    const QuantumState& state, std::span<const std::string> r1,
    std::span<const std::string> r2, Rng& rng) {
  auto branches = swap_test_branches(state, r1, r2);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double u = unif(rng);
  int pick = (u < branches[0].probability) ? 0 : 1;
  if (!branches[pick].post) pick = 1 - pick;
  if (!branches[pick].post)
    throw DegenerateBranchError("SWAP test has no live branch");
  return {pick == 0, std::move(*branches[pick].post)};
}

/// Two classical bits of a Bell measurement. Correction on the receiver is
/// Z^phase X^parity (X applied first):
///   (0,0) |Phi+>  -> I      (0,1) |Psi+>  -> X
///   (1,0) |Phi->  -> Z      (1,1) |Psi->  -> Z X
struct BellOutcome {
  int phase = 0;
  int parity = 0;
};

inline Vec bell_vector(int phase, int parity) {
  Vec v = Vec::Zero(4);
  const double a = 1.0 / std::sqrt(2.0);
  const double s = phase ? -a : a;
  if (parity == 0) {
    v(0) = a;  // |00>
    v(3) = s;  // |11>
  } else {
    v(1) = a;  // |01>
    v(2) = s;  // |10>
  }
  return v;
}

inline Mat bell_correction(int phase, int parity) {
  Mat c = Mat::Identity(2, 2);
  if (parity) c = gates::x() * c;
  if (phase) c = gates::z() * c;
  return c;
}

/// One teleportation branch: the Bell outcome, its probability, and the
/// post-state with the payload on the receiver qubit. The source and sender
/// registers are removed from the layout.
struct TeleportBranch {
  BellOutcome outcome;
  double probability = 0.0;
  std::optional<QuantumState> post;
};

/// All four Bell branches of teleporting `source` through the resource pair
/// (`sender_half`, `receiver_half`). With an ideal |Phi+> resource every
/// branch carries the exact source state (entanglement preserved).
inline std::vector<TeleportBranch> teleport_branches(
    const QuantumState& state, const std::string& source,
    const std::string& sender_half, const std::string& receiver_half) {
  if (state.layout().reg(source).qubits != 1 ||
      state.layout().reg(sender_half).qubits != 1 ||
      state.layout().reg(receiver_half).qubits != 1)
    throw ArgumentError("teleport expects single-qubit registers");
  const std::vector<std::string> measured{source, sender_half};
  std::vector<TeleportBranch> branches;
  for (int phase = 0; phase < 2; ++phase) {
    for (int parity = 0; parity < 2; ++parity) {
      auto [p, post] = partial_project(state, measured,
                                       bell_vector(phase, parity));
      TeleportBranch br;
      br.outcome = {phase, parity};
      br.probability = p;
      if (post) {
        Unitary correction({receiver_half}, bell_correction(phase, parity));
        br.post = apply_unitary(*post, correction);
      }
      branches.push_back(std::move(br));
    }
  }
  return branches;
}

inline std::pair<BellOutcome, QuantumState> teleport(
    const QuantumState& state, const std::string& source,
    const std::string& sender_half, const std::string& receiver_half,
    Rng& rng) {
  auto branches = teleport_branches(state, source, sender_half, receiver_half);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double u = unif(rng);
  TeleportBranch* last_live = nullptr;
  for (auto& br : branches) {
    if (!br.post) continue;
    last_live = &br;
    if (u < br.probability) return {br.outcome, std::move(*br.post)};
    u -= br.probability;
  }
  if (last_live) return {last_live->outcome, std::move(*last_live->post)};
  throw DegenerateBranchError("teleportation has no live branch");
}

// ---------------------------------------------------------------------------
// Local Pauli-basis tests for EPR-pair verification.

/// E1 = |00><00| + |11><11| (Z-basis agreement).
inline Mat epr_effect_z() {
  Mat e = Mat::Zero(4, 4);
  e(0, 0) = e(3, 3) = 1.0;
  return e;
}

/// E2 = |++><++| + |--><--| (X-basis agreement).
inline Mat epr_effect_x() {
  const Vec pp = kron(gates::ket_plus(), gates::ket_plus());
  const Vec mm =
      kron(gates::ket_minus(), gates::ket_minus());
  return pp * pp.adjoint() + mm * mm.adjoint();
}

/// E3 = |+'-'><+'-'| + |-'+'><-'+'| (Y-basis anti-agreement).
inline Mat epr_effect_y() {
  const Vec pm =
      kron(gates::ket_plus_i(), gates::ket_minus_i());
  const Vec mp =
      kron(gates::ket_minus_i(), gates::ket_plus_i());
  return pm * pm.adjoint() + mp * mp.adjoint();
}

inline std::array<Mat, 3> epr_effects() {
  return {epr_effect_z(), epr_effect_x(), epr_effect_y()};
}

/// Omega = (E1 + E2 + E3)/3 = (2/3)|Phi+><Phi+| + (1/3) I.
inline Mat epr_omega() {
  const auto effects = epr_effects();
  return (effects[0] + effects[1] + effects[2]) / 3.0;
}

/// The three binary POVMs {E_k, I - E_k} bound to a qubit pair.
inline std::array<Povm, 3> epr_test_povms(const std::string& qubit1,
                                          const std::string& qubit2) {
  const auto effects = epr_effects();
  return {Povm::binary({qubit1, qubit2}, effects[0]),
          Povm::binary({qubit1, qubit2}, effects[1]),
          Povm::binary({qubit1, qubit2}, effects[2])};
}

// ---------------------------------------------------------------------------

/// Reorders equal-sized register blocks: result block i carries what block
/// perm[i] held. The layout is unchanged; only amplitudes move.
inline QuantumState permute_blocks(
    const QuantumState& state,
    const std::vector<std::vector<std::string>>& blocks,
    std::span<const int> perm) {
  if (perm.size() != blocks.size())
    throw ArgumentError("permutation size does not match block count");
  std::vector<bool> seen(blocks.size(), false);
  for (int p : perm) {
    if (p < 0 || static_cast<std::size_t>(p) >= blocks.size() ||
        seen[static_cast<std::size_t>(p)])
      throw ArgumentError("not a permutation of block indices");
    seen[static_cast<std::size_t>(p)] = true;
  }
  const RegisterLayout& layout = state.layout();
  std::vector<std::vector<int>> shifts;
  for (const auto& block : blocks)
    shifts.push_back(layout.shifts_of(block));
  for (const auto& s : shifts)
    if (s.size() != shifts.front().size())
      throw ArgumentError("blocks must have equal qubit counts");
  std::uint64_t mask = 0;
  const std::uint64_t full = (std::uint64_t{1} << shifts.front().size()) - 1;
  for (const auto& s : shifts) mask |= scatter_bits(full, s);

  auto map_index = [&](std::uint64_t g) {
    std::uint64_t out = g & ~mask;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      const std::uint64_t sub =
          extract_bits(g, shifts[static_cast<std::size_t>(perm[i])]);
      out |= scatter_bits(sub, shifts[i]);
    }
    return out;
  };

  if (state.is_pure()) {
    const Vec& in = state.amplitudes();
    Vec out(in.size());
    for (Eigen::Index g = 0; g < in.size(); ++g)
      out(static_cast<Eigen::Index>(map_index(static_cast<std::uint64_t>(g)))) =
          in(g);
    return QuantumState::pure_state(layout, std::move(out));
  }
  const Mat& in = state.density();
  Mat out(in.rows(), in.cols());
  std::vector<Eigen::Index> to(static_cast<std::size_t>(in.rows()));
  for (Eigen::Index g = 0; g < in.rows(); ++g)
    to[static_cast<std::size_t>(g)] =
        static_cast<Eigen::Index>(map_index(static_cast<std::uint64_t>(g)));
  for (Eigen::Index i = 0; i < in.rows(); ++i)
    for (Eigen::Index j = 0; j < in.cols(); ++j)
      out(to[static_cast<std::size_t>(i)], to[static_cast<std::size_t>(j)]) =
          in(i, j);
  return QuantumState::mixed_state(layout, std::move(out));
}

}  // namespace dqma
