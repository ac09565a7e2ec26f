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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dqma/common.hpp"
#include "dqma/layout.hpp"
#include "dqma/operators.hpp"

namespace dqma {

/// A pure or mixed state over a register layout. Values are immutable after
/// construction; every operation returns a new state. The pure representation
/// is kept as long as possible; operations that genuinely mix promote to a
/// density matrix (capped at kMaxMixedQubits).
class QuantumState {
 public:
  static QuantumState pure_state(RegisterLayout layout, Vec amplitudes) {
    if (amplitudes.size() != static_cast<Eigen::Index>(layout.dim()))
      throw ArgumentError("amplitude vector does not match layout dimension");
    const double norm2 = amplitudes.squaredNorm();
    if (std::abs(norm2 - 1.0) > kAlgebraTol)
      throw ArgumentError("pure state is not normalised (|norm^2 - 1| = " +
                          std::to_string(std::abs(norm2 - 1.0)) + ")");
    return QuantumState(std::move(layout), std::move(amplitudes));
  }

  static QuantumState mixed_state(RegisterLayout layout, Mat rho) {
    if (layout.total_qubits() > kMaxMixedQubits)
      throw CapacityError("mixed state of " +
                          std::to_string(layout.total_qubits()) +
                          " qubits exceeds the " +
                          std::to_string(kMaxMixedQubits) + "-qubit cap");
    if (rho.rows() != static_cast<Eigen::Index>(layout.dim()) ||
        rho.cols() != rho.rows())
      throw ArgumentError("density matrix does not match layout dimension");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kAlgebraTol)
      throw ArgumentError("density matrix is not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > kAlgebraTol ||
        std::abs(rho.trace().imag()) > kAlgebraTol)
      throw ArgumentError("density matrix trace is not 1");
    Eigen::SelfAdjointEigenSolver<Mat> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kPsdTol)
      throw ArgumentError("density matrix is not positive semidefinite");
    return QuantumState(std::move(layout), std::move(rho));
  }

  /// Computational basis state |index>.
  static QuantumState basis_state(RegisterLayout layout, std::uint64_t index) {
    Vec amps = Vec::Zero(static_cast<Eigen::Index>(layout.dim()));
    amps(static_cast<Eigen::Index>(index)) = 1.0;
    return QuantumState(std::move(layout), std::move(amps));
  }

  static QuantumState zero_state(RegisterLayout layout) {
    return basis_state(std::move(layout), 0);
  }

  const RegisterLayout& layout() const { return layout_; }
  bool is_pure() const { return pure_; }

  const Vec& amplitudes() const {
    if (!pure_) throw ArgumentError("state is mixed; no amplitude vector");
    return amps_;
  }

  const Mat& density() const {
    if (pure_) throw ArgumentError("state is pure; use density_matrix()");
    return rho_;
  }

  /// Density matrix of the state, materialising |psi><psi| for pure states
  /// (subject to the mixed-state cap).
  Mat density_matrix() const {
    if (!pure_) return rho_;
    if (layout_.total_qubits() > kMaxMixedQubits)
      throw CapacityError(
          "materialising the density matrix of a " +
          std::to_string(layout_.total_qubits()) +
          "-qubit pure state exceeds the mixed-state cap");
    return amps_ * amps_.adjoint();
  }

  QuantumState as_mixed() const {
    if (!pure_) return *this;
    return QuantumState::mixed_state(layout_, density_matrix());
  }

  QuantumState with_layout(RegisterLayout layout) const {
    if (layout.total_qubits() != layout_.total_qubits())
      throw LayoutError("relabelling must preserve the qubit count");
    QuantumState s = *this;
    s.layout_ = std::move(layout);
    return s;
  }

 private:
  QuantumState(RegisterLayout layout, Vec amps)
      : layout_(std::move(layout)), pure_(true), amps_(std::move(amps)) {}
  QuantumState(RegisterLayout layout, Mat rho)
      : layout_(std::move(layout)), pure_(false), rho_(std::move(rho)) {}

  RegisterLayout layout_;
  bool pure_;
  Vec amps_;
  Mat rho_;
};

namespace detail {

/// Applies a dense operator (not necessarily unitary) on the target
/// registers to an amplitude vector.
inline Vec apply_op_vec(const RegisterLayout& layout, const Vec& in,
                        const Mat& op, std::span<const std::string> targets) {
  const auto tshifts = layout.shifts_of(targets);
  const auto rshifts = layout.shifts_complement(targets);
  const std::size_t tdim = std::size_t{1} << tshifts.size();
  const std::size_t rdim = std::size_t{1} << rshifts.size();
  if (op.rows() != static_cast<Eigen::Index>(tdim))
    throw ArgumentError("operator dimension does not match target registers");
  Vec out = Vec::Zero(in.size());
  Vec gathered(static_cast<Eigen::Index>(tdim));
  std::vector<std::uint64_t> idx(tdim);
  for (std::size_t e = 0; e < rdim; ++e) {
    const std::uint64_t base = scatter_bits(e, rshifts);
    for (std::size_t t = 0; t < tdim; ++t) {
      idx[t] = base | scatter_bits(t, tshifts);
      gathered(static_cast<Eigen::Index>(t)) =
          in(static_cast<Eigen::Index>(idx[t]));
    }
    const Vec mapped = op * gathered;
    for (std::size_t t = 0; t < tdim; ++t)
      out(static_cast<Eigen::Index>(idx[t])) =
          mapped(static_cast<Eigen::Index>(t));
  }
  return out;
}

/// Basis-permutation action on an amplitude vector: |b> -> |perm[b]> on the
/// target sub-index.
inline Vec apply_perm_vec(const RegisterLayout& layout, const Vec& in,
                          std::span<const std::uint32_t> perm,
                          std::span<const std::string> targets) {
  const auto tshifts = layout.shifts_of(targets);
  const std::size_t tdim = std::size_t{1} << tshifts.size();
  if (perm.size() != tdim)
    throw ArgumentError("permutation size does not match target registers");
  Vec out(in.size());
  const std::size_t dim = static_cast<std::size_t>(in.size());
  for (std::size_t g = 0; g < dim; ++g) {
    const std::uint64_t t = extract_bits(g, tshifts);
    const std::uint64_t g2 =
        (g & ~scatter_bits(tdim - 1, tshifts)) | scatter_bits(perm[t], tshifts);
    out(static_cast<Eigen::Index>(g2)) = in(static_cast<Eigen::Index>(g));
  }
  return out;
}

/// (Op x I) rho, acting on rows only.
inline Mat apply_op_rows(const RegisterLayout& layout, const Mat& rho,
                         const Mat& op, std::span<const std::string> targets) {
  Mat out(rho.rows(), rho.cols());
  for (Eigen::Index c = 0; c < rho.cols(); ++c)
    out.col(c) = apply_op_vec(layout, rho.col(c), op, targets);
  return out;
}

/// (Op1 x I) rho (Op2 x I)^dagger.
inline Mat conjugate_op(const RegisterLayout& layout, const Mat& rho,
                        const Mat& op, std::span<const std::string> targets) {
  Mat half = apply_op_rows(layout, rho, op, targets);
  // Rows of the adjoint action: conj on the column index.
  Mat out = apply_op_rows(layout, half.adjoint(), op, targets).adjoint();
  return out;
}

inline Mat sqrt_psd(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace detail

/// Tensor product; layouts must have disjoint register names. Pure inputs
/// stay pure, otherwise both are promoted to density matrices.
inline QuantumState tensor(const QuantumState& a, const QuantumState& b) {
  RegisterLayout layout = concat(a.layout(), b.layout());
  if (a.is_pure() && b.is_pure()) {
    const Vec& va = a.amplitudes();
    const Vec& vb = b.amplitudes();
    Vec out(va.size() * vb.size());
    for (Eigen::Index i = 0; i < va.size(); ++i)
      out.segment(i * vb.size(), vb.size()) = va(i) * vb;
    return QuantumState::pure_state(std::move(layout), std::move(out));
  }
  const Mat ra = a.density_matrix();
  const Mat rb = b.density_matrix();
  Mat out(ra.rows() * rb.rows(), ra.cols() * rb.cols());
  for (Eigen::Index i = 0; i < ra.rows(); ++i)
    for (Eigen::Index j = 0; j < ra.cols(); ++j)
      out.block(i * rb.rows(), j * rb.cols(), rb.rows(), rb.cols()) =
          ra(i, j) * rb;
  return QuantumState::mixed_state(std::move(layout), std::move(out));
}

/// Applies a unitary on its target registers, identity elsewhere.
inline QuantumState apply_unitary(const QuantumState& state, const Unitary& u) {
  const RegisterLayout& layout = state.layout();
  const int tq = layout.qubits_of(u.targets());
  if (u.matrix().rows() != (Eigen::Index{1} << tq))
    throw ArgumentError("unitary dimension does not match target registers");
  if (state.is_pure()) {
    Vec out = u.is_permutation()
                  ? detail::apply_perm_vec(layout, state.amplitudes(),
                                           u.permutation(), u.targets())
                  : detail::apply_op_vec(layout, state.amplitudes(),
                                         u.matrix(), u.targets());
    return QuantumState::pure_state(layout, std::move(out));
  }
  Mat rho = detail::conjugate_op(layout, state.density(), u.matrix(),
                                 u.targets());
  return QuantumState::mixed_state(layout, std::move(rho));
}

/// Partial trace onto the kept registers (in layout order); always mixed.
inline QuantumState partial_trace(const QuantumState& state,
                                  std::span<const std::string> keep) {
  if (keep.empty())
    throw ArgumentError("partial_trace: keep list must not be empty");
  const RegisterLayout& layout = state.layout();
  RegisterLayout out_layout = layout.keep_only(keep);
  const auto kshifts = layout.shifts_of(out_layout.names());
  const auto eshifts = layout.shifts_complement(out_layout.names());
  const std::size_t kdim = std::size_t{1} << kshifts.size();
  const std::size_t edim = std::size_t{1} << eshifts.size();
  if (out_layout.total_qubits() > kMaxMixedQubits)
    throw CapacityError("partial trace onto " +
                        std::to_string(out_layout.total_qubits()) +
                        " qubits exceeds the mixed-state cap");
  if (state.is_pure()) {
    // rho_keep = A A^dagger with A[k, e] = psi[(k, e)].
    const Vec& psi = state.amplitudes();
    Mat a(static_cast<Eigen::Index>(kdim), static_cast<Eigen::Index>(edim));
    for (std::size_t k = 0; k < kdim; ++k) {
      const std::uint64_t base = scatter_bits(k, kshifts);
      for (std::size_t e = 0; e < edim; ++e)
        a(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(e)) =
            psi(static_cast<Eigen::Index>(base | scatter_bits(e, eshifts)));
    }
    Mat rho = a * a.adjoint();
    return QuantumState::mixed_state(std::move(out_layout), std::move(rho));
  }
  const Mat& full = state.density();
  Mat rho = Mat::Zero(static_cast<Eigen::Index>(kdim),
                      static_cast<Eigen::Index>(kdim));
  for (std::size_t i = 0; i < kdim; ++i) {
    const std::uint64_t bi = scatter_bits(i, kshifts);
    for (std::size_t j = 0; j < kdim; ++j) {
      const std::uint64_t bj = scatter_bits(j, kshifts);
      cdouble sum = 0;
      for (std::size_t e = 0; e < edim; ++e) {
        const std::uint64_t be = scatter_bits(e, eshifts);
        sum += full(static_cast<Eigen::Index>(bi | be),
                    static_cast<Eigen::Index>(bj | be));
      }
      rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = sum;
    }
  }
  return QuantumState::mixed_state(std::move(out_layout), std::move(rho));
}

/// Projects the named registers onto the (normalised) vector `v` and removes
/// them from the layout. Returns the branch probability and the conditioned
/// state on the remaining registers. Purity is preserved.
inline std::pair<double, std::optional<QuantumState>> partial_project(
    const QuantumState& state, std::span<const std::string> regs,
    const Vec& v) {
  const RegisterLayout& layout = state.layout();
  const auto tshifts = layout.shifts_of(regs);
  const auto rshifts = layout.shifts_complement(regs);
  const std::size_t tdim = std::size_t{1} << tshifts.size();
  const std::size_t rdim = std::size_t{1} << rshifts.size();
  if (v.size() != static_cast<Eigen::Index>(tdim))
    throw ArgumentError("projection vector does not match register size");
  if (rshifts.empty())
    throw ArgumentError("partial_project must leave at least one register");
  RegisterLayout out_layout = layout.drop(regs);
  if (state.is_pure()) {
    const Vec& psi = state.amplitudes();
    Vec out = Vec::Zero(static_cast<Eigen::Index>(rdim));
    for (std::size_t e = 0; e < rdim; ++e) {
      const std::uint64_t base = scatter_bits(e, rshifts);
      cdouble sum = 0;
      for (std::size_t t = 0; t < tdim; ++t)
        sum += std::conj(v(static_cast<Eigen::Index>(t))) *
               psi(static_cast<Eigen::Index>(base | scatter_bits(t, tshifts)));
      out(static_cast<Eigen::Index>(e)) = sum;
    }
    const double p = out.squaredNorm();
    if (p <= kBranchEps) return {p, std::nullopt};
    out /= std::sqrt(p);
    return {p, QuantumState::pure_state(std::move(out_layout), std::move(out))};
  }
  const Mat& rho = state.density();
  Mat out = Mat::Zero(static_cast<Eigen::Index>(rdim),
                      static_cast<Eigen::Index>(rdim));
  for (std::size_t e = 0; e < rdim; ++e) {
    const std::uint64_t be = scatter_bits(e, rshifts);
    for (std::size_t f = 0; f < rdim; ++f) {
      const std::uint64_t bf = scatter_bits(f, rshifts);
      cdouble sum = 0;
      for (std::size_t t = 0; t < tdim; ++t) {
        const std::uint64_t bt = scatter_bits(t, tshifts);
        for (std::size_t s = 0; s < tdim; ++s)
          sum += std::conj(v(static_cast<Eigen::Index>(t))) *
                 rho(static_cast<Eigen::Index>(be | bt),
                     static_cast<Eigen::Index>(bf | scatter_bits(s, tshifts))) *
                 v(static_cast<Eigen::Index>(s));
      }
      out(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(f)) = sum;
    }
  }
  const double p = out.trace().real();
  if (p <= kBranchEps) return {p, std::nullopt};
  out /= p;
  return {p, QuantumState::mixed_state(std::move(out_layout), std::move(out))};
}

/// One branch of a POVM measurement.
struct MeasurementBranch {
  int outcome = 0;
  double probability = 0.0;
  std::optional<QuantumState> post;  // absent for (near-)zero branches
};

/// All measurement branches with Lueders post-states. Pure states stay pure.
inline std::vector<MeasurementBranch> measure_branches(
    const QuantumState& state, const Povm& povm) {
  const RegisterLayout& layout = state.layout();
  std::vector<MeasurementBranch> branches;
  for (int k = 0; k < povm.outcomes(); ++k) {
    const Mat& effect = povm.effect(k);
    const Mat kraus = povm.is_projector(k) ? effect : detail::sqrt_psd(effect);
    MeasurementBranch br;
    br.outcome = k;
    if (state.is_pure()) {
      Vec post = detail::apply_op_vec(layout, state.amplitudes(), kraus,
                                      povm.targets());
      br.probability = post.squaredNorm();
      if (br.probability > kBranchEps) {
        post /= std::sqrt(br.probability);
        br.post = QuantumState::pure_state(layout, std::move(post));
      }
    } else {
      Mat post = detail::conjugate_op(layout, state.density(), kraus,
                                      povm.targets());
      br.probability = post.trace().real();
      if (br.probability > kBranchEps) {
        post /= br.probability;
        br.post = QuantumState::mixed_state(layout, std::move(post));
      }
    }
    branches.push_back(std::move(br));
  }
  return branches;
}

/// Samples one POVM outcome and returns the conditioned branch.
inline MeasurementBranch measure_sample(const QuantumState& state,
                                        const Povm& povm, Rng& rng) {
  auto branches = measure_branches(state, povm);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double u = unif(rng);
  MeasurementBranch* last_live = nullptr;
  for (auto& br : branches) {
    if (!br.post) continue;
    last_live = &br;
    if (u < br.probability) return std::move(br);
    u -= br.probability;
  }
  // Rounding pushed u past the total mass; take the last live branch.
  if (last_live) return std::move(*last_live);
  throw DegenerateBranchError("all measurement branches have zero probability");
}

}  // namespace dqma
