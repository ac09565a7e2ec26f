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
#include <cmath>

#include "dqma/state.hpp"

namespace dqma {

namespace detail {

inline void check_same_shape(const QuantumState& a, const QuantumState& b) {
  if (!a.layout().same_shape(b.layout()))
    throw LayoutError("states live on different register layouts");
}

}  // namespace detail

/// Uhlmann fidelity F(a, b) = tr sqrt(sqrt(a) b sqrt(a)), in [0, 1].
/// For a pure first argument this reduces to sqrt(<psi|rho|psi>).
inline double fidelity(const QuantumState& a, const QuantumState& b) {
  detail::check_same_shape(a, b);
  double f;
  if (a.is_pure() && b.is_pure()) {
    f = std::abs(a.amplitudes().dot(b.amplitudes()));
  } else if (a.is_pure() || b.is_pure()) {
    const QuantumState& p = a.is_pure() ? a : b;
    const QuantumState& m = a.is_pure() ? b : a;
    const Vec& psi = p.amplitudes();
    f = std::sqrt(std::max(0.0, (psi.adjoint() * m.density() * psi)(0).real()));
  } else {
    const Mat sa = detail::sqrt_psd(a.density());
    Eigen::SelfAdjointEigenSolver<Mat> es(sa * b.density() * sa,
                                          Eigen::EigenvaluesOnly);
    f = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  }
  return std::clamp(f, 0.0, 1.0);
}

/// Trace distance D(a, b) = ||a - b||_1 / 2, in [0, 1].
inline double trace_distance(const QuantumState& a, const QuantumState& b) {
  detail::check_same_shape(a, b);
  if (a.is_pure() && b.is_pure()) {
    // For pure states D = sqrt(1 - |<psi|phi>|^2) exactly.
    const double overlap = std::abs(a.amplitudes().dot(b.amplitudes()));
    return std::sqrt(std::max(0.0, 1.0 - overlap * overlap));
  }
  const Mat diff = a.density_matrix() - b.density_matrix();
  Eigen::SelfAdjointEigenSolver<Mat> es(diff, Eigen::EigenvaluesOnly);
  const double d = 0.5 * es.eigenvalues().cwiseAbs().sum();
  return std::clamp(d, 0.0, 1.0);
}

}  // namespace dqma
