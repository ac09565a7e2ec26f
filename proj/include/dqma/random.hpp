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

#include "dqma/state.hpp"

namespace dqma {

/// Complex standard-Gaussian vector.
inline Vec gaussian_vector(Eigen::Index dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = cdouble(normal(rng), normal(rng));
  return v;
}

/// Haar-random pure state: normalised complex-Gaussian amplitudes.
inline Vec haar_random_vector(Eigen::Index dim, Rng& rng) {
  Vec v = gaussian_vector(dim, rng);
  return v / v.norm();
}

inline QuantumState haar_random_pure(RegisterLayout layout, Rng& rng) {
  Vec v = haar_random_vector(static_cast<Eigen::Index>(layout.dim()), rng);
  return QuantumState::pure_state(std::move(layout), std::move(v));
}

/// Random mixed state obtained as the partial trace of a Haar-random pure
/// state on `qubits + env_qubits` qubits. env_qubits controls the rank.
inline Mat random_density_matrix(int qubits, int env_qubits, Rng& rng) {
  const Eigen::Index d = Eigen::Index{1} << qubits;
  const Eigen::Index e = Eigen::Index{1} << env_qubits;
  Vec psi = haar_random_vector(d * e, rng);
  Eigen::Map<const Mat> a(psi.data(), e, d);  // column-major: psi[(k, env)]
  Mat rho = a.transpose() * a.conjugate();
  return rho;
}

inline QuantumState haar_random_mixed(RegisterLayout layout, int env_qubits,
                                      Rng& rng) {
  Mat rho = random_density_matrix(layout.total_qubits(), env_qubits, rng);
  return QuantumState::mixed_state(std::move(layout), std::move(rho));
}

/// Haar-random unitary via QR of a complex Gaussian matrix with phase fix.
inline Mat haar_random_unitary(Eigen::Index dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j)
      g(i, j) = cdouble(normal(rng), normal(rng));
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const cdouble d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

/// Single-register layout helper.
inline RegisterLayout single_register(const std::string& name, int qubits,
                                      int owner = -1) {
  return RegisterLayout({{name, qubits, owner}});
}

}  // namespace dqma
