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

namespace dqma {

namespace detail {

inline bool is_identity(const Mat& m, double tol) {
  return (m - Mat::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace detail

/// A unitary acting on an ordered list of target registers. The matrix is
/// indexed by the concatenated bits of the targets, most significant first.
class Unitary {
 public:
  Unitary(std::vector<std::string> targets, Mat matrix)
      : targets_(std::move(targets)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols())
      throw ArgumentError("unitary matrix must be square");
    if (!detail::is_identity(matrix_.adjoint() * matrix_, kAlgebraTol))
      throw ArgumentError("matrix is not unitary within tolerance");
    detect_permutation();
  }

  /// Permutation of computational basis states: |b> -> |perm[b]>.
  static Unitary basis_permutation(std::vector<std::string> targets,
                                   std::vector<std::uint32_t> perm) {
    const auto dim = perm.size();
    std::vector<bool> hit(dim, false);
    for (std::uint32_t image : perm) {
      if (image >= dim || hit[image])
        throw ArgumentError("basis permutation is not a bijection");
      hit[image] = true;
    }
    Mat m = Mat::Zero(static_cast<Eigen::Index>(dim),
                      static_cast<Eigen::Index>(dim));
    for (std::size_t b = 0; b < dim; ++b)
      m(static_cast<Eigen::Index>(perm[b]), static_cast<Eigen::Index>(b)) = 1.0;
    Unitary u(std::move(targets), std::move(m));
    u.perm_ = std::move(perm);
    return u;
  }

  const std::vector<std::string>& targets() const { return targets_; }
  const Mat& matrix() const { return matrix_; }
  bool is_permutation() const { return perm_.has_value(); }
  const std::vector<std::uint32_t>& permutation() const { return *perm_; }

  Unitary adjoint() const {
    if (perm_) {
      std::vector<std::uint32_t> inv(perm_->size());
      for (std::size_t b = 0; b < perm_->size(); ++b)
        inv[(*perm_)[b]] = static_cast<std::uint32_t>(b);
      return basis_permutation(targets_, std::move(inv));
    }
    return Unitary(targets_, matrix_.adjoint());
  }

 private:
  void detect_permutation() {
    const auto dim = static_cast<std::size_t>(matrix_.rows());
    std::vector<std::uint32_t> perm(dim);
    for (std::size_t col = 0; col < dim; ++col) {
      int ones = 0;
      std::uint32_t row_of_one = 0;
      for (std::size_t row = 0; row < dim; ++row) {
        const cdouble v = matrix_(static_cast<Eigen::Index>(row),
                                  static_cast<Eigen::Index>(col));
        if (std::abs(v) <= kAlgebraTol) continue;
        if (std::abs(v - cdouble{1.0, 0.0}) > kAlgebraTol) return;
        ++ones;
        row_of_one = static_cast<std::uint32_t>(row);
      }
      if (ones != 1) return;
      perm[col] = row_of_one;
    }
    perm_ = std::move(perm);
  }

  std::vector<std::string> targets_;
  Mat matrix_;
  std::optional<std::vector<std::uint32_t>> perm_;
};

/// A POVM over an ordered list of target registers: labelled positive
/// effects summing to the identity.
class Povm {
 public:
  Povm(std::vector<std::string> targets, std::vector<Mat> effects,
       std::vector<std::string> labels)
      : targets_(std::move(targets)),
        effects_(std::move(effects)),
        labels_(std::move(labels)) {
    if (effects_.empty()) throw ArgumentError("POVM needs at least one effect");
    if (labels_.size() != effects_.size())
      throw ArgumentError("POVM labels must match effects");
    const Eigen::Index d = effects_.front().rows();
    Mat sum = Mat::Zero(d, d);
    for (const Mat& e : effects_) {
      if (e.rows() != d || e.cols() != d)
        throw ArgumentError("POVM effects must share dimensions");
      if ((e - e.adjoint()).cwiseAbs().maxCoeff() > kAlgebraTol)
        throw ArgumentError("POVM effect is not Hermitian");
      Eigen::SelfAdjointEigenSolver<Mat> es(e, Eigen::EigenvaluesOnly);
      if (es.eigenvalues().minCoeff() < -kPsdTol)
        throw ArgumentError("POVM effect is not positive semidefinite");
      sum += e;
    }
    if (!detail::is_identity(sum, kAlgebraTol))
      throw ArgumentError("POVM effects do not sum to the identity");
    for (const Mat& e : effects_)
      projector_.push_back((e * e - e).cwiseAbs().maxCoeff() <= kAlgebraTol);
  }

  /// Binary POVM {E, I-E} with labels "accept"/"reject".
  static Povm binary(std::vector<std::string> targets, const Mat& accept) {
    Mat rest = Mat::Identity(accept.rows(), accept.cols()) - accept;
    return Povm(std::move(targets), {accept, std::move(rest)},
                {"accept", "reject"});
  }

  const std::vector<std::string>& targets() const { return targets_; }
  int outcomes() const { return static_cast<int>(effects_.size()); }
  const Mat& effect(int k) const { return effects_[static_cast<std::size_t>(k)]; }
  const std::string& label(int k) const {
    return labels_[static_cast<std::size_t>(k)];
  }
  bool is_projector(int k) const {
    return projector_[static_cast<std::size_t>(k)];
  }

 private:
  std::vector<std::string> targets_;
  std::vector<Mat> effects_;
  std::vector<std::string> labels_;
  std::vector<bool> projector_;
};

/// Kronecker product of column vectors.
inline Vec kron(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

namespace gates {

inline Mat identity(Eigen::Index dim) { return Mat::Identity(dim, dim); }

inline Mat x() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline Mat y() {
  Mat m(2, 2);
  m << cdouble(0, 0), cdouble(0, -1), cdouble(0, 1), cdouble(0, 0);
  return m;
}

inline Mat z() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline Mat h() {
  Mat m(2, 2);
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}

inline Vec ket(std::uint64_t value, int qubits) {
  Vec v = Vec::Zero(Eigen::Index{1} << qubits);
  v(static_cast<Eigen::Index>(value)) = 1.0;
  return v;
}

inline Vec ket_plus() {
  Vec v(2);
  v << 1, 1;
  return v / std::sqrt(2.0);
}

inline Vec ket_minus() {
  Vec v(2);
  v << 1, -1;
  return v / std::sqrt(2.0);
}

/// |+'> = (|0> + i|1>)/sqrt(2)
inline Vec ket_plus_i() {
  Vec v(2);
  v << cdouble(1, 0), cdouble(0, 1);
  return v / std::sqrt(2.0);
}

/// |-'> = (|0> - i|1>)/sqrt(2)
inline Vec ket_minus_i() {
  Vec v(2);
  v << cdouble(1, 0), cdouble(0, -1);
  return v / std::sqrt(2.0);
}

/// |Phi+> = (|00> + |11>)/sqrt(2)
inline Vec phi_plus() {
  Vec v = Vec::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return v;
}

}  // namespace gates

}  // namespace dqma
