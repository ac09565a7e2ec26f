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
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dqma/common.hpp"

namespace dqma {

/// One named qubit register. `owner` is the node holding it (-1: unowned).
struct Register {
  std::string name;
  int qubits = 1;
  int owner = -1;
};

/// Ordered list of named registers addressing the tensor factors of a state.
/// Register 0 is the most significant block of the basis index; within a
/// register, the first qubit is the most significant bit.
class RegisterLayout {
 public:
  RegisterLayout() = default;

  explicit RegisterLayout(std::vector<Register> regs) : regs_(std::move(regs)) {
    int offset = 0;
    for (std::size_t i = 0; i < regs_.size(); ++i) {
      const Register& r = regs_[i];
      if (r.qubits < 1)
        throw LayoutError("register '" + r.name + "' must have >= 1 qubit");
      if (!index_.emplace(r.name, i).second)
        throw LayoutError("duplicate register name '" + r.name + "'");
      offsets_.push_back(offset);
      offset += r.qubits;
    }
    total_ = offset;
    if (total_ > kMaxPureQubits)
      throw CapacityError("layout of " + std::to_string(total_) +
                          " qubits exceeds the " +
                          std::to_string(kMaxPureQubits) + "-qubit cap");
  }

  int total_qubits() const { return total_; }
  std::size_t dim() const { return std::size_t{1} << total_; }
  int size() const { return static_cast<int>(regs_.size()); }
  const Register& at(int i) const { return regs_[static_cast<std::size_t>(i)]; }
  const std::vector<Register>& registers() const { return regs_; }

  bool has(std::string_view name) const {
    return index_.find(std::string(name)) != index_.end();
  }

  const Register& reg(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end())
      throw LayoutError("unknown register '" + std::string(name) + "'");
    return regs_[it->second];
  }

  /// Qubit offset of the register's first (most significant) qubit.
  int qubit_offset(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end())
      throw LayoutError("unknown register '" + std::string(name) + "'");
    return offsets_[it->second];
  }

  /// Bit shifts (into the global basis index) of the qubits of the named
  /// registers, most significant first, in the order given.
  std::vector<int> shifts_of(std::span<const std::string> names) const {
    std::vector<int> shifts;
    for (const auto& name : names) {
      const Register& r = reg(name);
      const int off = qubit_offset(name);
      for (int q = 0; q < r.qubits; ++q)
        shifts.push_back(total_ - 1 - (off + q));
    }
    return shifts;
  }

  /// Shifts of every qubit not belonging to the named registers, in layout
  /// order.
  std::vector<int> shifts_complement(std::span<const std::string> names) const {
    std::vector<bool> taken(static_cast<std::size_t>(total_), false);
    for (const auto& name : names) {
      const Register& r = reg(name);
      const int off = qubit_offset(name);
      for (int q = 0; q < r.qubits; ++q)
        taken[static_cast<std::size_t>(off + q)] = true;
    }
    std::vector<int> shifts;
    for (int p = 0; p < total_; ++p)
      if (!taken[static_cast<std::size_t>(p)]) shifts.push_back(total_ - 1 - p);
    return shifts;
  }

  int qubits_of(std::span<const std::string> names) const {
    int n = 0;
    for (const auto& name : names) n += reg(name).qubits;
    return n;
  }

  /// Layout restricted to the named registers, in original layout order.
  RegisterLayout keep_only(std::span<const std::string> names) const {
    std::vector<Register> kept;
    for (const Register& r : regs_)
      if (std::find(names.begin(), names.end(), r.name) != names.end())
        kept.push_back(r);
    if (kept.size() != names.size())
      throw LayoutError("keep_only: unknown or repeated register names");
    return RegisterLayout(std::move(kept));
  }

  RegisterLayout drop(std::span<const std::string> names) const {
    for (const auto& name : names) (void)reg(name);
    std::vector<Register> kept;
    for (const Register& r : regs_)
      if (std::find(names.begin(), names.end(), r.name) == names.end())
        kept.push_back(r);
    return RegisterLayout(std::move(kept));
  }

  RegisterLayout renamed(std::string_view from, std::string_view to) const {
    std::vector<Register> regs = regs_;
    bool found = false;
    for (Register& r : regs) {
      if (r.name == from) {
        r.name = std::string(to);
        found = true;
      }
    }
    if (!found)
      throw LayoutError("unknown register '" + std::string(from) + "'");
    return RegisterLayout(std::move(regs));
  }

  /// Same register names and sizes in the same order (owners may differ).
  bool same_shape(const RegisterLayout& other) const {
    if (regs_.size() != other.regs_.size()) return false;
    for (std::size_t i = 0; i < regs_.size(); ++i)
      if (regs_[i].name != other.regs_[i].name ||
          regs_[i].qubits != other.regs_[i].qubits)
        return false;
    return true;
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    out.reserve(regs_.size());
    for (const Register& r : regs_) out.push_back(r.name);
    return out;
  }

 private:
  std::vector<Register> regs_;
  std::vector<int> offsets_;
  std::map<std::string, std::size_t, std::less<>> index_;
  int total_ = 0;
};

/// Concatenates two layouts; register names must be disjoint.
inline RegisterLayout concat(const RegisterLayout& a, const RegisterLayout& b) {
  std::vector<Register> regs = a.registers();
  for (const Register& r : b.registers()) {
    if (a.has(r.name))
      throw LayoutError("register name collision on '" + r.name + "'");
    regs.push_back(r);
  }
  return RegisterLayout(std::move(regs));
}

}  // namespace dqma
