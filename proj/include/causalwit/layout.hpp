// Copyright 2026 The causalwit developers
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

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace causalwit {

enum class Party { Alice, Bob, Charlie, Target };

std::string party_name(Party p);
Party party_from_name(const std::string& name);

struct Subsystem {
  std::string label;
  int dim = 2;
  Party party = Party::Alice;

  bool operator==(const Subsystem& o) const {
    return label == o.label && dim == o.dim && party == o.party;
  }
};

/// Ordered list of labelled subsystems. The order fixes the tensor-product
/// (Kronecker) convention used by every operator in the library: the first
/// subsystem is the most significant factor.
class SystemLayout {
 public:
  SystemLayout() = default;
  explicit SystemLayout(std::vector<Subsystem> systems);

  int size() const { return static_cast<int>(systems_.size()); }
  int total_dim() const { return total_dim_; }
  const Subsystem& subsystem(int i) const { return systems_.at(i); }
  const std::vector<Subsystem>& systems() const { return systems_; }

  bool has_label(const std::string& label) const;
  int index_of(const std::string& label) const;
  int dim_of(const std::string& label) const { return systems_[index_of(label)].dim; }
  Party party_of(const std::string& label) const { return systems_[index_of(label)].party; }

  bool all_qubits() const;

  /// Product of the dimensions of the given subsystem indices.
  int dim_product(const std::vector<int>& indices) const;

  /// Stride of subsystem i in the flattened index (product of dims after i).
  int stride(int i) const { return strides_.at(i); }

  /// Splits a flat basis index into one index per subsystem.
  std::vector<int> split_index(int flat) const;

  /// Inverse of split_index.
  int flat_index(const std::vector<int>& parts) const;

  /// Indices of the given labels, in layout order. Throws on unknown labels.
  std::vector<int> indices_of(const std::set<std::string>& labels) const;

  /// Layout with the given subsystem indices removed (order preserved).
  SystemLayout without(const std::vector<int>& indices) const;

  bool operator==(const SystemLayout& o) const { return systems_ == o.systems_; }
  bool operator!=(const SystemLayout& o) const { return !(*this == o); }

 private:
  std::vector<Subsystem> systems_;
  std::vector<int> strides_;
  int total_dim_ = 1;
};

/// A_I, A_O, B_I, B_O as qubits.
SystemLayout bipartite_qubit_layout();

/// A_I, A_O, B_I, B_O, C_I as qubits (Charlie has no outgoing system).
SystemLayout tripartite_qubit_layout();

/// Tripartite layout extended by the target system T_I (used while
/// assembling the switch process, traced out afterwards).
SystemLayout switch_pure_layout();

}  // namespace causalwit
