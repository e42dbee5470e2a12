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

#include "causalwit/layout.hpp"

#include <algorithm>

namespace causalwit {

std::string party_name(Party p) {
  switch (p) {
    case Party::Alice: return "A";
    case Party::Bob: return "B";
    case Party::Charlie: return "C";
    case Party::Target: return "T";
  }
  throw std::logic_error("unknown party");
}

Party party_from_name(const std::string& name) {
  if (name == "A" || name == "Alice") return Party::Alice;
  if (name == "B" || name == "Bob") return Party::Bob;
  if (name == "C" || name == "Charlie") return Party::Charlie;
  if (name == "T" || name == "Target" || name == "target") return Party::Target;
  throw std::invalid_argument("unknown party name: " + name);
}

SystemLayout::SystemLayout(std::vector<Subsystem> systems) : systems_(std::move(systems)) {
  std::set<std::string> seen;
  for (const auto& s : systems_) {
    if (s.dim <= 0) throw std::invalid_argument("subsystem dimension must be positive: " + s.label);
    if (!seen.insert(s.label).second)
      throw std::invalid_argument("duplicate subsystem label: " + s.label);
  }
  strides_.assign(systems_.size(), 1);
  total_dim_ = 1;
  for (int i = static_cast<int>(systems_.size()) - 1; i >= 0; --i) {
    strides_[i] = total_dim_;
    total_dim_ *= systems_[i].dim;
  }
}

bool SystemLayout::has_label(const std::string& label) const {
  return std::any_of(systems_.begin(), systems_.end(),
                     [&](const Subsystem& s) { return s.label == label; });
}

int SystemLayout::index_of(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (systems_[i].label == label) return i;
  throw std::invalid_argument("unknown subsystem label: " + label);
}

bool SystemLayout::all_qubits() const {
  return std::all_of(systems_.begin(), systems_.end(),
                     [](const Subsystem& s) { return s.dim == 2; });
}

int SystemLayout::dim_product(const std::vector<int>& indices) const {
  int d = 1;
  for (int i : indices) d *= systems_.at(i).dim;
  return d;
}

std::vector<int> SystemLayout::split_index(int flat) const {
  std::vector<int> parts(systems_.size());
  for (int i = 0; i < size(); ++i) {
    parts[i] = (flat / strides_[i]) % systems_[i].dim;
  }
  return parts;
}

int SystemLayout::flat_index(const std::vector<int>& parts) const {
  int flat = 0;
  for (int i = 0; i < size(); ++i) flat += parts[i] * strides_[i];
  return flat;
}

std::vector<int> SystemLayout::indices_of(const std::set<std::string>& labels) const {
  std::vector<int> out;
  for (const auto& l : labels) index_of(l);  // validates
  for (int i = 0; i < size(); ++i)
    if (labels.count(systems_[i].label)) out.push_back(i);
  return out;
}

SystemLayout SystemLayout::without(const std::vector<int>& indices) const {
  std::set<int> drop(indices.begin(), indices.end());
  std::vector<Subsystem> rest;
  for (int i = 0; i < size(); ++i)
    if (!drop.count(i)) rest.push_back(systems_[i]);
  return SystemLayout(rest);
}

SystemLayout bipartite_qubit_layout() {
  return SystemLayout({{"A_I", 2, Party::Alice},
                       {"A_O", 2, Party::Alice},
                       {"B_I", 2, Party::Bob},
                       {"B_O", 2, Party::Bob}});
}

SystemLayout tripartite_qubit_layout() {
  return SystemLayout({{"A_I", 2, Party::Alice},
                       {"A_O", 2, Party::Alice},
                       {"B_I", 2, Party::Bob},
                       {"B_O", 2, Party::Bob},
                       {"C_I", 2, Party::Charlie}});
}

SystemLayout switch_pure_layout() {
  return SystemLayout({{"A_I", 2, Party::Alice},
                       {"A_O", 2, Party::Alice},
                       {"B_I", 2, Party::Bob},
                       {"B_O", 2, Party::Bob},
                       {"C_I", 2, Party::Charlie},
                       {"T_I", 2, Party::Target}});
}

}  // namespace causalwit
