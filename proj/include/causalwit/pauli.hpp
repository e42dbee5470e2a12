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

#include <functional>
#include <map>
#include <string>

#include "causalwit/operator.hpp"

namespace causalwit {

// Pauli strings are std::strings over {'1','X','Y','Z'}, one symbol per
// subsystem in layout order ('I' is accepted on input as an alias for '1').

bool is_pauli_symbol(char c);
std::string normalize_pauli_string(const std::string& s);

/// All 4^n strings over n subsystems, in lexicographic order ('1'<'X'<'Y'<'Z').
std::vector<std::string> all_pauli_strings(int n);

/// Enumerates strings without materialising the full list.
void for_each_pauli_string(int n, const std::function<void(const std::string&)>& fn);

/// Sparse row action of a Pauli string: for each basis row r the string has a
/// single nonzero entry at column `col(r)` with value `phase(r)`.
struct PauliRowAction {
  explicit PauliRowAction(const std::string& string);
  int columns(int row) const;
  Complex phase(int row) const;
  int dim() const { return dim_; }

 private:
  int n_ = 0;
  int dim_ = 1;
  int flip_mask_ = 0;                 // bits set where the symbol is X or Y
  std::vector<char> symbols_;
};

/// Dense matrix of a Pauli string on an all-qubit layout.
HermitianOperator pauli_string_matrix(const SystemLayout& layout, const std::string& string);

/// Sparse real-coefficient expansion of a Hermitian operator over Pauli
/// strings. Coefficients satisfy c(s) = tr[s . H] / total_dim.
struct PauliExpansion {
  SystemLayout layout;
  std::map<std::string, double> terms;

  double coeff(const std::string& s) const {
    auto it = terms.find(s);
    return it == terms.end() ? 0.0 : it->second;
  }
};

/// Expands H over the Pauli basis. Terms with |coeff| <= prune are dropped.
PauliExpansion to_pauli(const HermitianOperator& h, double prune = 0.0);

HermitianOperator from_pauli(const PauliExpansion& e);

/// tr[s . H] / total_dim without materialising the string matrix.
double pauli_coefficient(const HermitianOperator& h, const std::string& string);

/// Builds an operator from a {string: coefficient} map on the given layout.
HermitianOperator operator_from_pauli_terms(const SystemLayout& layout,
                                            const std::map<std::string, double>& terms);

}  // namespace causalwit
