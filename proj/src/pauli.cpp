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

#include "causalwit/pauli.hpp"

namespace causalwit {

namespace {
constexpr char kSymbols[4] = {'1', 'X', 'Y', 'Z'};

void require_all_qubits(const SystemLayout& layout) {
  if (!layout.all_qubits())
    throw std::invalid_argument("Pauli expansion requires an all-qubit layout");
}

void require_matching_length(const SystemLayout& layout, const std::string& s) {
  if (static_cast<int>(s.size()) != layout.size())
    throw std::invalid_argument("Pauli string length does not match number of subsystems");
}
}  // namespace

bool is_pauli_symbol(char c) {
  return c == '1' || c == 'I' || c == 'X' || c == 'Y' || c == 'Z';
}

std::string normalize_pauli_string(const std::string& s) {
  std::string out = s;
  for (char& c : out) {
    if (!is_pauli_symbol(c)) throw std::invalid_argument("invalid Pauli symbol in string: " + s);
    if (c == 'I') c = '1';
  }
  return out;
}

std::vector<std::string> all_pauli_strings(int n) {
  std::vector<std::string> out;
  out.reserve(1u << (2 * n));
  for_each_pauli_string(n, [&](const std::string& s) { out.push_back(s); });
  return out;
}

void for_each_pauli_string(int n, const std::function<void(const std::string&)>& fn) {
  std::string s(n, '1');
  const long total = 1L << (2 * n);
  for (long code = 0; code < total; ++code) {
    long c = code;
    for (int i = n - 1; i >= 0; --i) {
      s[i] = kSymbols[c & 3];
      c >>= 2;
    }
    fn(s);
  }
}

PauliRowAction::PauliRowAction(const std::string& string) {
  const std::string s = normalize_pauli_string(string);
  n_ = static_cast<int>(s.size());
  dim_ = 1 << n_;
  symbols_.assign(s.begin(), s.end());
  for (int q = 0; q < n_; ++q)
    if (s[q] == 'X' || s[q] == 'Y') flip_mask_ |= 1 << (n_ - 1 - q);
}

int PauliRowAction::columns(int row) const { return row ^ flip_mask_; }

Complex PauliRowAction::phase(int row) const {
  Complex p(1.0, 0.0);
  for (int q = 0; q < n_; ++q) {
    const int bit = (row >> (n_ - 1 - q)) & 1;
    switch (symbols_[q]) {
      case '1':
      case 'X':
        break;
      case 'Y':
        // Y[b, 1-b] = -i * (-1)^b
        p *= (bit == 0) ? Complex(0.0, -1.0) : Complex(0.0, 1.0);
        break;
      case 'Z':
        if (bit) p = -p;
        break;
    }
  }
  return p;
}

HermitianOperator pauli_string_matrix(const SystemLayout& layout, const std::string& string) {
  require_all_qubits(layout);
  require_matching_length(layout, string);
  PauliRowAction act(string);
  const int d = layout.total_dim();
  Matrix m = Matrix::Zero(d, d);
  for (int r = 0; r < d; ++r) m(r, act.columns(r)) = act.phase(r);
  return HermitianOperator(layout, m);
}

double pauli_coefficient(const HermitianOperator& h, const std::string& string) {
  require_all_qubits(h.layout());
  require_matching_length(h.layout(), string);
  PauliRowAction act(string);
  const int d = h.dim();
  Complex tr(0.0, 0.0);
  // tr[s H] = sum_r s(r, c_r) H(c_r, r)
  for (int r = 0; r < d; ++r) tr += act.phase(r) * h.matrix()(act.columns(r), r);
  return tr.real() / double(d);
}

PauliExpansion to_pauli(const HermitianOperator& h, double prune) {
  require_all_qubits(h.layout());
  PauliExpansion e;
  e.layout = h.layout();
  for_each_pauli_string(h.layout().size(), [&](const std::string& s) {
    const double c = pauli_coefficient(h, s);
    if (std::abs(c) > prune) e.terms[s] = c;
  });
  return e;
}

HermitianOperator from_pauli(const PauliExpansion& e) {
  return operator_from_pauli_terms(e.layout, e.terms);
}

HermitianOperator operator_from_pauli_terms(const SystemLayout& layout,
                                            const std::map<std::string, double>& terms) {
  require_all_qubits(layout);
  const int d = layout.total_dim();
  Matrix m = Matrix::Zero(d, d);
  for (const auto& [string, coeff] : terms) {
    require_matching_length(layout, string);
    PauliRowAction act(string);
    for (int r = 0; r < d; ++r) m(r, act.columns(r)) += coeff * act.phase(r);
  }
  return HermitianOperator(layout, m);
}

}  // namespace causalwit
