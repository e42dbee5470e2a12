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

#include <map>
#include <numbers>
#include <variant>

#include "causalwit/robustness.hpp"

namespace causalwit {

// Concrete processes, witnesses and decompositions used throughout the test
// and acceptance suites. All constructions are exact except for the two
// witnesses loaded from four-decimal coefficient tables.

/// W(eta1, eta2) = (1/4) [1 + eta1 1ZZ1 + eta2 Z1XZ] on A_I A_O B_I B_O.
/// Valid iff eta1^2 + eta2^2 <= 1; causally separable iff |eta1|+|eta2| <= 1.
ProcessMatrix make_w_etas(double eta1, double eta2);

/// The matching optimal witness (1/4)[1 - sgn(eta1) 1ZZ1 - sgn(eta2) Z1XZ],
/// with the trivial certificate (the witness is its own positive part).
Witness make_s_etas(double eta1, double eta2);

struct SeparableDecomposition {
  double weight_first = 0.0;   // convex weight of the A<B component
  double weight_second = 0.0;  // convex weight of the B<A component
  ProcessMatrix component_first;
  ProcessMatrix component_second;
};

/// Explicit convex split of W(eta1, eta2) over the two order cones; the
/// components are PSD precisely when |eta1| + |eta2| <= 1.
SeparableDecomposition make_sep_decomposition_etas(double eta1, double eta2);

enum class SwitchSign { Plus, Minus };

/// The quantum switch process on A_I A_O B_I B_O C_I: the target qubit starts
/// in `psi`, visits Alice and Bob in an order controlled coherently by the
/// control qubit, which is then handed to Charlie. The Minus sign flips the
/// relative phase of the two branch amplitudes.
ProcessMatrix make_switch(const Eigen::Vector2cd& psi, SwitchSign sign = SwitchSign::Plus);
ProcessMatrix make_switch();  // psi = |0>, plus sign

enum class NoiseKind { White, Depol, Deph };

/// White noise (tripartite), the control-depolarised switch, or the
/// control-dephased ("classical") switch, for the given target state.
ProcessMatrix make_noise(NoiseKind kind, const Eigen::Vector2cd& psi);
ProcessMatrix make_noise(NoiseKind kind);  // psi = |0>

/// Witness for the switch, optimal against white noise (tabulated, 4
/// decimals). Certificate pairs built from the table and the A<->B swap.
Witness make_s_switch();

/// Family of witnesses certifying the control-depolarised and
/// control-dephased switch for every positive visibility; exact rational
/// coefficients over the same term basis as the tabulated switch witness.
Witness make_s_family(double v);

/// Witness measurable with unitary operations for Alice and Bob (tabulated,
/// 4 decimals).
Witness make_s_tilde();

struct UnitaryCJ {
  Eigen::MatrixXcd unitary;
  Eigen::MatrixXcd cj;  // on input x output, rank one, trace = input dim

  /// The CJ matrix as an operator on a two-subsystem (input, output) layout.
  HermitianOperator as_operator(const SystemLayout& pair_layout) const;
};

/// CJ matrix of a unitary map, with the overall-transpose convention
/// M = [(1 (x) U) |1>><<1| (1 (x) U^dag)]^T.
UnitaryCJ cj_of_unitary(const Eigen::MatrixXcd& u);

struct UnitaryMixTerm {
  double coeff;
  std::string name;  // composed from {1, X, Y, Z, H, P}
  Eigen::Matrix2cd unitary;
};

/// Decomposition of a two-qubit Pauli pair sigma_I (x) sigma_O as a signed
/// half-sum of four unitary CJ matrices. Only pairs with both factors
/// nontrivial (or both trivial) are supported.
std::vector<UnitaryMixTerm> pauli_pair_to_unitary_mix(char sigma_in, char sigma_out);

// --- named registry (CLI surface) -----------------------------------------

using CatalogObject = std::variant<ProcessMatrix, Witness>;

struct CatalogParams {
  double eta1 = 1.0 / std::numbers::sqrt2;
  double eta2 = 1.0 / std::numbers::sqrt2;
  double v = 1.0;
  std::string psi = "0";        // "0", "1" or "plus"
  std::string scenario = "tri"; // for "white": "bi" or "tri"
};

std::vector<std::string> catalog_names();
CatalogObject catalog_make(const std::string& name, const CatalogParams& params = {});

/// The catalog's process entries with default parameters, used by the
/// acceptance checks that sweep every process.
std::vector<std::pair<std::string, ProcessMatrix>> catalog_processes();

Eigen::Vector2cd parse_psi(const std::string& name);

}  // namespace causalwit
