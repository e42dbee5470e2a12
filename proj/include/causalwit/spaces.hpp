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

#include <optional>

#include "causalwit/operator.hpp"
#include "causalwit/pauli.hpp"

namespace causalwit {

enum class ScenarioKind { Bipartite, TripartiteTrivialCO };

/// Either the two-party scenario (A_I A_O B_I B_O) or the three-party one
/// where Charlie only receives a system (A_I A_O B_I B_O C_I). The subsystem
/// order is fixed; every Kronecker product follows it.
struct Scenario {
  ScenarioKind kind;
  SystemLayout layout;

  static Scenario bipartite();
  static Scenario tripartite();
  static Scenario for_layout(const SystemLayout& layout);

  int d_I() const;  // product of input dims (incl. C_I in the tripartite case)
  int d_O() const;  // product of output dims

  bool operator==(const Scenario& o) const { return kind == o.kind && layout == o.layout; }
  bool operator!=(const Scenario& o) const { return !(*this == o); }
};

enum class CausalOrder { AB, BA, ABC, BAC };

std::string order_name(CausalOrder o);
ScenarioKind scenario_kind_of(CausalOrder o);
CausalOrder swapped_order(CausalOrder o);

/// Keep/kill predicates for the linear subspaces, acting diagonally on Pauli
/// basis strings (a string is kept iff the map fixes it).
bool validity_keeps(const Scenario& s, const std::string& pauli_string);
bool order_keeps(CausalOrder order, const std::string& pauli_string);

/// The same subspace projectors written as signed sums of trace-and-replace
/// maps; retained as an independent cross-check of the predicates.
TraceReplaceExpr validity_projector_expr(const Scenario& s);
TraceReplaceExpr order_projector_expr(CausalOrder order);

/// Orthogonal projector onto the validity subspace.
HermitianOperator project_valid(const HermitianOperator& h, const Scenario& s);

/// Orthogonal projector onto the subspace of the given causal order.
HermitianOperator project_order(const HermitianOperator& h, CausalOrder order);

struct ProcessMatrix {
  Scenario scenario;
  HermitianOperator op;
  bool normalized = true;
};

struct Tolerances {
  double subspace = 1e-9;  // absolute Frobenius residual
  double psd = 1e-9;       // relative to the operator norm
  double trace = 1e-9;     // relative to d_O
};

struct ConditionCheck {
  std::string name;
  double residual;
  bool ok;
};

struct ValidityReport {
  std::vector<ConditionCheck> conditions;
  double min_eigenvalue = 0.0;
  double trace = 0.0;
  double trace_target = 0.0;
  bool psd = false;
  bool in_subspace = false;
  bool trace_ok = true;
  bool normalization_checked = false;
  bool valid = false;
};

ValidityReport is_valid_process(const HermitianOperator& h, const Scenario& s,
                                const Tolerances& tol = {}, bool check_normalization = false);

/// Membership in the closed convex cone of (nonnormalised) process matrices
/// compatible with one causal order: PSD within tol.psd and order-subspace
/// residual within tol.subspace.
bool is_in_order_cone(const HermitianOperator& w, CausalOrder order, const Tolerances& tol = {});

/// Exchanges the roles of Alice and Bob on a tripartite operator. Acts on the
/// Pauli expansion by relabelling A<->B, with sign -1 on terms whose C_I
/// symbol is Y or Z. An involution.
HermitianOperator swap_parties(const HermitianOperator& h);

inline ProcessMatrix swap_parties(const ProcessMatrix& w) {
  return {w.scenario, swap_parties(w.op), w.normalized};
}

}  // namespace causalwit
