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

#include "causalwit/spaces.hpp"

namespace causalwit {

namespace {

// Canonical subsystem positions.
constexpr int kAI = 0, kAO = 1, kBI = 2, kBO = 3, kCI = 4;

inline bool id1(const std::string& s, int pos) { return s[pos] == '1'; }

void require_scenario_layout(const Scenario& s, const SystemLayout& layout) {
  if (layout != s.layout) throw std::invalid_argument("operator layout does not match scenario");
}

}  // namespace

Scenario Scenario::bipartite() { return {ScenarioKind::Bipartite, bipartite_qubit_layout()}; }

Scenario Scenario::tripartite() {
  return {ScenarioKind::TripartiteTrivialCO, tripartite_qubit_layout()};
}

Scenario Scenario::for_layout(const SystemLayout& layout) {
  if (layout == bipartite_qubit_layout()) return bipartite();
  if (layout == tripartite_qubit_layout()) return tripartite();
  throw std::invalid_argument("layout does not match a supported scenario");
}

int Scenario::d_I() const {
  int d = layout.dim_of("A_I") * layout.dim_of("B_I");
  if (kind == ScenarioKind::TripartiteTrivialCO) d *= layout.dim_of("C_I");
  return d;
}

int Scenario::d_O() const { return layout.dim_of("A_O") * layout.dim_of("B_O"); }

std::string order_name(CausalOrder o) {
  switch (o) {
    case CausalOrder::AB: return "A<B";
    case CausalOrder::BA: return "B<A";
    case CausalOrder::ABC: return "A<B<C";
    case CausalOrder::BAC: return "B<A<C";
  }
  throw std::logic_error("unknown order");
}

ScenarioKind scenario_kind_of(CausalOrder o) {
  return (o == CausalOrder::AB || o == CausalOrder::BA) ? ScenarioKind::Bipartite
                                                        : ScenarioKind::TripartiteTrivialCO;
}

CausalOrder swapped_order(CausalOrder o) {
  switch (o) {
    case CausalOrder::AB: return CausalOrder::BA;
    case CausalOrder::BA: return CausalOrder::AB;
    case CausalOrder::ABC: return CausalOrder::BAC;
    case CausalOrder::BAC: return CausalOrder::ABC;
  }
  throw std::logic_error("unknown order");
}

bool validity_keeps(const Scenario& s, const std::string& p) {
  if (s.kind == ScenarioKind::Bipartite) {
    const bool k1 = id1(p, kAI) && id1(p, kAO) && !id1(p, kBO);
    const bool k2 = id1(p, kBI) && id1(p, kBO) && !id1(p, kAO);
    const bool k3 = !id1(p, kAO) && !id1(p, kBO);
    return !(k1 || k2 || k3);
  }
  const bool k1 = id1(p, kAI) && id1(p, kAO) && id1(p, kCI) && !id1(p, kBO);
  const bool k2 = id1(p, kBI) && id1(p, kBO) && id1(p, kCI) && !id1(p, kAO);
  const bool k3 = id1(p, kCI) && !id1(p, kAO) && !id1(p, kBO);
  return !(k1 || k2 || k3);
}

bool order_keeps(CausalOrder order, const std::string& p) {
  switch (order) {
    case CausalOrder::AB:
      return id1(p, kBO) && !(id1(p, kBI) && !id1(p, kAO));
    case CausalOrder::BA:
      return id1(p, kAO) && !(id1(p, kAI) && !id1(p, kBO));
    case CausalOrder::ABC: {
      const bool k1 = id1(p, kCI) && !id1(p, kBO);
      const bool k2 = id1(p, kBI) && id1(p, kBO) && id1(p, kCI) && !id1(p, kAO);
      return !(k1 || k2);
    }
    case CausalOrder::BAC: {
      const bool k1 = id1(p, kCI) && !id1(p, kAO);
      const bool k2 = id1(p, kAI) && id1(p, kAO) && id1(p, kCI) && !id1(p, kBO);
      return !(k1 || k2);
    }
  }
  throw std::logic_error("unknown order");
}

namespace {
TraceReplaceExpr t(std::set<std::string> labels) {
  return TraceReplaceExpr::replace(std::move(labels));
}
}  // namespace

TraceReplaceExpr validity_projector_expr(const Scenario& s) {
  const TraceReplaceExpr one = TraceReplaceExpr::one();
  if (s.kind == ScenarioKind::Bipartite) {
    TraceReplaceExpr c1 = t({"A_I", "A_O"}) - t({"A_I", "A_O", "B_O"});
    TraceReplaceExpr c2 = t({"B_I", "B_O"}) - t({"A_O", "B_I", "B_O"});
    TraceReplaceExpr c3 = (one - t({"A_O"})) * (one - t({"B_O"}));
    return one - c1 - c2 - c3;
  }
  TraceReplaceExpr c1 = t({"A_I", "A_O", "C_I"}) - t({"A_I", "A_O", "B_O", "C_I"});
  TraceReplaceExpr c2 = t({"B_I", "B_O", "C_I"}) - t({"A_O", "B_I", "B_O", "C_I"});
  TraceReplaceExpr c3 = (one - t({"A_O"})) * (one - t({"B_O"})) * t({"C_I"});
  return one - c1 - c2 - c3;
}

TraceReplaceExpr order_projector_expr(CausalOrder order) {
  const TraceReplaceExpr one = TraceReplaceExpr::one();
  switch (order) {
    case CausalOrder::AB:
      return one - (one - t({"B_O"})) - (t({"B_I", "B_O"}) - t({"A_O", "B_I", "B_O"}));
    case CausalOrder::BA:
      return one - (one - t({"A_O"})) - (t({"A_I", "A_O"}) - t({"A_I", "A_O", "B_O"}));
    case CausalOrder::ABC:
      return one - (one - t({"B_O"})) * t({"C_I"}) -
             (t({"B_I", "B_O", "C_I"}) - t({"A_O", "B_I", "B_O", "C_I"}));
    case CausalOrder::BAC:
      return one - (one - t({"A_O"})) * t({"C_I"}) -
             (t({"A_I", "A_O", "C_I"}) - t({"A_I", "A_O", "B_O", "C_I"}));
  }
  throw std::logic_error("unknown order");
}

namespace {
HermitianOperator project_by_predicate(const HermitianOperator& h,
                                       const std::function<bool(const std::string&)>& keep) {
  PauliExpansion e = to_pauli(h);
  std::map<std::string, double> kept;
  for (const auto& [s, c] : e.terms)
    if (keep(s)) kept[s] = c;
  return operator_from_pauli_terms(h.layout(), kept);
}
}  // namespace

HermitianOperator project_valid(const HermitianOperator& h, const Scenario& s) {
  require_scenario_layout(s, h.layout());
  return project_by_predicate(h, [&](const std::string& p) { return validity_keeps(s, p); });
}

HermitianOperator project_order(const HermitianOperator& h, CausalOrder order) {
  const Scenario s = scenario_kind_of(order) == ScenarioKind::Bipartite ? Scenario::bipartite()
                                                                        : Scenario::tripartite();
  require_scenario_layout(s, h.layout());
  return project_by_predicate(h, [&](const std::string& p) { return order_keeps(order, p); });
}

ValidityReport is_valid_process(const HermitianOperator& h, const Scenario& s,
                                const Tolerances& tol, bool check_normalization) {
  require_scenario_layout(s, h.layout());
  ValidityReport r;

  // Residuals of the individual linear conditions, written with the
  // trace-and-replace calculus.
  std::vector<std::pair<std::string, TraceReplaceExpr>> conds;
  const TraceReplaceExpr one = TraceReplaceExpr::one();
  if (s.kind == ScenarioKind::Bipartite) {
    conds.push_back({"[1-B_O]A_IA_O", (t({"A_I", "A_O"}) - t({"A_I", "A_O", "B_O"}))});
    conds.push_back({"[1-A_O]B_IB_O", (t({"B_I", "B_O"}) - t({"A_O", "B_I", "B_O"}))});
    conds.push_back({"[1-A_O][1-B_O]", (one - t({"A_O"})) * (one - t({"B_O"}))});
  } else {
    conds.push_back(
        {"[1-B_O]A_IA_OC_I", (t({"A_I", "A_O", "C_I"}) - t({"A_I", "A_O", "B_O", "C_I"}))});
    conds.push_back(
        {"[1-A_O]B_IB_OC_I", (t({"B_I", "B_O", "C_I"}) - t({"A_O", "B_I", "B_O", "C_I"}))});
    conds.push_back({"[1-A_O][1-B_O]C_I", (one - t({"A_O"})) * (one - t({"B_O"})) * t({"C_I"})});
  }
  r.in_subspace = true;
  for (const auto& [name, expr] : conds) {
    const double res = expr.apply(h).frobenius_norm();
    const bool ok = res <= tol.subspace;
    r.conditions.push_back({name, res, ok});
    r.in_subspace = r.in_subspace && ok;
  }

  r.min_eigenvalue = min_eigenvalue(h);
  r.psd = r.min_eigenvalue >= -tol.psd * h.operator_norm();
  r.trace = h.trace();
  r.trace_target = s.d_O();
  r.normalization_checked = check_normalization;
  if (check_normalization)
    r.trace_ok = std::abs(r.trace - r.trace_target) <= tol.trace * r.trace_target;
  r.valid = r.in_subspace && r.psd && (!check_normalization || r.trace_ok);
  return r;
}

bool is_in_order_cone(const HermitianOperator& w, CausalOrder order, const Tolerances& tol) {
  const HermitianOperator residual = w - project_order(w, order);
  if (residual.frobenius_norm() > tol.subspace) return false;
  return is_psd(w, tol.psd);
}

HermitianOperator swap_parties(const HermitianOperator& h) {
  if (h.layout() != tripartite_qubit_layout())
    throw std::invalid_argument("swap_parties requires the tripartite layout");
  PauliExpansion e = to_pauli(h);
  std::map<std::string, double> swapped;
  for (const auto& [s, c] : e.terms) {
    std::string m(5, '1');
    m[0] = s[2];
    m[1] = s[3];
    m[2] = s[0];
    m[3] = s[1];
    m[4] = s[4];
    const double sign = (s[4] == 'Y' || s[4] == 'Z') ? -1.0 : 1.0;
    swapped[m] += sign * c;
  }
  return operator_from_pauli_terms(h.layout(), swapped);
}

}  // namespace causalwit
