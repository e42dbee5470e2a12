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

#include "causalwit/json_io.hpp"

#include <fstream>
#include <iostream>

namespace causalwit {

Json layout_to_json(const SystemLayout& layout) {
  Json arr = Json::array();
  for (const auto& s : layout.systems())
    arr.push_back({{"label", s.label}, {"dim", s.dim}, {"party", party_name(s.party)}});
  return arr;
}

SystemLayout layout_from_json(const Json& j) {
  std::vector<Subsystem> systems;
  for (const auto& e : j) {
    Subsystem s;
    s.label = e.at("label").get<std::string>();
    s.dim = e.at("dim").get<int>();
    s.party = party_from_name(e.at("party").get<std::string>());
    systems.push_back(std::move(s));
  }
  return SystemLayout(systems);
}

HermitianOperator OperatorDocument::to_operator() const {
  if (pauli) return operator_from_pauli_terms(layout, *pauli);
  if (dense) return HermitianOperator(layout, *dense, 1e-9);
  throw std::invalid_argument("operator document has neither 'pauli' nor 'dense'");
}

OperatorDocument OperatorDocument::from_operator(const HermitianOperator& h, bool prefer_pauli) {
  OperatorDocument doc;
  doc.layout = h.layout();
  if (prefer_pauli && h.layout().all_qubits()) {
    doc.pauli = to_pauli(h, 1e-14).terms;
  } else {
    doc.dense = h.matrix();
  }
  return doc;
}

OperatorDocument OperatorDocument::from_witness(const Witness& w) {
  OperatorDocument doc = from_operator(w.op);
  if (w.certificate) {
    const WitnessCertificate& c = *w.certificate;
    Json cert;
    cert["s_pos_first"] = to_pauli(c.s_pos_first, 1e-14).terms;
    cert["s_perp_first"] = to_pauli(c.s_perp_first, 1e-14).terms;
    if (c.s_pos_second) cert["s_pos_second"] = to_pauli(*c.s_pos_second, 1e-14).terms;
    if (c.s_perp_second) cert["s_perp_second"] = to_pauli(*c.s_perp_second, 1e-14).terms;
    doc.certificate = cert;
  }
  return doc;
}

Json operator_document_to_json(const OperatorDocument& doc) {
  Json j;
  j["layout"] = layout_to_json(doc.layout);
  if (doc.pauli) j["pauli"] = *doc.pauli;
  if (doc.dense) {
    Json rows = Json::array();
    for (int r = 0; r < doc.dense->rows(); ++r)
      for (int c = 0; c < doc.dense->cols(); ++c)
        rows.push_back({(*doc.dense)(r, c).real(), (*doc.dense)(r, c).imag()});
    j["dense"] = rows;
  }
  if (doc.certificate) j["certificate"] = *doc.certificate;
  return j;
}

OperatorDocument operator_document_from_json(const Json& j) {
  OperatorDocument doc;
  doc.layout = layout_from_json(j.at("layout"));
  if (j.contains("pauli")) {
    std::map<std::string, double> terms;
    for (const auto& [k, v] : j.at("pauli").items())
      terms[normalize_pauli_string(k)] = v.get<double>();
    doc.pauli = std::move(terms);
  }
  if (j.contains("dense")) {
    const auto& arr = j.at("dense");
    const int d = doc.layout.total_dim();
    if (static_cast<int>(arr.size()) != d * d)
      throw std::invalid_argument("dense entry count does not match layout dimension");
    Matrix m(d, d);
    int k = 0;
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c, ++k)
        m(r, c) = Complex(arr[k][0].get<double>(), arr[k][1].get<double>());
    doc.dense = m;
  }
  if (j.contains("certificate")) doc.certificate = j.at("certificate");
  return doc;
}

Json witness_to_json(const Witness& w) {
  return operator_document_to_json(OperatorDocument::from_witness(w));
}

Witness witness_from_json(const Json& j) {
  OperatorDocument doc = operator_document_from_json(j);
  Witness w;
  w.scenario = scenario_for_document(doc);
  w.op = doc.to_operator();
  if (doc.certificate) {
    const Json& c = *doc.certificate;
    auto op_of = [&](const char* key) {
      std::map<std::string, double> terms;
      for (const auto& [k, v] : c.at(key).items())
        terms[normalize_pauli_string(k)] = v.get<double>();
      return operator_from_pauli_terms(doc.layout, terms);
    };
    WitnessCertificate cert;
    cert.s_pos_first = op_of("s_pos_first");
    cert.s_perp_first = op_of("s_perp_first");
    if (c.contains("s_pos_second")) cert.s_pos_second = op_of("s_pos_second");
    if (c.contains("s_perp_second")) cert.s_perp_second = op_of("s_perp_second");
    w.certificate = cert;
  }
  return w;
}

Json validity_report_to_json(const ValidityReport& r, const Scenario& s) {
  Json j;
  j["scenario"] = s.kind == ScenarioKind::Bipartite ? "bipartite" : "tripartite";
  Json conds = Json::array();
  for (const auto& c : r.conditions)
    conds.push_back({{"name", c.name}, {"residual", c.residual}, {"ok", c.ok}});
  j["subspace_conditions"] = conds;
  j["in_subspace"] = r.in_subspace;
  j["min_eigenvalue"] = r.min_eigenvalue;
  j["psd"] = r.psd;
  j["trace"] = r.trace;
  j["trace_target"] = r.trace_target;
  if (r.normalization_checked) j["trace_ok"] = r.trace_ok;
  j["valid"] = r.valid;
  return j;
}

Json solve_diagnostics_to_json(const SolveDiagnostics& d) {
  return Json{{"status", status_name(d.status)},
              {"iterations", d.iterations},
              {"gap", d.gap},
              {"primal_residual", d.primal_residual},
              {"dual_residual", d.dual_residual}};
}

Json robustness_report_to_json(const RobustnessReport& r) {
  Json j;
  j["r_star"] = r.r_star;
  j["random_robustness"] = r.random_robustness;
  j["visibility_threshold"] = r.visibility_threshold;
  if (r.witness) {
    j["witness"] = witness_to_json(*r.witness);
    j["witness_value"] = r.witness_value;
    j["primal_dual_residual"] = r.primal_dual_residual;
  }
  j["decomposition"] = {
      {"order_first", order_name(r.order_first)},
      {"order_second", order_name(r.order_second)},
      {"component_first", to_pauli(r.component_first, 1e-14).terms},
      {"component_second", to_pauli(r.component_second, 1e-14).terms},
  };
  j["primal"] = solve_diagnostics_to_json(r.primal);
  if (r.dual) j["dual"] = solve_diagnostics_to_json(*r.dual);
  if (!r.warnings.empty()) j["warnings"] = r.warnings;
  return j;
}

Json witness_verification_to_json(const WitnessVerification& v) {
  Json j;
  j["valid"] = v.valid;
  j["worst_residual"] = v.worst_residual;
  j["certificate_searched"] = v.certificate_searched;
  Json checks = Json::array();
  for (const auto& c : v.checks)
    checks.push_back({{"name", c.name}, {"residual", c.residual}, {"ok", c.ok}});
  j["checks"] = checks;
  return j;
}

Json sample_result_to_json(const SampleResult& s) {
  Json j;
  j["estimate"] = s.estimate;
  j["stderr"] = s.stderr_estimate;
  j["exact"] = s.exact;
  j["shots"] = s.shots;
  j["seed"] = s.seed;
  j["counts"] = s.counts;
  return j;
}

Json read_json_input(const std::string& path) {
  if (path == "-") return Json::parse(std::cin);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  return Json::parse(in);
}

Scenario scenario_for_document(const OperatorDocument& doc) {
  return Scenario::for_layout(doc.layout);
}

}  // namespace causalwit
