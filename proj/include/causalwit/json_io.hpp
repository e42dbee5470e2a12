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

#include <json.hpp>
#include <optional>

#include "causalwit/born.hpp"
#include "causalwit/robustness.hpp"

namespace causalwit {

using Json = nlohmann::json;

/// Serialised form of a Hermitian operator: a layout plus a Pauli expansion
/// and/or a dense matrix. When both are present the Pauli form wins. A parsed
/// Pauli map is kept verbatim so that re-exporting is byte-stable.
struct OperatorDocument {
  SystemLayout layout;
  std::optional<std::map<std::string, double>> pauli;
  std::optional<Matrix> dense;
  std::optional<Json> certificate;  // witness files carry their certificate

  HermitianOperator to_operator() const;

  static OperatorDocument from_operator(const HermitianOperator& h, bool prefer_pauli = true);
  static OperatorDocument from_witness(const Witness& w);
};

Json layout_to_json(const SystemLayout& layout);
SystemLayout layout_from_json(const Json& j);

Json operator_document_to_json(const OperatorDocument& doc);
OperatorDocument operator_document_from_json(const Json& j);

Json witness_to_json(const Witness& w);
Witness witness_from_json(const Json& j);

Json validity_report_to_json(const ValidityReport& r, const Scenario& s);
Json robustness_report_to_json(const RobustnessReport& r);
Json witness_verification_to_json(const WitnessVerification& v);
Json sample_result_to_json(const SampleResult& s);
Json solve_diagnostics_to_json(const SolveDiagnostics& d);

/// Reads a JSON document from a file path, or from stdin when path is "-".
Json read_json_input(const std::string& path);

/// Guesses the scenario from the layout labels.
Scenario scenario_for_document(const OperatorDocument& doc);

}  // namespace causalwit
