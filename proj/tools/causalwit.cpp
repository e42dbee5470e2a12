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

#include <CLI11.hpp>
#include <iostream>

#include "causalwit/json_io.hpp"
#include "causalwit/scan.hpp"

namespace {

using namespace causalwit;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInvalid = 2;

ProcessMatrix load_process(const std::string& path) {
  const OperatorDocument doc = operator_document_from_json(read_json_input(path));
  const Scenario sc = scenario_for_document(doc);
  return {sc, doc.to_operator(), true};
}

Witness load_witness(const std::string& path) {
  return witness_from_json(read_json_input(path));
}

std::optional<ProcessMatrix> parse_noise(const std::string& spec) {
  if (spec.empty() || spec == "white") return std::nullopt;
  return load_process(spec);
}

WitnessRestriction parse_restriction(const std::string& name) {
  if (name.empty() || name == "none") return WitnessRestriction::none();
  if (name == "unitary") return WitnessRestriction::unitary();
  if (name == "charlie-x") return WitnessRestriction::charlie_x();
  throw CLI::ValidationError("--restrict", "expected one of: none, unitary, charlie-x");
}

CatalogParams parse_catalog_params(const std::vector<std::string>& kvs) {
  CatalogParams p;
  for (const auto& kv : kvs) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--param", "expected key=value, got '" + kv + "'");
    const std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
    if (key == "eta1") p.eta1 = std::stod(value);
    else if (key == "eta2") p.eta2 = std::stod(value);
    else if (key == "v") p.v = std::stod(value);
    else if (key == "psi") p.psi = value;
    else if (key == "scenario") p.scenario = value;
    else throw CLI::ValidationError("--param", "unknown parameter '" + key + "'");
  }
  return p;
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"process matrices and witnesses of causal nonseparability"};
  app.require_subcommand(1);

  std::string v_file, v_scenario;
  double v_tol = 1e-9;
  bool v_normalized = false;
  auto* validate = app.add_subcommand("validate", "check the validity conditions of a process");
  validate->add_option("file", v_file, "operator JSON (use - for stdin)")->required();
  validate->add_option("--scenario", v_scenario, "bi or tri (default: from the layout)");
  validate->add_option("--tol", v_tol, "subspace/PSD tolerance");
  validate->add_flag("--normalized", v_normalized, "also check trace = d_O");

  std::string r_file, r_noise;
  double r_tol = 1e-8, r_v = -1.0;
  auto* robustness = app.add_subcommand("robustness", "random robustness and optimal witness");
  robustness->add_option("file", r_file, "process JSON (use - for stdin)")->required();
  robustness->add_option("--noise", r_noise, "white (default) or a process JSON file");
  robustness->add_option("--v", r_v,
                         "solve for the mixture v*W + (1-v)*noise against white noise");
  robustness->add_option("--tol", r_tol, "solver tolerance");

  std::string w_file, w_noise, w_restrict;
  double w_tol = 1e-8;
  auto* witness = app.add_subcommand("witness", "construct an (optionally restricted) witness");
  witness->add_option("file", w_file, "process JSON (use - for stdin)")->required();
  witness->add_option("--noise", w_noise, "white (default) or a process JSON file");
  witness->add_option("--restrict", w_restrict, "none, unitary or charlie-x");
  witness->add_option("--tol", w_tol, "solver tolerance");

  std::string vw_file;
  double vw_tol = 1e-9;
  auto* verify = app.add_subcommand("verify-witness", "verify a witness (certificate or search)");
  verify->add_option("file", vw_file, "witness JSON (use - for stdin)")->required();
  verify->add_option("--tol", vw_tol, "verification tolerance");

  std::string c_name;
  std::vector<std::string> c_params;
  auto* catalog = app.add_subcommand("catalog", "emit a named process or witness as JSON");
  catalog->add_option("name", c_name, "one of: w-etas s-etas switch switch-minus white depol deph "
                                      "s-switch s-family s-tilde")->required();
  catalog->add_option("--param", c_params, "parameters as key=value (eta1 eta2 v psi scenario)");

  std::string m_witness, m_process, m_style = "projective";
  long m_shots = 0;
  std::uint64_t m_seed = 1;
  auto* measure = app.add_subcommand("measure", "evaluate a witness via instrument statistics");
  measure->add_option("--witness", m_witness, "witness JSON")->required();
  measure->add_option("--process", m_process, "process JSON")->required();
  measure->add_option("--shots", m_shots, "Monte-Carlo shots (0 = exact value only)");
  measure->add_option("--seed", m_seed, "sampling seed");
  measure->add_option("--style", m_style, "projective or unitary instrument compilation");

  std::vector<std::string> s_anchors;
  int s_res = 11;
  std::vector<double> s_bounds;
  std::string s_restrict;
  double s_tol = 1e-8;
  auto* scan = app.add_subcommand("scan", "CSV scan of a two-dimensional slice");
  scan->add_option("--anchor", s_anchors, "three process JSON files")->expected(3)->required();
  scan->add_option("--res", s_res, "grid resolution per axis");
  scan->add_option("--bounds", s_bounds, "x_min x_max y_min y_max")->expected(4);
  scan->add_option("--restrict", s_restrict,
                   "witness restriction for the witness_value column (none, unitary, charlie-x)");
  scan->add_option("--tol", s_tol, "solver tolerance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) {
      const OperatorDocument doc = operator_document_from_json(read_json_input(v_file));
      Scenario sc = v_scenario.empty()
                        ? scenario_for_document(doc)
                        : (v_scenario == "bi" ? Scenario::bipartite() : Scenario::tripartite());
      Tolerances tol;
      tol.subspace = v_tol;
      tol.psd = v_tol;
      const ValidityReport rep = is_valid_process(doc.to_operator(), sc, tol, v_normalized);
      print_json(validity_report_to_json(rep, sc));
      return rep.valid ? kExitOk : kExitInvalid;
    }

    if (*robustness) {
      const ProcessMatrix w = load_process(r_file);
      RobustnessOptions opts;
      opts.tol = r_tol;
      RobustnessReport rep;
      if (r_v >= 0.0) {
        const ProcessMatrix noise = parse_noise(r_noise).value_or(white_noise(w.scenario));
        rep = robustness_at_visibility(w, noise, r_v, opts);
      } else {
        rep = random_robustness(w, parse_noise(r_noise), opts);
      }
      print_json(robustness_report_to_json(rep));
      return kExitOk;
    }

    if (*witness) {
      const ProcessMatrix w = load_process(w_file);
      RobustnessOptions opts;
      opts.tol = w_tol;
      const WitnessSearchResult res =
          construct_witness(w, parse_noise(w_noise), parse_restriction(w_restrict), opts);
      Json j = witness_to_json(res.witness);
      j["value"] = res.value;
      j["diagnostics"] = solve_diagnostics_to_json(res.diag);
      print_json(j);
      return kExitOk;
    }

    if (*verify) {
      const Witness w = load_witness(vw_file);
      const WitnessVerification res = verify_witness(w, vw_tol);
      print_json(witness_verification_to_json(res));
      return res.valid ? kExitOk : kExitInvalid;
    }

    if (*catalog) {
      const CatalogObject obj = catalog_make(c_name, parse_catalog_params(c_params));
      if (std::holds_alternative<ProcessMatrix>(obj)) {
        print_json(operator_document_to_json(
            OperatorDocument::from_operator(std::get<ProcessMatrix>(obj).op)));
      } else {
        print_json(witness_to_json(std::get<Witness>(obj)));
      }
      return kExitOk;
    }

    if (*measure) {
      const Witness s = load_witness(m_witness);
      const ProcessMatrix w = load_process(m_process);
      const CompileStyle style =
          m_style == "unitary" ? CompileStyle::UnitaryTable : CompileStyle::Projective;
      const WitnessDecomposition d = compile_witness(s.op, w.scenario, style);
      Json j;
      j["exact"] = measure_witness(d, w);
      j["settings"] = d.settings.size();
      if (m_shots > 0) j["sampled"] = sample_result_to_json(sample_outcomes(w, d, m_shots, m_seed));
      print_json(j);
      return kExitOk;
    }

    if (*scan) {
      ScanSpec spec;
      spec.anchor1 = load_process(s_anchors[0]);
      spec.anchor2 = load_process(s_anchors[1]);
      spec.anchor3 = load_process(s_anchors[2]);
      spec.resolution = s_res;
      if (!s_bounds.empty()) {
        spec.x_min = s_bounds[0];
        spec.x_max = s_bounds[1];
        spec.y_min = s_bounds[2];
        spec.y_max = s_bounds[3];
      }
      spec.solver.tol = s_tol;
      const WitnessSearchResult ws =
          construct_witness(spec.anchor1, std::nullopt, parse_restriction(s_restrict));
      spec.witness = ws.witness.op;
      write_scan_csv(scan_slice(spec), std::cout);
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
