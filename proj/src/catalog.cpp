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

#include "causalwit/catalog.hpp"

#include <cmath>
#include <sstream>

namespace causalwit::tables {
extern const char* const kSwitchWitness;
extern const char* const kUnitaryWitness;
}  // namespace causalwit::tables

namespace causalwit {

namespace {

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// --- coefficient table parsing --------------------------------------------

struct WitnessTable {
  std::map<std::string, std::map<std::string, double>> terms;  // name -> signed strings
  std::vector<std::pair<std::string, double>> s_coeffs;
  std::vector<std::pair<std::string, double>> t_coeffs;
};

WitnessTable parse_table(const char* text) {
  WitnessTable tbl;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;
    if (kind == "term") {
      std::string name, tok;
      ls >> name;
      auto& sum = tbl.terms[name];
      while (ls >> tok) {
        double sign = 1.0;
        if (tok[0] == '+' || tok[0] == '-') {
          sign = tok[0] == '-' ? -1.0 : 1.0;
          tok = tok.substr(1);
        }
        sum[normalize_pauli_string(tok)] += sign;
      }
    } else if (kind == "s" || kind == "t") {
      std::string name;
      double value;
      ls >> name >> value;
      (kind == "s" ? tbl.s_coeffs : tbl.t_coeffs).push_back({name, value});
    } else {
      throw std::runtime_error("unrecognised witness table line: " + line);
    }
  }
  return tbl;
}

const WitnessTable& switch_table() {
  static const WitnessTable tbl = parse_table(tables::kSwitchWitness);
  return tbl;
}

const WitnessTable& unitary_table() {
  static const WitnessTable tbl = parse_table(tables::kUnitaryWitness);
  return tbl;
}

/// (1/4) (identity + sum_i c_i Term_i) over the named terms.
HermitianOperator quarter_sum(const SystemLayout& layout, const WitnessTable& tbl,
                              const std::map<std::string, double>& coeffs, bool with_identity) {
  std::map<std::string, double> acc;
  if (with_identity) acc[std::string(layout.size(), '1')] = 0.25;
  for (const auto& [name, c] : coeffs) {
    if (c == 0.0) continue;
    const auto it = tbl.terms.find(name);
    if (it == tbl.terms.end()) throw std::runtime_error("unknown witness term " + name);
    for (const auto& [str, sign] : it->second) acc[str] += 0.25 * c * sign;
  }
  return operator_from_pauli_terms(layout, acc);
}

Witness tabulated_witness(const WitnessTable& tbl) {
  const SystemLayout layout = tripartite_qubit_layout();
  std::map<std::string, double> s, t;
  for (const auto& [name, v] : tbl.s_coeffs) s[name] = v;
  for (const auto& [name, v] : tbl.t_coeffs) t[name] = v;

  HermitianOperator op = quarter_sum(layout, tbl, s, true);
  HermitianOperator perp1 = quarter_sum(layout, tbl, t, false);
  HermitianOperator pos1 = op - perp1;

  WitnessCertificate cert;
  cert.s_pos_first = pos1;
  cert.s_perp_first = perp1;
  // Every tabulated term is invariant under the A<->B exchange, so the
  // second split is the exact swap of the first.
  cert.s_pos_second = swap_parties(pos1);
  cert.s_perp_second = swap_parties(perp1);
  return Witness{Scenario::tripartite(), op, cert};
}

}  // namespace

// --- bipartite family -------------------------------------------------------

ProcessMatrix make_w_etas(double eta1, double eta2) {
  const SystemLayout layout = bipartite_qubit_layout();
  std::map<std::string, double> terms{
      {"1111", 0.25}, {"1ZZ1", eta1 / 4.0}, {"Z1XZ", eta2 / 4.0}};
  return {Scenario::bipartite(), operator_from_pauli_terms(layout, terms), true};
}

Witness make_s_etas(double eta1, double eta2) {
  const SystemLayout layout = bipartite_qubit_layout();
  std::map<std::string, double> terms{
      {"1111", 0.25}, {"1ZZ1", -sgn(eta1) / 4.0}, {"Z1XZ", -sgn(eta2) / 4.0}};
  HermitianOperator op = operator_from_pauli_terms(layout, terms);
  WitnessCertificate cert;
  cert.s_pos_first = op;
  cert.s_perp_first = HermitianOperator::zero(layout);
  return Witness{Scenario::bipartite(), op, cert};
}

SeparableDecomposition make_sep_decomposition_etas(double eta1, double eta2) {
  const double s = std::abs(eta1) + std::abs(eta2);
  if (s <= 0.0) throw std::invalid_argument("decomposition requires |eta1| + |eta2| > 0");
  const SystemLayout layout = bipartite_qubit_layout();
  SeparableDecomposition d;
  d.weight_first = std::abs(eta1) / s;
  d.weight_second = std::abs(eta2) / s;
  d.component_first = {Scenario::bipartite(),
                       operator_from_pauli_terms(
                           layout, {{"1111", 0.25}, {"1ZZ1", sgn(eta1) * s / 4.0}}),
                       true};
  d.component_second = {Scenario::bipartite(),
                        operator_from_pauli_terms(
                            layout, {{"1111", 0.25}, {"Z1XZ", sgn(eta2) * s / 4.0}}),
                        true};
  return d;
}

// --- the quantum switch -----------------------------------------------------

Eigen::Vector2cd parse_psi(const std::string& name) {
  static const double isq2 = 1.0 / std::numbers::sqrt2;
  if (name == "0") return {1.0, 0.0};
  if (name == "1") return {0.0, 1.0};
  if (name == "plus" || name == "+") return {isq2, isq2};
  if (name == "minus" || name == "-") return {isq2, -isq2};
  throw std::invalid_argument("unknown target state name: " + name);
}

ProcessMatrix make_switch(const Eigen::Vector2cd& psi_in, SwitchSign sign) {
  Eigen::Vector2cd psi = psi_in;
  const double nrm = psi.norm();
  if (nrm <= 0.0) throw std::invalid_argument("target state must be nonzero");
  psi /= nrm;

  const SystemLayout pure = switch_pure_layout();  // A_I A_O B_I B_O C_I T_I
  Eigen::VectorXcd w = Eigen::VectorXcd::Zero(pure.total_dim());
  const double branch = (sign == SwitchSign::Plus) ? 1.0 : -1.0;
  const double isq2 = 1.0 / std::numbers::sqrt2;
  for (int ai = 0; ai < 2; ++ai)
    for (int ao = 0; ao < 2; ++ao)
      for (int bi = 0; bi < 2; ++bi)
        for (int bo = 0; bo < 2; ++bo)
          for (int c = 0; c < 2; ++c)
            for (int t = 0; t < 2; ++t) {
              Complex amp(0.0, 0.0);
              if (c == 0 && ao == bi && bo == t) amp += psi[ai];
              if (c == 1 && bo == ai && ao == t) amp += branch * psi[bi];
              if (amp != Complex(0.0, 0.0))
                w[pure.flat_index({ai, ao, bi, bo, c, t})] = isq2 * amp;
            }

  HermitianOperator pure_proj(pure, w * w.adjoint());
  HermitianOperator op = partial_trace(pure_proj, {"T_I"});
  return {Scenario::tripartite(), op, true};
}

ProcessMatrix make_switch() { return make_switch(Eigen::Vector2cd(1.0, 0.0)); }

ProcessMatrix make_noise(NoiseKind kind, const Eigen::Vector2cd& psi_in) {
  const Scenario sc = Scenario::tripartite();
  if (kind == NoiseKind::White) return white_noise(sc);

  Eigen::Vector2cd psi = psi_in;
  psi /= psi.norm();
  if (kind == NoiseKind::Depol) {
    const ProcessMatrix sw = make_switch(psi, SwitchSign::Plus);
    return {sc, trace_and_replace(sw.op, {"C_I"}), true};
  }

  // Dephased control: a classical bit picks which party acts first.
  const SystemLayout& layout = sc.layout;
  const Eigen::Matrix2cd psi_proj = psi * psi.adjoint();
  Eigen::Vector4cd bell;
  bell << 1, 0, 0, 1;
  const Eigen::Matrix4cd link = bell * bell.adjoint();
  Eigen::Matrix2cd ket0 = Eigen::Matrix2cd::Zero(), ket1 = Eigen::Matrix2cd::Zero();
  ket0(0, 0) = 1;
  ket1(1, 1) = 1;

  const Matrix a_first = embed(layout, {"A_I"}, psi_proj).matrix() *
                         embed(layout, {"A_O", "B_I"}, link).matrix() *
                         embed(layout, {"C_I"}, ket0).matrix();
  const Matrix b_first = embed(layout, {"B_I"}, psi_proj).matrix() *
                         embed(layout, {"B_O", "A_I"}, link).matrix() *
                         embed(layout, {"C_I"}, ket1).matrix();
  return {sc, HermitianOperator(layout, 0.5 * (a_first + b_first)), true};
}

ProcessMatrix make_noise(NoiseKind kind) { return make_noise(kind, {1.0, 0.0}); }

// --- tabulated witnesses ----------------------------------------------------

Witness make_s_switch() { return tabulated_witness(switch_table()); }

Witness make_s_tilde() { return tabulated_witness(unitary_table()); }

Witness make_s_family(double v) {
  const WitnessTable& tbl = switch_table();
  const SystemLayout layout = tripartite_qubit_layout();
  const double q = 1.0 - v * v / 4.0;

  std::map<std::string, double> s{
      {"S1", 1.0},        {"S2", 1.0},        {"S3", -q},     {"S4", -q},
      {"S5", v * v / 4.0}, {"S6", v * v / 4.0}, {"S8", v * v / 4.0},
      {"S9", -v / 2.0}};
  std::map<std::string, double> t{
      {"T1", q},  {"T2", -q}, {"T3", q},   {"T4", -q}, {"T5", -2.0 * q},
      {"T6", 1.0}, {"T7", 1.0}, {"T8", -2.0 * q}, {"T9", 1.0}, {"T10", 1.0}};

  HermitianOperator op = quarter_sum(layout, tbl, s, true);
  HermitianOperator perp1 = quarter_sum(layout, tbl, t, false);
  HermitianOperator pos1 = op - perp1;

  WitnessCertificate cert;
  cert.s_pos_first = pos1;
  cert.s_perp_first = perp1;
  cert.s_pos_second = swap_parties(pos1);
  cert.s_perp_second = swap_parties(perp1);
  return Witness{Scenario::tripartite(), op, cert};
}

// --- CJ machinery -----------------------------------------------------------

HermitianOperator UnitaryCJ::as_operator(const SystemLayout& pair_layout) const {
  return HermitianOperator(pair_layout, cj);
}

UnitaryCJ cj_of_unitary(const Eigen::MatrixXcd& u) {
  const int d = static_cast<int>(u.rows());
  if (u.cols() != d) throw std::invalid_argument("unitary must be square");
  if ((u * u.adjoint() - Eigen::MatrixXcd::Identity(d, d)).norm() > 1e-10)
    throw std::invalid_argument("matrix is not unitary");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d * d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) v[j * d + k] = u(k, j);  // e_j (x) U e_j
  const Eigen::VectorXcd vbar = v.conjugate();
  UnitaryCJ out;
  out.unitary = u;
  out.cj = vbar * vbar.adjoint();  // [(1 (x) U)|1>><<1|(1 (x) U^dag)]^T
  return out;
}

namespace {

Eigen::Matrix2cd base_unitary(char c) {
  Eigen::Matrix2cd m;
  const double isq2 = 1.0 / std::numbers::sqrt2;
  switch (c) {
    case '1': return Eigen::Matrix2cd::Identity();
    case 'X': m << 0, 1, 1, 0; return m;
    case 'Y': m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0); return m;
    case 'Z': m << 1, 0, 0, -1; return m;
    case 'H': m << isq2, isq2, isq2, -isq2; return m;
    case 'P': m << 1, 0, 0, Complex(0, 1); return m;
  }
  throw std::invalid_argument(std::string("unknown unitary symbol ") + c);
}

Eigen::Matrix2cd composed_unitary(const std::string& name) {
  Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
  for (char c : name) u = u * base_unitary(c);
  return u;
}

}  // namespace

std::vector<UnitaryMixTerm> pauli_pair_to_unitary_mix(char sigma_in, char sigma_out) {
  struct Row {
    char in, out;
    double signs[4];
    const char* names[4];
  };
  static const Row rows[] = {
      {'1', '1', {+1, +1, +1, +1}, {"1", "X", "Y", "Z"}},
      {'X', 'X', {+1, +1, -1, -1}, {"1", "X", "Y", "Z"}},
      {'Y', 'Y', {-1, +1, -1, +1}, {"1", "X", "Y", "Z"}},
      {'Z', 'Z', {+1, -1, -1, +1}, {"1", "X", "Y", "Z"}},
      {'X', 'Y', {-1, -1, +1, +1}, {"P", "PX", "PY", "PZ"}},
      {'Y', 'X', {-1, +1, -1, +1}, {"P", "PX", "PY", "PZ"}},
      {'X', 'Z', {+1, +1, -1, -1}, {"H", "HX", "HY", "HZ"}},
      {'Z', 'X', {+1, -1, -1, +1}, {"H", "HX", "HY", "HZ"}},
      {'Y', 'Z', {-1, +1, -1, +1}, {"HP", "HPX", "HPY", "HPZ"}},
      {'Z', 'Y', {-1, +1, +1, -1}, {"PH", "PHX", "PHY", "PHZ"}},
  };
  for (const Row& r : rows) {
    if (r.in != sigma_in || r.out != sigma_out) continue;
    std::vector<UnitaryMixTerm> out;
    for (int j = 0; j < 4; ++j)
      out.push_back({0.5 * r.signs[j], r.names[j], composed_unitary(r.names[j])});
    return out;
  }
  throw std::invalid_argument(std::string("unsupported Pauli pair ") + sigma_in + sigma_out +
                              ": only pairs with both factors trivial or both nontrivial are "
                              "decomposable over unitaries");
}

// --- registry ---------------------------------------------------------------

std::vector<std::string> catalog_names() {
  return {"w-etas", "s-etas", "switch", "switch-minus", "white",
          "depol",  "deph",   "s-switch", "s-family",   "s-tilde"};
}

CatalogObject catalog_make(const std::string& name, const CatalogParams& p) {
  if (name == "w-etas") return make_w_etas(p.eta1, p.eta2);
  if (name == "s-etas") return make_s_etas(p.eta1, p.eta2);
  if (name == "switch") return make_switch(parse_psi(p.psi), SwitchSign::Plus);
  if (name == "switch-minus") return make_switch(parse_psi(p.psi), SwitchSign::Minus);
  if (name == "white") {
    if (p.scenario == "bi") return white_noise(Scenario::bipartite());
    if (p.scenario == "tri") return white_noise(Scenario::tripartite());
    throw std::invalid_argument("scenario must be 'bi' or 'tri'");
  }
  if (name == "depol") return make_noise(NoiseKind::Depol, parse_psi(p.psi));
  if (name == "deph") return make_noise(NoiseKind::Deph, parse_psi(p.psi));
  if (name == "s-switch") return make_s_switch();
  if (name == "s-family") return make_s_family(p.v);
  if (name == "s-tilde") return make_s_tilde();
  throw std::invalid_argument("unknown catalog name: " + name);
}

std::vector<std::pair<std::string, ProcessMatrix>> catalog_processes() {
  CatalogParams def;
  std::vector<std::pair<std::string, ProcessMatrix>> out;
  for (const auto& name :
       {"w-etas", "switch", "switch-minus", "white", "depol", "deph"}) {
    out.emplace_back(name, std::get<ProcessMatrix>(catalog_make(name, def)));
  }
  return out;
}

}  // namespace causalwit
