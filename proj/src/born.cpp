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

#include "causalwit/born.hpp"

#include <cmath>

namespace causalwit {

namespace {

Eigen::Matrix2cd bloch_operator(const Eigen::Vector3d& axis) {
  Eigen::Matrix2cd m;
  m << Complex(axis.z(), 0.0), Complex(axis.x(), -axis.y()),
      Complex(axis.x(), axis.y()), Complex(-axis.z(), 0.0);
  return m;
}

Eigen::Matrix2cd effect(const Eigen::Vector3d& axis, double sign) {
  return 0.5 * (Eigen::Matrix2cd::Identity() + sign * bloch_operator(axis));
}

std::string axis_name(const Eigen::Vector3d& a) {
  if (a.isApprox(Eigen::Vector3d(1, 0, 0))) return "X";
  if (a.isApprox(Eigen::Vector3d(0, 1, 0))) return "Y";
  if (a.isApprox(Eigen::Vector3d(0, 0, 1))) return "Z";
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%.3g,%.3g,%.3g)", a.x(), a.y(), a.z());
  return buf;
}

Eigen::Matrix4cd pair_kron(const Eigen::Matrix2cd& in, const Eigen::Matrix2cd& out) {
  Eigen::Matrix4cd m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m.block<2, 2>(2 * i, 2 * j) = in(i, j) * out;
  return m;
}

}  // namespace

SystemLayout party_pair_layout(Party p) {
  const std::string prefix = party_name(p);
  return SystemLayout({{prefix + "_I", 2, p}, {prefix + "_O", 2, p}});
}

SystemLayout charlie_input_layout() { return SystemLayout({{"C_I", 2, Party::Charlie}}); }

Eigen::Vector3d pauli_axis(char symbol) {
  switch (symbol) {
    case 'X': return {1, 0, 0};
    case 'Y': return {0, 1, 0};
    case 'Z': return {0, 0, 1};
  }
  throw std::invalid_argument(std::string("no Bloch axis for symbol ") + symbol);
}

InstrumentReport validate_instrument(const Instrument& instr, double tol) {
  InstrumentReport r;
  if (instr.elements.empty()) return r;
  r.elements_psd = true;
  HermitianOperator sum = HermitianOperator::zero(instr.element_layout);
  for (const auto& e : instr.elements) {
    const double me = min_eigenvalue(e);
    r.worst_element_eig = std::min(r.worst_element_eig, me);
    if (me < -tol * std::max(1.0, e.operator_norm())) r.elements_psd = false;
    sum = sum + e;
  }
  if (instr.element_layout.size() == 2) {
    const std::string out_label = instr.element_layout.subsystem(1).label;
    HermitianOperator marg = partial_trace(sum, {out_label});
    r.completeness_residual =
        (marg - HermitianOperator::identity(marg.layout())).frobenius_norm();
  } else {
    r.completeness_residual = (sum - HermitianOperator::identity(sum.layout())).frobenius_norm();
  }
  r.valid = r.elements_psd && r.completeness_residual <= tol;
  return r;
}

Instrument instrument_measure_and_mix(Party p, const Eigen::Vector3d& axis,
                                      const std::string& label) {
  const SystemLayout layout = party_pair_layout(p);
  Instrument in;
  in.party = p;
  in.element_layout = layout;
  in.label = label.empty() ? party_name(p) + ":meas" + axis_name(axis) + "+mix" : label;
  for (double a : {+1.0, -1.0})
    in.elements.emplace_back(layout,
                             pair_kron(effect(axis, a), 0.5 * Eigen::Matrix2cd::Identity()));
  return in;
}

Instrument instrument_coin_and_prepare(Party p, const Eigen::Vector3d& axis,
                                       const std::string& label) {
  const SystemLayout layout = party_pair_layout(p);
  Instrument in;
  in.party = p;
  in.element_layout = layout;
  in.label = label.empty() ? party_name(p) + ":coin+prep" + axis_name(axis) : label;
  for (double a : {+1.0, -1.0})
    in.elements.emplace_back(layout,
                             pair_kron(0.5 * Eigen::Matrix2cd::Identity(), effect(axis, a)));
  return in;
}

Instrument instrument_measure_and_prepare(Party p, const Eigen::Vector3d& meas,
                                          const Eigen::Vector3d& prep, double tau,
                                          const std::string& label) {
  const SystemLayout layout = party_pair_layout(p);
  Instrument in;
  in.party = p;
  in.element_layout = layout;
  in.label = label.empty() ? party_name(p) + ":meas" + axis_name(meas) + "+prep(" +
                                 (tau > 0 ? "+" : "-") + axis_name(prep) + ")"
                           : label;
  for (double a : {+1.0, -1.0})
    in.elements.emplace_back(layout, pair_kron(effect(meas, a), effect(prep, tau)));
  return in;
}

Instrument instrument_measure_and_prepare_correlated(Party p, const Eigen::Vector3d& meas,
                                                     const Eigen::Vector3d& prep,
                                                     const std::string& label) {
  const SystemLayout layout = party_pair_layout(p);
  Instrument in;
  in.party = p;
  in.element_layout = layout;
  in.label = label.empty()
                 ? party_name(p) + ":meas" + axis_name(meas) + "+prep(a" + axis_name(prep) + ")"
                 : label;
  for (double a : {+1.0, -1.0})
    in.elements.emplace_back(layout, pair_kron(effect(meas, a), effect(prep, a)));
  return in;
}

Instrument instrument_unitary(Party p, const Eigen::Matrix2cd& u, const std::string& label) {
  const SystemLayout layout = party_pair_layout(p);
  Instrument in;
  in.party = p;
  in.element_layout = layout;
  in.label = label;
  in.elements.push_back(cj_of_unitary(u).as_operator(layout));
  return in;
}

Instrument charlie_povm(const Eigen::Vector3d& axis, const std::string& label) {
  const SystemLayout layout = charlie_input_layout();
  Instrument in;
  in.party = Party::Charlie;
  in.element_layout = layout;
  in.label = label.empty() ? "C:povm" + axis_name(axis) : label;
  for (double a : {+1.0, -1.0}) in.elements.emplace_back(layout, Matrix(effect(axis, a)));
  return in;
}

std::vector<Instrument> stock_instrument_set(Party p) {
  const Eigen::Vector3d x(1, 0, 0), y(0, 1, 0), z(0, 0, 1);
  const Eigen::Vector3d diag = (x + z).normalized();
  std::vector<Instrument> out;
  for (const auto& a : {x, y, z}) out.push_back(instrument_measure_and_mix(p, a));
  for (const auto& a : {x, y, z}) out.push_back(instrument_coin_and_prepare(p, a));
  out.push_back(instrument_measure_and_prepare_correlated(p, z, z));
  out.push_back(instrument_measure_and_prepare_correlated(p, x, z));
  out.push_back(instrument_measure_and_prepare_correlated(p, diag, z));
  for (double tau : {+1.0, -1.0}) out.push_back(instrument_measure_and_prepare(p, z, z, tau));
  return out;
}

double born_probability(const ProcessMatrix& w, const std::vector<HermitianOperator>& elements) {
  if (elements.empty()) throw std::invalid_argument("no instrument elements given");
  HermitianOperator product = elements[0];
  for (size_t i = 1; i < elements.size(); ++i) product = tensor(product, elements[i]);
  if (product.layout() != w.scenario.layout)
    throw std::invalid_argument("instrument elements do not match the process layout");
  return hs_inner(product, w.op);
}

HermitianOperator reassemble(const WitnessDecomposition& d) {
  HermitianOperator acc = HermitianOperator::zero(d.scenario.layout);
  for (const auto& t : d.terms) {
    const auto& st = d.settings[t.setting];
    HermitianOperator prod = d.a_instruments[st.a].elements[t.outcomes[0]];
    prod = tensor(prod, d.b_instruments[st.b].elements[t.outcomes[1]]);
    if (st.c >= 0) prod = tensor(prod, d.c_instruments[st.c].elements[t.outcomes[2]]);
    acc = acc + prod * t.coeff;
  }
  return acc;
}

double measure_witness(const WitnessDecomposition& d, const ProcessMatrix& w) {
  if (w.scenario != d.scenario) throw std::invalid_argument("scenario mismatch");
  double v = 0.0;
  for (const auto& t : d.terms) {
    const auto& st = d.settings[t.setting];
    std::vector<HermitianOperator> els;
    els.push_back(d.a_instruments[st.a].elements[t.outcomes[0]]);
    els.push_back(d.b_instruments[st.b].elements[t.outcomes[1]]);
    if (st.c >= 0) els.push_back(d.c_instruments[st.c].elements[t.outcomes[2]]);
    v += t.coeff * born_probability(w, els);
  }
  return v;
}

// ---------------------------------------------------------------------------
// Witness compilation.

namespace {

struct Alternative {
  Instrument instrument;
  std::vector<double> factors;  // per outcome
  double weight = 1.0;
};

std::vector<Alternative> party_alternatives(Party p, char in, char out, CompileStyle style) {
  std::vector<Alternative> alts;
  if (style == CompileStyle::UnitaryTable) {
    for (const auto& term : pauli_pair_to_unitary_mix(in, out)) {
      Alternative a;
      a.instrument = instrument_unitary(p, term.unitary, party_name(p) + ":U(" + term.name + ")");
      a.factors = {1.0};
      a.weight = term.coeff;
      alts.push_back(std::move(a));
    }
    return alts;
  }
  if (in == '1' && out == '1') {
    alts.push_back({instrument_measure_and_mix(p, pauli_axis('Z')), {1.0, 1.0}, 2.0});
  } else if (out == '1') {
    alts.push_back({instrument_measure_and_mix(p, pauli_axis(in)), {1.0, -1.0}, 2.0});
  } else if (in == '1') {
    alts.push_back({instrument_coin_and_prepare(p, pauli_axis(out)), {1.0, -1.0}, 2.0});
  } else {
    for (double tau : {+1.0, -1.0})
      alts.push_back(
          {instrument_measure_and_prepare(p, pauli_axis(in), pauli_axis(out), tau), {1.0, -1.0},
           tau});
  }
  return alts;
}

std::vector<Alternative> charlie_alternatives(char symbol) {
  if (symbol == '1') {
    Alternative a{charlie_povm(pauli_axis('X')), {1.0, 1.0}, 1.0};
    return {a};
  }
  Alternative a{charlie_povm(pauli_axis(symbol)), {1.0, -1.0}, 1.0};
  return {a};
}

int intern(std::vector<Instrument>& list, std::map<std::string, int>& index,
           const Instrument& in) {
  auto it = index.find(in.label);
  if (it != index.end()) return it->second;
  const int id = static_cast<int>(list.size());
  list.push_back(in);
  index[in.label] = id;
  return id;
}

}  // namespace

WitnessDecomposition compile_witness(const HermitianOperator& s, const Scenario& scenario,
                                     CompileStyle style) {
  if (s.layout() != scenario.layout)
    throw std::invalid_argument("witness layout does not match scenario");
  const bool tri = scenario.kind == ScenarioKind::TripartiteTrivialCO;

  WitnessDecomposition d;
  d.scenario = scenario;
  d.target = s;

  std::map<std::string, int> a_idx, b_idx, c_idx;
  std::map<std::tuple<int, int, int>, int> setting_idx;
  std::map<std::pair<int, std::vector<int>>, double> coeffs;

  const PauliExpansion e = to_pauli(s, 1e-14);
  for (const auto& [str, coeff] : e.terms) {
    const auto a_alts = party_alternatives(Party::Alice, str[0], str[1], style);
    const auto b_alts = party_alternatives(Party::Bob, str[2], str[3], style);
    const auto c_alts =
        tri ? charlie_alternatives(str[4]) : std::vector<Alternative>{Alternative{}};

    for (const auto& aa : a_alts)
      for (const auto& bb : b_alts)
        for (const auto& cc : c_alts) {
          const int ai = intern(d.a_instruments, a_idx, aa.instrument);
          const int bi = intern(d.b_instruments, b_idx, bb.instrument);
          const int ci = tri ? intern(d.c_instruments, c_idx, cc.instrument) : -1;
          const auto key = std::make_tuple(ai, bi, ci);
          auto sit = setting_idx.find(key);
          int sid;
          if (sit == setting_idx.end()) {
            sid = static_cast<int>(d.settings.size());
            d.settings.push_back({ai, bi, ci});
            setting_idx[key] = sid;
          } else {
            sid = sit->second;
          }
          const double base = coeff * aa.weight * bb.weight * (tri ? cc.weight : 1.0);
          for (int oa = 0; oa < static_cast<int>(aa.factors.size()); ++oa)
            for (int ob = 0; ob < static_cast<int>(bb.factors.size()); ++ob) {
              if (!tri) {
                coeffs[{sid, {oa, ob}}] += base * aa.factors[oa] * bb.factors[ob];
                continue;
              }
              for (int oc = 0; oc < static_cast<int>(cc.factors.size()); ++oc)
                coeffs[{sid, {oa, ob, oc}}] +=
                    base * aa.factors[oa] * bb.factors[ob] * cc.factors[oc];
            }
        }
  }

  for (const auto& [key, c] : coeffs) {
    if (std::abs(c) < 1e-15) continue;
    d.terms.push_back({key.first, key.second, c});
  }
  return d;
}

// ---------------------------------------------------------------------------
// Sampling.

namespace {
std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}
}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : state_(mix64(seed ^ (0x9E3779B97F4A7C15ull * (stream + 1)))) {}

double CounterRng::uniform() {
  const std::uint64_t v = mix64(state_ + 0x9E3779B97F4A7C15ull * (++counter_));
  return static_cast<double>(v >> 11) * 0x1.0p-53;
}

SampleResult sample_outcomes(const ProcessMatrix& w, const WitnessDecomposition& d, long shots,
                             std::uint64_t seed) {
  if (shots <= 0) throw std::invalid_argument("shots must be positive");
  const bool tri = d.scenario.kind == ScenarioKind::TripartiteTrivialCO;
  const int ns = static_cast<int>(d.settings.size());

  SampleResult res;
  res.shots = shots;
  res.seed = seed;
  res.exact = measure_witness(d, w);

  // Per-setting outcome probabilities and witness coefficients.
  std::vector<std::vector<double>> probs(ns), gamma(ns);
  std::vector<std::array<int, 3>> sizes(ns);
  for (int s = 0; s < ns; ++s) {
    const auto& st = d.settings[s];
    const int na = d.a_instruments[st.a].outcomes();
    const int nb = d.b_instruments[st.b].outcomes();
    const int nc = tri ? d.c_instruments[st.c].outcomes() : 1;
    sizes[s] = {na, nb, nc};
    probs[s].assign(na * nb * nc, 0.0);
    gamma[s].assign(na * nb * nc, 0.0);
    double total = 0.0;
    for (int oa = 0; oa < na; ++oa)
      for (int ob = 0; ob < nb; ++ob)
        for (int oc = 0; oc < nc; ++oc) {
          std::vector<HermitianOperator> els;
          els.push_back(d.a_instruments[st.a].elements[oa]);
          els.push_back(d.b_instruments[st.b].elements[ob]);
          if (tri) els.push_back(d.c_instruments[st.c].elements[oc]);
          const double p = born_probability(w, els);
          probs[s][(oa * nb + ob) * nc + oc] = std::max(p, 0.0);
          total += std::max(p, 0.0);
        }
    if (std::abs(total - 1.0) > 1e-6)
      throw std::runtime_error("outcome probabilities do not normalise; invalid process or "
                               "instruments");
    for (auto& p : probs[s]) p /= total;
  }
  for (const auto& t : d.terms) {
    const auto& sz = sizes[t.setting];
    const int flat = tri ? (t.outcomes[0] * sz[1] + t.outcomes[1]) * sz[2] + t.outcomes[2]
                         : t.outcomes[0] * sz[1] + t.outcomes[1];
    gamma[t.setting][flat] += t.coeff;
  }

  res.counts.resize(ns);
  double estimate = 0.0, variance = 0.0;
  for (int s = 0; s < ns; ++s) {
    const long n_s = shots / ns + (s < shots % ns ? 1 : 0);
    res.counts[s].assign(probs[s].size(), 0);
    CounterRng rng(seed, static_cast<std::uint64_t>(s));
    for (long k = 0; k < n_s; ++k) {
      const double u = rng.uniform();
      double acc = 0.0;
      int pick = static_cast<int>(probs[s].size()) - 1;
      for (int o = 0; o < static_cast<int>(probs[s].size()); ++o) {
        acc += probs[s][o];
        if (u < acc) {
          pick = o;
          break;
        }
      }
      ++res.counts[s][pick];
    }
    double mean = 0.0, second = 0.0;
    for (size_t o = 0; o < probs[s].size(); ++o) {
      const double phat = n_s > 0 ? double(res.counts[s][o]) / double(n_s) : 0.0;
      mean += gamma[s][o] * phat;
      second += gamma[s][o] * gamma[s][o] * phat;
    }
    estimate += mean;
    if (n_s > 0) variance += (second - mean * mean) / double(n_s);
  }
  res.estimate = estimate;
  res.stderr_estimate = std::sqrt(std::max(variance, 0.0));
  return res;
}

}  // namespace causalwit
