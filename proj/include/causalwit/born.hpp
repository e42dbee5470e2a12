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

#include <cstdint>

#include "causalwit/catalog.hpp"
#include "causalwit/spaces.hpp"

namespace causalwit {

/// An outcome-indexed collection of CJ matrices for one party: completely
/// positive maps summing to a trace-preserving one. For Charlie (input only)
/// the elements are POVM effects on C_I.
struct Instrument {
  Party party = Party::Alice;
  std::string label;
  SystemLayout element_layout;
  std::vector<HermitianOperator> elements;

  int outcomes() const { return static_cast<int>(elements.size()); }
};

SystemLayout party_pair_layout(Party p);   // (X_I, X_O)
SystemLayout charlie_input_layout();       // (C_I)

struct InstrumentReport {
  bool elements_psd = false;
  double worst_element_eig = 0.0;
  double completeness_residual = 0.0;
  bool valid = false;
};

InstrumentReport validate_instrument(const Instrument& instr, double tol = 1e-10);

// Stock instruments. Outcome order is (+1, -1) for two-outcome instruments.
Instrument instrument_measure_and_mix(Party p, const Eigen::Vector3d& axis,
                                      const std::string& label = "");
Instrument instrument_coin_and_prepare(Party p, const Eigen::Vector3d& axis,
                                       const std::string& label = "");
Instrument instrument_measure_and_prepare(Party p, const Eigen::Vector3d& meas,
                                          const Eigen::Vector3d& prep, double tau,
                                          const std::string& label = "");
Instrument instrument_measure_and_prepare_correlated(Party p, const Eigen::Vector3d& meas,
                                                     const Eigen::Vector3d& prep,
                                                     const std::string& label = "");
Instrument instrument_unitary(Party p, const Eigen::Matrix2cd& u, const std::string& label);
Instrument charlie_povm(const Eigen::Vector3d& axis, const std::string& label = "");

Eigen::Vector3d pauli_axis(char symbol);  // X, Y or Z

/// A small collection of instruments for one party, broad enough to expose
/// negative "probabilities" on operators violating positivity.
std::vector<Instrument> stock_instrument_set(Party p);

/// Generalised Born rule: tr[(M_a (x) M_b ((x) M_c)) W]. Elements are given
/// in party order Alice, Bob (, Charlie).
double born_probability(const ProcessMatrix& w, const std::vector<HermitianOperator>& elements);

/// A witness expressed as statistics of instrument outcomes.
struct WitnessDecomposition {
  struct Setting {
    int a = -1, b = -1, c = -1;  // instrument indices per party (-1 = absent)
  };
  struct Term {
    int setting = 0;
    std::vector<int> outcomes;  // one index per party present
    double coeff = 0.0;
  };

  Scenario scenario;
  HermitianOperator target;
  std::vector<Instrument> a_instruments, b_instruments, c_instruments;
  std::vector<Setting> settings;
  std::vector<Term> terms;
};

/// Sum of coeff * (tensor of selected elements); equals the target operator.
HermitianOperator reassemble(const WitnessDecomposition& d);

/// Exact expectation sum coeff * P(outcomes | setting) = hs_inner(target, W).
double measure_witness(const WitnessDecomposition& d, const ProcessMatrix& w);

enum class CompileStyle {
  Projective,   // measure-and-reprepare instruments per party
  UnitaryTable  // A/B factors as signed mixtures of unitary CJ matrices
};

/// Compiles a witness operator into instruments covering every Pauli term;
/// settings are shared across terms whenever the same instrument suffices.
WitnessDecomposition compile_witness(const HermitianOperator& s, const Scenario& scenario,
                                     CompileStyle style = CompileStyle::Projective);

/// Deterministic counter-based generator: the k-th draw depends only on
/// (seed, stream, k).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);
  double uniform();  // in [0, 1)

 private:
  std::uint64_t state_;
  std::uint64_t counter_ = 0;
};

struct SampleResult {
  double estimate = 0.0;
  double stderr_estimate = 0.0;
  double exact = 0.0;
  long shots = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<long>> counts;  // per setting, flattened outcome index
};

/// Simulates measuring the witness: shots are split evenly across settings,
/// outcomes are drawn from the Born probabilities, and the witness value is
/// estimated from the observed frequencies. Reproducible for a fixed seed.
SampleResult sample_outcomes(const ProcessMatrix& w, const WitnessDecomposition& d, long shots,
                             std::uint64_t seed);

}  // namespace causalwit
