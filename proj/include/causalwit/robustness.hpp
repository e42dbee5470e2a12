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

#include "causalwit/conic.hpp"
#include "causalwit/spaces.hpp"

namespace causalwit {

/// Certificate that a Hermitian operator lies in the dual cone of the
/// causally separable processes. The operator decomposes as
/// S = s_pos_first + s_perp_first (and, tripartite, also as the second pair).
/// Bipartite: the trace-and-replace marginals of s_pos over B_O and A_O are
/// PSD and s_perp is annihilated by the validity projector. Tripartite:
/// s_pos parts are PSD and each s_perp part is annihilated by the projector
/// of its causal order.
struct WitnessCertificate {
  HermitianOperator s_pos_first;
  HermitianOperator s_perp_first;
  std::optional<HermitianOperator> s_pos_second;
  std::optional<HermitianOperator> s_perp_second;
};

struct Witness {
  Scenario scenario;
  HermitianOperator op;
  std::optional<WitnessCertificate> certificate;
};

struct SolveDiagnostics {
  SolveStatus status = SolveStatus::MaxIter;
  int iterations = 0;
  double gap = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
};

SolveDiagnostics diagnostics_of(const SolveResult& r);

/// The maximally mixed process 1/d_I.
ProcessMatrix white_noise(const Scenario& s);

/// v * a + (1-v) * b.
ProcessMatrix mixture(const ProcessMatrix& a, const ProcessMatrix& b, double v);

struct RobustnessOptions {
  double tol = 1e-8;
  int max_iter = 200;
  bool with_witness = true;          // also solve the dual program
  bool check_noise_interior = true;  // warn when a custom noise sits on the boundary
};

struct RobustnessReport {
  double r_star = 0.0;
  double random_robustness = 0.0;      // max(r_star, 0)
  double visibility_threshold = 1.0;   // 1/(1 + max(r_star,0))
  std::optional<Witness> witness;
  double witness_value = 0.0;          // hs_inner(witness, W)
  CausalOrder order_first, order_second;
  HermitianOperator component_first;   // decomposition of W + r* N over the two cones
  HermitianOperator component_second;
  SolveDiagnostics primal;
  std::optional<SolveDiagnostics> dual;
  double primal_dual_residual = 0.0;   // |r* + <S, W>|
  std::vector<std::string> warnings;
};

/// Minimal admixture of `noise` that makes W causally separable (may be
/// negative for processes in the interior of the separable cone). Solves the
/// primal cone program; the witness comes from the independently solved dual.
RobustnessReport random_robustness(const ProcessMatrix& w,
                                   const std::optional<ProcessMatrix>& noise = std::nullopt,
                                   const RobustnessOptions& opts = {});

/// Random robustness of v * target + (1-v) * noise with respect to white
/// noise. This sidesteps degenerate programs when `noise` itself sits on the
/// boundary of the separable set.
RobustnessReport robustness_at_visibility(const ProcessMatrix& target, const ProcessMatrix& noise,
                                          double v, const RobustnessOptions& opts = {});

/// A pair of trace-and-replace expressions constrained to agree on the
/// witness operator.
struct MarginalConstraint {
  std::string name;
  TraceReplaceExpr lhs;
  TraceReplaceExpr rhs;
};

/// The marginal equalities a witness must satisfy when Alice and Bob are
/// restricted to unitary operations; searching under them replaces the
/// validity-subspace constraint.
std::vector<MarginalConstraint> unitary_restriction_constraints(const Scenario& s);

/// Frobenius residuals of a set of marginal constraints on an operator.
std::vector<ConditionCheck> marginal_residuals(const HermitianOperator& s,
                                               const std::vector<MarginalConstraint>& constraints,
                                               double tol);

struct WitnessRestriction {
  bool unitary_ab = false;
  /// Restricts the Charlie factor of every witness term to the span of the
  /// given single-qubit operators.
  std::optional<std::vector<Eigen::Matrix2cd>> charlie_span;
  /// Additional marginal equalities (each acts diagonally on Pauli strings).
  std::vector<MarginalConstraint> custom;

  static WitnessRestriction none() { return {}; }
  static WitnessRestriction unitary();
  static WitnessRestriction charlie_x();  // unitary restriction + C_I span {1, X}
};

struct WitnessSearchResult {
  Witness witness;
  double value = 0.0;  // hs_inner(witness, W); negative certifies nonseparability
  SolveDiagnostics diag;
};

/// Optimal witness for W under the normalisation hs_inner(S, noise) = 1,
/// optionally restricted. With no restriction the value equals -r_star.
WitnessSearchResult construct_witness(const ProcessMatrix& w,
                                      const std::optional<ProcessMatrix>& noise = std::nullopt,
                                      const WitnessRestriction& restriction = {},
                                      const RobustnessOptions& opts = {});

struct WitnessVerification {
  bool valid = false;
  double worst_residual = 0.0;
  std::vector<ConditionCheck> checks;
  bool certificate_searched = false;
  std::optional<WitnessCertificate> certificate;
};

/// Checks an attached certificate directly, or searches for one by solving a
/// feasibility program. PSD checks are relative to the operator norm with
/// tolerance `tol`; subspace residuals are absolute against `tol`.
WitnessVerification verify_witness(const Witness& s, double tol = 1e-9,
                                   const RobustnessOptions& opts = {});

struct GeneralizedRobustnessReport {
  double value = 0.0;             // tr(Omega)/d_O at the optimum
  HermitianOperator omega;        // worst-case noise certificate (valid, nonnormalised)
  HermitianOperator component_first;
  HermitianOperator component_second;
  SolveDiagnostics diag;
};

/// Robustness against worst-case valid noise: minimise tr(Omega)/d_O over
/// valid Omega >= 0 with W + Omega causally separable. Zero iff W is causally
/// separable.
GeneralizedRobustnessReport generalized_robustness(const ProcessMatrix& w,
                                                   const RobustnessOptions& opts = {});

/// Visibility threshold of a witness on the segment v*W + (1-v)*N:
/// the witness detects nonseparability for all v above the returned value.
double witness_threshold(const Witness& s, const ProcessMatrix& w, const ProcessMatrix& noise);

}  // namespace causalwit
