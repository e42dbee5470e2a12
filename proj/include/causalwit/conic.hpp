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

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

namespace causalwit {

/// min c'x  subject to  A x = b  and, per block k,
///   F_k(x) = F_{k,0} + sum_i x_i F_{k,i}  positive semidefinite,
/// with Hermitian coefficient matrices. Real parameters only.
struct ConicProgram {
  struct Block {
    Eigen::MatrixXcd constant;                             // F_{k,0}
    std::vector<std::pair<int, Eigen::MatrixXcd>> coeffs;  // (variable, F_{k,i})
    int side() const { return static_cast<int>(constant.rows()); }
  };

  int n_vars = 0;
  Eigen::VectorXd objective;  // c
  Eigen::MatrixXd eq_lhs;     // A (may have zero rows)
  Eigen::VectorXd eq_rhs;     // b
  std::vector<Block> blocks;

  /// Throws on inconsistent sides, non-Hermitian coefficients or bad indices.
  void validate() const;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, MaxIter };

std::string status_name(SolveStatus s);

struct IterateTrace {
  double primal_objective;
  double dual_objective;
  double mu;
  double primal_residual;
  double dual_residual;
};

struct SolveResult {
  SolveStatus status = SolveStatus::MaxIter;
  Eigen::VectorXd x;
  double objective_value = 0.0;
  double dual_objective = 0.0;
  double gap = 0.0;  // relative duality gap at the final iterate
  std::vector<Eigen::MatrixXcd> dual_blocks;
  Eigen::VectorXd eq_duals;
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  std::vector<IterateTrace> trace;  // filled when requested
};

struct SolveOptions {
  double tol = 1e-8;
  int max_iter = 200;
  double init_scale = 0.0;  // 0 = choose from the data
  bool record_trace = false;
  /// Solve the real-symmetric embedding [[Re,-Im],[Im,Re]] of every block
  /// instead of the complex Hermitian blocks themselves.
  bool use_real_embedding = false;
};

/// Primal-dual interior-point solver (Nesterov-Todd scaling, Mehrotra
/// predictor-corrector, dense Schur complement). Deterministic.
SolveResult solve(const ConicProgram& p, const SolveOptions& opts = {});

/// The real-symmetric embedding of a complex-Hermitian program; block sides
/// double, variables and objective are unchanged.
ConicProgram embed_real(const ConicProgram& p);

/// SDPA sparse text export. Equality constraints are emitted as paired
/// opposing 1x1 diagonal blocks.
void write_sdpa_sparse(const ConicProgram& p, std::ostream& os);

}  // namespace causalwit
