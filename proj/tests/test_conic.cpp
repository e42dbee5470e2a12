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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "causalwit/catalog.hpp"
#include "causalwit/conic.hpp"
#include "test_util.hpp"

using namespace causalwit;

namespace {

/// min r subject to r I - Z >= 0 (largest eigenvalue of Z).
ConicProgram eigenvalue_program() {
  ConicProgram p;
  p.n_vars = 1;
  p.objective = Eigen::VectorXd::Ones(1);
  p.eq_lhs.resize(0, 1);
  p.eq_rhs.resize(0);
  ConicProgram::Block b;
  b.constant = Matrix::Zero(2, 2);
  b.constant(0, 0) = -1;
  b.constant(1, 1) = 1;
  b.coeffs.emplace_back(0, Matrix(Matrix::Identity(2, 2)));
  p.blocks.push_back(std::move(b));
  return p;
}

/// min r with (1 + r) * white-noise split over the two bipartite order cones.
ConicProgram white_on_white_program() {
  const Scenario sc = Scenario::bipartite();
  const ProcessMatrix white = white_noise(sc);
  const auto strings = all_pauli_strings(4);

  std::vector<std::string> both;
  for (const auto& s : strings)
    if (order_keeps(CausalOrder::AB, s) && order_keeps(CausalOrder::BA, s)) both.push_back(s);

  ConicProgram p;
  p.n_vars = static_cast<int>(both.size()) + 1;
  const int r = p.n_vars - 1;
  p.objective = Eigen::VectorXd::Zero(p.n_vars);
  p.objective[r] = 1.0;
  p.eq_lhs.resize(0, p.n_vars);
  p.eq_rhs.resize(0);

  ConicProgram::Block b1, b2;
  b1.constant = Matrix::Zero(16, 16);
  b2.constant = white.op.matrix();
  for (int j = 0; j < static_cast<int>(both.size()); ++j) {
    Matrix m = pauli_string_matrix(sc.layout, both[j]).matrix();
    b1.coeffs.emplace_back(j, m);
    b2.coeffs.emplace_back(j, -m);
  }
  b2.coeffs.emplace_back(r, white.op.matrix());
  p.blocks.push_back(std::move(b1));
  p.blocks.push_back(std::move(b2));
  return p;
}

}  // namespace

TEST_CASE("one-variable eigenvalue bound") {
  SolveResult r = solve(eigenvalue_program());
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(r.objective_value == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(r.gap < 1e-8);
}

TEST_CASE("white noise on white noise reaches the cone apex at r = -1") {
  // Independent oracle: bisection on c >= 0 for membership of (1+r) * white
  // in both order cones via the fixed half/half split.
  const Scenario sc = Scenario::bipartite();
  const ProcessMatrix white = white_noise(sc);
  auto feasible = [&](double r) {
    HermitianOperator half = white.op * (0.5 * (1.0 + r));
    return is_in_order_cone(half, CausalOrder::AB, {}) &&
           is_in_order_cone(half, CausalOrder::BA, {});
  };
  double lo = -2.0, hi = 0.0;
  REQUIRE(!feasible(lo));
  REQUIRE(feasible(hi));
  for (int it = 0; it < 50; ++it) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }
  CHECK(hi == doctest::Approx(-1.0).epsilon(1e-9));

  SolveResult r = solve(white_on_white_program());
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(r.objective_value == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("weak duality holds once iterates are feasible") {
  ConicProgram p = white_on_white_program();
  SolveOptions opts;
  opts.record_trace = true;
  SolveResult r = solve(p, opts);
  REQUIRE(r.status == SolveStatus::Optimal);
  const double scale = 1.0 + std::abs(r.objective_value);
  for (const auto& it : r.trace) {
    const double slack = 1e-6 * scale + 1e3 * scale * (it.primal_residual + it.dual_residual);
    CHECK(it.dual_objective <= it.primal_objective + slack);
  }
}

TEST_CASE("complex Hermitian blocks agree with their real embedding") {
  ConicProgram p = white_on_white_program();
  SolveResult native = solve(p);
  SolveOptions emb;
  emb.use_real_embedding = true;
  SolveResult embedded = solve(p, emb);
  REQUIRE(native.status == SolveStatus::Optimal);
  REQUIRE(embedded.status == SolveStatus::Optimal);
  CHECK(native.objective_value == doctest::Approx(embedded.objective_value).epsilon(1e-8));

  // Same for a genuinely complex program: bound the largest eigenvalue of Y.
  ConicProgram q;
  q.n_vars = 1;
  q.objective = Eigen::VectorXd::Ones(1);
  q.eq_lhs.resize(0, 1);
  q.eq_rhs.resize(0);
  ConicProgram::Block b;
  b.constant = Matrix::Zero(2, 2);
  b.constant(0, 1) = Complex(0, 1);
  b.constant(1, 0) = Complex(0, -1);
  b.coeffs.emplace_back(0, Matrix(Matrix::Identity(2, 2)));
  q.blocks.push_back(std::move(b));
  SolveResult qa = solve(q);
  SolveResult qb = solve(q, emb);
  CHECK(qa.objective_value == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(qa.objective_value == doctest::Approx(qb.objective_value).epsilon(1e-8));
}

TEST_CASE("solution is invariant under variable reordering and row scaling") {
  // min x0 + x1 s.t. diag(x0 - 1, x1 - 2) >= 0 and equality x0 + 2 x1 = 6.
  auto make = [](bool swapped, double row_scale) {
    ConicProgram p;
    p.n_vars = 2;
    p.objective.resize(2);
    p.objective << 1.0, 1.0;
    p.eq_lhs.resize(1, 2);
    if (!swapped)
      p.eq_lhs << row_scale * 1.0, row_scale * 2.0;
    else
      p.eq_lhs << row_scale * 2.0, row_scale * 1.0;
    p.eq_rhs.resize(1);
    p.eq_rhs << row_scale * 6.0;
    ConicProgram::Block b;
    b.constant = Matrix::Zero(2, 2);
    b.constant(0, 0) = -1.0;
    b.constant(1, 1) = -2.0;
    Matrix e0 = Matrix::Zero(2, 2), e1 = Matrix::Zero(2, 2);
    e0(0, 0) = 1.0;
    e1(1, 1) = 1.0;
    b.coeffs.emplace_back(swapped ? 1 : 0, e0);
    b.coeffs.emplace_back(swapped ? 0 : 1, e1);
    p.blocks.push_back(std::move(b));
    return p;
  };
  SolveResult a = solve(make(false, 1.0));
  SolveResult b = solve(make(true, 1.0));
  SolveResult c = solve(make(false, 37.5));
  REQUIRE(a.status == SolveStatus::Optimal);
  CHECK(a.objective_value == doctest::Approx(b.objective_value).epsilon(1e-7));
  CHECK(a.objective_value == doctest::Approx(c.objective_value).epsilon(1e-7));
  CHECK(a.x[0] == doctest::Approx(b.x[1]).epsilon(1e-6));
  CHECK(a.x[1] == doctest::Approx(b.x[0]).epsilon(1e-6));
}

TEST_CASE("infeasible and unbounded detection") {
  // x >= 1 together with -x >= 0 is infeasible.
  ConicProgram inf;
  inf.n_vars = 1;
  inf.objective = Eigen::VectorXd::Zero(1);
  inf.eq_lhs.resize(0, 1);
  inf.eq_rhs.resize(0);
  {
    ConicProgram::Block b;
    b.constant = -Matrix::Identity(1, 1);
    b.coeffs.emplace_back(0, Matrix(Matrix::Identity(1, 1)));
    inf.blocks.push_back(b);
    ConicProgram::Block b2;
    b2.constant = Matrix::Zero(1, 1);
    b2.coeffs.emplace_back(0, Matrix(-Matrix::Identity(1, 1)));
    inf.blocks.push_back(b2);
  }
  SolveResult ri = solve(inf);
  CHECK(ri.status == SolveStatus::Infeasible);

  // min -x with x >= 0 only: unbounded below.
  ConicProgram unb;
  unb.n_vars = 1;
  unb.objective = -Eigen::VectorXd::Ones(1);
  unb.eq_lhs.resize(0, 1);
  unb.eq_rhs.resize(0);
  ConicProgram::Block b;
  b.constant = Matrix::Zero(1, 1);
  b.coeffs.emplace_back(0, Matrix(Matrix::Identity(1, 1)));
  unb.blocks.push_back(b);
  SolveResult ru = solve(unb);
  CHECK(ru.status == SolveStatus::Unbounded);

  // A constant block that is not PSD is infeasible outright.
  ConicProgram cst;
  cst.n_vars = 1;
  cst.objective = Eigen::VectorXd::Zero(1);
  cst.eq_lhs.resize(0, 1);
  cst.eq_rhs.resize(0);
  ConicProgram::Block cb;
  cb.constant = -Matrix::Identity(2, 2);
  cst.blocks.push_back(cb);
  ConicProgram::Block vb;
  vb.constant = Matrix::Identity(1, 1);
  vb.coeffs.emplace_back(0, Matrix(Matrix::Identity(1, 1)));
  cst.blocks.push_back(vb);
  CHECK(solve(cst).status == SolveStatus::Infeasible);
}

TEST_CASE("program validation rejects malformed input") {
  ConicProgram p;
  p.n_vars = 1;
  p.objective = Eigen::VectorXd::Zero(1);
  p.eq_lhs.resize(0, 1);
  p.eq_rhs.resize(0);
  ConicProgram::Block b;
  b.constant = Matrix::Zero(2, 2);
  b.constant(0, 1) = 1.0;  // not Hermitian
  p.blocks.push_back(b);
  CHECK_THROWS_AS((void)solve(p), std::invalid_argument);

  ConicProgram q;
  q.n_vars = 1;
  q.objective = Eigen::VectorXd::Zero(1);
  q.eq_lhs.resize(0, 1);
  q.eq_rhs.resize(0);
  ConicProgram::Block qb;
  qb.constant = Matrix::Zero(2, 2);
  qb.coeffs.emplace_back(3, Matrix(Matrix::Identity(2, 2)));  // variable out of range
  q.blocks.push_back(qb);
  CHECK_THROWS_AS((void)solve(q), std::invalid_argument);
}

TEST_CASE("sdpa sparse export emits a parseable header") {
  ConicProgram p = eigenvalue_program();
  std::ostringstream os;
  write_sdpa_sparse(p, os);
  std::istringstream in(os.str());
  int m = 0, nblocks = 0;
  in >> m >> nblocks;
  CHECK(m == 1);
  CHECK(nblocks == 1);
  int side = 0;
  in >> side;
  CHECK(side == 4);  // real embedding doubles the block
}
