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

#include "causalwit/catalog.hpp"
#include "test_util.hpp"

using namespace causalwit;

namespace {
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
}

TEST_CASE("eta-family processes") {
  // eta1 = eta2 = 0 is white noise.
  CHECK((make_w_etas(0, 0).op - white_noise(Scenario::bipartite()).op).frobenius_norm() < 1e-13);

  ValidityReport on_circle =
      is_valid_process(make_w_etas(kInvSqrt2, kInvSqrt2).op, Scenario::bipartite(), {1e-9, 1e-7, 1e-9}, true);
  CHECK(on_circle.valid);

  CHECK_FALSE(is_valid_process(make_w_etas(0.8, 0.8).op, Scenario::bipartite()).valid);
}

TEST_CASE("eta-family witnesses") {
  CHECK(hs_inner(make_s_etas(0.9, 0.9).op, make_w_etas(0.9, 0.9).op) ==
        doctest::Approx(-0.8).epsilon(1e-12));
  CHECK(verify_witness(make_s_etas(0.6, -0.8), 1e-10).valid);
  // The direct marginal-positivity checks hold with zero residual.
  Witness s = make_s_etas(1.0, 1.0);
  CHECK(min_eigenvalue(trace_and_replace(s.op, {"B_O"})) > -1e-13);
  CHECK(min_eigenvalue(trace_and_replace(s.op, {"A_O"})) > -1e-13);
}

TEST_CASE("explicit separable decompositions of the eta family") {
  SUBCASE("interior point reassembles and lies in the cones") {
    SeparableDecomposition d = make_sep_decomposition_etas(0.5, 0.5);
    HermitianOperator sum =
        d.component_first.op * d.weight_first + d.component_second.op * d.weight_second;
    CHECK((sum - make_w_etas(0.5, 0.5).op).frobenius_norm() < 1e-13);
    CHECK(is_in_order_cone(d.component_first.op, CausalOrder::AB, {}));
    CHECK(is_in_order_cone(d.component_second.op, CausalOrder::BA, {}));
  }
  SUBCASE("degenerate mixture puts all weight on one order") {
    SeparableDecomposition d = make_sep_decomposition_etas(1.0, 0.0);
    CHECK(d.weight_first == doctest::Approx(1.0));
    CHECK(d.weight_second == doctest::Approx(0.0));
  }
  SUBCASE("outside the square the components stop being PSD") {
    SeparableDecomposition d = make_sep_decomposition_etas(0.7, 0.7);
    CHECK_FALSE(is_psd(d.component_first.op, 1e-9));
    CHECK_FALSE(is_psd(d.component_second.op, 1e-9));
  }
  CHECK_THROWS_AS((void)make_sep_decomposition_etas(0.0, 0.0), std::invalid_argument);
}

TEST_CASE("switch process construction") {
  ProcessMatrix sw = make_switch();
  CHECK(sw.op.trace() == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(is_valid_process(sw.op, sw.scenario, {}, true).valid);
  CHECK((swap_parties(sw.op) - sw.op).frobenius_norm() < 1e-12);

  ProcessMatrix minus = make_switch({1, 0}, SwitchSign::Minus);
  CHECK((minus.op - sw.op).frobenius_norm() > 0.1);
  CHECK(is_valid_process(minus.op, minus.scenario, {}, true).valid);

  for (const char* psi : {"1", "plus"}) {
    ProcessMatrix w = make_switch(parse_psi(psi), SwitchSign::Plus);
    CHECK(is_valid_process(w.op, w.scenario, {}, true).valid);
  }
}

TEST_CASE("noise processes") {
  ProcessMatrix sw = make_switch();
  ProcessMatrix depol = make_noise(NoiseKind::Depol);
  ProcessMatrix deph = make_noise(NoiseKind::Deph);

  // Depolarised control = trace-and-replace over C_I, by definition.
  CHECK((depol.op - trace_and_replace(sw.op, {"C_I"})).frobenius_norm() < 1e-13);

  // Dephased control equals the pinch of the switch in the control basis.
  const SystemLayout& layout = sw.scenario.layout;
  Eigen::Matrix2cd k0 = Eigen::Matrix2cd::Zero(), k1 = Eigen::Matrix2cd::Zero();
  k0(0, 0) = 1.0;
  k1(1, 1) = 1.0;
  Matrix p0 = embed(layout, {"C_I"}, k0).matrix();
  Matrix p1 = embed(layout, {"C_I"}, k1).matrix();
  HermitianOperator pinched(layout,
                            p0 * sw.op.matrix() * p0 + p1 * sw.op.matrix() * p1);
  CHECK((deph.op - pinched).frobenius_norm() < 1e-13);

  for (const auto& n : {depol, deph}) {
    CHECK(is_valid_process(n.op, n.scenario, {}, true).valid);
    CHECK((swap_parties(n.op) - n.op).frobenius_norm() < 1e-12);
  }
}

TEST_CASE("tabulated switch witness") {
  ProcessMatrix sw = make_switch();
  Witness s = make_s_switch();
  CHECK(hs_inner(s.op, sw.op) == doctest::Approx(-1.576).epsilon(0.01 / 1.576));
  CHECK(hs_inner(s.op, white_noise(sw.scenario).op) == doctest::Approx(1.0).epsilon(0.01));
  CHECK((swap_parties(s.op) - s.op).frobenius_norm() < 1e-12);
  // Certificate checks at the table tolerance (coefficients carry 4 decimals).
  WitnessVerification v = verify_witness(s, 5e-3);
  CHECK(v.valid);
}

TEST_CASE("witness family over the visibility parameter") {
  ProcessMatrix sw = make_switch();
  ProcessMatrix depol = make_noise(NoiseKind::Depol);
  ProcessMatrix deph = make_noise(NoiseKind::Deph);
  for (double v : {0.03, 0.2, 0.4, 0.6, 0.8, 1.0}) {
    Witness s = make_s_family(v);
    CHECK(hs_inner(s.op, mixture(sw, depol, v).op) ==
          doctest::Approx(-(3.0 - v) * v * v / 2.0).epsilon(1e-12));
    CHECK(hs_inner(s.op, mixture(sw, deph, v).op) == doctest::Approx(-v * v).epsilon(1e-12));
  }
  CHECK(hs_inner(make_s_family(1.0).op, sw.op) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("witness family matches its projector-product form") {
  // Independent construction: S(v) as a product of input projectors times an
  // output/control block, assembled directly from embedded factors.
  const SystemLayout& layout = tripartite_qubit_layout();
  auto pauli2 = [](char c) {
    Eigen::Matrix2cd m;
    switch (c) {
      case '1': return Eigen::Matrix2cd(Eigen::Matrix2cd::Identity());
      case 'X': m << 0, 1, 1, 0; return m;
      case 'Y': m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0); return m;
      default: m << 1, 0, 0, -1; return m;
    }
  };
  auto term = [&](char ao, char bo, char ci) {
    return embed(layout, {"A_O"}, pauli2(ao)).matrix() *
           embed(layout, {"B_O"}, pauli2(bo)).matrix() *
           embed(layout, {"C_I"}, pauli2(ci)).matrix();
  };
  Eigen::Matrix2cd proj0 = Eigen::Matrix2cd::Zero();
  proj0(0, 0) = 1.0;
  const Matrix p_ai = embed(layout, {"A_I"}, proj0).matrix();
  const Matrix p_bi = embed(layout, {"B_I"}, proj0).matrix();
  const Matrix z_ai = embed(layout, {"A_I"}, pauli2('Z')).matrix();
  const Matrix z_bi = embed(layout, {"B_I"}, pauli2('Z')).matrix();
  const Matrix id = Matrix::Identity(32, 32);

  for (double v : {0.2, 0.8}) {
    Matrix inner = id + (v * v / 4.0) * (term('Z', '1', 'Z') - term('1', 'Z', 'Z')) -
                   (v / 2.0) * (term('X', 'X', 'X') + term('Y', 'Y', 'X')) -
                   (v / 2.0) * (term('X', 'Y', 'Y') - term('Y', 'X', 'Y'));
    Matrix explicit_form =
        p_ai * p_bi * inner -
        0.5 * (1.0 - v * v / 4.0) *
            (p_ai * z_bi * term('Z', '1', '1') + z_ai * p_bi * term('1', 'Z', '1'));
    HermitianOperator oracle(layout, explicit_form);
    CHECK((make_s_family(v).op - oracle).frobenius_norm() < 1e-12);
  }
}

TEST_CASE("tabulated unitary-restricted witness") {
  ProcessMatrix sw = make_switch();
  Witness s = make_s_tilde();
  CHECK(hs_inner(s.op, sw.op) == doctest::Approx(-0.5058).epsilon(0.01 / 0.5058));
  CHECK(hs_inner(s.op, white_noise(sw.scenario).op) == doctest::Approx(1.0).epsilon(0.01));
  CHECK(hs_inner(s.op, make_noise(NoiseKind::Depol).op) == doctest::Approx(1.0).epsilon(0.01));
  CHECK(hs_inner(s.op, make_noise(NoiseKind::Deph).op) == doctest::Approx(1.0).epsilon(0.01));
  for (const auto& c :
       marginal_residuals(s.op, unitary_restriction_constraints(sw.scenario), 5e-3))
    CHECK(c.ok);
  CHECK(verify_witness(s, 5e-3).valid);
}

TEST_CASE("CJ matrices of unitaries") {
  // Identity channel: the (real, symmetric) projector onto the maximally
  // entangled pair.
  UnitaryCJ id = cj_of_unitary(Eigen::Matrix2cd::Identity());
  Matrix expect = Matrix::Zero(4, 4);
  for (int i : {0, 3})
    for (int j : {0, 3}) expect(i, j) = 1.0;
  CHECK((id.cj - expect).norm() < 1e-14);

  std::mt19937 rng(61);
  auto check_marginals = [](const Eigen::MatrixXcd& u) {
    UnitaryCJ m = cj_of_unitary(u);
    SystemLayout pair({{"X_I", 2, Party::Alice}, {"X_O", 2, Party::Alice}});
    HermitianOperator op = m.as_operator(pair);
    HermitianOperator full = trace_and_replace(op, {"X_I", "X_O"});
    CHECK((trace_and_replace(op, {"X_O"}) - full).frobenius_norm() < 1e-12);
    CHECK((trace_and_replace(op, {"X_I"}) - full).frobenius_norm() < 1e-12);
    CHECK(op.trace() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(min_eigenvalue(op) > -1e-12);
  };
  Eigen::Matrix2cd h;
  h << 1, 1, 1, -1;
  h /= std::numbers::sqrt2;
  Eigen::Matrix2cd p;
  p << 1, 0, 0, Complex(0, 1);
  check_marginals(h);
  check_marginals(p);
  for (int rep = 0; rep < 10; ++rep) check_marginals(causalwit::testing::random_unitary(2, rng));

  CHECK_THROWS_AS((void)cj_of_unitary(Eigen::Matrix2cd::Zero()), std::invalid_argument);
}

TEST_CASE("pauli pairs decompose over unitary CJ mixtures") {
  SystemLayout pair({{"X_I", 2, Party::Alice}, {"X_O", 2, Party::Alice}});
  const char symbols[] = {'1', 'X', 'Y', 'Z'};
  int supported = 0;
  for (char a : symbols)
    for (char b : symbols) {
      const bool ok = (a == '1') == (b == '1');
      if (!ok) {
        CHECK_THROWS_AS((void)pauli_pair_to_unitary_mix(a, b), std::invalid_argument);
        continue;
      }
      ++supported;
      auto mix = pauli_pair_to_unitary_mix(a, b);
      HermitianOperator acc = HermitianOperator::zero(pair);
      for (const auto& t : mix) acc = acc + cj_of_unitary(t.unitary).as_operator(pair) * t.coeff;
      HermitianOperator target = pauli_string_matrix(pair, std::string{a, b});
      CHECK((acc - target).frobenius_norm() < 1e-12);
    }
  CHECK(supported == 10);
}

TEST_CASE("catalog registry") {
  for (const auto& name : catalog_names()) {
    CatalogParams p;
    p.v = 0.5;
    CHECK_NOTHROW((void)catalog_make(name, p));
  }
  CHECK_THROWS_AS((void)catalog_make("nonsense", {}), std::invalid_argument);

  // Every catalog process passes its validator.
  for (const auto& [name, w] : catalog_processes()) {
    INFO("process ", name);
    CHECK(is_valid_process(w.op, w.scenario, {1e-9, 1e-7, 1e-9}, true).valid);
  }
}

TEST_CASE("catalog-wide witness sign consistency") {
  // Every catalog witness is nonnegative on every causally separable catalog
  // process (table rounding allows a small negative slack).
  std::vector<Witness> witnesses{make_s_etas(1, 1), make_s_switch(), make_s_family(0.5),
                                 make_s_tilde()};
  std::vector<ProcessMatrix> separable{white_noise(Scenario::tripartite()),
                                       make_noise(NoiseKind::Depol), make_noise(NoiseKind::Deph)};
  for (const auto& s : witnesses) {
    if (s.scenario.kind != ScenarioKind::TripartiteTrivialCO) continue;
    for (const auto& w : separable) CHECK(hs_inner(s.op, w.op) > -5e-3);
  }
  CHECK(hs_inner(make_s_etas(1, 1).op, make_w_etas(0.5, 0.4).op) > -5e-3);
  CHECK(hs_inner(make_s_etas(1, 1).op, white_noise(Scenario::bipartite()).op) > -5e-3);
}

TEST_CASE("tabulated operators are exchange symmetric") {
  for (const auto& s : {make_s_switch(), make_s_tilde(), make_s_family(0.35)})
    CHECK((swap_parties(s.op) - s.op).frobenius_norm() < 1e-12);
}
