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
#include "causalwit/pauli.hpp"
#include "test_util.hpp"

using namespace causalwit;
using causalwit::testing::random_hermitian;

TEST_CASE("pauli string matrices: identity and single-qubit cases") {
  SystemLayout two({{"a", 2, Party::Alice}, {"b", 2, Party::Bob}});
  CHECK((pauli_string_matrix(two, "11").matrix() - Matrix::Identity(4, 4)).norm() ==
        doctest::Approx(0.0));

  SystemLayout one({{"a", 2, Party::Alice}});
  Matrix z = pauli_string_matrix(one, "Z").matrix();
  CHECK(z(0, 0) == Complex(1, 0));
  CHECK(z(1, 1) == Complex(-1, 0));
  CHECK(std::abs(z(0, 1)) == 0.0);
}

TEST_CASE("pauli string matrices: hand-computed X(x)Z") {
  SystemLayout two({{"a", 2, Party::Alice}, {"b", 2, Party::Bob}});
  Matrix m = pauli_string_matrix(two, "XZ").matrix();
  Matrix expect = Matrix::Zero(4, 4);
  expect(0, 2) = 1;
  expect(1, 3) = -1;
  expect(2, 0) = 1;
  expect(3, 1) = -1;
  CHECK((m - expect).norm() == doctest::Approx(0.0));
}

TEST_CASE("pauli expansion round trip on random Hermitians") {
  std::mt19937 rng(7);
  for (const int n : {4, 5}) {
    std::vector<Subsystem> systems;
    for (int i = 0; i < n; ++i) systems.push_back({"q" + std::to_string(i), 2, Party::Alice});
    SystemLayout layout(systems);
    for (int rep = 0; rep < 3; ++rep) {
      HermitianOperator h = random_hermitian(layout, rng);
      HermitianOperator back = from_pauli(to_pauli(h));
      CHECK((h - back).frobenius_norm() < 1e-12 * std::max(1.0, h.frobenius_norm()));
    }
  }
}

TEST_CASE("pauli expansion of the eta family matches its construction") {
  ProcessMatrix w = make_w_etas(0.3, -0.7);
  PauliExpansion e = to_pauli(w.op, 1e-14);
  CHECK(e.coeff("1111") == doctest::Approx(0.25));
  CHECK(e.coeff("1ZZ1") == doctest::Approx(0.3 / 4));
  CHECK(e.coeff("Z1XZ") == doctest::Approx(-0.7 / 4));
  CHECK(e.terms.size() == 3);
}

TEST_CASE("pauli strings are Hilbert-Schmidt orthogonal") {
  SystemLayout layout = bipartite_qubit_layout();
  std::mt19937 rng(3);
  const auto strings = all_pauli_strings(4);
  std::uniform_int_distribution<size_t> pick(0, strings.size() - 1);
  for (int rep = 0; rep < 50; ++rep) {
    const auto& a = strings[pick(rng)];
    const auto& b = strings[pick(rng)];
    const double inner =
        hs_inner(pauli_string_matrix(layout, a), pauli_string_matrix(layout, b));
    CHECK(inner == doctest::Approx(a == b ? 16.0 : 0.0).epsilon(1e-12));
  }
}

TEST_CASE("partial trace: product factorisation and trace preservation") {
  std::mt19937 rng(11);
  SystemLayout la({{"a", 2, Party::Alice}});
  SystemLayout lb({{"b", 2, Party::Bob}, {"c", 2, Party::Bob}});
  HermitianOperator a = random_hermitian(la, rng);
  HermitianOperator b = random_hermitian(lb, rng);
  HermitianOperator ab = tensor(a, b);

  HermitianOperator reduced = partial_trace(ab, {"a"});
  CHECK((reduced - b * a.trace()).frobenius_norm() < 1e-12);

  HermitianOperator h = random_hermitian(ab.layout(), rng);
  for (const auto& over : std::vector<std::set<std::string>>{{"a"}, {"b", "c"}, {"a", "c"}}) {
    CHECK(partial_trace(h, over).trace() == doctest::Approx(h.trace()).epsilon(1e-12));
  }
  CHECK_THROWS_AS((void)partial_trace(h, {"nope"}), std::invalid_argument);
}

TEST_CASE("partial trace undoes tensor embedding") {
  std::mt19937 rng(12);
  SystemLayout layout = bipartite_qubit_layout();
  HermitianOperator h = random_hermitian(SystemLayout({{"B_I", 2, Party::Bob}}), rng);
  HermitianOperator embedded = embed(layout, {"B_I"}, h.matrix());
  HermitianOperator back = partial_trace(embedded, {"A_I", "A_O", "B_O"});
  CHECK((back - h * 8.0).frobenius_norm() < 1e-12);  // identity factors carry their trace
}

TEST_CASE("trace-and-replace basics") {
  std::mt19937 rng(13);
  SystemLayout layout = bipartite_qubit_layout();

  HermitianOperator id = HermitianOperator::identity(layout);
  CHECK((trace_and_replace(id, {"A_O"}) - id).frobenius_norm() < 1e-12);

  HermitianOperator h = random_hermitian(layout, rng);
  HermitianOperator once = trace_and_replace(h, {"A_O", "B_I"});
  HermitianOperator twice = trace_and_replace(once, {"A_O", "B_I"});
  CHECK((once - twice).frobenius_norm() < 1e-12);
  CHECK(once.trace() == doctest::Approx(h.trace()).epsilon(1e-12));
}

TEST_CASE("trace-and-replace keeps or kills Pauli strings") {
  SystemLayout layout = bipartite_qubit_layout();
  HermitianOperator zxz = pauli_string_matrix(layout, "Z1XZ");
  CHECK(trace_and_replace(zxz, {"B_O"}).frobenius_norm() < 1e-12);
  HermitianOperator kept = pauli_string_matrix(layout, "1ZZ1");
  CHECK((trace_and_replace(kept, {"B_O"}) - kept).frobenius_norm() < 1e-12);
}

TEST_CASE("trace-and-replace is linear, self-adjoint and positive") {
  std::mt19937 rng(17);
  SystemLayout layout = bipartite_qubit_layout();
  const std::set<std::string> x{"A_O", "B_O"};
  for (int rep = 0; rep < 25; ++rep) {
    HermitianOperator a = random_hermitian(layout, rng);
    HermitianOperator b = random_hermitian(layout, rng);
    // linearity
    CHECK((trace_and_replace(a + b * 0.7, x) -
           (trace_and_replace(a, x) + trace_and_replace(b, x) * 0.7))
              .frobenius_norm() < 1e-12);
    // self-adjointness w.r.t. the HS inner product
    CHECK(hs_inner(trace_and_replace(a, x), b) ==
          doctest::Approx(hs_inner(a, trace_and_replace(b, x))).epsilon(1e-12));
  }
  // positivity
  for (int rep = 0; rep < 10; ++rep) {
    Matrix g = causalwit::testing::random_complex(16, 16, rng);
    HermitianOperator psd(layout, g * g.adjoint());
    CHECK(min_eigenvalue(trace_and_replace(psd, x)) > -1e-10);
  }
}

TEST_CASE("trace-replace expressions compose by label union") {
  std::mt19937 rng(19);
  SystemLayout layout = bipartite_qubit_layout();
  HermitianOperator h = random_hermitian(layout, rng);
  TraceReplaceExpr prod =
      TraceReplaceExpr::replace({"A_O"}) * TraceReplaceExpr::replace({"B_O"});
  CHECK((prod.apply(h) - trace_and_replace(h, {"A_O", "B_O"})).frobenius_norm() < 1e-12);
}

TEST_CASE("min eigenvalue and PSD checks") {
  SystemLayout one({{"a", 2, Party::Alice}});
  CHECK(min_eigenvalue(HermitianOperator::identity(one)) == doctest::Approx(1.0));
  CHECK(min_eigenvalue(pauli_string_matrix(one, "Z")) == doctest::Approx(-1.0));

  // W(eta1, eta2) is PSD exactly on the unit disk.
  CHECK(is_psd(make_w_etas(0.6, 0.6).op, 1e-9));
  CHECK_FALSE(is_psd(make_w_etas(0.8, 0.8).op, 1e-9));
}

TEST_CASE("hs_inner basics") {
  SystemLayout layout = bipartite_qubit_layout();
  CHECK(hs_inner(HermitianOperator::identity(layout), HermitianOperator::identity(layout)) ==
        doctest::Approx(16.0));
  // The sign-matched witness value 1 - |eta1| - |eta2|.
  CHECK(hs_inner(make_s_etas(0.9, 0.9).op, make_w_etas(0.9, 0.9).op) ==
        doctest::Approx(1.0 - 0.9 - 0.9).epsilon(1e-12));
  CHECK_THROWS_AS((void)hs_inner(HermitianOperator::identity(layout),
                                 HermitianOperator::identity(tripartite_qubit_layout())),
                  std::invalid_argument);
}

TEST_CASE("layout and input guards") {
  SystemLayout layout = bipartite_qubit_layout();
  CHECK_THROWS_AS((void)pauli_string_matrix(layout, "XX"), std::invalid_argument);
  CHECK_THROWS_AS(
      (void)pauli_string_matrix(SystemLayout({{"a", 3, Party::Alice}}), "X"),
      std::invalid_argument);
  CHECK_THROWS_AS(SystemLayout({{"a", 2, Party::Alice}, {"a", 2, Party::Bob}}),
                  std::invalid_argument);
  Matrix not_herm = Matrix::Zero(16, 16);
  not_herm(0, 1) = 1.0;
  CHECK_THROWS_AS(HermitianOperator(layout, not_herm), std::invalid_argument);
}
