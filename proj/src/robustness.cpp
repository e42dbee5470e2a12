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

#include "causalwit/robustness.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

namespace causalwit {

namespace {

struct StringClasses {
  Scenario scenario;
  CausalOrder o1, o2;
  std::vector<std::string> all;
  std::vector<bool> in_v, in_1, in_2;

  explicit StringClasses(const Scenario& s) : scenario(s) {
    const bool bi = s.kind == ScenarioKind::Bipartite;
    o1 = bi ? CausalOrder::AB : CausalOrder::ABC;
    o2 = bi ? CausalOrder::BA : CausalOrder::BAC;
    all = all_pauli_strings(s.layout.size());
    in_v.reserve(all.size());
    in_1.reserve(all.size());
    in_2.reserve(all.size());
    for (const auto& p : all) {
      in_v.push_back(validity_keeps(s, p));
      in_1.push_back(order_keeps(o1, p));
      in_2.push_back(order_keeps(o2, p));
    }
  }
};

double coeff_of(const PauliExpansion& e, const std::string& s) { return e.coeff(s); }

/// Frobenius norm of the component of `e` outside the validity subspace.
double off_subspace_norm(const StringClasses& cl, const PauliExpansion& e) {
  double sq = 0.0;
  for (size_t i = 0; i < cl.all.size(); ++i) {
    if (cl.in_v[i]) continue;
    const double c = coeff_of(e, cl.all[i]);
    sq += c * c;
  }
  return std::sqrt(sq * cl.scenario.layout.total_dim());
}

Matrix pauli_matrix(const SystemLayout& layout, const std::string& s) {
  return pauli_string_matrix(layout, s).matrix();
}

HermitianOperator assemble(const SystemLayout& layout, const std::map<std::string, double>& terms) {
  return operator_from_pauli_terms(layout, terms);
}

}  // namespace

SolveDiagnostics diagnostics_of(const SolveResult& r) {
  return {r.status, r.iterations, r.gap, r.primal_residual, r.dual_residual};
}

ProcessMatrix white_noise(const Scenario& s) {
  return {s, HermitianOperator::identity(s.layout, 1.0 / s.d_I()), true};
}

ProcessMatrix mixture(const ProcessMatrix& a, const ProcessMatrix& b, double v) {
  if (a.scenario != b.scenario) throw std::invalid_argument("mixture across scenarios");
  return {a.scenario, a.op * v + b.op * (1.0 - v), a.normalized && b.normalized};
}

WitnessRestriction WitnessRestriction::unitary() {
  WitnessRestriction r;
  r.unitary_ab = true;
  return r;
}

WitnessRestriction WitnessRestriction::charlie_x() {
  WitnessRestriction r;
  r.unitary_ab = true;
  Eigen::Matrix2cd one = Eigen::Matrix2cd::Identity();
  Eigen::Matrix2cd x;
  x << 0, 1, 1, 0;
  r.charlie_span = std::vector<Eigen::Matrix2cd>{one, x};
  return r;
}

std::vector<MarginalConstraint> unitary_restriction_constraints(const Scenario& s) {
  (void)s;
  auto t = [](std::set<std::string> l) { return TraceReplaceExpr::replace(std::move(l)); };
  std::vector<MarginalConstraint> out;
  out.push_back({"A_I=A_O", t({"A_I"}), t({"A_O"})});
  out.push_back({"A_O=A_IA_O", t({"A_O"}), t({"A_I", "A_O"})});
  out.push_back({"A_I=A_IA_O", t({"A_I"}), t({"A_I", "A_O"})});
  out.push_back({"B_I=B_O", t({"B_I"}), t({"B_O"})});
  out.push_back({"B_O=B_IB_O", t({"B_O"}), t({"B_I", "B_O"})});
  out.push_back({"B_I=B_IB_O", t({"B_I"}), t({"B_I", "B_O"})});
  return out;
}

std::vector<ConditionCheck> marginal_residuals(const HermitianOperator& s,
                                               const std::vector<MarginalConstraint>& constraints,
                                               double tol) {
  std::vector<ConditionCheck> out;
  for (const auto& c : constraints) {
    const double res = (c.lhs.apply(s) - c.rhs.apply(s)).frobenius_norm();
    out.push_back({c.name, res, res <= tol});
  }
  return out;
}

double witness_threshold(const Witness& s, const ProcessMatrix& w, const ProcessMatrix& noise) {
  const double a = hs_inner(s.op, w.op);
  const double b = hs_inner(s.op, noise.op);
  if (b - a <= 0.0) return std::numeric_limits<double>::infinity();
  return b / (b - a);
}

// ---------------------------------------------------------------------------
// Primal program: min r with W + r N split over the two causal-order cones.
// Variables are the Pauli coefficients of the first component on the strings
// shared by both order subspaces, plus r; coefficients on strings belonging
// to a single order subspace are pinned by the split.

namespace {

struct PrimalBuild {
  ConicProgram program;
  std::vector<std::string> both_strings;
  int r_index = 0;
};

PrimalBuild build_primal(const StringClasses& cl, const PauliExpansion& w,
                         const PauliExpansion& noise) {
  const SystemLayout& layout = cl.scenario.layout;
  PrimalBuild b;

  std::map<std::string, int> var_of;
  for (size_t i = 0; i < cl.all.size(); ++i) {
    if (cl.in_1[i] && cl.in_2[i]) {
      var_of[cl.all[i]] = static_cast<int>(b.both_strings.size());
      b.both_strings.push_back(cl.all[i]);
    }
  }
  const int nb = static_cast<int>(b.both_strings.size());
  b.r_index = nb;

  ConicProgram& p = b.program;
  p.n_vars = nb + 1;
  p.objective = Eigen::VectorXd::Zero(p.n_vars);
  p.objective[b.r_index] = 1.0;

  std::map<std::string, double> const1, const2, noise1, noise2;
  for (size_t i = 0; i < cl.all.size(); ++i) {
    const std::string& s = cl.all[i];
    const double wc = coeff_of(w, s);
    const double nc = coeff_of(noise, s);
    const bool only1 = cl.in_1[i] && !cl.in_2[i];
    if (only1) {
      if (wc != 0.0) const1[s] = wc;
      if (nc != 0.0) noise1[s] = nc;
    } else if (cl.in_v[i]) {
      if (wc != 0.0) const2[s] = wc;
      if (nc != 0.0) noise2[s] = nc;
    }
  }

  ConicProgram::Block b1, b2;
  b1.constant = assemble(layout, const1).matrix();
  b2.constant = assemble(layout, const2).matrix();
  for (int j = 0; j < nb; ++j) {
    Matrix m = pauli_matrix(layout, b.both_strings[j]);
    b1.coeffs.emplace_back(j, m);
    b2.coeffs.emplace_back(j, -m);
  }
  if (!noise1.empty()) b1.coeffs.emplace_back(b.r_index, assemble(layout, noise1).matrix());
  if (!noise2.empty()) b2.coeffs.emplace_back(b.r_index, assemble(layout, noise2).matrix());
  p.blocks.push_back(std::move(b1));
  p.blocks.push_back(std::move(b2));
  return b;
}

HermitianOperator block_value(const SystemLayout& layout, const ConicProgram::Block& b,
                              const Eigen::VectorXd& x) {
  Matrix m = b.constant;
  for (const auto& [var, f] : b.coeffs) m += x[var] * f;
  return HermitianOperator(layout, m, 1e-9);
}

}  // namespace

RobustnessReport random_robustness(const ProcessMatrix& w, const std::optional<ProcessMatrix>& noise,
                                   const RobustnessOptions& opts) {
  const Scenario& sc = w.scenario;
  const ProcessMatrix n = noise.value_or(white_noise(sc));
  if (n.scenario != sc) throw std::invalid_argument("noise scenario does not match process");
  const bool custom_noise = noise.has_value() &&
                            (n.op - white_noise(sc).op).frobenius_norm() > 1e-12;

  StringClasses cl(sc);
  const PauliExpansion we = to_pauli(w.op);
  const PauliExpansion ne = to_pauli(n.op);
  if (off_subspace_norm(cl, we) > 1e-7 * (1.0 + w.op.frobenius_norm()))
    throw std::invalid_argument("process matrix is not in the validity subspace");
  if (off_subspace_norm(cl, ne) > 1e-7 * (1.0 + n.op.frobenius_norm()))
    throw std::invalid_argument("noise process is not in the validity subspace");

  RobustnessReport rep;
  rep.order_first = cl.o1;
  rep.order_second = cl.o2;

  if (custom_noise && opts.check_noise_interior) {
    RobustnessOptions sub = opts;
    sub.with_witness = false;
    sub.check_noise_interior = false;
    const RobustnessReport nr = random_robustness(n, std::nullopt, sub);
    if (nr.r_star > -1e-6)
      rep.warnings.push_back(
          "noise process lies on (or outside) the boundary of the causally separable set; the "
          "program may be degenerate - consider robustness_at_visibility");
  }

  PrimalBuild pb = build_primal(cl, we, ne);
  SolveOptions so;
  so.tol = opts.tol;
  so.max_iter = opts.max_iter;
  SolveResult pr = solve(pb.program, so);
  rep.primal = diagnostics_of(pr);
  if (pr.status != SolveStatus::Optimal)
    rep.warnings.push_back("primal robustness program ended with status " +
                           status_name(pr.status));

  rep.r_star = pr.objective_value;
  rep.random_robustness = std::max(rep.r_star, 0.0);
  rep.visibility_threshold = 1.0 / (1.0 + rep.random_robustness);
  rep.component_first = block_value(sc.layout, pb.program.blocks[0], pr.x);
  rep.component_second = block_value(sc.layout, pb.program.blocks[1], pr.x);

  if (opts.with_witness) {
    WitnessSearchResult ws = construct_witness(w, noise, WitnessRestriction::none(), opts);
    rep.witness = ws.witness;
    rep.witness_value = ws.value;
    rep.dual = ws.diag;
    rep.primal_dual_residual = std::abs(rep.r_star + ws.value);
  }
  return rep;
}

RobustnessReport robustness_at_visibility(const ProcessMatrix& target, const ProcessMatrix& noise,
                                          double v, const RobustnessOptions& opts) {
  if (v < 0.0 || v > 1.0) throw std::invalid_argument("visibility must lie in [0, 1]");
  RobustnessOptions sub = opts;
  sub.check_noise_interior = false;
  return random_robustness(mixture(target, noise, v), std::nullopt, sub);
}

// ---------------------------------------------------------------------------
// Dual program: the optimal witness.

namespace {

struct CharlieRows {
  // Orthonormal basis of the orthogonal complement of the allowed span, in
  // Pauli coordinates over {1, X, Y, Z}.
  std::vector<Eigen::Vector4d> complement;
};

CharlieRows charlie_complement(const std::vector<Eigen::Matrix2cd>& span) {
  Eigen::Matrix2cd paulis[4];
  paulis[0] = Eigen::Matrix2cd::Identity();
  paulis[1] << 0, 1, 1, 0;
  paulis[2] << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  paulis[3] << 1, 0, 0, -1;

  Eigen::MatrixXd basis(4, static_cast<int>(span.size()));
  for (int j = 0; j < static_cast<int>(span.size()); ++j) {
    const Eigen::Matrix2cd& m = span[j];
    if ((m - m.adjoint()).norm() > 1e-10)
      throw std::invalid_argument("Charlie span operators must be Hermitian");
    for (int a = 0; a < 4; ++a) basis(a, j) = (paulis[a] * m).trace().real() / 2.0;
  }
  Eigen::MatrixXd proj = Eigen::MatrixXd::Zero(4, 4);
  // Projector onto the span via a thin QR of the coordinate vectors.
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(4, static_cast<int>(span.size()));
  Eigen::MatrixXd r =
      qr.matrixQR().topRows(static_cast<int>(span.size())).triangularView<Eigen::Upper>();
  int rank = 0;
  for (int j = 0; j < r.cols() && j < r.rows(); ++j)
    if (std::abs(r(j, j)) > 1e-12) ++rank;
  q = q.leftCols(std::max(rank, 0));
  proj = q * q.transpose();

  CharlieRows rows;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd::Identity(4, 4) - proj);
  for (int j = 0; j < 4; ++j)
    if (es.eigenvalues()[j] > 0.5) rows.complement.push_back(es.eigenvectors().col(j));
  return rows;
}

bool restriction_allows(const WitnessRestriction& r, const Scenario& sc, const std::string& s) {
  if (r.unitary_ab) {
    const bool a_ok = (s[0] == '1') == (s[1] == '1');
    const bool b_ok = (s[2] == '1') == (s[3] == '1');
    if (!a_ok || !b_ok) return false;
  }
  for (const auto& c : r.custom) {
    const double l = c.lhs.eigenvalue_on(sc.layout, s);
    const double rr = c.rhs.eigenvalue_on(sc.layout, s);
    if (std::abs(l - rr) > 1e-9) return false;
  }
  return true;
}

}  // namespace

WitnessSearchResult construct_witness(const ProcessMatrix& w,
                                      const std::optional<ProcessMatrix>& noise,
                                      const WitnessRestriction& restriction,
                                      const RobustnessOptions& opts) {
  const Scenario& sc = w.scenario;
  const ProcessMatrix n = noise.value_or(white_noise(sc));
  if (n.scenario != sc) throw std::invalid_argument("noise scenario does not match process");
  if (restriction.charlie_span && sc.kind == ScenarioKind::Bipartite)
    throw std::invalid_argument("Charlie restriction requires the tripartite scenario");

  StringClasses cl(sc);
  const SystemLayout& layout = sc.layout;
  const int dim = layout.total_dim();
  const PauliExpansion we = to_pauli(w.op);
  const PauliExpansion ne = to_pauli(n.op);

  // Witness coefficient variables: strings kept by the restriction and lying
  // in the validity subspace (components outside it do not change the value
  // on any valid process, so a representative is fixed).
  std::vector<std::string> s_strings;
  std::map<std::string, int> s_var;
  for (size_t i = 0; i < cl.all.size(); ++i) {
    if (!cl.in_v[i]) continue;
    if (!restriction_allows(restriction, sc, cl.all[i])) continue;
    s_var[cl.all[i]] = static_cast<int>(s_strings.size());
    s_strings.push_back(cl.all[i]);
  }

  ConicProgram p;
  std::vector<std::pair<int, Matrix>> block1, block2;
  int next = static_cast<int>(s_strings.size());

  if (sc.kind == ScenarioKind::Bipartite) {
    // Blocks: the B_O- and A_O-marginals of the positive part, whose
    // coefficients coincide with the witness on the validity subspace and
    // are free outside it.
    for (size_t i = 0; i < cl.all.size(); ++i) {
      const std::string& s = cl.all[i];
      const bool bo_id = s[3] == '1';
      const bool ao_id = s[1] == '1';
      if (!bo_id && !ao_id) continue;
      int var = -1;
      if (cl.in_v[i]) {
        auto it = s_var.find(s);
        if (it == s_var.end()) continue;  // restricted away: coefficient 0
        var = it->second;
      } else {
        var = next++;
      }
      Matrix m = pauli_matrix(layout, s);
      if (bo_id) block1.emplace_back(var, m);
      if (ao_id) block2.emplace_back(var, m);
    }
  } else {
    for (size_t i = 0; i < cl.all.size(); ++i) {
      const std::string& s = cl.all[i];
      Matrix m;
      auto mat = [&]() {
        if (m.size() == 0) m = pauli_matrix(layout, s);
        return m;
      };
      if (cl.in_1[i]) {
        auto it = s_var.find(s);
        if (it != s_var.end()) block1.emplace_back(it->second, mat());
      } else {
        block1.emplace_back(next++, mat());
      }
      if (cl.in_2[i]) {
        auto it = s_var.find(s);
        if (it != s_var.end()) block2.emplace_back(it->second, mat());
      } else {
        block2.emplace_back(next++, mat());
      }
    }
  }

  p.n_vars = next;
  p.objective = Eigen::VectorXd::Zero(p.n_vars);
  for (size_t j = 0; j < s_strings.size(); ++j)
    p.objective[j] = dim * coeff_of(we, s_strings[j]);

  // Normalisation hs_inner(S, noise) = 1, plus any Charlie-span rows.
  std::vector<Eigen::VectorXd> rows;
  std::vector<double> rhs;
  {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(p.n_vars);
    for (size_t j = 0; j < s_strings.size(); ++j)
      row[j] = dim * coeff_of(ne, s_strings[j]);
    if (row.cwiseAbs().maxCoeff() == 0.0)
      throw std::invalid_argument("witness normalisation is infeasible for this noise");
    rows.push_back(row);
    rhs.push_back(1.0);
  }
  if (restriction.charlie_span) {
    const CharlieRows cr = charlie_complement(*restriction.charlie_span);
    const char symbols[4] = {'1', 'X', 'Y', 'Z'};
    std::set<std::string> groups;
    for (const auto& s : s_strings) groups.insert(s.substr(0, 4));
    for (const auto& g : groups) {
      for (const auto& comp : cr.complement) {
        Eigen::VectorXd row = Eigen::VectorXd::Zero(p.n_vars);
        bool any = false;
        for (int a = 0; a < 4; ++a) {
          if (comp[a] == 0.0) continue;
          auto it = s_var.find(g + symbols[a]);
          if (it != s_var.end()) {
            row[it->second] = comp[a];
            any = true;
          }
        }
        if (any) {
          rows.push_back(row);
          rhs.push_back(0.0);
        }
      }
    }
  }
  p.eq_lhs.resize(static_cast<int>(rows.size()), p.n_vars);
  p.eq_rhs.resize(static_cast<int>(rows.size()));
  for (size_t r = 0; r < rows.size(); ++r) {
    p.eq_lhs.row(static_cast<int>(r)) = rows[r];
    p.eq_rhs[static_cast<int>(r)] = rhs[r];
  }

  ConicProgram::Block b1, b2;
  b1.constant = Matrix::Zero(dim, dim);
  b2.constant = Matrix::Zero(dim, dim);
  b1.coeffs = std::move(block1);
  b2.coeffs = std::move(block2);
  p.blocks.push_back(std::move(b1));
  p.blocks.push_back(std::move(b2));

  SolveOptions so;
  so.tol = opts.tol;
  so.max_iter = opts.max_iter;
  SolveResult r = solve(p, so);

  WitnessSearchResult out;
  out.diag = diagnostics_of(r);

  std::map<std::string, double> sterms;
  for (size_t j = 0; j < s_strings.size(); ++j)
    if (r.x[j] != 0.0) sterms[s_strings[j]] = r.x[j];
  HermitianOperator sop = assemble(layout, sterms);

  WitnessCertificate cert;
  const HermitianOperator pos1 = block_value(layout, p.blocks[0], r.x);
  const HermitianOperator pos2 = block_value(layout, p.blocks[1], r.x);
  if (sc.kind == ScenarioKind::Bipartite) {
    // The two blocks are marginals of one positive part; reconstruct it from
    // the shared coefficient set.
    std::map<std::string, double> pterms = sterms;
    int v = static_cast<int>(s_strings.size());
    for (size_t i = 0; i < cl.all.size(); ++i) {
      const std::string& s = cl.all[i];
      const bool bo_id = s[3] == '1';
      const bool ao_id = s[1] == '1';
      if (!bo_id && !ao_id) continue;
      if (cl.in_v[i]) continue;
      pterms[s] = r.x[v++];
    }
    HermitianOperator spos = assemble(layout, pterms);
    cert.s_pos_first = spos;
    cert.s_perp_first = sop - spos;
  } else {
    cert.s_pos_first = pos1;
    cert.s_perp_first = sop - pos1;
    cert.s_pos_second = pos2;
    cert.s_perp_second = sop - pos2;
  }

  out.witness = Witness{sc, sop, cert};
  out.value = hs_inner(sop, w.op);
  return out;
}

// ---------------------------------------------------------------------------
// Witness verification.

namespace {

void check_psd(std::vector<ConditionCheck>& checks, const std::string& name,
               const HermitianOperator& h, double tol, bool& ok, double& worst) {
  const double me = min_eigenvalue(h);
  const double bound = tol * std::max(1e-300, h.operator_norm());
  const bool pass = me >= -bound;
  checks.push_back({name, std::max(0.0, -me), pass});
  ok = ok && pass;
  worst = std::max(worst, -me);
}

void check_residual(std::vector<ConditionCheck>& checks, const std::string& name, double res,
                    double tol, bool& ok, double& worst) {
  const bool pass = res <= tol;
  checks.push_back({name, res, pass});
  ok = ok && pass;
  worst = std::max(worst, res);
}

}  // namespace

WitnessVerification verify_witness(const Witness& s, double tol, const RobustnessOptions& opts) {
  const Scenario& sc = s.scenario;
  WitnessVerification v;
  v.valid = true;

  if (s.certificate) {
    const WitnessCertificate& c = *s.certificate;
    if (sc.kind == ScenarioKind::Bipartite) {
      check_residual(v.checks, "reassembly",
                     (s.op - c.s_pos_first - c.s_perp_first).frobenius_norm(), tol, v.valid,
                     v.worst_residual);
      check_residual(v.checks, "L_V(s_perp)=0",
                     project_valid(c.s_perp_first, sc).frobenius_norm(), tol, v.valid,
                     v.worst_residual);
      check_psd(v.checks, "[B_O]-marginal of s_pos",
                trace_and_replace(c.s_pos_first, {"B_O"}), tol, v.valid, v.worst_residual);
      check_psd(v.checks, "[A_O]-marginal of s_pos",
                trace_and_replace(c.s_pos_first, {"A_O"}), tol, v.valid, v.worst_residual);
    } else {
      if (!c.s_pos_second || !c.s_perp_second) {
        v.valid = false;
        v.checks.push_back({"certificate completeness", 1.0, false});
        return v;
      }
      check_residual(v.checks, "reassembly (first)",
                     (s.op - c.s_pos_first - c.s_perp_first).frobenius_norm(), tol, v.valid,
                     v.worst_residual);
      check_residual(v.checks, "reassembly (second)",
                     (s.op - *c.s_pos_second - *c.s_perp_second).frobenius_norm(), tol, v.valid,
                     v.worst_residual);
      check_residual(v.checks, "L_(A<B<C)(s_perp)=0",
                     project_order(c.s_perp_first, CausalOrder::ABC).frobenius_norm(), tol,
                     v.valid, v.worst_residual);
      check_residual(v.checks, "L_(B<A<C)(s_perp)=0",
                     project_order(*c.s_perp_second, CausalOrder::BAC).frobenius_norm(), tol,
                     v.valid, v.worst_residual);
      check_psd(v.checks, "s_pos (first) psd", c.s_pos_first, tol, v.valid, v.worst_residual);
      check_psd(v.checks, "s_pos (second) psd", *c.s_pos_second, tol, v.valid, v.worst_residual);
    }
    return v;
  }

  // No certificate: search for one by maximising the joint smallest
  // eigenvalue of the candidate positive parts.
  v.certificate_searched = true;
  StringClasses cl(sc);
  const SystemLayout& layout = sc.layout;
  const int dim = layout.total_dim();
  const PauliExpansion se = to_pauli(s.op);

  ConicProgram p;
  std::vector<std::pair<int, Matrix>> block1, block2;
  std::map<std::string, double> const1, const2;
  int next = 0;

  if (sc.kind == ScenarioKind::Bipartite) {
    for (size_t i = 0; i < cl.all.size(); ++i) {
      const std::string& str = cl.all[i];
      const bool bo_id = str[3] == '1';
      const bool ao_id = str[1] == '1';
      if (!bo_id && !ao_id) continue;
      if (cl.in_v[i]) {
        const double c = coeff_of(se, str);
        if (c != 0.0) {
          if (bo_id) const1[str] = c;
          if (ao_id) const2[str] = c;
        }
      } else {
        Matrix m = pauli_matrix(layout, str);
        if (bo_id) block1.emplace_back(next, m);
        if (ao_id) block2.emplace_back(next, m);
        ++next;
      }
    }
  } else {
    for (size_t i = 0; i < cl.all.size(); ++i) {
      const std::string& str = cl.all[i];
      if (cl.in_1[i]) {
        const double c = coeff_of(se, str);
        if (c != 0.0) const1[str] = c;
      } else {
        block1.emplace_back(next++, pauli_matrix(layout, str));
      }
      if (cl.in_2[i]) {
        const double c = coeff_of(se, str);
        if (c != 0.0) const2[str] = c;
      } else {
        block2.emplace_back(next++, pauli_matrix(layout, str));
      }
    }
  }

  const int t_var = next++;
  p.n_vars = next;
  p.objective = Eigen::VectorXd::Zero(p.n_vars);
  p.objective[t_var] = -1.0;  // maximise t

  ConicProgram::Block b1, b2;
  b1.constant = assemble(layout, const1).matrix();
  b2.constant = assemble(layout, const2).matrix();
  b1.coeffs = std::move(block1);
  b2.coeffs = std::move(block2);
  b1.coeffs.emplace_back(t_var, Matrix(-Matrix::Identity(dim, dim)));
  b2.coeffs.emplace_back(t_var, Matrix(-Matrix::Identity(dim, dim)));
  p.blocks.push_back(std::move(b1));
  p.blocks.push_back(std::move(b2));
  p.eq_lhs.resize(0, p.n_vars);
  p.eq_rhs.resize(0);

  SolveOptions so;
  so.tol = opts.tol;
  so.max_iter = opts.max_iter;
  SolveResult r = solve(p, so);
  const double t_star = r.x.size() > 0 ? r.x[t_var] : -1.0;

  const double bound = tol * std::max(1e-300, s.op.operator_norm());
  v.valid = r.status == SolveStatus::Optimal && t_star >= -bound;
  v.worst_residual = std::max(0.0, -t_star);
  v.checks.push_back({"max joint smallest eigenvalue", -t_star, v.valid});

  WitnessCertificate cert;
  Eigen::VectorXd xz = r.x;
  xz[t_var] = 0.0;  // the certificate itself drops the eigenvalue shift
  const HermitianOperator pos1 = block_value(layout, p.blocks[0], xz);
  const HermitianOperator pos2 = block_value(layout, p.blocks[1], xz);
  if (sc.kind == ScenarioKind::Bipartite) {
    // Reconstruct the shared positive part from validity-subspace
    // coefficients of S plus the free off-subspace coefficients.
    std::map<std::string, double> pterms;
    int vidx = 0;
    for (size_t i = 0; i < cl.all.size(); ++i) {
      const std::string& str = cl.all[i];
      const bool bo_id = str[3] == '1';
      const bool ao_id = str[1] == '1';
      if (!bo_id && !ao_id) continue;
      if (cl.in_v[i]) {
        const double c = coeff_of(se, str);
        if (c != 0.0) pterms[str] = c;
      } else {
        pterms[str] = r.x[vidx++];
      }
    }
    HermitianOperator spos = assemble(layout, pterms);
    cert.s_pos_first = spos;
    cert.s_perp_first = s.op - spos;
  } else {
    cert.s_pos_first = pos1;
    cert.s_perp_first = s.op - pos1;
    cert.s_pos_second = pos2;
    cert.s_perp_second = s.op - pos2;
  }
  v.certificate = cert;
  return v;
}

// ---------------------------------------------------------------------------
// Generalised robustness.

GeneralizedRobustnessReport generalized_robustness(const ProcessMatrix& w,
                                                   const RobustnessOptions& opts) {
  const Scenario& sc = w.scenario;
  StringClasses cl(sc);
  const SystemLayout& layout = sc.layout;
  const int dim = layout.total_dim();
  const PauliExpansion we = to_pauli(w.op);
  if (off_subspace_norm(cl, we) > 1e-7 * (1.0 + w.op.frobenius_norm()))
    throw std::invalid_argument("process matrix is not in the validity subspace");

  // Variables: Pauli coefficients of Omega on the validity subspace, plus the
  // shared-string coefficients of the first cone component.
  std::map<std::string, int> omega_var, split_var;
  std::vector<std::string> omega_strings, split_strings;
  for (size_t i = 0; i < cl.all.size(); ++i) {
    if (cl.in_v[i]) {
      omega_var[cl.all[i]] = static_cast<int>(omega_strings.size());
      omega_strings.push_back(cl.all[i]);
    }
  }
  int next = static_cast<int>(omega_strings.size());
  for (size_t i = 0; i < cl.all.size(); ++i) {
    if (cl.in_1[i] && cl.in_2[i]) {
      split_var[cl.all[i]] = next++;
      split_strings.push_back(cl.all[i]);
    }
  }

  ConicProgram p;
  p.n_vars = next;
  p.objective = Eigen::VectorXd::Zero(p.n_vars);
  p.objective[omega_var.at(std::string(layout.size(), '1'))] = double(dim) / sc.d_O();

  ConicProgram::Block omega_block, b1, b2;
  omega_block.constant = Matrix::Zero(dim, dim);
  std::map<std::string, double> const1, const2;
  for (size_t i = 0; i < cl.all.size(); ++i) {
    const std::string& s = cl.all[i];
    if (!cl.in_v[i]) continue;
    Matrix m = pauli_matrix(layout, s);
    omega_block.coeffs.emplace_back(omega_var.at(s), m);
    const double wc = coeff_of(we, s);
    const bool only1 = cl.in_1[i] && !cl.in_2[i];
    const bool both = cl.in_1[i] && cl.in_2[i];
    if (only1) {
      if (wc != 0.0) const1[s] = wc;
      b1.coeffs.emplace_back(omega_var.at(s), m);
    } else {
      if (wc != 0.0) const2[s] = wc;
      b2.coeffs.emplace_back(omega_var.at(s), m);
    }
    if (both) {
      b1.coeffs.emplace_back(split_var.at(s), m);
      b2.coeffs.emplace_back(split_var.at(s), -m);
    }
  }
  b1.constant = assemble(layout, const1).matrix();
  b2.constant = assemble(layout, const2).matrix();
  p.blocks.push_back(std::move(omega_block));
  p.blocks.push_back(std::move(b1));
  p.blocks.push_back(std::move(b2));

  SolveOptions so;
  so.tol = opts.tol;
  so.max_iter = opts.max_iter;
  SolveResult r = solve(p, so);

  GeneralizedRobustnessReport rep;
  rep.diag = diagnostics_of(r);
  rep.value = r.objective_value;
  rep.omega = block_value(layout, p.blocks[0], r.x);
  rep.component_first = block_value(layout, p.blocks[1], r.x);
  rep.component_second = block_value(layout, p.blocks[2], r.x);
  return rep;
}

}  // namespace causalwit
