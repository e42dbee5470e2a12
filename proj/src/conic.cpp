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

#include "causalwit/conic.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <stdexcept>

namespace causalwit {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using RowMajorXd = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Cplx = std::complex<double>;

std::string status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::MaxIter: return "max_iter";
  }
  throw std::logic_error("unknown status");
}

void ConicProgram::validate() const {
  if (n_vars < 0) throw std::invalid_argument("negative variable count");
  if (objective.size() != n_vars) throw std::invalid_argument("objective size mismatch");
  if (eq_lhs.rows() != eq_rhs.size()) throw std::invalid_argument("equality row mismatch");
  if (eq_lhs.rows() > 0 && eq_lhs.cols() != n_vars)
    throw std::invalid_argument("equality column mismatch");
  for (const auto& b : blocks) {
    const int d = b.side();
    if (b.constant.cols() != d) throw std::invalid_argument("block constant not square");
    if ((b.constant - b.constant.adjoint()).norm() > 1e-10 * (1.0 + b.constant.norm()))
      throw std::invalid_argument("block constant not Hermitian");
    for (const auto& [var, m] : b.coeffs) {
      if (var < 0 || var >= n_vars) throw std::invalid_argument("coefficient variable out of range");
      if (m.rows() != d || m.cols() != d)
        throw std::invalid_argument("coefficient side mismatch");
      if ((m - m.adjoint()).norm() > 1e-10 * (1.0 + m.norm()))
        throw std::invalid_argument("block coefficient not Hermitian");
    }
  }
}

namespace {

void hermitize(MatrixXcd& m) { m = 0.5 * (m + m.adjoint()).eval(); }

/// Packs a Hermitian matrix into a real vector preserving the (real)
/// Frobenius inner product: svec(A).dot(svec(B)) == Re tr[A B].
void svec_into(const MatrixXcd& a, double* out) {
  const int d = static_cast<int>(a.rows());
  static const double kSqrt2 = std::sqrt(2.0);
  int k = 0;
  for (int i = 0; i < d; ++i) out[k++] = a(i, i).real();
  for (int j = 1; j < d; ++j)
    for (int i = 0; i < j; ++i) {
      out[k++] = kSqrt2 * a(i, j).real();
      out[k++] = kSqrt2 * a(i, j).imag();
    }
}

struct BlockState {
  MatrixXcd X, Z;        // interior iterates
  MatrixXcd Fx;          // F_k(x)
  MatrixXcd R;           // Fx - X
  // Nesterov-Todd scaling data
  MatrixXcd L, Lz;       // Cholesky factors of X and Z
  MatrixXcd Rnt, RntInv; // scaling point factor and its inverse
  VectorXd sigma;        // common scaled spectrum
  MatrixXcd Rhat;        // RntInv * R * RntInv^dag
};

/// Signals that an iterate can no longer be factorised; the solve stops at
/// the best point reached (typical at degenerate optima, where an optimal
/// face touches the cone apex).
struct LostPositivity {};

MatrixXcd cholesky_or_lift(const MatrixXcd& m) {
  MatrixXcd a = m;
  double lift = 0.0;
  const double scale = std::max(1.0, a.norm());
  for (int attempt = 0; attempt < 4; ++attempt) {
    Eigen::LLT<MatrixXcd> llt(a);
    if (llt.info() == Eigen::Success) return llt.matrixL();
    lift = (lift == 0.0) ? 1e-14 * scale : lift * 100.0;
    a = m + lift * MatrixXcd::Identity(m.rows(), m.cols());
  }
  throw LostPositivity{};
}

/// Largest step alpha <= 1 with M + alpha*D staying positive definite, given
/// the Cholesky factor L of M; gamma is the fraction-to-boundary parameter.
double max_step(const MatrixXcd& L, const MatrixXcd& D, double gamma) {
  MatrixXcd a = L.triangularView<Eigen::Lower>().solve(D);
  MatrixXcd b = L.triangularView<Eigen::Lower>().solve(a.adjoint()).adjoint();
  hermitize(b);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(b, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  if (lmin >= 0.0) return 1.0;
  return std::min(1.0, -gamma / lmin);
}

struct KktSolver {
  Eigen::LLT<MatrixXd> hll;
  Eigen::LDLT<MatrixXd> hldlt;
  bool use_ldlt = false;
  MatrixXd hi_at;           // H^{-1} A^T
  Eigen::LLT<MatrixXd> schur;
  bool has_eq = false;

  VectorXd solve_h(const VectorXd& r) const {
    if (use_ldlt) return hldlt.solve(r);
    return hll.solve(r);
  }
  MatrixXd solve_h(const MatrixXd& r) const {
    if (use_ldlt) return hldlt.solve(r);
    return hll.solve(r);
  }

  void factor(MatrixXd& h, const MatrixXd& a) {
    hll.compute(h);
    if (hll.info() != Eigen::Success) {
      const double ridge = 1e-12 * (1.0 + h.diagonal().cwiseAbs().maxCoeff());
      h.diagonal().array() += ridge;
      hldlt.compute(h);
      use_ldlt = true;
    }
    has_eq = a.rows() > 0;
    if (has_eq) {
      hi_at = solve_h(MatrixXd(a.transpose()));
      MatrixXd s = a * hi_at;
      s = 0.5 * (s + s.transpose()).eval();
      schur.compute(s);
    }
  }

  // Solves [H, -A^T; A, 0] [dx; dy] = [rhs1; r_eq].
  void solve(const MatrixXd& a, const VectorXd& rhs1, const VectorXd& r_eq, VectorXd& dx,
             VectorXd& dy) const {
    if (!has_eq) {
      dx = solve_h(rhs1);
      dy.resize(0);
      return;
    }
    const VectorXd hi_rhs1 = solve_h(rhs1);
    dy = schur.solve(r_eq - a * hi_rhs1);
    dx = hi_rhs1 + hi_at * dy;
  }
};

SolveResult solve_native(const ConicProgram& p, const SolveOptions& opts) {
  const int n = p.n_vars;
  const int m = static_cast<int>(p.eq_lhs.rows());
  const int nblocks = static_cast<int>(p.blocks.size());
  const double gamma = 0.98;

  SolveResult res;
  res.x = VectorXd::Zero(n);
  res.eq_duals = VectorXd::Zero(m);

  // Constant blocks are a pure feasibility condition.
  for (const auto& b : p.blocks) {
    if (!b.coeffs.empty()) continue;
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(b.constant, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-12 * (1.0 + b.constant.norm())) {
      res.status = SolveStatus::Infeasible;
      return res;
    }
  }
  if (n == 0) {
    res.status = SolveStatus::Optimal;
    res.dual_blocks.assign(nblocks, MatrixXcd());
    for (int k = 0; k < nblocks; ++k)
      res.dual_blocks[k] = MatrixXcd::Zero(p.blocks[k].side(), p.blocks[k].side());
    return res;
  }

  int n_total = 0;
  for (const auto& b : p.blocks) n_total += b.side();

  // Initial point.
  double init = opts.init_scale;
  if (init <= 0.0) {
    double s = 10.0;
    for (const auto& b : p.blocks) {
      s = std::max(s, b.constant.norm());
      for (const auto& [var, f] : b.coeffs) s = std::max(s, f.norm());
    }
    init = s;
  }

  std::vector<BlockState> bs(nblocks);
  for (int k = 0; k < nblocks; ++k) {
    const int d = p.blocks[k].side();
    bs[k].X = init * MatrixXcd::Identity(d, d);
    bs[k].Z = init * MatrixXcd::Identity(d, d);
  }
  VectorXd x = VectorXd::Zero(n);
  VectorXd y = VectorXd::Zero(m);

  const double c_scale = 1.0 + p.objective.cwiseAbs().maxCoeff();
  const double b_scale = 1.0 + (m > 0 ? p.eq_rhs.cwiseAbs().maxCoeff() : 0.0);

  // Per-block svec row matrices (variables present in the block only).
  std::vector<std::vector<int>> vars_in(nblocks);
  for (int k = 0; k < nblocks; ++k)
    for (const auto& [var, f] : p.blocks[k].coeffs) vars_in[k].push_back(var);

  MatrixXd h(n, n);
  KktSolver kkt;
  VectorXd r_dual(n), r_eq(m);
  VectorXd dx, dy, dx_c, dy_c;

  auto block_value = [&](int k, const VectorXd& xv) {
    MatrixXcd f = p.blocks[k].constant;
    for (const auto& [var, fm] : p.blocks[k].coeffs) f += xv[var] * fm;
    return f;
  };

  int iter = 0;
  for (iter = 0; iter < opts.max_iter; ++iter) {
    // Residuals.
    double pres = 0.0;
    for (int k = 0; k < nblocks; ++k) {
      bs[k].Fx = block_value(k, x);
      bs[k].R = bs[k].Fx - bs[k].X;
      pres = std::max(pres, bs[k].R.norm() / (1.0 + p.blocks[k].constant.norm()));
    }
    if (m > 0) {
      r_eq = p.eq_rhs - p.eq_lhs * x;
      pres = std::max(pres, r_eq.cwiseAbs().maxCoeff() / b_scale);
    }
    r_dual = p.objective;
    if (m > 0) r_dual -= p.eq_lhs.transpose() * y;
    for (int k = 0; k < nblocks; ++k)
      for (const auto& [var, f] : p.blocks[k].coeffs)
        r_dual[var] -= (f.array() * bs[k].Z.transpose().array()).sum().real();
    const double dres = r_dual.cwiseAbs().maxCoeff() / c_scale;

    double mu = 0.0;
    for (int k = 0; k < nblocks; ++k)
      mu += (bs[k].X.array() * bs[k].Z.transpose().array()).sum().real();
    mu /= n_total;

    const double p_obj = p.objective.dot(x);
    double d_obj = (m > 0) ? p.eq_rhs.dot(y) : 0.0;
    for (int k = 0; k < nblocks; ++k)
      d_obj -= (p.blocks[k].constant.array() * bs[k].Z.transpose().array()).sum().real();
    const double relgap = std::abs(p_obj - d_obj) / (1.0 + std::abs(p_obj) + std::abs(d_obj));

    if (opts.record_trace) res.trace.push_back({p_obj, d_obj, mu, pres, dres});
    res.objective_value = p_obj;
    res.dual_objective = d_obj;
    res.gap = relgap;
    res.primal_residual = pres;
    res.dual_residual = dres;

    if (pres <= opts.tol && dres <= opts.tol && relgap <= opts.tol) {
      res.status = SolveStatus::Optimal;
      break;
    }
    if (d_obj > 1e9 && dres <= 1e-6) {
      res.status = SolveStatus::Infeasible;
      break;
    }
    if (p_obj < -1e9 && pres <= 1e-6) {
      res.status = SolveStatus::Unbounded;
      break;
    }

    try {
    // Nesterov-Todd scaling per block. The factor Rnt maps both X and Z to
    // the same diagonal spectrum sigma: Rnt^-1 X Rnt^-dag = Rnt^dag Z Rnt = diag(sigma).
    for (int k = 0; k < nblocks; ++k) {
      auto& s = bs[k];
      s.L = cholesky_or_lift(s.X);
      s.Lz = cholesky_or_lift(s.Z);
      Eigen::JacobiSVD<MatrixXcd> svd(s.Lz.adjoint() * s.L,
                                      Eigen::ComputeThinU | Eigen::ComputeThinV);
      s.sigma = svd.singularValues();
      const VectorXd inv_sqrt = s.sigma.array().sqrt().inverse().matrix();
      s.Rnt = s.L * svd.matrixV() * inv_sqrt.asDiagonal();
      s.RntInv = s.sigma.array().sqrt().matrix().asDiagonal() * svd.matrixV().adjoint() *
                 s.L.triangularView<Eigen::Lower>().solve(
                     MatrixXcd::Identity(s.L.rows(), s.L.cols()));
      s.Rhat = s.RntInv * s.R * s.RntInv.adjoint();
      hermitize(s.Rhat);
    }

    // Schur complement H_ij = sum_k Re tr[Fhat_i Fhat_j] via svec rows.
    h.setZero();
    std::vector<RowMajorXd> mrows(nblocks);
    for (int k = 0; k < nblocks; ++k) {
      const int d = p.blocks[k].side();
      const int nk = static_cast<int>(vars_in[k].size());
      mrows[k].resize(nk, d * d);
      MatrixXcd fhat(d, d);
      for (int j = 0; j < nk; ++j) {
        const auto& f = p.blocks[k].coeffs[j].second;
        fhat.noalias() = bs[k].RntInv * f * bs[k].RntInv.adjoint();
        svec_into(fhat, mrows[k].row(j).data());
      }
      MatrixXd hk = MatrixXd::Zero(nk, nk);
      hk.selfadjointView<Eigen::Lower>().rankUpdate(mrows[k]);
      for (int a = 0; a < nk; ++a)
        for (int b = 0; b <= a; ++b) {
          const double v = hk(a, b);
          h(vars_in[k][a], vars_in[k][b]) += v;
          if (a != b) h(vars_in[k][b], vars_in[k][a]) += v;
        }
    }
    kkt.factor(h, p.eq_lhs);

    // g_i = sum_k <Fhat_i, That_k - Rhat_k> for a scaled-space target That.
    auto assemble_g = [&](const std::vector<MatrixXcd>& that) {
      VectorXd g = VectorXd::Zero(n);
      VectorXd packed;
      for (int k = 0; k < nblocks; ++k) {
        const int d = p.blocks[k].side();
        packed.resize(d * d);
        MatrixXcd target = that[k] - bs[k].Rhat;
        svec_into(target, packed.data());
        VectorXd gk = mrows[k] * packed;
        for (int j = 0; j < static_cast<int>(vars_in[k].size()); ++j) g[vars_in[k][j]] += gk[j];
      }
      return g;
    };

    auto compute_directions = [&](const std::vector<MatrixXcd>& that, VectorXd& dxo, VectorXd& dyo,
                                  std::vector<MatrixXcd>& dX, std::vector<MatrixXcd>& dZ,
                                  std::vector<MatrixXcd>& dXhat, std::vector<MatrixXcd>& dZhat) {
      const VectorXd g = assemble_g(that);
      kkt.solve(p.eq_lhs, g - r_dual, r_eq, dxo, dyo);
      dX.resize(nblocks);
      dZ.resize(nblocks);
      dXhat.resize(nblocks);
      dZhat.resize(nblocks);
      for (int k = 0; k < nblocks; ++k) {
        MatrixXcd delta = bs[k].R;
        for (const auto& [var, f] : p.blocks[k].coeffs) delta += dxo[var] * f;
        dX[k] = delta;
        dXhat[k].noalias() = bs[k].RntInv * delta * bs[k].RntInv.adjoint();
        hermitize(dXhat[k]);
        dZhat[k] = that[k] - dXhat[k];
        hermitize(dZhat[k]);
        dZ[k].noalias() = bs[k].RntInv.adjoint() * dZhat[k] * bs[k].RntInv;
        hermitize(dZ[k]);
      }
    };

    // Predictor (affine scaling) direction.
    std::vector<MatrixXcd> that(nblocks);
    for (int k = 0; k < nblocks; ++k) {
      that[k] = MatrixXcd::Zero(p.blocks[k].side(), p.blocks[k].side());
      that[k].diagonal() = (-bs[k].sigma.array()).matrix().cast<Cplx>();
    }
    std::vector<MatrixXcd> dX, dZ, dXh, dZh;
    compute_directions(that, dx, dy, dX, dZ, dXh, dZh);

    if (std::getenv("CAUSALWIT_SOLVER_DEBUG")) {
      // Residuals of the linearised KKT equations for the affine direction.
      double dual_lin = 0.0, nt_res = 0.0;
      for (int i = 0; i < n; ++i) {
        double lhs = p.objective[i];
        if (m > 0) lhs -= p.eq_lhs.col(i).dot(y + dy);
        for (int k = 0; k < nblocks; ++k)
          for (const auto& [var, f] : p.blocks[k].coeffs)
            if (var == i) lhs -= (f.array() * (bs[k].Z + dZ[k]).transpose().array()).sum().real();
        dual_lin = std::max(dual_lin, std::abs(lhs));
      }
      for (int k = 0; k < nblocks; ++k) {
        MatrixXcd w_nt = bs[k].Rnt * bs[k].Rnt.adjoint();
        MatrixXcd v = bs[k].Rnt * that[k] * bs[k].Rnt.adjoint();
        nt_res = std::max(nt_res, (dX[k] + w_nt * dZ[k] * w_nt - v).norm());
      }
      std::fprintf(stderr, "  [dbg] it=%d dual_lin=%.3e nt_res=%.3e\n", iter, dual_lin, nt_res);
    }

    double ap = 1.0, ad = 1.0;
    for (int k = 0; k < nblocks; ++k) {
      ap = std::min(ap, max_step(bs[k].L, dX[k], gamma));
      ad = std::min(ad, max_step(bs[k].Lz, dZ[k], gamma));
    }
    double mu_aff = 0.0;
    for (int k = 0; k < nblocks; ++k) {
      mu_aff += ((bs[k].X + ap * dX[k]).array() * (bs[k].Z + ad * dZ[k]).transpose().array())
                    .sum()
                    .real();
    }
    mu_aff /= n_total;
    const double sigma_c = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 1e-12, 1.0);

    // Mehrotra corrector in the scaled space, where both scaled iterates
    // share the spectrum sigma: the linearised complementarity acts
    // entrywise with weights (sigma_i + sigma_j)/2.
    for (int k = 0; k < nblocks; ++k) {
      const int d = p.blocks[k].side();
      MatrixXcd second = dXh[k] * dZh[k];
      hermitize(second);
      MatrixXcd target = -second;
      target.diagonal().array() += Cplx(sigma_c * mu, 0.0);
      for (int i = 0; i < d; ++i) target(i, i) -= bs[k].sigma[i] * bs[k].sigma[i];
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) target(i, j) *= 2.0 / (bs[k].sigma[i] + bs[k].sigma[j]);
      hermitize(target);
      that[k] = target;
    }
    compute_directions(that, dx_c, dy_c, dX, dZ, dXh, dZh);

    ap = 1.0;
    ad = 1.0;
    for (int k = 0; k < nblocks; ++k) {
      ap = std::min(ap, max_step(bs[k].L, dX[k], gamma));
      ad = std::min(ad, max_step(bs[k].Lz, dZ[k], gamma));
    }

    x += ap * dx_c;
    if (m > 0) y += ad * dy_c;
    for (int k = 0; k < nblocks; ++k) {
      bs[k].X += ap * dX[k];
      bs[k].Z += ad * dZ[k];
      hermitize(bs[k].X);
      hermitize(bs[k].Z);
    }
    } catch (const LostPositivity&) {
      break;  // stop at the best iterate reached
    }
  }

  res.x = x;
  res.eq_duals = y;
  res.dual_blocks.resize(nblocks);
  for (int k = 0; k < nblocks; ++k) res.dual_blocks[k] = bs[k].Z;
  res.iterations = iter;
  if (res.status == SolveStatus::MaxIter && iter >= opts.max_iter) res.status = SolveStatus::MaxIter;
  return res;
}

}  // namespace

ConicProgram embed_real(const ConicProgram& p) {
  auto emb = [](const MatrixXcd& f) {
    const int d = static_cast<int>(f.rows());
    Eigen::MatrixXd re = f.real(), im = f.imag();
    MatrixXcd out = MatrixXcd::Zero(2 * d, 2 * d);
    out.topLeftCorner(d, d) = re.cast<Cplx>();
    out.bottomRightCorner(d, d) = re.cast<Cplx>();
    out.topRightCorner(d, d) = (-im).cast<Cplx>();
    out.bottomLeftCorner(d, d) = im.cast<Cplx>();
    return out;
  };
  ConicProgram q;
  q.n_vars = p.n_vars;
  q.objective = p.objective;
  q.eq_lhs = p.eq_lhs;
  q.eq_rhs = p.eq_rhs;
  for (const auto& b : p.blocks) {
    ConicProgram::Block nb;
    nb.constant = emb(b.constant);
    for (const auto& [var, f] : b.coeffs) nb.coeffs.emplace_back(var, emb(f));
    q.blocks.push_back(std::move(nb));
  }
  return q;
}

SolveResult solve(const ConicProgram& p, const SolveOptions& opts) {
  p.validate();
  if (!opts.use_real_embedding) return solve_native(p, opts);

  SolveOptions inner = opts;
  inner.use_real_embedding = false;
  SolveResult r = solve_native(embed_real(p), inner);
  // Recover complex Hermitian multipliers: with Z_emb feasible for the
  // embedded block, Z = (Z11+Z22) + i (Z21-Z12) satisfies <F,Z> = <emb(F),Z_emb>.
  for (size_t k = 0; k < r.dual_blocks.size(); ++k) {
    const int d = p.blocks[k].side();
    const MatrixXcd& ze = r.dual_blocks[k];
    MatrixXcd z11 = ze.topLeftCorner(d, d), z22 = ze.bottomRightCorner(d, d);
    MatrixXcd z21 = ze.bottomLeftCorner(d, d), z12 = ze.topRightCorner(d, d);
    MatrixXcd z = (z11 + z22) + Cplx(0, 1) * (z21 - z12);
    hermitize(z);
    r.dual_blocks[k] = z;
  }
  return r;
}

void write_sdpa_sparse(const ConicProgram& p, std::ostream& os) {
  const ConicProgram q = embed_real(p);
  const int m = static_cast<int>(q.eq_lhs.rows());
  const int nblocks = static_cast<int>(q.blocks.size()) + (m > 0 ? 1 : 0);
  os << q.n_vars << "\n" << nblocks << "\n";
  for (const auto& b : q.blocks) os << b.side() << " ";
  if (m > 0) os << -(2 * m);
  os << "\n";
  for (int i = 0; i < q.n_vars; ++i) os << q.objective[i] << (i + 1 < q.n_vars ? " " : "");
  os << "\n";

  auto emit = [&os](int mat, int blk, int i, int j, double v) {
    if (v != 0.0) os << mat << " " << blk << " " << i + 1 << " " << j + 1 << " " << v << "\n";
  };
  for (int k = 0; k < static_cast<int>(q.blocks.size()); ++k) {
    const auto& b = q.blocks[k];
    const int d = b.side();
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) emit(0, k + 1, i, j, -b.constant(i, j).real());
    for (const auto& [var, f] : b.coeffs)
      for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) emit(var + 1, k + 1, i, j, f(i, j).real());
  }
  if (m > 0) {
    const int blk = static_cast<int>(q.blocks.size()) + 1;
    for (int r = 0; r < m; ++r) {
      emit(0, blk, r, r, q.eq_rhs[r]);
      emit(0, blk, m + r, m + r, -q.eq_rhs[r]);
      for (int i = 0; i < q.n_vars; ++i) {
        emit(i + 1, blk, r, r, q.eq_lhs(r, i));
        emit(i + 1, blk, m + r, m + r, -q.eq_lhs(r, i));
      }
    }
  }
}

}  // namespace causalwit
