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

#include "causalwit/operator.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>

namespace causalwit {

HermitianOperator::HermitianOperator(SystemLayout layout, const Matrix& entries,
                                     double hermiticity_tol)
    : layout_(std::move(layout)) {
  const int d = layout_.total_dim();
  if (d > kMaxTotalDim)
    throw std::invalid_argument("total dimension exceeds dense backend guard");
  if (entries.rows() != d || entries.cols() != d)
    throw std::invalid_argument("matrix side does not match layout total dimension");
  const double scale = std::max(entries.cwiseAbs().maxCoeff(), 1e-300);
  const double dev = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (dev > hermiticity_tol * scale && dev > hermiticity_tol)
    throw std::invalid_argument("matrix is not Hermitian within tolerance");
  mat_ = 0.5 * (entries + entries.adjoint());
}

HermitianOperator HermitianOperator::zero(const SystemLayout& layout) {
  return HermitianOperator(layout, Matrix::Zero(layout.total_dim(), layout.total_dim()));
}

HermitianOperator HermitianOperator::identity(const SystemLayout& layout, double scale) {
  return HermitianOperator(layout,
                           scale * Matrix::Identity(layout.total_dim(), layout.total_dim()));
}

double HermitianOperator::trace() const { return mat_.trace().real(); }

double HermitianOperator::operator_norm() const {
  if (mat_.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(mat_, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return std::max(std::abs(ev.minCoeff()), std::abs(ev.maxCoeff()));
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& o) const {
  if (layout_ != o.layout_) throw std::invalid_argument("layout mismatch in operator sum");
  HermitianOperator r;
  r.layout_ = layout_;
  r.mat_ = mat_ + o.mat_;
  return r;
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& o) const {
  if (layout_ != o.layout_) throw std::invalid_argument("layout mismatch in operator difference");
  HermitianOperator r;
  r.layout_ = layout_;
  r.mat_ = mat_ - o.mat_;
  return r;
}

HermitianOperator HermitianOperator::operator*(double s) const {
  HermitianOperator r;
  r.layout_ = layout_;
  r.mat_ = s * mat_;
  return r;
}

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
  std::vector<Subsystem> systems = a.layout().systems();
  for (const auto& s : b.layout().systems()) systems.push_back(s);
  SystemLayout layout(systems);
  const int da = a.dim(), db = b.dim();
  Matrix m(da * db, da * db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j) m.block(i * db, j * db, db, db) = a.matrix()(i, j) * b.matrix();
  return HermitianOperator(layout, m);
}

HermitianOperator embed(const SystemLayout& layout, const std::vector<std::string>& labels,
                        const Matrix& op_on_labels) {
  std::vector<int> pos;
  pos.reserve(labels.size());
  int sub_dim = 1;
  for (const auto& l : labels) {
    pos.push_back(layout.index_of(l));
    sub_dim *= layout.dim_of(l);
  }
  if (op_on_labels.rows() != sub_dim || op_on_labels.cols() != sub_dim)
    throw std::invalid_argument("embedded operator side does not match named subsystems");

  const int d = layout.total_dim();
  Matrix m = Matrix::Zero(d, d);
  std::set<int> on(pos.begin(), pos.end());
  for (int r = 0; r < d; ++r) {
    const auto rp = layout.split_index(r);
    for (int c = 0; c < d; ++c) {
      const auto cp = layout.split_index(c);
      bool diag_rest = true;
      for (int i = 0; i < layout.size() && diag_rest; ++i)
        if (!on.count(i) && rp[i] != cp[i]) diag_rest = false;
      if (!diag_rest) continue;
      int sr = 0, sc = 0;
      for (int k : pos) {
        sr = sr * layout.subsystem(k).dim + rp[k];
        sc = sc * layout.subsystem(k).dim + cp[k];
      }
      m(r, c) = op_on_labels(sr, sc);
    }
  }
  return HermitianOperator(layout, m);
}

HermitianOperator partial_trace(const HermitianOperator& h, const std::set<std::string>& over) {
  const SystemLayout& layout = h.layout();
  const std::vector<int> traced = layout.indices_of(over);
  if (traced.empty()) return h;
  SystemLayout reduced = layout.without(traced);
  std::set<int> drop(traced.begin(), traced.end());

  const int d = layout.total_dim();
  const int rd = reduced.total_dim();
  Matrix m = Matrix::Zero(rd, rd);
  for (int r = 0; r < d; ++r) {
    const auto rp = layout.split_index(r);
    for (int c = 0; c < d; ++c) {
      const auto cp = layout.split_index(c);
      bool diag_traced = true;
      for (int k : traced)
        if (rp[k] != cp[k]) { diag_traced = false; break; }
      if (!diag_traced) continue;
      std::vector<int> rr, cc;
      for (int i = 0; i < layout.size(); ++i) {
        if (!drop.count(i)) { rr.push_back(rp[i]); cc.push_back(cp[i]); }
      }
      m(reduced.flat_index(rr), reduced.flat_index(cc)) += h.matrix()(r, c);
    }
  }
  return HermitianOperator(reduced, m);
}

HermitianOperator trace_and_replace(const HermitianOperator& h,
                                    const std::set<std::string>& labels) {
  if (labels.empty()) return h;
  const SystemLayout& layout = h.layout();
  const std::vector<int> idx = layout.indices_of(labels);
  const int dx = layout.dim_product(idx);
  HermitianOperator reduced = partial_trace(h, labels);

  // Re-embed tr_X H at the positions the traced labels occupied, with the
  // remaining factors in their original order, then scale by 1/d_X.
  const int d = layout.total_dim();
  std::set<int> replaced(idx.begin(), idx.end());
  Matrix m = Matrix::Zero(d, d);
  const SystemLayout& red = reduced.layout();
  for (int r = 0; r < d; ++r) {
    const auto rp = layout.split_index(r);
    for (int c = 0; c < d; ++c) {
      const auto cp = layout.split_index(c);
      bool diag_x = true;
      for (int k : idx)
        if (rp[k] != cp[k]) { diag_x = false; break; }
      if (!diag_x) continue;
      std::vector<int> rr, cc;
      for (int i = 0; i < layout.size(); ++i)
        if (!replaced.count(i)) { rr.push_back(rp[i]); cc.push_back(cp[i]); }
      m(r, c) = reduced.matrix()(red.flat_index(rr), red.flat_index(cc)) / double(dx);
    }
  }
  return HermitianOperator(layout, m);
}

TraceReplaceExpr TraceReplaceExpr::one() {
  TraceReplaceExpr e;
  e.terms_.push_back({1.0, {}});
  return e;
}

TraceReplaceExpr TraceReplaceExpr::replace(std::set<std::string> labels) {
  TraceReplaceExpr e;
  e.terms_.push_back({1.0, std::move(labels)});
  return e;
}

TraceReplaceExpr TraceReplaceExpr::operator+(const TraceReplaceExpr& o) const {
  TraceReplaceExpr e;
  e.terms_ = terms_;
  e.terms_.insert(e.terms_.end(), o.terms_.begin(), o.terms_.end());
  e.merge();
  return e;
}

TraceReplaceExpr TraceReplaceExpr::operator-(const TraceReplaceExpr& o) const {
  return *this + o * -1.0;
}

TraceReplaceExpr TraceReplaceExpr::operator*(const TraceReplaceExpr& o) const {
  TraceReplaceExpr e;
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      Term t;
      t.coeff = a.coeff * b.coeff;
      t.labels = a.labels;
      t.labels.insert(b.labels.begin(), b.labels.end());
      e.terms_.push_back(std::move(t));
    }
  }
  e.merge();
  return e;
}

TraceReplaceExpr TraceReplaceExpr::operator*(double s) const {
  TraceReplaceExpr e = *this;
  for (auto& t : e.terms_) t.coeff *= s;
  return e;
}

void TraceReplaceExpr::merge() {
  std::vector<Term> merged;
  for (auto& t : terms_) {
    bool found = false;
    for (auto& m : merged)
      if (m.labels == t.labels) { m.coeff += t.coeff; found = true; break; }
    if (!found) merged.push_back(t);
  }
  std::erase_if(merged, [](const Term& t) { return t.coeff == 0.0; });
  terms_ = std::move(merged);
}

HermitianOperator TraceReplaceExpr::apply(const HermitianOperator& h) const {
  HermitianOperator acc = HermitianOperator::zero(h.layout());
  for (const auto& t : terms_) {
    acc = acc + trace_and_replace(h, t.labels) * t.coeff;
  }
  return acc;
}

double TraceReplaceExpr::eigenvalue_on(const SystemLayout& layout,
                                       const std::string& pauli_string) const {
  if (static_cast<int>(pauli_string.size()) != layout.size())
    throw std::invalid_argument("Pauli string length does not match layout");
  double v = 0.0;
  for (const auto& t : terms_) {
    bool identity_on_labels = true;
    for (const auto& l : t.labels)
      if (pauli_string[layout.index_of(l)] != '1') { identity_on_labels = false; break; }
    if (identity_on_labels) v += t.coeff;
  }
  return v;
}

double min_eigenvalue(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool is_psd(const HermitianOperator& h, double tol) {
  return min_eigenvalue(h) >= -tol * h.operator_norm();
}

double hs_inner(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.layout() != b.layout()) throw std::invalid_argument("layout mismatch in hs_inner");
  return (a.matrix().array() * b.matrix().transpose().array()).sum().real();
}

}  // namespace causalwit
