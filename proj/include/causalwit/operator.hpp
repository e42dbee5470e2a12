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
#include <complex>
#include <set>
#include <string>
#include <vector>

#include "causalwit/layout.hpp"

namespace causalwit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Guard for the dense eigendecomposition backend.
inline constexpr int kMaxTotalDim = 4096;

/// A Hermitian operator over the tensor-product space described by a
/// SystemLayout. Values are immutable after construction; all operations
/// return new objects.
class HermitianOperator {
 public:
  HermitianOperator() = default;

  /// Validates the side against the layout and Hermiticity within
  /// tol * max|entry| (default 1e-12), then stores (M + M^dag)/2.
  HermitianOperator(SystemLayout layout, const Matrix& entries,
                    double hermiticity_tol = 1e-12);

  static HermitianOperator zero(const SystemLayout& layout);
  static HermitianOperator identity(const SystemLayout& layout, double scale = 1.0);

  const SystemLayout& layout() const { return layout_; }
  const Matrix& matrix() const { return mat_; }
  int dim() const { return static_cast<int>(mat_.rows()); }

  double trace() const;
  double frobenius_norm() const { return mat_.norm(); }
  /// Spectral norm (largest absolute eigenvalue).
  double operator_norm() const;

  HermitianOperator operator+(const HermitianOperator& o) const;
  HermitianOperator operator-(const HermitianOperator& o) const;
  HermitianOperator operator*(double s) const;

 private:
  SystemLayout layout_;
  Matrix mat_;
};

inline HermitianOperator operator*(double s, const HermitianOperator& h) { return h * s; }

/// Tensor product; layouts are concatenated in argument order.
HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);

/// Embeds an operator acting on the subsystems named by `labels` (in that
/// order) into the full layout, acting as identity elsewhere.
HermitianOperator embed(const SystemLayout& layout, const std::vector<std::string>& labels,
                        const Matrix& op_on_labels);

/// Partial trace over the given labels; the result layout drops them.
HermitianOperator partial_trace(const HermitianOperator& h, const std::set<std::string>& over);

/// The trace-and-replace map: traces out the subsystems in `labels` and
/// re-inserts the normalised identity there, preserving the layout.
HermitianOperator trace_and_replace(const HermitianOperator& h, const std::set<std::string>& labels);

/// Formal real linear combination of trace-and-replace maps. Term sets
/// compose by union under multiplication; these maps are commuting
/// projections onto tensor factors, so the algebra is exact.
class TraceReplaceExpr {
 public:
  struct Term {
    double coeff;
    std::set<std::string> labels;  // empty set = identity map
  };

  TraceReplaceExpr() = default;
  static TraceReplaceExpr one();
  static TraceReplaceExpr replace(std::set<std::string> labels);

  TraceReplaceExpr operator+(const TraceReplaceExpr& o) const;
  TraceReplaceExpr operator-(const TraceReplaceExpr& o) const;
  TraceReplaceExpr operator*(const TraceReplaceExpr& o) const;
  TraceReplaceExpr operator*(double s) const;

  const std::vector<Term>& terms() const { return terms_; }

  HermitianOperator apply(const HermitianOperator& h) const;

  /// Scalar action on a Pauli basis string: each term contributes its
  /// coefficient iff the string is the identity on the term's labels.
  double eigenvalue_on(const SystemLayout& layout, const std::string& pauli_string) const;

 private:
  void merge();
  std::vector<Term> terms_;
};

inline TraceReplaceExpr operator*(double s, const TraceReplaceExpr& e) { return e * s; }

/// Smallest eigenvalue (dense self-adjoint eigendecomposition).
double min_eigenvalue(const HermitianOperator& h);

/// True iff min_eigenvalue(h) >= -tol * ||h||_2.
bool is_psd(const HermitianOperator& h, double tol = 1e-9);

/// Hilbert-Schmidt inner product tr[a b]; real for Hermitian arguments.
double hs_inner(const HermitianOperator& a, const HermitianOperator& b);

}  // namespace causalwit
