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

#include <iosfwd>

#include "causalwit/robustness.hpp"

namespace causalwit {

/// Two-dimensional affine slice through three anchor processes. The point at
/// (x, y) is  c + x (a2 - a3)/2 + y (a1 - c)  with c = (a2 + a3)/2, so the
/// anchors sit at (0,1), (1,0) and (-1,0).
struct ScanSpec {
  ProcessMatrix anchor1, anchor2, anchor3;
  int resolution = 11;
  double x_min = -1.2, x_max = 1.2;
  double y_min = -1.2, y_max = 1.2;
  std::optional<HermitianOperator> witness;  // evaluated at each point
  double boundary_band = 1e-6;               // |r*| below this counts as boundary
  RobustnessOptions solver;
};

struct ScanRow {
  double x = 0.0, y = 0.0;
  double min_eig = 0.0;
  std::string separable;  // "yes", "no" or "boundary"
  double r_star = 0.0;
  double witness_value = 0.0;
};

/// Evaluates the grid row-major (y outer, x inner, both ascending). Grid
/// points may be computed in parallel; the row order is fixed regardless.
std::vector<ScanRow> scan_slice(const ScanSpec& spec);

/// Header: x,y,min_eig,separable,r_star,witness_value
void write_scan_csv(const std::vector<ScanRow>& rows, std::ostream& os);

}  // namespace causalwit
