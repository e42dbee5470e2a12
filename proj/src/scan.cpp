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

#include "causalwit/scan.hpp"

#include <atomic>
#include <future>
#include <ostream>
#include <thread>

namespace causalwit {

std::vector<ScanRow> scan_slice(const ScanSpec& spec) {
  const Scenario& sc = spec.anchor1.scenario;
  if (spec.anchor2.scenario != sc || spec.anchor3.scenario != sc)
    throw std::invalid_argument("scan anchors must share a scenario");
  if (spec.resolution < 2) throw std::invalid_argument("scan resolution must be at least 2");

  const HermitianOperator center = (spec.anchor2.op + spec.anchor3.op) * 0.5;
  const HermitianOperator ex = (spec.anchor2.op - spec.anchor3.op) * 0.5;
  const HermitianOperator ey = spec.anchor1.op - center;

  const int n = spec.resolution;
  std::vector<ScanRow> rows(static_cast<size_t>(n) * n);

  auto eval_point = [&](int iy, int ix) {
    ScanRow row;
    row.x = spec.x_min + (spec.x_max - spec.x_min) * ix / (n - 1);
    row.y = spec.y_min + (spec.y_max - spec.y_min) * iy / (n - 1);
    HermitianOperator op = center + ex * row.x + ey * row.y;
    row.min_eig = min_eigenvalue(op);
    RobustnessOptions opts = spec.solver;
    opts.with_witness = false;
    opts.check_noise_interior = false;
    const RobustnessReport rep =
        random_robustness(ProcessMatrix{sc, op, true}, std::nullopt, opts);
    row.r_star = rep.r_star;
    if (std::abs(rep.r_star) <= spec.boundary_band)
      row.separable = "boundary";
    else
      row.separable = rep.r_star < 0.0 ? "yes" : "no";
    if (spec.witness) row.witness_value = hs_inner(*spec.witness, op);
    return row;
  };

  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::future<void>> futures;
  std::atomic<int> cursor{0};
  for (unsigned t = 0; t < workers; ++t) {
    futures.push_back(std::async(std::launch::async, [&]() {
      for (;;) {
        const int k = cursor.fetch_add(1);
        if (k >= n * n) return;
        rows[k] = eval_point(k / n, k % n);
      }
    }));
  }
  for (auto& f : futures) f.get();
  return rows;
}

void write_scan_csv(const std::vector<ScanRow>& rows, std::ostream& os) {
  os << "x,y,min_eig,separable,r_star,witness_value\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g,%s,%.10g,%.10g\n", r.x, r.y, r.min_eig,
                  r.separable.c_str(), r.r_star, r.witness_value);
    os << buf;
  }
}

}  // namespace causalwit
