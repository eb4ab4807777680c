// Copyright 2026 The rangepriv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RANGEPRIV_METRICS_H_
#define RANGEPRIV_METRICS_H_

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "rangepriv/dataio.h"
#include "rangepriv/privacy.h"

namespace rangepriv {

// Counts of 2-D points over a uniform grid on a box. Bins are half-open
// [lo, hi) except the last bin on each axis, which also takes the upper box
// edge. Points outside the closed box go to `discarded`.
class Histogram2D {
 public:
  static absl::StatusOr<Histogram2D> Build(
      std::span<const std::array<double, 2>> points, const Box& box,
      std::size_t bins_x, std::size_t bins_y);

  std::size_t bins_x() const { return bins_x_; }
  std::size_t bins_y() const { return bins_y_; }
  const Box& box() const { return box_; }
  std::size_t count(std::size_t ix, std::size_t iy) const {
    return counts_[ix * bins_y_ + iy];
  }
  const std::vector<std::size_t>& counts() const { return counts_; }
  std::size_t total() const { return total_; }
  std::size_t discarded() const { return discarded_; }

  bool SameBinning(const Histogram2D& other) const {
    return bins_x_ == other.bins_x_ && bins_y_ == other.bins_y_ &&
           box_ == other.box_;
  }

  // "xbin,ybin,count" header plus one row per bin, x-major.
  std::string ToCsv() const;

 private:
  Histogram2D() = default;

  Box box_;
  std::size_t bins_x_ = 0;
  std::size_t bins_y_ = 0;
  std::vector<std::size_t> counts_;
  std::size_t total_ = 0;
  std::size_t discarded_ = 0;
};

// Complete rows of a two-coordinate table as points.
absl::StatusOr<std::vector<std::array<double, 2>>> TablePoints(
    const DataTable& t);

// mean(after) - mean(before).
absl::StatusOr<double> MeanDiff(std::span<const double> before,
                                std::span<const double> after);

// Which histogram plays P in D(P || Q).
enum class KlDirection { kOriginalToSanitized, kSanitizedToOriginal };

// sum_i p_i ln(p_i / q_i) with p_i, q_i the counts plus `alpha`, normalized.
// Rounding can leave a tiny negative sum for near-identical inputs; the
// result is floored at zero.
absl::StatusOr<double> KlDivergence(const Histogram2D& p, const Histogram2D& q,
                                    double alpha);

struct UtilityCurvePoint {
  double rho = 0.0;
  double mean_diff = 0.0;
  double kl = 0.0;
  std::size_t rows_modified = 0;
  std::size_t rows_total = 0;
  // Rows entering the mean (protected coordinate present).
  std::size_t rows_in_mean = 0;
};

struct UtilityOptions {
  std::size_t bins = 50;
  double alpha = 1e-9;
  KlDirection direction = KlDirection::kOriginalToSanitized;
  QuadratureParams quad;
};

struct UtilityRun {
  UtilityCurvePoint point;
  Histogram2D original;
  Histogram2D sanitized;
};

// Per rho: sanitize, histogram both tables over the policy box, and compare.
// The mean difference is taken over the protected column of every row where
// it is present.
absl::StatusOr<std::vector<UtilityRun>> UtilityCurve(
    const DataTable& t, const StripPolicy& policy, std::span<const double> rhos,
    const UtilityOptions& options = {});

// {"rho", "mean_diff", "kl", "bins": [nx, ny], "alpha"}.
nlohmann::json UtilityPointToJson(const UtilityCurvePoint& p,
                                  const UtilityOptions& options);

}  // namespace rangepriv

#endif  // RANGEPRIV_METRICS_H_
