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

#include "rangepriv/metrics.h"

#include <cmath>
#include <optional>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "rangepriv/numfmt.h"
#include "rangepriv/status_macros.h"

namespace rangepriv {
namespace {

// Edge k of a uniform grid on `s`.
double Edge(const Side& s, std::size_t bins, std::size_t k) {
  return s.lo + (s.hi - s.lo) * static_cast<double>(k) / static_cast<double>(bins);
}

std::size_t BinOf(double v, const Side& s, std::size_t bins) {
  if (v >= s.hi) return bins - 1;
  const double u = (v - s.lo) / (s.hi - s.lo) * static_cast<double>(bins);
  std::size_t b = std::min(static_cast<std::size_t>(u), bins - 1);
  // The division can land one bin off next to an edge; settle against the
  // same edges Edge() reports.
  if (b > 0 && v < Edge(s, bins, b)) --b;
  if (b + 1 < bins && v >= Edge(s, bins, b + 1)) ++b;
  return b;
}

// Column values of the protected coordinate wherever present.
std::vector<double> PresentValues(const DataTable& t, int k) {
  std::vector<double> out;
  for (std::size_t r = 0; r < t.size(); ++r) {
    if (std::optional<double> v = t.Coordinate(r, k)) out.push_back(*v);
  }
  return out;
}

}  // namespace

absl::StatusOr<Histogram2D> Histogram2D::Build(
    std::span<const std::array<double, 2>> points, const Box& box,
    std::size_t bins_x, std::size_t bins_y) {
  if (box.size() != 2 || !(box[0].lo < box[0].hi) || !(box[1].lo < box[1].hi)) {
    return absl::InvalidArgumentError(
        "histogram needs a two-dimensional box of positive area");
  }
  if (bins_x < 1 || bins_y < 1) {
    return absl::InvalidArgumentError("histogram needs at least one bin per axis");
  }
  Histogram2D h;
  h.box_ = box;
  h.bins_x_ = bins_x;
  h.bins_y_ = bins_y;
  h.counts_.assign(bins_x * bins_y, 0);
  for (const auto& p : points) {
    if (p[0] < box[0].lo || p[0] > box[0].hi || p[1] < box[1].lo ||
        p[1] > box[1].hi) {
      ++h.discarded_;
      continue;
    }
    ++h.counts_[BinOf(p[0], box[0], bins_x) * bins_y + BinOf(p[1], box[1], bins_y)];
    ++h.total_;
  }
  return h;
}

std::string Histogram2D::ToCsv() const {
  std::string out = "xbin,ybin,count\n";
  for (std::size_t ix = 0; ix < bins_x_; ++ix) {
    for (std::size_t iy = 0; iy < bins_y_; ++iy) {
      absl::StrAppend(&out, ix, ",", iy, ",", count(ix, iy), "\n");
    }
  }
  return out;
}

absl::StatusOr<std::vector<std::array<double, 2>>> TablePoints(
    const DataTable& t) {
  if (t.dim() != 2) {
    return absl::InvalidArgumentError(absl::StrCat(
        "histograms need exactly two mapped columns, got ", t.dim()));
  }
  std::vector<std::array<double, 2>> out;
  for (std::size_t r = 0; r < t.size(); ++r) {
    if (std::optional<std::vector<double>> x = t.Point(r)) {
      out.push_back({(*x)[0], (*x)[1]});
    }
  }
  return out;
}

absl::StatusOr<double> MeanDiff(std::span<const double> before,
                                std::span<const double> after) {
  if (before.size() != after.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "columns differ in length: ", before.size(), " vs ", after.size()));
  }
  if (before.empty()) return absl::InvalidArgumentError("columns are empty");
  // Summing the per-row differences keeps identical rows exactly cancelling.
  double sum = 0.0;
  for (std::size_t k = 0; k < before.size(); ++k) sum += after[k] - before[k];
  return sum / static_cast<double>(before.size());
}

absl::StatusOr<double> KlDivergence(const Histogram2D& p, const Histogram2D& q,
                                    double alpha) {
  if (!p.SameBinning(q)) {
    return absl::InvalidArgumentError("histograms use different binnings");
  }
  if (!(alpha > 0.0)) {
    return absl::InvalidArgumentError("smoothing alpha must be positive");
  }
  const double bins = static_cast<double>(p.counts().size());
  const double p_norm = static_cast<double>(p.total()) + alpha * bins;
  const double q_norm = static_cast<double>(q.total()) + alpha * bins;
  double kl = 0.0;
  for (std::size_t k = 0; k < p.counts().size(); ++k) {
    const double pk = (static_cast<double>(p.counts()[k]) + alpha) / p_norm;
    const double qk = (static_cast<double>(q.counts()[k]) + alpha) / q_norm;
    kl += pk * std::log(pk / qk);
  }
  return std::max(0.0, kl);
}

absl::StatusOr<std::vector<UtilityRun>> UtilityCurve(
    const DataTable& t, const StripPolicy& policy, std::span<const double> rhos,
    const UtilityOptions& options) {
  if (rhos.empty()) return absl::InvalidArgumentError("rho list is empty");
  const int k = policy.protected_index() - 1;
  ASSIGN_OR_RETURN(auto before_points, TablePoints(t));
  ASSIGN_OR_RETURN(Histogram2D original,
                   Histogram2D::Build(before_points, policy.box(), options.bins,
                                      options.bins));
  const std::vector<double> before = PresentValues(t, k);

  std::vector<UtilityRun> out;
  for (double rho : rhos) {
    ASSIGN_OR_RETURN(StripPolicy p, policy.WithRho(rho));
    ASSIGN_OR_RETURN(auto sanitized, SanitizeTable(t, p, options.quad));
    const auto& [table, report] = sanitized;
    ASSIGN_OR_RETURN(auto after_points, TablePoints(table));
    ASSIGN_OR_RETURN(Histogram2D hist,
                     Histogram2D::Build(after_points, policy.box(),
                                        options.bins, options.bins));
    const std::vector<double> after = PresentValues(table, k);
    UtilityRun run{{}, original, hist};
    run.point.rho = rho;
    ASSIGN_OR_RETURN(run.point.mean_diff, MeanDiff(before, after));
    ASSIGN_OR_RETURN(run.point.kl,
                     options.direction == KlDirection::kOriginalToSanitized
                         ? KlDivergence(original, hist, options.alpha)
                         : KlDivergence(hist, original, options.alpha));
    run.point.rows_modified = report.rows_modified;
    run.point.rows_total = report.rows_total;
    run.point.rows_in_mean = before.size();
    out.push_back(std::move(run));
  }
  return out;
}

nlohmann::json UtilityPointToJson(const UtilityCurvePoint& p,
                                  const UtilityOptions& options) {
  return {{"rho", p.rho},
          {"mean_diff", p.mean_diff},
          {"kl", p.kl},
          {"bins", {options.bins, options.bins}},
          {"alpha", options.alpha}};
}

}  // namespace rangepriv
