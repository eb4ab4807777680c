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

#include "rangepriv/quadrature.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace rangepriv {
namespace {

struct Panel {
  double a, m, b;
  double fa, fm, fb;
  double whole;
};

double Simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

class Simpsonizer {
 public:
  explicit Simpsonizer(const ScalarIntegrand& f) : f_(f) {}

  absl::Status Recurse(const Panel& p, double tol, int depth_left,
                       QuadratureResult* acc) {
    const double lm = 0.5 * (p.a + p.m);
    const double rm = 0.5 * (p.m + p.b);
    absl::StatusOr<double> flm = f_(lm);
    if (!flm.ok()) return flm.status();
    absl::StatusOr<double> frm = f_(rm);
    if (!frm.ok()) return frm.status();
    const double left = Simpson(p.a, p.m, p.fa, *flm, p.fm);
    const double right = Simpson(p.m, p.b, p.fm, *frm, p.fb);
    const double delta = left + right - p.whole;
    evals_ += 2;
    if (depth_left <= 0 || evals_ >= kMaxEvals || std::abs(delta) <= 15.0 * tol || p.m <= p.a ||
        p.b <= p.m) {
      acc->value += left + right + delta / 15.0;
      acc->error_estimate += std::abs(delta) / 15.0;
      return absl::OkStatus();
    }
    absl::Status st = Recurse({p.a, lm, p.m, p.fa, *flm, p.fm, left}, 0.5 * tol,
                              depth_left - 1, acc);
    if (!st.ok()) return st;
    return Recurse({p.m, rm, p.b, p.fm, *frm, p.fb, right}, 0.5 * tol,
                   depth_left - 1, acc);
  }

 private:
  // Hard cap on integrand evaluations per call; past it every remaining panel
  // is accepted as is.
  static constexpr long kMaxEvals = 4'000'000;

  const ScalarIntegrand& f_;
  long evals_ = 0;
};

absl::StatusOr<double> Finite(const ScalarIntegrand& f, double x) {
  absl::StatusOr<double> v = f(x);
  if (v.ok() && !std::isfinite(*v)) {
    return absl::InvalidArgumentError("integrand is not finite");
  }
  return v;
}

}  // namespace

absl::StatusOr<QuadratureResult> AdaptiveSimpson(const ScalarIntegrand& f,
                                                 double a, double b,
                                                 double abs_tol, int max_depth) {
  QuadratureResult acc;
  if (!(a < b)) return acc;
  ScalarIntegrand checked = [&f](double x) { return Finite(f, x); };
  const double m = 0.5 * (a + b);
  absl::StatusOr<double> fa = checked(a);
  if (!fa.ok()) return fa.status();
  absl::StatusOr<double> fm = checked(m);
  if (!fm.ok()) return fm.status();
  absl::StatusOr<double> fb = checked(b);
  if (!fb.ok()) return fb.status();
  Simpsonizer s(checked);
  absl::Status st = s.Recurse(
      {a, m, b, *fa, *fm, *fb, Simpson(a, b, *fa, *fm, *fb)}, abs_tol,
      max_depth, &acc);
  if (!st.ok()) return st;
  return acc;
}

absl::StatusOr<std::vector<double>> FindCrossings(const ScalarIntegrand& phi,
                                                  double a, double b,
                                                  int samples) {
  std::vector<double> out;
  if (!(a < b) || samples < 1) return out;
  const double step = (b - a) / samples;
  absl::StatusOr<double> prev = phi(a);
  if (!prev.ok()) return prev.status();
  double x_prev = a;
  for (int k = 1; k <= samples; ++k) {
    const double x = k == samples ? b : a + k * step;
    absl::StatusOr<double> cur = phi(x);
    if (!cur.ok()) return cur.status();
    if (*cur == 0.0) {
      out.push_back(x);
    } else if ((*prev < 0.0) != (*cur < 0.0) && *prev != 0.0) {
      double lo = x_prev, hi = x;
      double flo = *prev;
      for (int it = 0; it < 200 && lo < hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        absl::StatusOr<double> fmid = phi(mid);
        if (!fmid.ok()) return fmid.status();
        if ((*fmid < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = *fmid;
        } else {
          hi = mid;
        }
      }
      out.push_back(0.5 * (lo + hi));
    }
    prev = cur;
    x_prev = x;
  }
  return out;
}

absl::StatusOr<QuadratureResult> IntegratePiecewise(
    const ScalarIntegrand& f, double a, double b, std::vector<double> breaks,
    const QuadratureParams& params) {
  QuadratureResult total;
  if (!(a < b)) return total;
  breaks.push_back(a);
  breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  std::vector<double> cuts;
  for (double x : breaks) {
    if (a <= x && x <= b) cuts.push_back(x);
  }

  // Scale for the relative tolerance: a cheap composite trapezoid estimate of
  // the integral of |f|.
  double scale = 0.0;
  constexpr int kScaleCells = 64;
  for (int k = 0; k <= kScaleCells; ++k) {
    absl::StatusOr<double> v = f(a + (b - a) * k / kScaleCells);
    if (!v.ok()) return v.status();
    if (!std::isfinite(*v)) {
      return absl::InvalidArgumentError("integrand is not finite");
    }
    const double w = (k == 0 || k == kScaleCells) ? 0.5 : 1.0;
    scale += w * std::abs(*v) * (b - a) / kScaleCells;
  }
  const double tol_total = std::max(params.rel_tol * scale, 1e-300);
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = cuts[k];
    const double hi = cuts[k + 1];
    const double share = tol_total * (hi - lo) / (b - a);
    absl::StatusOr<QuadratureResult> piece =
        AdaptiveSimpson(f, lo, hi, share, params.max_depth);
    if (!piece.ok()) return piece.status();
    total.value += piece->value;
    total.error_estimate += piece->error_estimate;
  }
  return total;
}

namespace {

// Radical inverse of `index` in `base`.
double RadicalInverse(std::uint64_t index, int base) {
  const double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (index > 0) {
    r += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return r;
}

constexpr int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                           43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

}  // namespace

absl::StatusOr<QuadratureResult> QuasiMonteCarlo(const VectorIntegrand& f,
                                                 std::span<const double> lo,
                                                 std::span<const double> hi,
                                                 const QuadratureParams& params) {
  const std::size_t d = lo.size();
  if (hi.size() != d) {
    return absl::InvalidArgumentError("box bounds differ in dimension");
  }
  if (d > std::size(kPrimes)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "quasi-Monte Carlo supports at most ", std::size(kPrimes),
        " dimensions"));
  }
  if (params.qmc_points == 0 || params.qmc_replicates < 2) {
    return absl::InvalidArgumentError(
        "quasi-Monte Carlo needs points > 0 and at least 2 replicates");
  }
  double volume = 1.0;
  for (std::size_t k = 0; k < d; ++k) volume *= hi[k] - lo[k];

  std::mt19937_64 rng(params.seed);
  std::vector<double> means;
  std::vector<double> x(d);
  for (int r = 0; r < params.qmc_replicates; ++r) {
    std::vector<double> shift(d);
    // 53 random bits per coordinate, independent of the library's
    // distribution implementations.
    for (double& s : shift) s = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    double sum = 0.0;
    for (std::size_t i = 0; i < params.qmc_points; ++i) {
      for (std::size_t k = 0; k < d; ++k) {
        double u = RadicalInverse(i + 1, kPrimes[k]) + shift[k];
        if (u >= 1.0) u -= 1.0;
        x[k] = lo[k] + u * (hi[k] - lo[k]);
      }
      absl::StatusOr<double> v = f(x);
      if (!v.ok()) return v.status();
      if (!std::isfinite(*v)) {
        return absl::InvalidArgumentError("integrand is not finite");
      }
      sum += *v;
    }
    means.push_back(volume * sum / static_cast<double>(params.qmc_points));
  }
  double mean = 0.0;
  for (double m : means) mean += m;
  mean /= means.size();
  double var = 0.0;
  for (double m : means) var += (m - mean) * (m - mean);
  var /= (means.size() - 1);
  return QuadratureResult{mean, std::sqrt(var / means.size())};
}

}  // namespace rangepriv
