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

#include "rangepriv/privacy.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "rangepriv/numfmt.h"
#include "rangepriv/status_macros.h"
#include "rangepriv/uvar.h"

namespace rangepriv {
namespace {

absl::Status CheckRho(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    return absl::InvalidArgumentError(
        absl::StrCat("rho must be a positive finite number, got ",
                     FormatReal(rho)));
  }
  return absl::OkStatus();
}

// Clamped strip width along the protected axis at a point whose free
// coordinates are set; the protected coordinate is irrelevant.
class StripWidth {
 public:
  explicit StripWidth(const StripPolicy& p)
      : p_(p),
        axis_(static_cast<std::size_t>(p.protected_index() - 1)),
        lo_(p.box()[axis_].lo),
        hi_(p.box()[axis_].hi),
        h_(p.half_width()),
        point_(p.dim()) {
    for (std::size_t k = 0; k < point_.size(); ++k) point_[k] = p.box()[k].lo;
  }

  std::size_t axis() const { return axis_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double h() const { return h_; }

  void Set(std::size_t k, double v) { point_[k] = v; }

  absl::StatusOr<double> Boundary() const {
    absl::StatusOr<double> g = p_.boundary().Eval(point_);
    if (!g.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("boundary cannot be evaluated inside the box: ",
                       g.status().message()));
    }
    return g;
  }

  absl::StatusOr<double> Width() const {
    ASSIGN_OR_RETURN(double g, Boundary());
    return std::max(0.0, std::min(g + h_, hi_) - std::max(g - h_, lo_));
  }

 private:
  const StripPolicy& p_;
  std::size_t axis_;
  double lo_, hi_, h_;
  std::vector<double> point_;
};

// Integral of the width over free coordinate `k` with the other free
// coordinates fixed in `w`, split at the clamp crossings.
absl::StatusOr<QuadratureResult> IntegrateAlong(StripWidth& w, std::size_t k,
                                                double a, double b,
                                                const QuadratureParams& quad) {
  std::vector<double> breaks;
  for (double offset : {-w.h(), w.h()}) {
    for (double edge : {w.lo(), w.hi()}) {
      ScalarIntegrand phi = [&w, k, offset, edge](double t) -> absl::StatusOr<double> {
        w.Set(k, t);
        ASSIGN_OR_RETURN(double g, w.Boundary());
        return g + offset - edge;
      };
      ASSIGN_OR_RETURN(std::vector<double> xs,
                       FindCrossings(phi, a, b, quad.breakpoint_samples));
      breaks.insert(breaks.end(), xs.begin(), xs.end());
    }
  }
  ScalarIntegrand width = [&w, k](double t) {
    w.Set(k, t);
    return w.Width();
  };
  return IntegratePiecewise(width, a, b, std::move(breaks), quad);
}

}  // namespace

absl::StatusOr<StripPolicy> StripPolicy::Create(NSet domain_box,
                                                int protected_index,
                                                BoundaryExpr boundary,
                                                double rho) {
  if (!domain_box.IsSingleBox()) {
    return absl::InvalidArgumentError(
        "policy domain must be a single box of positive volume");
  }
  const int dim = domain_box.dim();
  if (protected_index < 1 || protected_index > dim) {
    return absl::InvalidArgumentError(
        absl::StrCat("protected_index must be in [1, ", dim, "], got ",
                     protected_index));
  }
  if (boundary.dim() != dim) {
    return absl::InvalidArgumentError(
        absl::StrCat("boundary expression is over ", boundary.dim(),
                     " variables but the box has ", dim));
  }
  for (int v : boundary.Variables()) {
    if (v == protected_index) {
      return absl::InvalidArgumentError(absl::StrCat(
          "boundary must not depend on the protected coordinate x",
          protected_index));
    }
  }
  RETURN_IF_ERROR(CheckRho(rho));
  return StripPolicy(std::move(domain_box), protected_index,
                     std::move(boundary), rho);
}

absl::StatusOr<StripPolicy> StripPolicy::FromJson(
    const nlohmann::json& j, std::optional<double> rho_override) {
  if (!j.is_object()) {
    return absl::InvalidArgumentError("policy config must be a JSON object");
  }
  auto missing = [](const char* field) {
    return absl::InvalidArgumentError(
        absl::StrCat("policy config: missing required field \"", field, "\""));
  };
  for (const char* field : {"box", "protected_index", "boundary"}) {
    if (!j.contains(field)) return missing(field);
  }
  if (!rho_override.has_value() && !j.contains("rho")) return missing("rho");

  const nlohmann::json& jbox = j["box"];
  if (!jbox.is_array() || jbox.empty()) {
    return absl::InvalidArgumentError(
        "policy config: \"box\" must be a nonempty array of [lo, hi] pairs");
  }
  std::vector<Interval> sides;
  for (const nlohmann::json& s : jbox) {
    if (!s.is_array() || s.size() != 2 || !s[0].is_number() ||
        !s[1].is_number()) {
      return absl::InvalidArgumentError(
          "policy config: \"box\" entries must be [lo, hi] number pairs");
    }
    sides.push_back({s[0].get<double>(), s[1].get<double>(), true, true});
  }
  ASSIGN_OR_RETURN(NSet box, NSet::FromBox(sides));
  if (!j["protected_index"].is_number_integer()) {
    return absl::InvalidArgumentError(
        "policy config: \"protected_index\" must be an integer");
  }
  if (!j["boundary"].is_string()) {
    return absl::InvalidArgumentError(
        "policy config: \"boundary\" must be an expression string");
  }
  absl::StatusOr<BoundaryExpr> g = BoundaryExpr::Parse(
      j["boundary"].get<std::string>(), static_cast<int>(sides.size()));
  if (!g.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat("policy config: \"boundary\": ", g.status().message()));
  }
  double rho = 0.0;
  if (rho_override.has_value()) {
    rho = *rho_override;
  } else if (!j["rho"].is_number()) {
    return absl::InvalidArgumentError("policy config: \"rho\" must be a number");
  } else {
    rho = j["rho"].get<double>();
  }
  return Create(std::move(box), j["protected_index"].get<int>(), *std::move(g),
                rho);
}

nlohmann::json StripPolicy::ToJson() const {
  nlohmann::json jbox = nlohmann::json::array();
  for (const Side& s : box()) jbox.push_back({s.lo, s.hi});
  return {{"box", jbox},
          {"protected_index", protected_index_},
          {"boundary", boundary_.ToString()},
          {"rho", rho_}};
}

absl::StatusOr<StripPolicy> StripPolicy::WithRho(double rho) const {
  RETURN_IF_ERROR(CheckRho(rho));
  StripPolicy p = *this;
  p.rho_ = rho;
  return p;
}

absl::StatusOr<double> StripPolicy::BoundaryAt(std::span<const double> x) const {
  return boundary_.Eval(x);
}

bool StripPolicy::InDomain(std::span<const double> x) const {
  if (x.size() != box().size()) return false;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] < box()[k].lo || x[k] > box()[k].hi) return false;
  }
  return true;
}

absl::StatusOr<StripPolicy::Outcome> StripPolicy::Apply(
    std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(dim())) {
    return absl::InvalidArgumentError(absl::StrCat(
        "point has ", x.size(), " coordinates, policy expects ", dim()));
  }
  ASSIGN_OR_RETURN(double g, BoundaryAt(x));
  Outcome out;
  out.reported.assign(x.begin(), x.end());
  const std::size_t i = static_cast<std::size_t>(protected_index_ - 1);
  const double distance = std::abs(x[i] - g);
  if (distance <= half_width()) {
    out.in_strip = true;
    out.reported[i] = g;
    out.perturbation = distance;
  }
  return out;
}

absl::StatusOr<QuadratureResult> StripMeasure(const StripPolicy& p,
                                              const QuadratureParams& quad) {
  StripWidth w(p);
  const Box& box = p.box();
  std::vector<std::size_t> free;
  for (std::size_t k = 0; k < box.size(); ++k) {
    if (k != w.axis()) free.push_back(k);
  }

  QuadratureResult r;
  if (free.empty()) {
    ASSIGN_OR_RETURN(r.value, w.Width());
  } else if (free.size() == 1) {
    ASSIGN_OR_RETURN(r, IntegrateAlong(w, free[0], box[free[0]].lo,
                                       box[free[0]].hi, quad));
  } else if (free.size() == 2) {
    const std::size_t outer = free[0];
    const std::size_t inner = free[1];
    QuadratureParams inner_quad = quad;
    inner_quad.rel_tol = quad.rel_tol * 1e-2;
    inner_quad.breakpoint_samples = std::max(8, quad.breakpoint_samples / 8);
    double worst_inner_error = 0.0;
    ScalarIntegrand section = [&](double t) -> absl::StatusOr<double> {
      w.Set(outer, t);
      ASSIGN_OR_RETURN(QuadratureResult q,
                       IntegrateAlong(w, inner, box[inner].lo, box[inner].hi,
                                      inner_quad));
      worst_inner_error = std::max(worst_inner_error, q.error_estimate);
      return q.value;
    };
    ASSIGN_OR_RETURN(r, IntegratePiecewise(section, box[outer].lo,
                                           box[outer].hi, {}, quad));
    r.error_estimate += worst_inner_error * box[outer].length();
  } else {
    std::vector<double> lo, hi;
    for (std::size_t k : free) {
      lo.push_back(box[k].lo);
      hi.push_back(box[k].hi);
    }
    VectorIntegrand width = [&](std::span<const double> t) {
      for (std::size_t k = 0; k < free.size(); ++k) w.Set(free[k], t[k]);
      return w.Width();
    };
    ASSIGN_OR_RETURN(r, QuasiMonteCarlo(width, lo, hi, quad));
  }
  r.value = std::clamp(r.value, 0.0, p.domain_box().measure());
  return r;
}

nlohmann::json PolicyGuarantee::ToJson() const {
  return {{"epsilon", epsilon},
          {"rho", rho},
          {"strip_measure", strip_measure},
          {"domain_measure", domain_measure},
          {"quadrature_error_estimate", quadrature_error_estimate}};
}

absl::StatusOr<PolicyGuarantee> EpsilonGuarantee(const StripPolicy& p,
                                                 const QuadratureParams& quad) {
  const double domain = std::exp(DifferentialZeroEntropy(p.domain_box()));
  if (!(domain > 0.0)) {
    return absl::InvalidArgumentError("policy domain has zero measure");
  }
  ASSIGN_OR_RETURN(QuadratureResult strip, StripMeasure(p, quad));
  PolicyGuarantee g;
  g.rho = p.rho();
  g.strip_measure = strip.value;
  g.domain_measure = p.domain_box().measure();
  g.epsilon = std::min(1.0, strip.value / g.domain_measure);
  g.quadrature_error_estimate = strip.error_estimate;
  return g;
}

absl::StatusOr<std::vector<PolicyGuarantee>> SweepEpsilon(
    const StripPolicy& policy, std::span<const double> rhos,
    const QuadratureParams& quad) {
  if (rhos.empty()) {
    return absl::InvalidArgumentError("rho list is empty");
  }
  for (std::size_t k = 0; k < rhos.size(); ++k) {
    RETURN_IF_ERROR(CheckRho(rhos[k]));
    if (k > 0 && rhos[k] < rhos[k - 1]) {
      return absl::InvalidArgumentError("rho values must be ascending");
    }
  }
  std::vector<PolicyGuarantee> out;
  out.reserve(rhos.size());
  for (double rho : rhos) {
    ASSIGN_OR_RETURN(StripPolicy p, policy.WithRho(rho));
    ASSIGN_OR_RETURN(PolicyGuarantee g, EpsilonGuarantee(p, quad));
    out.push_back(g);
  }
  return out;
}

absl::StatusOr<double> PrivMeasure(const NSet& range, const NSet& given_p0,
                                   const NSet& given_p1) {
  if (range.empty()) {
    return absl::InvalidArgumentError("output range is empty");
  }
  ASSIGN_OR_RETURN(NSet both, Union(given_p0, given_p1));
  if (both != range) {
    return absl::InvalidArgumentError(
        "output range must equal the union of the conditional ranges");
  }
  ASSIGN_OR_RETURN(NSet delta, SymmetricDifference(given_p0, given_p1));
  return DifferentialZeroEntropy(range) - DifferentialZeroEntropy(delta);
}

absl::StatusOr<double> PrivMeasure(const DiscreteSet& range,
                                   const DiscreteSet& given_p0,
                                   const DiscreteSet& given_p1) {
  if (range.empty()) {
    return absl::InvalidArgumentError("output range is empty");
  }
  if (Union(given_p0, given_p1) != range) {
    return absl::InvalidArgumentError(
        "output range must equal the union of the conditional ranges");
  }
  const DiscreteSet delta = SymmetricDifference(given_p0, given_p1);
  const double h_range = std::log2(static_cast<double>(range.size()));
  if (delta.empty()) return INFINITY;
  return h_range - std::log2(static_cast<double>(delta.size()));
}

absl::StatusOr<bool> IsEpsPrivate(double priv, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must lie in (0, 1], got ", FormatReal(eps)));
  }
  return priv >= std::log(eps);
}

absl::StatusOr<double> MeasuredAccuracy(
    const StripPolicy& p, const std::vector<std::vector<double>>& points) {
  double worst = 0.0;
  for (const std::vector<double>& x : points) {
    ASSIGN_OR_RETURN(StripPolicy::Outcome o, p.Apply(x));
    double sq = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double d = x[k] - o.reported[k];
      sq += d * d;
    }
    worst = std::max(worst, std::sqrt(sq));
  }
  return worst;
}

absl::StatusOr<bool> IsRhoAccurate(
    const StripPolicy& p, const std::vector<std::vector<double>>& points) {
  ASSIGN_OR_RETURN(double worst, MeasuredAccuracy(p, points));
  return worst <= p.half_width();
}

std::vector<double> LogSpaced(double lo, double hi, int n) {
  std::vector<double> out;
  if (n <= 0) return out;
  if (n == 1) return {lo};
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (int k = 0; k < n; ++k) {
    out.push_back(k == 0       ? lo
                  : k == n - 1 ? hi
                               : std::pow(10.0, a + (b - a) * k / (n - 1)));
  }
  return out;
}

}  // namespace rangepriv
