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

#include "rangepriv/uvar.h"

#include <cmath>
#include <map>
#include <set>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace rangepriv {
namespace {

std::string LabelOf(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

nlohmann::json LabelToJson(const std::string& label) {
  nlohmann::json parsed = nlohmann::json::parse(label, nullptr, false);
  if (!parsed.is_discarded() && !parsed.is_string()) return parsed;
  return label;
}

}  // namespace

const char* HypLabelName(HypLabel h) {
  return h == HypLabel::kP0 ? "p0" : "p1";
}

absl::StatusOr<HypLabel> ParseHypLabel(const std::string& s) {
  if (s == "p0") return HypLabel::kP0;
  if (s == "p1") return HypLabel::kP1;
  return absl::InvalidArgumentError(
      absl::StrCat("hypothesis label must be \"p0\" or \"p1\", got \"", s, "\""));
}

absl::StatusOr<FiniteWorld> FiniteWorld::Create(std::vector<std::string> omega,
                                                std::vector<std::string> x,
                                                std::vector<std::string> y,
                                                std::vector<HypLabel> h) {
  const std::size_t n = omega.size();
  if (x.size() != n || y.size() != n || h.size() != n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "omega, X, Y and H must have equal lengths (", n, ", ", x.size(), ", ",
        y.size(), ", ", h.size(), ")"));
  }
  std::set<std::string> seen;
  for (const std::string& s : omega) {
    if (!seen.insert(s).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate sample label \"", s, "\""));
    }
  }
  // First sample carrying each X value; later samples must agree with it.
  std::map<std::string, std::size_t> first;
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, inserted] = first.emplace(x[i], i);
    if (inserted) continue;
    const std::size_t j = it->second;
    if (y[i] != y[j]) {
      return absl::InvalidArgumentError(absl::StrCat(
          "Y is not a function of X: samples \"", omega[j], "\" and \"",
          omega[i], "\" share X=", x[i], " but have Y=", y[j], " and Y=", y[i]));
    }
    if (h[i] != h[j]) {
      return absl::InvalidArgumentError(absl::StrCat(
          "H is not a function of X: samples \"", omega[j], "\" and \"",
          omega[i], "\" share X=", x[i], " but have H=", HypLabelName(h[j]),
          " and H=", HypLabelName(h[i])));
    }
  }
  FiniteWorld w;
  w.omega_ = std::move(omega);
  w.x_ = std::move(x);
  w.y_ = std::move(y);
  w.h_.reserve(n);
  for (HypLabel l : h) w.h_.push_back(HypLabelName(l));
  return w;
}

absl::StatusOr<FiniteWorld> FiniteWorld::FromJson(const nlohmann::json& j) {
  for (const char* key : {"omega", "X", "Y", "H"}) {
    if (!j.is_object() || !j.contains(key) || !j[key].is_array()) {
      return absl::InvalidArgumentError(
          absl::StrCat("finite world JSON needs an array field \"", key, "\""));
    }
  }
  std::vector<std::string> omega, x, y;
  std::vector<HypLabel> h;
  for (const auto& v : j["omega"]) omega.push_back(LabelOf(v));
  for (const auto& v : j["X"]) x.push_back(LabelOf(v));
  for (const auto& v : j["Y"]) y.push_back(LabelOf(v));
  for (const auto& v : j["H"]) {
    if (!v.is_string()) {
      return absl::InvalidArgumentError("H entries must be \"p0\" or \"p1\"");
    }
    absl::StatusOr<HypLabel> l = ParseHypLabel(v.get<std::string>());
    if (!l.ok()) return l.status();
    h.push_back(*l);
  }
  return Create(std::move(omega), std::move(x), std::move(y), std::move(h));
}

nlohmann::json FiniteWorld::ToJson() const {
  nlohmann::json j;
  j["omega"] = omega_;
  j["X"] = nlohmann::json::array();
  j["Y"] = nlohmann::json::array();
  for (const std::string& v : x_) j["X"].push_back(LabelToJson(v));
  for (const std::string& v : y_) j["Y"].push_back(LabelToJson(v));
  j["H"] = h_;
  return j;
}

const std::string& FiniteWorld::Value(Selector var, std::size_t i) const {
  switch (var) {
    case Selector::kX:
      return x_[i];
    case Selector::kY:
      return y_[i];
    case Selector::kH:
      return h_[i];
  }
  return x_[i];
}

absl::StatusOr<DiscreteSet> MarginalRange(const FiniteWorld& w, Selector var) {
  if (w.size() == 0) {
    return absl::FailedPreconditionError("empty sample space");
  }
  DiscreteSet out;
  for (std::size_t i = 0; i < w.size(); ++i) out.Insert(w.Value(var, i));
  return out;
}

absl::StatusOr<DiscreteSet> ConditionalRange(const FiniteWorld& w,
                                             Selector target, Selector given,
                                             const std::string& value) {
  DiscreteSet out;
  bool attained = false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w.Value(given, i) != value) continue;
    attained = true;
    out.Insert(w.Value(target, i));
  }
  if (!attained) {
    return absl::NotFoundError(
        absl::StrCat("conditioning value \"", value, "\" is not attained"));
  }
  return out;
}

DiscreteSet ConditionalRangeOfSet(const FiniteWorld& w, Selector target,
                                  Selector given, const DiscreteSet& values) {
  DiscreteSet out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (values.Contains(w.Value(given, i))) out.Insert(w.Value(target, i));
  }
  return out;
}

std::size_t JointRangeSize(const FiniteWorld& w, Selector a, Selector b) {
  std::set<std::pair<std::string, std::string>> joint;
  for (std::size_t i = 0; i < w.size(); ++i) {
    joint.emplace(w.Value(a, i), w.Value(b, i));
  }
  return joint.size();
}

bool IsUnrelated(const FiniteWorld& w, Selector a, Selector b) {
  if (w.size() == 0) return true;
  const std::size_t na = MarginalRange(w, a)->size();
  const std::size_t nb = MarginalRange(w, b)->size();
  // The joint range is always a subset of the product, so equal sizes mean
  // equal sets.
  return JointRangeSize(w, a, b) == na * nb;
}

bool IsUnrelatedByConditionals(const FiniteWorld& w, Selector a, Selector b) {
  if (w.size() == 0) return true;
  const DiscreteSet range_a = *MarginalRange(w, a);
  const DiscreteSet range_b = *MarginalRange(w, b);
  for (const std::string& v : range_b.elements()) {
    if (*ConditionalRange(w, a, b, v) != range_a) return false;
  }
  return true;
}

double DifferentialZeroEntropy(const NSet& s) {
  const double m = s.measure();
  if (m <= 0.0) return -INFINITY;
  return std::log(m);
}

absl::StatusOr<double> ZeroEntropy(const DiscreteSet& s) {
  if (s.empty()) {
    return absl::InvalidArgumentError("H0 of the empty set is undefined");
  }
  return std::log2(static_cast<double>(s.size()));
}

}  // namespace rangepriv
