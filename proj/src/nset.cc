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

#include "rangepriv/nset.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <tuple>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "rangepriv/numfmt.h"

namespace rangepriv {
namespace {

bool IsPositive(const Box& box) {
  return std::none_of(box.begin(), box.end(),
                      [](const Side& s) { return s.degenerate(); });
}

std::optional<Side> IntersectSides(const Side& a, const Side& b) {
  if (a.degenerate()) {
    if (b.Contains(a.lo)) return a;
    return std::nullopt;
  }
  if (b.degenerate()) {
    if (a.Contains(b.lo)) return b;
    return std::nullopt;
  }
  const double lo = std::max(a.lo, b.lo);
  const double hi = std::min(a.hi, b.hi);
  if (lo < hi) return Side{lo, hi};
  return std::nullopt;
}

std::optional<Box> IntersectBoxes(const Box& a, const Box& b) {
  Box out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    std::optional<Side> s = IntersectSides(a[k], b[k]);
    if (!s.has_value()) return std::nullopt;
    out[k] = *s;
  }
  return out;
}

// Pieces of `a` not covered by `b`. Removing a degenerate side from a side of
// positive length is a measure-zero change and is ignored.
std::vector<Side> SubtractSide(const Side& a, const Side& b) {
  if (a.degenerate()) {
    if (b.Contains(a.lo)) return {};
    return {a};
  }
  if (b.degenerate() || b.hi <= a.lo || a.hi <= b.lo) return {a};
  std::vector<Side> out;
  if (a.lo < b.lo) out.push_back(Side{a.lo, b.lo});
  if (b.hi < a.hi) out.push_back(Side{b.hi, a.hi});
  return out;
}

std::vector<Box> SubtractBox(const Box& a, const Box& b) {
  if (!IntersectBoxes(a, b).has_value()) return {a};
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!a[k].degenerate() && b[k].degenerate()) return {a};
  }
  std::vector<Box> out;
  Box rest = a;
  for (std::size_t k = 0; k < a.size(); ++k) {
    for (const Side& piece : SubtractSide(rest[k], b[k])) {
      Box cut = rest;
      cut[k] = piece;
      out.push_back(std::move(cut));
    }
    rest[k] = *IntersectSides(rest[k], b[k]);
  }
  return out;
}

// Canonical coordinate-sweep decomposition of the union of `boxes`, all of
// which have positive length on every axis from `axis` on. Returned boxes
// carry only the sides from `axis` on.
std::vector<Box> Sweep(const std::vector<Box>& boxes, std::size_t axis,
                       std::size_t dim) {
  if (boxes.empty()) return {};
  if (axis == dim) return {Box{}};

  std::vector<double> cuts;
  cuts.reserve(2 * boxes.size());
  for (const Box& b : boxes) {
    cuts.push_back(b[axis].lo);
    cuts.push_back(b[axis].hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<std::pair<Side, std::vector<Box>>> slabs;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = cuts[k];
    const double hi = cuts[k + 1];
    std::vector<Box> tails;
    for (const Box& b : boxes) {
      if (b[axis].lo <= lo && hi <= b[axis].hi) tails.push_back(b);
    }
    std::vector<Box> section = Sweep(tails, axis + 1, dim);
    if (section.empty()) continue;
    if (!slabs.empty() && slabs.back().first.hi == lo &&
        slabs.back().second == section) {
      slabs.back().first.hi = hi;
    } else {
      slabs.emplace_back(Side{lo, hi}, std::move(section));
    }
  }

  std::vector<Box> out;
  for (const auto& [side, section] : slabs) {
    for (const Box& tail : section) {
      Box b;
      b.reserve(dim - axis);
      b.push_back(side);
      b.insert(b.end(), tail.begin(), tail.end());
      out.push_back(std::move(b));
    }
  }
  return out;
}

std::vector<Box> SweepFull(const std::vector<Box>& boxes, std::size_t dim) {
  return Sweep(boxes, 0, dim);
}

std::size_t PinnedAxes(const Box& b) {
  return static_cast<std::size_t>(std::count_if(
      b.begin(), b.end(), [](const Side& s) { return s.degenerate(); }));
}

std::vector<Box> Canonicalize(std::size_t dim, const std::vector<Box>& boxes) {
  std::vector<Box> positive;
  std::vector<Box> degenerate;
  for (const Box& b : boxes) {
    (IsPositive(b) ? positive : degenerate).push_back(b);
  }
  std::vector<Box> out = SweepFull(positive, dim);
  if (degenerate.empty()) return out;

  // Pieces with fewer pinned axes go first so that points lying on an
  // accepted segment are dropped.
  std::sort(degenerate.begin(), degenerate.end(),
            [](const Box& a, const Box& b) {
              const std::size_t ca = PinnedAxes(a);
              const std::size_t cb = PinnedAxes(b);
              if (ca != cb) return ca < cb;
              return a < b;
            });

  std::vector<Box> accepted;
  for (const Box& d : degenerate) {
    std::vector<Box> pieces = {d};
    auto subtract_all = [&pieces](const std::vector<Box>& cutters) {
      for (const Box& c : cutters) {
        std::vector<Box> next;
        for (const Box& p : pieces) {
          std::vector<Box> rest = SubtractBox(p, c);
          next.insert(next.end(), rest.begin(), rest.end());
        }
        pieces = std::move(next);
        if (pieces.empty()) return;
      }
    };
    subtract_all(out);
    subtract_all(accepted);
    accepted.insert(accepted.end(), pieces.begin(), pieces.end());
  }

  // Group by which axes are pinned and where, then sweep the free axes.
  std::map<std::vector<std::pair<std::size_t, double>>, std::vector<Box>> groups;
  for (const Box& b : accepted) {
    std::vector<std::pair<std::size_t, double>> key;
    Box free;
    for (std::size_t k = 0; k < dim; ++k) {
      if (b[k].degenerate()) {
        key.emplace_back(k, b[k].lo);
      } else {
        free.push_back(b[k]);
      }
    }
    groups[key].push_back(std::move(free));
  }
  for (const auto& [key, frees] : groups) {
    const std::size_t free_dim = dim - key.size();
    for (const Box& free : SweepFull(frees, free_dim)) {
      Box b(dim);
      std::size_t f = 0;
      std::size_t p = 0;
      for (std::size_t k = 0; k < dim; ++k) {
        if (p < key.size() && key[p].first == k) {
          b[k] = Side{key[p].second, key[p].second};
          ++p;
        } else {
          b[k] = free[f++];
        }
      }
      out.push_back(std::move(b));
    }
  }
  return out;
}

absl::Status CheckSameDim(const NSet& a, const NSet& b) {
  if (a.dim() != b.dim()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "dimension mismatch: ", a.dim(), " vs ", b.dim()));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::optional<Side>> NormalizeInterval(const Interval& in) {
  if (!std::isfinite(in.lo) || !std::isfinite(in.hi)) {
    return absl::InvalidArgumentError("interval bounds must be finite");
  }
  if (in.lo > in.hi) {
    return absl::InvalidArgumentError(
        absl::StrCat("interval has lo > hi: [", FormatReal(in.lo), ", ",
                     FormatReal(in.hi), "]"));
  }
  if (in.lo < in.hi) return std::optional<Side>(Side{in.lo, in.hi});
  if (in.lo_closed && in.hi_closed) return std::optional<Side>(Side{in.lo, in.lo});
  return std::optional<Side>();
}

std::string SideString(const Side& s) {
  if (s.degenerate()) return absl::StrCat("{", FormatReal(s.lo), "}");
  return absl::StrCat("[", FormatReal(s.lo), ",", FormatReal(s.hi), ")");
}

}  // namespace

double BoxVolume(const Box& box) {
  double v = 1.0;
  for (const Side& s : box) v *= s.length();
  return v;
}

NSet NSet::Empty(int dim) { return NSet(dim, {}); }

absl::StatusOr<NSet> NSet::FromIntervals(std::span<const Interval> parts) {
  std::vector<Box> boxes;
  for (const Interval& in : parts) {
    absl::StatusOr<std::optional<Side>> side = NormalizeInterval(in);
    if (!side.ok()) return side.status();
    if (side->has_value()) boxes.push_back(Box{**side});
  }
  return NSet(1, Canonicalize(1, boxes));
}

absl::StatusOr<NSet> NSet::FromBox(std::span<const Interval> sides) {
  if (sides.empty()) {
    return absl::InvalidArgumentError("a box needs at least one side");
  }
  Box box;
  for (const Interval& in : sides) {
    absl::StatusOr<std::optional<Side>> side = NormalizeInterval(in);
    if (!side.ok()) return side.status();
    if (!side->has_value()) return Empty(static_cast<int>(sides.size()));
    box.push_back(**side);
  }
  const std::size_t dim = box.size();
  return NSet(static_cast<int>(dim), Canonicalize(dim, {box}));
}

absl::StatusOr<NSet> NSet::FromBoxes(int dim, std::vector<Box> boxes) {
  if (dim < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("dimension must be positive, got ", dim));
  }
  for (const Box& b : boxes) {
    if (b.size() != static_cast<std::size_t>(dim)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "box has ", b.size(), " sides in a ", dim, "-dimensional set"));
    }
    for (const Side& s : b) {
      if (!std::isfinite(s.lo) || !std::isfinite(s.hi) || s.lo > s.hi) {
        return absl::InvalidArgumentError(
            absl::StrCat("invalid side [", FormatReal(s.lo), ", ",
                         FormatReal(s.hi), "]"));
      }
    }
  }
  return NSet(dim, Canonicalize(dim, boxes));
}

absl::StatusOr<NSet> NSet::FromJson(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("parts")) {
    return absl::InvalidArgumentError(
        "set JSON must be an object with \"dim\" and \"parts\"");
  }
  if (!j["dim"].is_number_integer()) {
    return absl::InvalidArgumentError("\"dim\" must be an integer");
  }
  const int dim = j["dim"].get<int>();
  if (!j["parts"].is_array()) {
    return absl::InvalidArgumentError("\"parts\" must be an array");
  }
  std::vector<Box> boxes;
  for (const nlohmann::json& jb : j["parts"]) {
    if (!jb.is_array()) {
      return absl::InvalidArgumentError("each part must be an array of sides");
    }
    Box box;
    for (const nlohmann::json& js : jb) {
      if (!js.is_array() || js.size() != 2 || !js[0].is_number() ||
          !js[1].is_number()) {
        return absl::InvalidArgumentError(
            "each side must be a [lo, hi] pair of numbers");
      }
      box.push_back(Side{js[0].get<double>(), js[1].get<double>()});
    }
    boxes.push_back(std::move(box));
  }
  return FromBoxes(dim, std::move(boxes));
}

nlohmann::json NSet::ToJson() const {
  nlohmann::json parts = nlohmann::json::array();
  for (const Box& b : parts_) {
    nlohmann::json jb = nlohmann::json::array();
    for (const Side& s : b) jb.push_back({s.lo, s.hi});
    parts.push_back(std::move(jb));
  }
  return {{"dim", dim_}, {"parts", std::move(parts)}};
}

bool NSet::IsSingleBox() const {
  return parts_.size() == 1 && IsPositive(parts_[0]);
}

double NSet::measure() const {
  double total = 0.0;
  for (const Box& b : parts_) total += BoxVolume(b);
  return total;
}

bool NSet::Contains(std::span<const double> point) const {
  if (point.size() != static_cast<std::size_t>(dim_)) return false;
  for (const Box& b : parts_) {
    bool inside = true;
    for (std::size_t k = 0; k < b.size() && inside; ++k) {
      inside = b[k].Contains(point[k]);
    }
    if (inside) return true;
  }
  return false;
}

std::string NSet::DebugString() const {
  if (parts_.empty()) return "{}";
  return absl::StrJoin(parts_, " u ", [](std::string* out, const Box& b) {
    absl::StrAppend(out, absl::StrJoin(b, "x", [](std::string* o, const Side& s) {
                      absl::StrAppend(o, SideString(s));
                    }));
  });
}

absl::StatusOr<NSet> Union(const NSet& a, const NSet& b) {
  absl::Status st = CheckSameDim(a, b);
  if (!st.ok()) return st;
  std::vector<Box> all = a.parts_;
  all.insert(all.end(), b.parts_.begin(), b.parts_.end());
  return NSet(a.dim_, Canonicalize(a.dim_, all));
}

absl::StatusOr<NSet> Intersect(const NSet& a, const NSet& b) {
  absl::Status st = CheckSameDim(a, b);
  if (!st.ok()) return st;
  std::vector<Box> out;
  for (const Box& x : a.parts_) {
    for (const Box& y : b.parts_) {
      if (std::optional<Box> z = IntersectBoxes(x, y)) out.push_back(*z);
    }
  }
  return NSet(a.dim_, Canonicalize(a.dim_, out));
}

absl::StatusOr<NSet> Difference(const NSet& a, const NSet& b) {
  absl::Status st = CheckSameDim(a, b);
  if (!st.ok()) return st;
  std::vector<Box> out;
  for (const Box& x : a.parts_) {
    std::vector<Box> pieces = {x};
    for (const Box& y : b.parts_) {
      std::vector<Box> next;
      for (const Box& p : pieces) {
        std::vector<Box> rest = SubtractBox(p, y);
        next.insert(next.end(), rest.begin(), rest.end());
      }
      pieces = std::move(next);
      if (pieces.empty()) break;
    }
    out.insert(out.end(), pieces.begin(), pieces.end());
  }
  return NSet(a.dim_, Canonicalize(a.dim_, out));
}

absl::StatusOr<NSet> SymmetricDifference(const NSet& a, const NSet& b) {
  absl::StatusOr<NSet> ab = Difference(a, b);
  if (!ab.ok()) return ab.status();
  absl::StatusOr<NSet> ba = Difference(b, a);
  if (!ba.ok()) return ba.status();
  return Union(*ab, *ba);
}

absl::StatusOr<bool> IsSubset(const NSet& a, const NSet& b) {
  absl::StatusOr<NSet> rest = Difference(a, b);
  if (!rest.ok()) return rest.status();
  return rest->empty();
}

nlohmann::json DiscreteSet::ToJson() const {
  return nlohmann::json(std::vector<std::string>(elements_.begin(),
                                                 elements_.end()));
}

std::string DiscreteSet::DebugString() const {
  return absl::StrCat("{", absl::StrJoin(elements_, ","), "}");
}

DiscreteSet Union(const DiscreteSet& a, const DiscreteSet& b) {
  std::set<std::string> out;
  std::set_union(a.elements().begin(), a.elements().end(), b.elements().begin(),
                 b.elements().end(), std::inserter(out, out.end()));
  return DiscreteSet(std::move(out));
}

DiscreteSet Intersect(const DiscreteSet& a, const DiscreteSet& b) {
  std::set<std::string> out;
  std::set_intersection(a.elements().begin(), a.elements().end(),
                        b.elements().begin(), b.elements().end(),
                        std::inserter(out, out.end()));
  return DiscreteSet(std::move(out));
}

DiscreteSet Difference(const DiscreteSet& a, const DiscreteSet& b) {
  std::set<std::string> out;
  std::set_difference(a.elements().begin(), a.elements().end(),
                      b.elements().begin(), b.elements().end(),
                      std::inserter(out, out.end()));
  return DiscreteSet(std::move(out));
}

DiscreteSet SymmetricDifference(const DiscreteSet& a, const DiscreteSet& b) {
  std::set<std::string> out;
  std::set_symmetric_difference(a.elements().begin(), a.elements().end(),
                                b.elements().begin(), b.elements().end(),
                                std::inserter(out, out.end()));
  return DiscreteSet(std::move(out));
}

bool IsSubset(const DiscreteSet& a, const DiscreteSet& b) {
  return std::includes(b.elements().begin(), b.elements().end(),
                       a.elements().begin(), a.elements().end());
}

}  // namespace rangepriv
