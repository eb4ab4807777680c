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

#ifndef RANGEPRIV_NSET_H_
#define RANGEPRIV_NSET_H_

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"

namespace rangepriv {

// An interval as written by a user, with explicit endpoint closedness. NSet
// normalizes every interval of positive length to the half-open form
// [lo, hi); a zero-length interval survives only if both ends are closed.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = true;
};

// One side of a canonical box: [lo, hi) when lo < hi, the single point {lo}
// when lo == hi.
struct Side {
  double lo = 0.0;
  double hi = 0.0;

  bool degenerate() const { return lo == hi; }
  double length() const { return hi - lo; }
  bool Contains(double x) const {
    return degenerate() ? x == lo : (lo <= x && x < hi);
  }

  friend bool operator==(const Side&, const Side&) = default;
  friend auto operator<=>(const Side&, const Side&) = default;
};

using Box = std::vector<Side>;

// Volume of a box; zero if any side is degenerate.
double BoxVolume(const Box& box);

// A finite union of pairwise-disjoint axis-aligned boxes in `dim` dimensions.
//
// Values are always canonical: boxes of positive volume are stored as the
// unique minimal coordinate-sweep decomposition (slabs along axis 0 with
// equal cross-sections merged, recursively), so two NSets holding the same
// positive-volume point set compare equal. Zero-volume boxes are kept as a
// separate tail of `parts()`; they matter for Contains() but never for
// measure().
class NSet {
 public:
  // The empty one-dimensional set.
  NSet() = default;

  // The empty set in `dim` dimensions. `dim` must be positive.
  static NSet Empty(int dim);

  // A one-dimensional set from a list of (possibly overlapping) intervals.
  static absl::StatusOr<NSet> FromIntervals(std::span<const Interval> parts);
  static absl::StatusOr<NSet> FromIntervals(
      std::initializer_list<Interval> parts) {
    return FromIntervals(std::span<const Interval>(parts.begin(), parts.size()));
  }

  // A single n-dimensional box with the given sides.
  static absl::StatusOr<NSet> FromBox(std::span<const Interval> sides);
  static absl::StatusOr<NSet> FromBox(std::initializer_list<Interval> sides) {
    return FromBox(std::span<const Interval>(sides.begin(), sides.size()));
  }

  // Arbitrary (possibly overlapping) boxes whose sides already follow the
  // half-open convention of `Side`.
  static absl::StatusOr<NSet> FromBoxes(int dim, std::vector<Box> boxes);

  // {"dim": n, "parts": [[[lo,hi],...],...]}.
  static absl::StatusOr<NSet> FromJson(const nlohmann::json& j);
  nlohmann::json ToJson() const;

  int dim() const { return dim_; }
  const std::vector<Box>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }

  // True if the set is exactly one box of positive volume.
  bool IsSingleBox() const;

  // Lebesgue measure.
  double measure() const;

  // Membership honoring the half-open convention. Points of the wrong
  // dimension are never contained.
  bool Contains(std::span<const double> point) const;
  bool Contains(double x) const { return Contains(std::span<const double>(&x, 1)); }

  std::string DebugString() const;

  friend bool operator==(const NSet&, const NSet&) = default;

 private:
  NSet(int dim, std::vector<Box> parts) : dim_(dim), parts_(std::move(parts)) {}

  int dim_ = 1;
  std::vector<Box> parts_;

  friend absl::StatusOr<NSet> Union(const NSet& a, const NSet& b);
  friend absl::StatusOr<NSet> Intersect(const NSet& a, const NSet& b);
  friend absl::StatusOr<NSet> Difference(const NSet& a, const NSet& b);
};

// Point-set operations. All fail with InvalidArgument on dimension mismatch.
absl::StatusOr<NSet> Union(const NSet& a, const NSet& b);
absl::StatusOr<NSet> Intersect(const NSet& a, const NSet& b);
absl::StatusOr<NSet> Difference(const NSet& a, const NSet& b);
absl::StatusOr<NSet> SymmetricDifference(const NSet& a, const NSet& b);
absl::StatusOr<bool> IsSubset(const NSet& a, const NSet& b);

// A finite set of labeled points, the range of a discrete uncertain
// variable. Labels are compared as strings.
class DiscreteSet {
 public:
  DiscreteSet() = default;
  DiscreteSet(std::initializer_list<std::string> elements)
      : elements_(elements) {}
  explicit DiscreteSet(std::set<std::string> elements)
      : elements_(std::move(elements)) {}

  void Insert(std::string label) { elements_.insert(std::move(label)); }
  bool Contains(const std::string& label) const {
    return elements_.count(label) > 0;
  }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  const std::set<std::string>& elements() const { return elements_; }

  nlohmann::json ToJson() const;
  std::string DebugString() const;

  friend bool operator==(const DiscreteSet&, const DiscreteSet&) = default;

 private:
  std::set<std::string> elements_;
};

DiscreteSet Union(const DiscreteSet& a, const DiscreteSet& b);
DiscreteSet Intersect(const DiscreteSet& a, const DiscreteSet& b);
DiscreteSet Difference(const DiscreteSet& a, const DiscreteSet& b);
DiscreteSet SymmetricDifference(const DiscreteSet& a, const DiscreteSet& b);
bool IsSubset(const DiscreteSet& a, const DiscreteSet& b);

}  // namespace rangepriv

#endif  // RANGEPRIV_NSET_H_
