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

#ifndef RANGEPRIV_EXPR_H_
#define RANGEPRIV_EXPR_H_

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace rangepriv {

// A parsed arithmetic expression over variables x1..xn.
//
// Grammar (whitespace ignored, no implicit multiplication):
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          right-associative
//   primary := number | 'x' digits | func '(' args ')' | '(' expr ')'
//   func    := min | max | sqrt | abs
//
// so -2^2 is -(2^2) and 2^3^2 is 2^(3^2). Parse errors carry the 1-based
// character position at which parsing failed.
class BoundaryExpr {
 public:
  struct Node;

  static absl::StatusOr<BoundaryExpr> Parse(std::string_view src, int dim);

  int dim() const { return dim_; }

  // Evaluates at `point` (x1 is point[0]). Fails on a dimension mismatch,
  // division by zero, sqrt of a negative number or any non-finite result.
  absl::StatusOr<double> Eval(std::span<const double> point) const;

  // 1-based indices of the variables that occur in the expression, ascending.
  std::vector<int> Variables() const;

  // Canonical text: minimal parentheses, numbers in shortest round-trip form.
  std::string ToString() const;

  friend bool operator==(const BoundaryExpr& a, const BoundaryExpr& b);

 private:
  BoundaryExpr(std::shared_ptr<const Node> root, int dim)
      : root_(std::move(root)), dim_(dim) {}

  std::shared_ptr<const Node> root_;
  int dim_ = 0;
};

}  // namespace rangepriv

#endif  // RANGEPRIV_EXPR_H_
