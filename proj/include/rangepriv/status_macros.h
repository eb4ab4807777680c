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

#ifndef RANGEPRIV_STATUS_MACROS_H_
#define RANGEPRIV_STATUS_MACROS_H_

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define RANGEPRIV_CONCAT_INNER_(a, b) a##b
#define RANGEPRIV_CONCAT_(a, b) RANGEPRIV_CONCAT_INNER_(a, b)

#define RETURN_IF_ERROR(expr)                  \
  do {                                         \
    const ::absl::Status _status = (expr);     \
    if (!_status.ok()) return _status;         \
  } while (0)

#define RANGEPRIV_ASSIGN_OR_RETURN_IMPL_(tmp, lhs, rexpr) \
  auto tmp = (rexpr);                                     \
  if (!tmp.ok()) return tmp.status();                     \
  lhs = std::move(tmp).value()

// Evaluates `rexpr` (an absl::StatusOr<T>) and either assigns the value to
// `lhs` or returns the error status from the enclosing function.
#define ASSIGN_OR_RETURN(lhs, rexpr) \
  RANGEPRIV_ASSIGN_OR_RETURN_IMPL_(  \
      RANGEPRIV_CONCAT_(_statusor_, __LINE__), lhs, rexpr)

#endif  // RANGEPRIV_STATUS_MACROS_H_
