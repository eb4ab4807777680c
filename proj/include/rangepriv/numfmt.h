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

#ifndef RANGEPRIV_NUMFMT_H_
#define RANGEPRIV_NUMFMT_H_

#include <string>

#include "json.hpp"

namespace rangepriv {

// Shortest decimal string that parses back to exactly `value`. Infinities
// render as "inf" / "-inf", NaN as "nan".
std::string FormatReal(double value);

// JSON encoding of an extended real: finite values become numbers, infinite
// values become the strings "inf" / "-inf".
nlohmann::json ExtendedRealToJson(double value);

// Inverse of ExtendedRealToJson. Returns false if `j` is neither a number nor
// one of the strings "inf", "-inf", "+inf".
bool ExtendedRealFromJson(const nlohmann::json& j, double* value);

}  // namespace rangepriv

#endif  // RANGEPRIV_NUMFMT_H_
