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

#include "rangepriv/numfmt.h"

#include <charconv>
#include <cmath>
#include <system_error>

namespace rangepriv {

std::string FormatReal(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

nlohmann::json ExtendedRealToJson(double value) {
  if (std::isfinite(value)) return value;
  return FormatReal(value);
}

bool ExtendedRealFromJson(const nlohmann::json& j, double* value) {
  if (j.is_number()) {
    *value = j.get<double>();
    return true;
  }
  if (j.is_string()) {
    const std::string& s = j.get_ref<const std::string&>();
    if (s == "inf" || s == "+inf") {
      *value = INFINITY;
      return true;
    }
    if (s == "-inf") {
      *value = -INFINITY;
      return true;
    }
  }
  return false;
}

}  // namespace rangepriv
