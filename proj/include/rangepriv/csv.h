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

#ifndef RANGEPRIV_CSV_H_
#define RANGEPRIV_CSV_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace rangepriv {

using CsvRow = std::vector<std::string>;

// RFC 4180 records: comma separated, fields optionally double-quoted with ""
// as the escaped quote, CRLF or LF line ends, embedded newlines allowed in
// quoted fields. A UTF-8 byte-order mark at the start is skipped. A trailing
// line end does not produce an empty record.
absl::StatusOr<std::vector<CsvRow>> ParseCsv(std::string_view text);

// One record terminated by "\n"; fields are quoted only when they contain a
// comma, quote, CR or LF.
std::string FormatCsvRow(const CsvRow& row);

absl::StatusOr<std::string> ReadFile(const std::string& path);

// Writes to a sibling temporary file and renames it over `path`, so readers
// never observe a partial file.
absl::Status WriteFileAtomic(const std::string& path, std::string_view contents);

}  // namespace rangepriv

#endif  // RANGEPRIV_CSV_H_
