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

#include "rangepriv/csv.h"

#include <filesystem>
#include <string>
#include <vector>

#include "gtest/gtest.h"

namespace rangepriv {
namespace {

TEST(CsvTest, ParsesQuotedFields) {
  const auto rows = ParseCsv("a,b,c\r\n1,\"x, y\",\"say \"\"hi\"\"\"\n2,\"multi\nline\",\n");
  ASSERT_TRUE(rows.ok()) << rows.status();
  ASSERT_EQ(rows->size(), 3u);
  EXPECT_EQ((*rows)[1], (CsvRow{"1", "x, y", "say \"hi\""}));
  EXPECT_EQ((*rows)[2], (CsvRow{"2", "multi\nline", ""}));
}

TEST(CsvTest, SkipsByteOrderMarkAndHandlesMissingFinalNewline) {
  const auto rows = ParseCsv("\xEF\xBB\xBFWeight,Height\n70,170");
  ASSERT_TRUE(rows.ok());
  EXPECT_EQ((*rows)[0][0], "Weight");
  EXPECT_EQ((*rows)[1], (CsvRow{"70", "170"}));
}

TEST(CsvTest, RejectsUnterminatedQuote) {
  EXPECT_FALSE(ParseCsv("a,\"b\n").ok());
  EXPECT_FALSE(ParseCsv("a,\"b\"c\n").ok());
}

TEST(CsvTest, FormatRoundTrips) {
  const std::vector<CsvRow> rows = {{"plain", "with,comma", "q\"uote"},
                                    {"", "line\nbreak", "x"}};
  std::string text;
  for (const CsvRow& r : rows) text += FormatCsvRow(r);
  EXPECT_EQ(FormatCsvRow(rows[0]), "plain,\"with,comma\",\"q\"\"uote\"\n");
  EXPECT_EQ(*ParseCsv(text), rows);
}

TEST(CsvTest, AtomicWriteAndRead) {
  const std::string path = ::testing::TempDir() + "/csv_test_out.csv";
  ASSERT_TRUE(WriteFileAtomic(path, "a,b\n").ok());
  EXPECT_EQ(*ReadFile(path), "a,b\n");
  EXPECT_FALSE(std::filesystem::exists(path + ".tmp"));
  EXPECT_EQ(ReadFile(path + ".absent").status().code(),
            absl::StatusCode::kNotFound);
}

}  // namespace
}  // namespace rangepriv
