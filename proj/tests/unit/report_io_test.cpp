// Copyright 2026 The asintest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "asintest/report_io.hpp"

#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "asintest/arcsine.hpp"

namespace asintest {
namespace {

TestReport sample_report() {
  TestConfig config;
  config.n = 1 << 10;
  config.m = 200;
  config.s = 10;
  std::vector<double> values;
  for (int j = 0; j < 200; ++j) values.push_back(quantile_asin((j + 0.5) / 200.0));
  TestReport r = run_second_level(config, values);
  r.generator = "flawed(mt19937_64,18)";
  return r;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else {
      field += c;
    }
  }
  fields.push_back(field);
  return fields;
}

TEST(FormatTest, RealsKeepSignificantDigits) {
  EXPECT_EQ(format_real(0.08026890123), "0.08026890123");
  EXPECT_EQ(format_real(1.17574e-5), "1.17574e-05");
  EXPECT_EQ(format_real(89.53168041234567), "89.53168041");
}

TEST(FormatTest, CsvEscape) {
  EXPECT_EQ(csv_escape("plain"), "plain");
  EXPECT_EQ(csv_escape("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_escape("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST(ReportJsonTest, RoundTrip) {
  const TestReport r = sample_report();
  const nlohmann::json j = r;
  EXPECT_EQ(j.at("verdict").get<std::string>(), verdict_name(r.overall()));
  EXPECT_EQ(j.get<TestReport>(), r);

  const std::vector<TestReport> reports = {r, r};
  std::ostringstream out;
  emit_table(out, reports, OutputFormat::kJson);
  EXPECT_EQ(parse_report_table(out.str()), reports);
}

TEST(ReportCsvTest, HeaderAndRowAgree) {
  const TestReport r = sample_report();
  std::ostringstream out;
  const std::vector<TestReport> reports = {r};
  emit_table(out, reports, OutputFormat::kCsv);
  std::istringstream in(out.str());
  std::string header;
  std::string row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, report_csv_header());
  EXPECT_EQ(header.rfind("generator,n,m,s,d_tv,tv_threshold,T_asin,p_chi2,reliable,", 0), 0u);

  const std::vector<std::string> names = split_csv_line(header);
  const std::vector<std::string> fields = split_csv_line(row);
  ASSERT_EQ(names.size(), fields.size());
  ASSERT_EQ(names, report_csv_columns());
  EXPECT_EQ(fields[0], "flawed(mt19937_64,18)");
  EXPECT_EQ(fields[1], "1024");
  EXPECT_EQ(fields[2], "200");
  EXPECT_EQ(fields[3], "10");
  EXPECT_DOUBLE_EQ(std::stod(fields[4]), std::stod(format_real(r.d_tv)));
  EXPECT_EQ(fields[8], r.reliable ? "true" : "false");
  EXPECT_EQ(fields[11], verdict_name(r.overall()));
  EXPECT_EQ(fields[13], "direct");
}

TEST(ReportCsvTest, FailRow) {
  TestReport r = sample_report();
  r.verdict_chi2 = Verdict::kFail;
  const std::vector<std::string> fields = split_csv_line(report_csv_row(r));
  EXPECT_EQ(fields[9], "FAIL");
  EXPECT_EQ(fields[11], "FAIL");
}

TEST(ReportCsvTest, EmptyListRejected) {
  std::ostringstream out;
  EXPECT_THROW(emit_table(out, {}, OutputFormat::kCsv), std::invalid_argument);
  EXPECT_THROW(emit_table(out, {}, OutputFormat::kJson), std::invalid_argument);
}

TEST(SequenceCsvTest, Layout) {
  const std::vector<SequenceResult> seqs = {{5, {3, 4}, 0.25}, {9, {0, 4}, 1.0}};
  std::ostringstream out;
  write_sequence_csv(out, seqs);
  EXPECT_EQ(out.str(), "index,seed,above,steps,s_asin,p_value\n0,5,3,4,0.75,0.25\n1,9,0,4,0,1\n");
}

}  // namespace
}  // namespace asintest
