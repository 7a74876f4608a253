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

#ifndef ASINTEST_REPORT_IO_HPP_
#define ASINTEST_REPORT_IO_HPP_

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "asintest/campaign.hpp"
#include "asintest/second_level.hpp"

namespace asintest {

void to_json(nlohmann::json& j, const TestReport& r);
void from_json(const nlohmann::json& j, TestReport& r);

// Fixed column order of the CSV table.
std::vector<std::string> report_csv_columns();
std::string report_csv_header();
std::string report_csv_row(const TestReport& r);

// Header plus one row per report, or a JSON array. Throws
// std::invalid_argument for an empty list.
void emit_table(std::ostream& out, std::span<const TestReport> reports, OutputFormat format);

// Reverses emit_table for JSON output.
std::vector<TestReport> parse_report_table(const std::string& json_text);

// Per-sequence artifacts as CSV: index, seed, above, steps, s_asin, p_value.
void write_sequence_csv(std::ostream& out, std::span<const SequenceResult> sequences);

// %.10g: every real in reports carries at least 6 significant digits.
std::string format_real(double x);

// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_escape(const std::string& field);

}  // namespace asintest

#endif  // ASINTEST_REPORT_IO_HPP_
