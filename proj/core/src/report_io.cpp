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

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace asintest {
namespace {

const char* bool_text(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void to_json(nlohmann::json& j, const TestReport& r) {
  j = nlohmann::json{{"generator", r.generator},
                     {"n", r.n},
                     {"m", r.m},
                     {"s", r.s},
                     {"alpha", r.alpha},
                     {"mode", std::string(mode_name(r.mode))},
                     {"observed", r.observed},
                     {"expected", r.expected},
                     {"T_asin", r.T_asin},
                     {"p_chi2", r.p_chi2},
                     {"d_tv", r.d_tv},
                     {"tv_epsilon", r.tv_epsilon},
                     {"tv_threshold", r.tv_threshold},
                     {"tv_validity_bound", r.tv_validity_bound},
                     {"tv_condition_ok", r.tv_condition_ok},
                     {"C", r.C},
                     {"delta", r.delta},
                     {"sigma_lb", r.sigma_lb},
                     {"reliable", r.reliable},
                     {"max_reliable_m", r.max_reliable_m},
                     {"verdict_chi2", std::string(verdict_name(r.verdict_chi2))},
                     {"verdict_tv", std::string(verdict_name(r.verdict_tv))},
                     {"verdict", std::string(verdict_name(r.overall()))}};
}

void from_json(const nlohmann::json& j, TestReport& r) {
  r = TestReport{};
  r.generator = j.at("generator").get<std::string>();
  r.n = j.at("n").get<std::uint64_t>();
  r.m = j.at("m").get<std::uint64_t>();
  r.s = j.at("s").get<int>();
  r.alpha = j.at("alpha").get<double>();
  r.mode = parse_mode(j.at("mode").get<std::string>());
  r.observed = j.at("observed").get<std::vector<std::uint64_t>>();
  r.expected = j.at("expected").get<std::vector<double>>();
  r.T_asin = j.at("T_asin").get<double>();
  r.p_chi2 = j.at("p_chi2").get<double>();
  r.d_tv = j.at("d_tv").get<double>();
  r.tv_epsilon = j.at("tv_epsilon").get<double>();
  r.tv_threshold = j.at("tv_threshold").get<double>();
  r.tv_validity_bound = j.at("tv_validity_bound").get<double>();
  r.tv_condition_ok = j.at("tv_condition_ok").get<bool>();
  r.C = j.at("C").get<double>();
  r.delta = j.at("delta").get<double>();
  r.sigma_lb = j.at("sigma_lb").get<double>();
  r.reliable = j.at("reliable").get<bool>();
  r.max_reliable_m = j.at("max_reliable_m").get<std::uint64_t>();
  r.verdict_chi2 = parse_verdict(j.at("verdict_chi2").get<std::string>());
  r.verdict_tv = parse_verdict(j.at("verdict_tv").get<std::string>());
}

std::vector<std::string> report_csv_columns() {
  return {"generator", "n",           "m",        "s",       "d_tv",       "tv_threshold",
          "T_asin",    "p_chi2",      "reliable", "verdict_chi2", "verdict_tv", "verdict",
          "alpha",     "mode",        "delta",    "sigma_lb", "max_reliable_m",
          "tv_condition_ok"};
}

std::string report_csv_header() {
  std::string header;
  for (const std::string& c : report_csv_columns()) {
    if (!header.empty()) header += ',';
    header += c;
  }
  return header;
}

std::string report_csv_row(const TestReport& r) {
  std::ostringstream row;
  row << csv_escape(r.generator) << ',' << r.n << ',' << r.m << ',' << r.s << ','
      << format_real(r.d_tv) << ',' << format_real(r.tv_threshold) << ','
      << format_real(r.T_asin) << ',' << format_real(r.p_chi2) << ',' << bool_text(r.reliable)
      << ',' << verdict_name(r.verdict_chi2) << ',' << verdict_name(r.verdict_tv) << ','
      << verdict_name(r.overall()) << ',' << format_real(r.alpha) << ',' << mode_name(r.mode)
      << ',' << format_real(r.delta) << ',' << format_real(r.sigma_lb) << ','
      << r.max_reliable_m << ',' << bool_text(r.tv_condition_ok);
  return row.str();
}

void emit_table(std::ostream& out, std::span<const TestReport> reports, OutputFormat format) {
  if (reports.empty()) throw std::invalid_argument("emit_table: no reports");
  if (format == OutputFormat::kJson) {
    nlohmann::json array = nlohmann::json::array();
    for (const TestReport& r : reports) array.push_back(r);
    out << array.dump(2) << '\n';
    return;
  }
  out << report_csv_header() << '\n';
  for (const TestReport& r : reports) out << report_csv_row(r) << '\n';
}

std::vector<TestReport> parse_report_table(const std::string& json_text) {
  return nlohmann::json::parse(json_text).get<std::vector<TestReport>>();
}

void write_sequence_csv(std::ostream& out, std::span<const SequenceResult> sequences) {
  out << "index,seed,above,steps,s_asin,p_value\n";
  for (std::size_t j = 0; j < sequences.size(); ++j) {
    const SequenceResult& s = sequences[j];
    out << j << ',' << s.seed << ',' << s.s_asin.above << ',' << s.s_asin.steps << ','
        << format_real(s.s_asin.value()) << ',' << format_real(s.p_value) << '\n';
  }
}

}  // namespace asintest
