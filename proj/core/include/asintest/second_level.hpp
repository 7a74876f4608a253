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

// Second-level test over m basic results: binning into the s+1 element
// partition, Pearson chi-square with its p-value, total variation distance
// against a tail-bound threshold, and the n/m/s reliability condition.

#ifndef ASINTEST_SECOND_LEVEL_HPP_
#define ASINTEST_SECOND_LEVEL_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "asintest/walk.hpp"

namespace asintest {

enum class MeasureMode {
  kPValueUniform,  // bin p-values 1 - F(S) against the uniform measure
  kDirectArcsine,  // bin S itself against the arcsine measure
};

enum class Verdict { kPass, kFail, kInconclusive };

std::string_view mode_name(MeasureMode mode);  // "pvalue" or "direct"
MeasureMode parse_mode(std::string_view name);
std::string_view verdict_name(Verdict verdict);  // "PASS", "FAIL", "INCONCLUSIVE"
Verdict parse_verdict(std::string_view name);

// Bins, 0-based: bin 0 = [0, 1/(2s)), bin j = [(2j-1)/(2s), (2j+1)/(2s)) for
// 1 <= j < s, bin s = [1 - 1/(2s), 1].
class Partition {
 public:
  explicit Partition(int s);

  int s() const { return s_; }
  std::size_t size() const { return static_cast<std::size_t>(s_) + 1; }
  double lower(std::size_t bin) const;
  double upper(std::size_t bin) const;
  // Throws std::invalid_argument for NaN or x outside [0, 1].
  std::size_t bin_index(double x) const;

 private:
  int s_;
};

// Bin probabilities, summing to 1. In direct mode the last bin is 1 minus
// the sum of the others.
std::vector<double> theoretical_measure(const Partition& partition, MeasureMode mode);

struct BinCounts {
  std::vector<std::uint64_t> observed;
  std::vector<double> expected;  // m * measure
  std::uint64_t m = 0;
  MeasureMode mode = MeasureMode::kDirectArcsine;
};

// Bins |values| (already mapped for |mode|) and attaches the expectations.
BinCounts bin_values(std::span<const double> values, const Partition& partition,
                     MeasureMode mode);

double chi_square_stat(const BinCounts& counts);
// P(X > t) for X ~ chi^2(dof), as Q(dof/2, t/2).
double chi_square_pvalue(double t, int dof);
// Regularized upper incomplete gamma Q(a, x), a > 0, x >= 0.
double regularized_gamma_q(double a, double x);

double tv_distance(const BinCounts& counts);

struct DevroyeThreshold {
  double epsilon = 0.0;         // sqrt(25 ln(3/alpha) / m)
  double threshold = 0.0;       // epsilon / 2, compared against d_tv
  double validity_bound = 0.0;  // sqrt(20 (s+1) / m)
  bool condition_ok = false;    // epsilon >= validity_bound
};

DevroyeThreshold devroye_threshold(std::uint64_t m, int s, double alpha);

struct Reliability {
  double C = 0.0;
  double delta = 0.0;     // 2C / n
  double sigma_lb = 0.0;  // sqrt((s-1) / (s^2 m))
  bool reliable = false;  // delta <= sigma_lb
  std::uint64_t max_reliable_m = 0;  // floor((s-1) (n / (2Cs))^2)
};

Reliability reliability_check(std::uint64_t n, std::uint64_t m, int s);

// m tau^2 (s-1).
double flawed_expected_T(double m, double tau, int s);

struct TestConfig {
  std::uint64_t n = 0;
  std::uint64_t m = 10000;
  int s = 40;
  double alpha = 1e-4;
  MeasureMode mode = MeasureMode::kDirectArcsine;

  void validate() const;

  friend bool operator==(const TestConfig&, const TestConfig&) = default;
};

struct TestReport {
  std::string generator;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  int s = 0;
  double alpha = 0.0;
  MeasureMode mode = MeasureMode::kDirectArcsine;

  std::vector<std::uint64_t> observed;
  std::vector<double> expected;

  double T_asin = 0.0;
  double p_chi2 = 1.0;
  double d_tv = 0.0;
  double tv_epsilon = 0.0;
  double tv_threshold = 0.0;
  double tv_validity_bound = 0.0;
  bool tv_condition_ok = false;

  double C = 0.0;
  double delta = 0.0;
  double sigma_lb = 0.0;
  bool reliable = false;
  std::uint64_t max_reliable_m = 0;

  Verdict verdict_chi2 = Verdict::kPass;
  Verdict verdict_tv = Verdict::kPass;

  // FAIL when either statistic rejects.
  Verdict overall() const;

  friend bool operator==(const TestReport&, const TestReport&) = default;
};

TestReport run_second_level(const TestConfig& config, std::span<const double> basic_results);
TestReport run_second_level(const TestConfig& config,
                            std::span<const SojournFraction> basic_results);

// Gray zone of the adaptive procedure: p-values strictly between these.
inline constexpr double kStrongFailP = 1e-4;
inline constexpr double kClearPassP = 1e-2;

struct AdaptiveOutcome {
  Verdict verdict = Verdict::kInconclusive;
  std::vector<TestReport> history;
};

// Runs a complete test for the given config; |attempt| counts from 0 and
// must select fresh generator output.
using TestRunner = std::function<TestReport(const TestConfig& config, int attempt)>;

// Repeats the test with n doubled while p_chi2 stays in the gray zone, at
// most |max_doublings| times.
AdaptiveOutcome adaptive_retest(const TestConfig& initial, const TestRunner& run,
                                int max_doublings);

}  // namespace asintest

#endif  // ASINTEST_SECOND_LEVEL_HPP_
