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

#include "asintest/second_level.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "asintest/arcsine.hpp"

namespace asintest {
namespace {

constexpr double kGammaTolerance = 1e-15;
constexpr int kGammaMaxIterations = 100000;

// e^{-x} x^a / Gamma(a).
double gamma_prefactor(double a, double x) {
  return std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double lower_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int k = 1; k < kGammaMaxIterations; ++k) {
    term *= x / (a + k);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kGammaTolerance) break;
  }
  return sum * gamma_prefactor(a, x);
}

// Modified Lentz evaluation of the continued fraction for Q(a, x).
double upper_fraction(double a, double x) {
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kGammaMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kGammaTolerance) break;
  }
  return h * gamma_prefactor(a, x);
}

}  // namespace

std::string_view mode_name(MeasureMode mode) {
  return mode == MeasureMode::kPValueUniform ? "pvalue" : "direct";
}

MeasureMode parse_mode(std::string_view name) {
  if (name == "pvalue") return MeasureMode::kPValueUniform;
  if (name == "direct") return MeasureMode::kDirectArcsine;
  throw std::invalid_argument("unknown measure mode '" + std::string(name) + "'");
}

std::string_view verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::kPass:
      return "PASS";
    case Verdict::kFail:
      return "FAIL";
    case Verdict::kInconclusive:
      return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

Verdict parse_verdict(std::string_view name) {
  if (name == "PASS") return Verdict::kPass;
  if (name == "FAIL") return Verdict::kFail;
  if (name == "INCONCLUSIVE") return Verdict::kInconclusive;
  throw std::invalid_argument("unknown verdict '" + std::string(name) + "'");
}

Partition::Partition(int s) : s_(s) {
  if (s < 2) throw std::invalid_argument("Partition: s must be at least 2");
}

double Partition::lower(std::size_t bin) const {
  if (bin == 0) return 0.0;
  return static_cast<double>(2 * bin - 1) / (2.0 * s_);
}

double Partition::upper(std::size_t bin) const {
  if (bin >= static_cast<std::size_t>(s_)) return 1.0;
  return lower(bin + 1);
}

std::size_t Partition::bin_index(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("bin_index: value outside [0, 1]");
  const auto last = static_cast<std::size_t>(s_);
  auto j = static_cast<std::size_t>(std::floor((x * 2.0 * s_ + 1.0) / 2.0));
  if (j > last) j = last;
  // Settle rounding at the boundaries against the exact same lower() values
  // used everywhere else.
  while (j > 0 && x < lower(j)) --j;
  while (j < last && x >= lower(j + 1)) ++j;
  return j;
}

std::vector<double> theoretical_measure(const Partition& partition, MeasureMode mode) {
  const std::size_t bins = partition.size();
  std::vector<double> mu(bins);
  if (mode == MeasureMode::kPValueUniform) {
    const double s = partition.s();
    for (std::size_t j = 0; j < bins; ++j) {
      mu[j] = (j == 0 || j + 1 == bins) ? 1.0 / (2.0 * s) : 1.0 / s;
    }
    return mu;
  }
  double running = 0.0;
  for (std::size_t j = 0; j + 1 < bins; ++j) {
    mu[j] = cdf_asin(partition.upper(j)) - cdf_asin(partition.lower(j));
    running += mu[j];
  }
  mu[bins - 1] = 1.0 - running;
  return mu;
}

BinCounts bin_values(std::span<const double> values, const Partition& partition,
                     MeasureMode mode) {
  BinCounts counts;
  counts.mode = mode;
  counts.m = values.size();
  counts.observed.assign(partition.size(), 0);
  for (double v : values) ++counts.observed[partition.bin_index(v)];
  const std::vector<double> mu = theoretical_measure(partition, mode);
  counts.expected.resize(mu.size());
  for (std::size_t j = 0; j < mu.size(); ++j) {
    counts.expected[j] = static_cast<double>(counts.m) * mu[j];
  }
  return counts;
}

double chi_square_stat(const BinCounts& counts) {
  if (counts.observed.size() != counts.expected.size()) {
    throw std::invalid_argument("chi_square_stat: observed and expected sizes differ");
  }
  double t = 0.0;
  for (std::size_t j = 0; j < counts.observed.size(); ++j) {
    const double e = counts.expected[j];
    if (!(e > 0.0)) throw std::invalid_argument("chi_square_stat: expected count must be positive");
    const double diff = static_cast<double>(counts.observed[j]) - e;
    t += diff * diff / e;
  }
  return t;
}

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0)) throw std::invalid_argument("regularized_gamma_q: a must be positive");
  if (!(x >= 0.0)) throw std::invalid_argument("regularized_gamma_q: x must be nonnegative");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - lower_series(a, x);
  return upper_fraction(a, x);
}

double chi_square_pvalue(double t, int dof) {
  if (dof < 1) throw std::invalid_argument("chi_square_pvalue: dof must be positive");
  if (!(t >= 0.0)) throw std::invalid_argument("chi_square_pvalue: statistic must be nonnegative");
  return regularized_gamma_q(dof / 2.0, t / 2.0);
}

double tv_distance(const BinCounts& counts) {
  if (counts.m == 0) throw std::invalid_argument("tv_distance: no observations");
  const double m = static_cast<double>(counts.m);
  double sum = 0.0;
  for (std::size_t j = 0; j < counts.observed.size(); ++j) {
    sum += std::abs(counts.expected[j] / m - static_cast<double>(counts.observed[j]) / m);
  }
  return 0.5 * sum;
}

DevroyeThreshold devroye_threshold(std::uint64_t m, int s, double alpha) {
  if (m == 0) throw std::invalid_argument("devroye_threshold: m must be positive");
  if (s < 2) throw std::invalid_argument("devroye_threshold: s must be at least 2");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("devroye_threshold: alpha outside (0, 1)");
  const double md = static_cast<double>(m);
  DevroyeThreshold d;
  d.epsilon = std::sqrt(25.0 * std::log(3.0 / alpha) / md);
  d.threshold = d.epsilon / 2.0;
  d.validity_bound = std::sqrt(20.0 * (s + 1) / md);
  d.condition_ok = d.epsilon >= d.validity_bound;
  return d;
}

Reliability reliability_check(std::uint64_t n, std::uint64_t m, int s) {
  if (m == 0) throw std::invalid_argument("reliability_check: m must be positive");
  const ArcsineError err = approx_error_bound(n, s);
  Reliability r;
  r.C = err.C;
  r.delta = 2.0 * err.bound;
  const double sd = static_cast<double>(s);
  r.sigma_lb = std::sqrt((sd - 1.0) / (sd * sd * static_cast<double>(m)));
  r.reliable = r.delta <= r.sigma_lb;
  const long double ratio =
      static_cast<long double>(n) / (2.0L * static_cast<long double>(err.C) * sd);
  const long double bound = (sd - 1.0L) * ratio * ratio;
  r.max_reliable_m = bound >= 0x1p64L ? std::numeric_limits<std::uint64_t>::max()
                                      : static_cast<std::uint64_t>(std::floor(bound));
  return r;
}

double flawed_expected_T(double m, double tau, int s) {
  if (!(tau >= 0.0 && tau <= 1.0)) throw std::invalid_argument("flawed_expected_T: tau outside [0, 1]");
  return m * tau * tau * static_cast<double>(s - 1);
}

void TestConfig::validate() const {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("n must be even and at least 2");
  if (m == 0) throw std::invalid_argument("m must be at least 1");
  if (s < 2) throw std::invalid_argument("s must be at least 2");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
}

Verdict TestReport::overall() const {
  return verdict_chi2 == Verdict::kFail || verdict_tv == Verdict::kFail ? Verdict::kFail
                                                                        : Verdict::kPass;
}

TestReport run_second_level(const TestConfig& config, std::span<const double> basic_results) {
  config.validate();
  if (basic_results.size() != config.m) {
    throw std::invalid_argument("run_second_level: expected " + std::to_string(config.m) +
                                " basic results, got " + std::to_string(basic_results.size()));
  }
  std::vector<double> binned(basic_results.size());
  for (std::size_t j = 0; j < basic_results.size(); ++j) {
    const double v = basic_results[j];
    if (std::isnan(v)) throw std::invalid_argument("run_second_level: NaN basic result");
    binned[j] = config.mode == MeasureMode::kPValueUniform ? basic_pvalue(v) : v;
  }
  const Partition partition(config.s);
  const BinCounts counts = bin_values(binned, partition, config.mode);

  TestReport r;
  r.n = config.n;
  r.m = config.m;
  r.s = config.s;
  r.alpha = config.alpha;
  r.mode = config.mode;
  r.observed = counts.observed;
  r.expected = counts.expected;
  r.T_asin = chi_square_stat(counts);
  r.p_chi2 = chi_square_pvalue(r.T_asin, config.s);
  r.d_tv = tv_distance(counts);

  const DevroyeThreshold dev = devroye_threshold(config.m, config.s, config.alpha);
  r.tv_epsilon = dev.epsilon;
  r.tv_threshold = dev.threshold;
  r.tv_validity_bound = dev.validity_bound;
  r.tv_condition_ok = dev.condition_ok;

  const Reliability rel = reliability_check(config.n, config.m, config.s);
  r.C = rel.C;
  r.delta = rel.delta;
  r.sigma_lb = rel.sigma_lb;
  r.reliable = rel.reliable;
  r.max_reliable_m = rel.max_reliable_m;

  r.verdict_chi2 = r.p_chi2 < config.alpha ? Verdict::kFail : Verdict::kPass;
  r.verdict_tv = r.d_tv > r.tv_threshold ? Verdict::kFail : Verdict::kPass;
  return r;
}

TestReport run_second_level(const TestConfig& config,
                            std::span<const SojournFraction> basic_results) {
  std::vector<double> values(basic_results.size());
  for (std::size_t j = 0; j < basic_results.size(); ++j) values[j] = basic_results[j].value();
  return run_second_level(config, values);
}

AdaptiveOutcome adaptive_retest(const TestConfig& initial, const TestRunner& run,
                                int max_doublings) {
  if (max_doublings < 0) throw std::invalid_argument("adaptive_retest: max_doublings must be >= 0");
  AdaptiveOutcome out;
  TestConfig config = initial;
  for (int attempt = 0;; ++attempt) {
    out.history.push_back(run(config, attempt));
    const double p = out.history.back().p_chi2;
    if (p <= kStrongFailP) {
      out.verdict = Verdict::kFail;
      return out;
    }
    if (p >= kClearPassP) {
      out.verdict = Verdict::kPass;
      return out;
    }
    if (attempt == max_doublings) {
      out.verdict = Verdict::kInconclusive;
      return out;
    }
    if (config.n > std::numeric_limits<std::uint64_t>::max() / 2) {
      throw std::overflow_error("adaptive_retest: sequence length overflow");
    }
    config.n *= 2;
  }
}

}  // namespace asintest
