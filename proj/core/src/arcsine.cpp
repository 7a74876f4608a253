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

#include "asintest/arcsine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace asintest {
namespace {

void require_unit_interval(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument(std::string(what) + ": argument outside [0, 1]");
  }
}

// ln(C(2k, k) / 4^k). Below 32 a direct product, above it the asymptotic
// series, whose truncation error is under 1e-16 there.
double log_central_ratio(std::uint64_t k) {
  if (k < 32) {
    long double r = 1.0L;
    for (std::uint64_t j = 1; j <= k; ++j) {
      r *= static_cast<long double>(2 * j - 1) / static_cast<long double>(2 * j);
    }
    return static_cast<double>(std::log(r));
  }
  const long double x = static_cast<long double>(k);
  const long double inv = 1.0L / x;
  const long double inv2 = inv * inv;
  const long double series =
      inv * (-1.0L / 8 + inv2 * (1.0L / 192 + inv2 * (-1.0L / 640 + inv2 * (17.0L / 14336))));
  return static_cast<double>(-0.5L * std::log(std::numbers::pi_v<long double> * x) + series);
}

uint128 central_binomial(std::uint64_t k) {
  // C(2k, k) built as C(k+j, j) for j = 1..k; every intermediate is an
  // integer and stays below 2^70 for k <= 32.
  uint128 c = 1;
  for (std::uint64_t j = 1; j <= k; ++j) c = c * (k + j) / j;
  return c;
}

}  // namespace

double cdf_asin(double x) {
  require_unit_interval(x, "cdf_asin");
  return 2.0 / std::numbers::pi * std::asin(std::sqrt(x));
}

double pdf_asin(double t) {
  if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("pdf_asin: argument outside (0, 1)");
  return 1.0 / (std::numbers::pi * std::sqrt(t * (1.0 - t)));
}

double quantile_asin(double u) {
  require_unit_interval(u, "quantile_asin");
  const double s = std::sin(std::numbers::pi * u / 2.0);
  return std::clamp(s * s, 0.0, 1.0);
}

double basic_pvalue(double s_asin) {
  require_unit_interval(s_asin, "basic_pvalue");
  return 1.0 - cdf_asin(s_asin);
}

double exact_sojourn_prob(std::uint64_t k, std::uint64_t half_length) {
  if (k > half_length) throw std::invalid_argument("exact_sojourn_prob: k exceeds half length");
  return std::exp(log_central_ratio(k) + log_central_ratio(half_length - k));
}

ExactProbability exact_sojourn_prob_rational(std::uint64_t k, std::uint64_t half_length) {
  if (k > half_length) {
    throw std::invalid_argument("exact_sojourn_prob_rational: k exceeds half length");
  }
  if (half_length > kMaxExactHalfLength) {
    throw std::invalid_argument("exact_sojourn_prob_rational: half length above 32");
  }
  return ExactProbability{central_binomial(k) * central_binomial(half_length - k),
                          static_cast<int>(2 * half_length)};
}

std::vector<double> sojourn_distribution(std::uint64_t half_length) {
  // u_j = C(2j, j) / 4^j by the ratio recurrence, in extended precision so
  // the accumulated rounding stays near 1e-13 even for h = 2^20.
  std::vector<long double> u(half_length + 1);
  u[0] = 1.0L;
  for (std::uint64_t j = 1; j <= half_length; ++j) {
    u[j] = u[j - 1] * static_cast<long double>(2 * j - 1) / static_cast<long double>(2 * j);
  }
  std::vector<double> p(half_length + 1);
  for (std::uint64_t k = 0; k <= half_length; ++k) {
    p[k] = static_cast<double>(u[k] * u[half_length - k]);
  }
  return p;
}

SojournCdf::SojournCdf(std::uint64_t n) : n_(n) {
  if (n == 0 || n % 2 != 0) throw std::invalid_argument("SojournCdf: n must be even and positive");
  const std::vector<double> p = sojourn_distribution(n / 2);
  cumulative_.resize(p.size());
  // Kahan summation keeps the tail of the cdf within a few ulps of 1.
  double sum = 0.0;
  double carry = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double y = p[k] - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
    cumulative_[k] = sum;
  }
}

double SojournCdf::operator()(double x) const {
  require_unit_interval(x, "SojournCdf");
  // L <= x n with L = 2k, i.e. k <= floor(x n / 2).
  const long double limit = static_cast<long double>(x) * static_cast<long double>(n_) / 2.0L;
  const auto k = static_cast<std::uint64_t>(std::floor(limit));
  return cumulative_[std::min<std::uint64_t>(k, cumulative_.size() - 1)];
}

double berry_esseen_C(int s) {
  if (s < 2) throw std::invalid_argument("berry_esseen_C: s must be at least 2");
  const double sd = static_cast<double>(s);
  const double base = 4.0 * sd * sd / (2.0 * sd - 1.0);
  return 4.0 / (3.0 * std::numbers::pi) * (2.0 - 3.0 / (2.0 * sd)) * std::pow(base, 1.5);
}

ArcsineError approx_error_bound(std::uint64_t n, int s) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("approx_error_bound: n must be even and >= 2");
  ArcsineError e;
  e.s = s;
  e.C = berry_esseen_C(s);
  e.n = n;
  e.bound = e.C / static_cast<double>(n);
  return e;
}

double max_endpoint_gap(const SojournCdf& cdf, int s) {
  if (s < 2) throw std::invalid_argument("max_endpoint_gap: s must be at least 2");
  double gap = 0.0;
  for (int i = 1; i <= s; ++i) {
    const double x = static_cast<double>(2 * i - 1) / (2.0 * s);
    gap = std::max(gap, std::abs(cdf(x) - cdf_asin(x)));
  }
  return gap;
}

}  // namespace asintest
