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

// The arcsine law F(t) = (2/pi) asin(sqrt t) and the exact distribution of the
// sojourn count L_n of a simple symmetric walk of even length n = 2h:
//   P(L_n = 2k) = C(2k, k) C(2(h-k), h-k) / 4^h,   0 <= k <= h.

#ifndef ASINTEST_ARCSINE_HPP_
#define ASINTEST_ARCSINE_HPP_

#include <cstdint>
#include <vector>

#include "asintest/prng.hpp"

namespace asintest {

double cdf_asin(double x);
double pdf_asin(double t);
// Inverse of cdf_asin: sin^2(pi u / 2).
double quantile_asin(double u);
// Upper tail 1 - cdf_asin(s).
double basic_pvalue(double s_asin);

// P(L_{2h} = 2k) in log space. Relative error below 1e-12 for h up to 2^20.
double exact_sojourn_prob(std::uint64_t k, std::uint64_t half_length);

// Exact value numerator / 2^log2_denominator.
struct ExactProbability {
  uint128 numerator = 0;
  int log2_denominator = 0;

  friend bool operator==(const ExactProbability&, const ExactProbability&) = default;
};

inline constexpr std::uint64_t kMaxExactHalfLength = 32;

// Exact rational form for half_length <= kMaxExactHalfLength.
ExactProbability exact_sojourn_prob_rational(std::uint64_t k, std::uint64_t half_length);

// Entry k is P(L_{2h} = 2k), k = 0 .. h.
std::vector<double> sojourn_distribution(std::uint64_t half_length);

// Cumulative distribution of the sojourn fraction of a walk of length n:
// F_n(x) = P(L_n <= x n).
class SojournCdf {
 public:
  // Throws std::invalid_argument unless n is even and positive.
  explicit SojournCdf(std::uint64_t n);

  double operator()(double x) const;
  std::uint64_t length() const { return n_; }

 private:
  std::uint64_t n_;
  std::vector<double> cumulative_;  // cumulative_[k] = P(L_n <= 2k)
};

// (4 / (3 pi)) (2 - 3/(2s)) (4 s^2 / (2s - 1))^(3/2).
double berry_esseen_C(int s);

struct ArcsineError {
  int s = 0;
  double C = 0.0;
  std::uint64_t n = 0;
  double bound = 0.0;  // C / n
};

// Uniform bound on |F_n - F| at the partition endpoints. Rejects odd n and
// s < 2.
ArcsineError approx_error_bound(std::uint64_t n, int s);

// max over the interior partition endpoints (2i-1)/(2s), i = 1..s, of
// |F_n(x) - cdf_asin(x)|.
double max_endpoint_gap(const SojournCdf& cdf, int s);

}  // namespace asintest

#endif  // ASINTEST_ARCSINE_HPP_
