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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"

namespace asintest {
namespace {

double exact_as_double(const ExactProbability& p) {
  return std::ldexp(static_cast<double>(p.numerator), -p.log2_denominator);
}

TEST(CdfTest, ClosedFormPoints) {
  EXPECT_DOUBLE_EQ(cdf_asin(0.0), 0.0);
  EXPECT_DOUBLE_EQ(cdf_asin(1.0), 1.0);
  EXPECT_NEAR(cdf_asin(0.5), 0.5, 1e-15);
  EXPECT_NEAR(cdf_asin(0.25), 1.0 / 3.0, 1e-15);
  EXPECT_THROW(cdf_asin(-0.01), std::invalid_argument);
  EXPECT_THROW(cdf_asin(1.01), std::invalid_argument);
  EXPECT_THROW(cdf_asin(std::nan("")), std::invalid_argument);
}

TEST(CdfTest, MonotoneAndInvertible) {
  double prev = -1.0;
  for (int i = 0; i <= 10000; ++i) {
    const double x = i / 10000.0;
    const double f = cdf_asin(x);
    ASSERT_GE(f, prev);
    prev = f;
    ASSERT_NEAR(cdf_asin(quantile_asin(x)), x, 1e-12);
  }
}

TEST(PdfTest, Values) {
  EXPECT_NEAR(pdf_asin(0.5), 2.0 / std::numbers::pi, 1e-15);
  EXPECT_NEAR(pdf_asin(0.25), 0.7351052, 1e-7);
  for (double t = 0.01; t < 0.5; t += 0.01) EXPECT_NEAR(pdf_asin(t), pdf_asin(1.0 - t), 1e-12);
  EXPECT_THROW(pdf_asin(0.0), std::invalid_argument);
  EXPECT_THROW(pdf_asin(1.0), std::invalid_argument);
}

TEST(PdfTest, IntegratesToCdf) {
  // Midpoint rule on [0.1, 0.6].
  const int steps = 200000;
  const double a = 0.1;
  const double b = 0.6;
  const double h = (b - a) / steps;
  double sum = 0.0;
  for (int i = 0; i < steps; ++i) sum += pdf_asin(a + (i + 0.5) * h);
  EXPECT_NEAR(sum * h, cdf_asin(b) - cdf_asin(a), 1e-9);
}

TEST(BasicPvalueTest, Values) {
  EXPECT_NEAR(basic_pvalue(0.5), 0.5, 1e-15);
  EXPECT_DOUBLE_EQ(basic_pvalue(0.0), 1.0);
  EXPECT_DOUBLE_EQ(basic_pvalue(1.0), 0.0);
  EXPECT_NEAR(basic_pvalue(0.25), 2.0 / 3.0, 1e-15);
}

TEST(ExactSojournTest, SmallCases) {
  EXPECT_NEAR(exact_sojourn_prob(0, 1), 0.5, 1e-15);
  EXPECT_NEAR(exact_sojourn_prob(1, 1), 0.5, 1e-15);
  EXPECT_NEAR(exact_sojourn_prob(0, 2), 0.375, 1e-15);
  EXPECT_NEAR(exact_sojourn_prob(1, 2), 0.25, 1e-15);
  EXPECT_NEAR(exact_sojourn_prob(2, 2), 0.375, 1e-15);
  EXPECT_EQ(exact_sojourn_prob_rational(1, 2), (ExactProbability{4, 4}));
  EXPECT_THROW(exact_sojourn_prob(3, 2), std::invalid_argument);
}

TEST(ExactSojournTest, RationalMatchesEnumeration) {
  for (int h = 1; h <= 8; ++h) {
    const oracle::SojournCounts counts = oracle::enumerate_sojourn_counts(h);
    EXPECT_EQ(counts.odd_seen, 0u);
    for (int k = 0; k <= h; ++k) {
      const ExactProbability p = exact_sojourn_prob_rational(k, h);
      ASSERT_EQ(p.log2_denominator, 2 * h);
      ASSERT_TRUE(p.numerator == counts.counts[static_cast<std::size_t>(k)]) << h << " " << k;
    }
  }
}

TEST(ExactSojournTest, LogSpaceMatchesRational) {
  for (std::uint64_t h = 1; h <= kMaxExactHalfLength; ++h) {
    for (std::uint64_t k = 0; k <= h; ++k) {
      const double exact = exact_as_double(exact_sojourn_prob_rational(k, h));
      ASSERT_NEAR(exact_sojourn_prob(k, h) / exact, 1.0, 1e-13) << h << " " << k;
    }
  }
  EXPECT_THROW(exact_sojourn_prob_rational(0, 33), std::invalid_argument);
}

TEST(ExactSojournTest, HighPrecisionReferenceValues) {
  // Reference values from 40-digit binomial arithmetic.
  const std::uint64_t big = std::uint64_t{1} << 20;
  EXPECT_NEAR(exact_sojourn_prob(0, big) / 0.00055096632450304772371, 1.0, 1e-12);
  EXPECT_NEAR(exact_sojourn_prob(1000, big) / 9.8333844442354734602e-6, 1.0, 1e-12);
  EXPECT_NEAR(exact_sojourn_prob(big / 2, big) / 6.0712763672226963684e-7, 1.0, 1e-12);
  EXPECT_NEAR(exact_sojourn_prob(12345, 65536) / 0.000012421672777359744877, 1.0, 1e-12);
  EXPECT_NEAR(exact_sojourn_prob(7, 50) / 0.017970316255678161048, 1.0, 1e-12);

  const std::vector<double> dist = sojourn_distribution(big);
  EXPECT_NEAR(dist[1000] / 9.8333844442354734602e-6, 1.0, 1e-10);
  EXPECT_NEAR(dist[big / 2] / 6.0712763672226963684e-7, 1.0, 1e-10);
}

TEST(ExactSojournTest, NormalizedAndSymmetric) {
  for (std::uint64_t h = 1; h <= 1000; ++h) {
    const std::vector<double> p = sojourn_distribution(h);
    double sum = 0.0;
    for (std::uint64_t k = 0; k <= h; ++k) {
      sum += p[k];
      ASSERT_NEAR(p[k], p[h - k], 1e-15 * p[k]);
    }
    ASSERT_NEAR(sum, 1.0, 1e-12) << h;
  }
}

TEST(SojournCdfTest, WeakInequalityAndRange) {
  const SojournCdf cdf(4);
  EXPECT_NEAR(cdf(0.0), 0.375, 1e-15);    // L <= 0
  EXPECT_NEAR(cdf(0.49), 0.375, 1e-15);   // L <= 1.96
  EXPECT_NEAR(cdf(0.5), 0.625, 1e-15);    // L <= 2
  EXPECT_NEAR(cdf(1.0), 1.0, 1e-15);
  EXPECT_THROW(SojournCdf(3), std::invalid_argument);
  EXPECT_THROW(SojournCdf(0), std::invalid_argument);
}

TEST(BerryEsseenTest, ConstantValues) {
  EXPECT_NEAR(berry_esseen_C(2), 6.5342683901842020683, 1e-12);
  EXPECT_NEAR(berry_esseen_C(10), 75.843816338892493229, 1e-10);
  EXPECT_NEAR(berry_esseen_C(40), 607.33436182048461284, 1e-9);
  EXPECT_THROW(berry_esseen_C(1), std::invalid_argument);
}

TEST(BerryEsseenTest, ErrorBound) {
  const ArcsineError e = approx_error_bound(std::uint64_t{1} << 34, 40);
  EXPECT_NEAR(e.bound, 3.53515125939439e-8, 1e-20);
  EXPECT_EQ(e.s, 40);
  EXPECT_DOUBLE_EQ(e.bound, e.C / e.n);
  EXPECT_THROW(approx_error_bound(1025, 40), std::invalid_argument);
  EXPECT_THROW(approx_error_bound(0, 40), std::invalid_argument);
  double prev = approx_error_bound(2, 40).bound;
  for (std::uint64_t n = 4; n < 2000; n += 2) {
    const double b = approx_error_bound(n, 40).bound;
    ASSERT_LT(b, prev);
    prev = b;
  }
}

TEST(BerryEsseenTest, GapAtInteriorEndpointsWithinBound) {
  const SojournCdf cdf(std::uint64_t{1} << 12);
  EXPECT_LE(max_endpoint_gap(cdf, 40), approx_error_bound(std::uint64_t{1} << 12, 40).bound);
}

TEST(BerryEsseenTest, AtomAtZeroExceedsBoundForLongWalks) {
  // F_n(0) = P(L = 0) ~ 1 / sqrt(pi n / 2) while F(0) = 0, so the gap at the
  // outer endpoint x = 0 decays only like n^(-1/2).
  const std::uint64_t n = std::uint64_t{1} << 14;
  const SojournCdf cdf(n);
  EXPECT_GT(cdf(0.0), approx_error_bound(n, 2).bound);
  EXPECT_NEAR(cdf(0.0), 1.0 / std::sqrt(std::numbers::pi * n / 2.0), 1e-5);
}

}  // namespace
}  // namespace asintest
