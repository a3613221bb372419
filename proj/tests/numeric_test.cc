// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "prefalloc/numeric.hpp"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "oracle.hpp"
#include "prefalloc/random.hpp"

namespace prefalloc {
namespace {

TEST(HarmonicTest, SmallValues) {
  EXPECT_EQ(harmonic(1), Rational(1));
  EXPECT_EQ(harmonic(2), Rational(3, 2));
  EXPECT_EQ(harmonic(4), Rational(25, 12));
  EXPECT_THROW(harmonic(0), DomainError);
}

TEST(HarmonicTest, ExactBeyondMachineIntegers) {
  // lcm(1..60) does not fit in 64 bits; the recurrence must still hold.
  EXPECT_EQ(harmonic(60) - harmonic(59), Rational(1, 60));
  EXPECT_NEAR(harmonic_double(1000), std::log(1000.0) + std::numbers::egamma, 1e-3);
}

TEST(HarmonicTest, FloatMatchesExact) {
  for (int k : {1, 2, 3, 9, 50, 105, 300}) {
    const double exact = static_cast<double>(harmonic(k));
    EXPECT_NEAR(harmonic_double(k), exact, 1e-14 * exact) << "k=" << k;
  }
}

TEST(LambertWTest, KnownPoints) {
  EXPECT_EQ(lambert_w(0.0), 0.0);
  EXPECT_NEAR(lambert_w(std::numbers::e), 1.0, 1e-12);
  EXPECT_NEAR(lambert_w(1.0), 0.567143290410, 1e-9);
  EXPECT_NEAR(lambert_w(1.0), oracle::lambert_w_bisection(1.0), 1e-12);
  EXPECT_THROW(lambert_w(-0.1), DomainError);
}

TEST(LambertWTest, ResidualAcrossRange) {
  for (double x : {0.0, 0.5, 1.0, std::numbers::e, 10.0, 1e6, 1e-9, 3.0, 460.0}) {
    const double w = lambert_w(x);
    EXPECT_LE(std::abs(w * std::exp(w) - x), 1e-12 * std::max(1.0, x)) << "x=" << x;
    EXPECT_NEAR(w, oracle::lambert_w_bisection(x), 1e-10 * std::max(1.0, w)) << "x=" << x;
  }
}

TEST(CeilTolerantTest, AbsorbsNoise) {
  EXPECT_EQ(ceil_tolerant(5.0 + 1e-13), 5);
  EXPECT_EQ(ceil_tolerant(5.01), 6);
  EXPECT_EQ(ceil_tolerant(1178.92), 1179);
}

TEST(BinomialTest, Values) {
  EXPECT_EQ(binomial_saturating(8, 4), 70);
  EXPECT_EQ(binomial_saturating(5, 0), 1);
  EXPECT_EQ(binomial_saturating(5, 6), 0);
  EXPECT_EQ(binomial_saturating(60, 30), 118264581564861424LL);
  EXPECT_EQ(binomial_saturating(200, 100), std::numeric_limits<std::int64_t>::max());
}

TEST(RngTest, ReproducibleAndInRange) {
  Rng a(5);
  Rng b(5);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.below(7);
    EXPECT_EQ(x, b.below(7));
    EXPECT_LT(x, 7u);
  }
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
}

TEST(RngTest, SubsetIsDistinctAndUniform) {
  Rng rng(11);
  std::vector<int> hits(7, 0);
  for (int t = 0; t < 6000; ++t) {
    auto s = rng.sample_subset(6, 3);
    std::sort(s.begin(), s.end());
    EXPECT_EQ(std::unique(s.begin(), s.end()), s.end());
    for (int a : s) ++hits[a];
  }
  // Each element lands in half the samples: 3000 +- 5 sd (sd ~ 39).
  for (int a = 1; a <= 6; ++a) EXPECT_NEAR(hits[a], 3000, 200);
}

}  // namespace
}  // namespace prefalloc
