// Copyright 2026 The metarsa Authors
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

#include "metarsa/metrics.h"

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "metarsa/error.h"
#include "reference_rows.h"

namespace metarsa {
namespace {

std::vector<double> RandomSimplex(std::mt19937_64& rng, std::size_t n,
                                  double zero_fraction = 0.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> p(n);
  double sum = 0.0;
  for (double& v : p) sum += (v = u(rng) < zero_fraction ? 0.0 : u(rng));
  if (sum == 0.0) {
    p[0] = 1.0;
    sum = 1.0;
  }
  for (double& v : p) v /= sum;
  return p;
}

// Plain two-term KL average, written out independently of the library.
double ReferenceJsd(const std::vector<double>& p, const std::vector<double>& q) {
  double a = 0.0, b = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double m = 0.5 * (p[i] + q[i]);
    if (p[i] > 0) a += p[i] * std::log2(p[i] / m);
    if (q[i] > 0) b += q[i] * std::log2(q[i] / m);
  }
  return 0.5 * (a + b);
}

TEST(Pearson, HandComputedFixture) {
  const std::vector<double> p = {0.5, 0.3, 0.2}, q = {0.2, 0.3, 0.5};
  EXPECT_NEAR(Pearson(p, q), -13.0 / 14.0, 1e-12);
  EXPECT_NEAR(Pearson(p, q), -0.928571, 1e-6);
  EXPECT_NEAR(Pearson(p, p), 1.0, 1e-15);
}

TEST(Pearson, Preconditions) {
  const std::vector<double> flat = {0.25, 0.25, 0.25, 0.25};
  const std::vector<double> p = {0.1, 0.2, 0.3, 0.4};
  EXPECT_THROW(Pearson(flat, p), ZeroVarianceError);
  EXPECT_THROW(Pearson(p, flat), ZeroVarianceError);
  EXPECT_THROW(Pearson(std::vector<double>{1.0}, std::vector<double>{1.0}),
               DomainError);
  EXPECT_THROW(Pearson(p, std::vector<double>{0.5, 0.5}), DomainError);
}

TEST(Pearson, AffineInvariance) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> a(0.1, 10.0), b(-5.0, 5.0);
  for (int trial = 0; trial < 500; ++trial) {
    const auto p = RandomSimplex(rng, 2 + trial % 20);
    const auto q = RandomSimplex(rng, p.size());
    auto t = p;
    const double scale = a(rng), shift = b(rng);
    for (double& v : t) v = scale * v + shift;
    const double r = Pearson(p, q);
    EXPECT_GE(r, -1.0);
    EXPECT_LE(r, 1.0);
    EXPECT_NEAR(Pearson(t, q), r, 1e-12);
    EXPECT_NEAR(Pearson(q, t), r, 1e-12);
  }
}

TEST(Jsd, HandComputedFixtures) {
  EXPECT_NEAR(Jsd(std::vector<double>{0.5, 0.5}, std::vector<double>{1, 0}),
              0.311278, 1e-6);
  EXPECT_NEAR(Jsd(std::vector<double>{1, 0}, std::vector<double>{0, 1}), 1.0,
              1e-15);
  const std::vector<double> p = {0.2, 0.3, 0.5};
  EXPECT_EQ(Jsd(p, p), 0.0);
}

TEST(Jsd, NaturalLogScalesByLn2) {
  const std::vector<double> p = {0.5, 0.5}, q = {1.0, 0.0};
  EXPECT_NEAR(Jsd(p, q, LogBase::kE), Jsd(p, q) * std::log(2.0), 1e-15);
}

TEST(Jsd, RejectsMismatchedLengths) {
  EXPECT_THROW(Jsd(std::vector<double>{0.5, 0.5},
                   std::vector<double>{0.2, 0.3, 0.5}),
               DomainError);
}

TEST(Jsd, PropertiesOnRandomDistributions) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + trial % 59;
    const auto p = RandomSimplex(rng, n, 0.3);
    const auto q = RandomSimplex(rng, n, 0.3);
    const double d = Jsd(p, q);
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, 1.0);
    EXPECT_NEAR(d, Jsd(q, p), 1e-15);
    EXPECT_NEAR(d, ReferenceJsd(p, q), 1e-12);
    EXPECT_NEAR(Jsd(p, p), 0.0, 1e-15);
  }
}

TEST(TopK, DescendingWithIndexTieBreak) {
  const std::vector<double> p = {0.1, 0.3, 0.3, 0.2, 0.1};
  EXPECT_EQ(TopK(p, 3), (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_EQ(TopK(p, 5), (std::vector<std::size_t>{1, 2, 3, 0, 4}));
  EXPECT_EQ(TopK(p, 1), (std::vector<std::size_t>{1}));
  EXPECT_THROW(TopK(p, 0), DomainError);
  EXPECT_THROW(TopK(p, 6), DomainError);
}

TEST(TopKTies, CountsTiedEntriesInTopK) {
  EXPECT_EQ(TopKTies(std::vector<double>{0.4, 0.3, 0.2, 0.1}, 3), 0);
  EXPECT_EQ(TopKTies(std::vector<double>{0.3, 0.3, 0.2, 0.2}, 3), 3);
  EXPECT_EQ(TopKTies(std::vector<double>{0.5, 0.2, 0.2, 0.1}, 3), 2);
}

TEST(KAgreement, IdenticalAndFullOverlap) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 10;
    const auto p = RandomSimplex(rng, n, 0.2);
    const auto q = RandomSimplex(rng, n, 0.2);
    for (std::size_t k = 1; k <= n; ++k) {
      EXPECT_EQ(KAgreement(p, p, k), static_cast<int>(k));
      EXPECT_EQ(KAgreement(p, q, k), KAgreement(q, p, k));
      EXPECT_GE(KAgreement(p, q, k), 0);
      EXPECT_LE(KAgreement(p, q, k), static_cast<int>(k));
    }
    EXPECT_EQ(KAgreement(p, q, n), static_cast<int>(n));
  }
}

TEST(KAgreement, ReferenceRowsFromRankData) {
  int sum1 = 0, sum3 = 0;
  for (const auto& row : testing::ReferenceRows()) {
    const auto data = testing::ToRankData(row);
    const int a1 = KAgreement(data.model, data.human, 1);
    const int a3 = KAgreement(data.model, data.human, 3);
    sum1 += a1;
    sum3 += a3;
    EXPECT_EQ(a1, row.agreement1) << row.metaphor;
    if (std::string(row.metaphor) == "Journalists are vultures") {
      // The listed sets share only "Opportunism"; the printed column says 2.
      EXPECT_EQ(a3, 1);
      EXPECT_EQ(row.agreement3, 2);
    } else {
      EXPECT_EQ(a3, row.agreement3) << row.metaphor;
    }
  }
  EXPECT_EQ(sum1, 11);
  EXPECT_EQ(sum3, 33);
  EXPECT_NEAR(sum3 / 24.0, 1.37, 0.01);
}

TEST(KAgreement, DancersAndWivesRows) {
  // Vocabulary: Elegance, Lightness, Beauty, Harmony.
  const std::vector<double> human = {0.5, 0.3, 0.2, 0.0};
  const std::vector<double> model = {0.5, 0.2, 0.0, 0.3};
  EXPECT_EQ(KAgreement(model, human, 3), 2);
  EXPECT_EQ(KAgreement(model, human, 1), 1);
  // Heaviness, Intrusiveness, Noiseness | Strength, Power, Resistance.
  const std::vector<double> h2 = {0.5, 0.3, 0.2, 0, 0, 0};
  const std::vector<double> m2 = {0, 0, 0, 0.5, 0.3, 0.2};
  EXPECT_EQ(KAgreement(m2, h2, 3), 0);
}

}  // namespace
}  // namespace metarsa
