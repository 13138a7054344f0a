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

#include "metarsa/evaluation.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "fixtures.h"
#include "gtest/gtest.h"
#include "metarsa/error.h"

namespace metarsa {
namespace {

using testing::Item;
using testing::MakeTable;

TEST(Evaluate, ModelEqualToHumanIsPerfect) {
  const auto table = MakeTable({{0.4, 0.3, 0.2, 0.1},
                                {0.1, 0.2, 0.3, 0.4},
                                {0.25, 0.35, 0.15, 0.25}});
  RsaConfig config;
  config.lambda = 3.0;
  const std::vector<MetaphorItem> items = {
      Item("a", "c0", "c1"),
      Item("b", "c2", "c0", MetaphorClass::kNonVehicleInherent)};
  HumanResponseTable human;
  for (const auto& item : items) {
    human.Add(item.id, Interpret(item, config, table).probs());
  }
  const auto report = Evaluate(items, human, config, table);
  EXPECT_EQ(report.tag, "model");
  for (const auto& e : report.items) {
    EXPECT_NEAR(e.pearson, 1.0, 1e-12);
    EXPECT_NEAR(e.jsd, 0.0, 1e-12);
    EXPECT_EQ(e.k_agreement.at(1), 1);
    EXPECT_EQ(e.k_agreement.at(3), 3);
    EXPECT_TRUE(e.model_argmax_in_human_top3);
  }
  EXPECT_EQ(report.inherent.count, 1);
  EXPECT_EQ(report.non_inherent.count, 1);
  EXPECT_EQ(report.overall.k_agreement_total.at(1), 2);
  EXPECT_DOUBLE_EQ(report.overall.argmax_in_human_top3_rate, 1.0);
  EXPECT_FALSE(report.test.has_value());
}

TEST(Evaluate, AggregatesRecomputeFromEntries) {
  const Dataset data = testing::SyntheticPaperDataset(9, 15.0);
  RsaConfig config;
  config.lambda = 12.0;
  EvalOptions options;
  options.test_ids = {"m1", "m4", "m7"};
  const auto report =
      Evaluate(data.metaphors, data.human, config, data.typicality, options);
  ASSERT_EQ(report.items.size(), 24u);

  auto check = [](const Aggregate& a, const std::vector<MetaphorEval>& es) {
    ASSERT_EQ(a.count, static_cast<int>(es.size()));
    double r = 0, j = 0, in_top3 = 0;
    int k1 = 0, k3 = 0, any3 = 0;
    for (const auto& e : es) {
      r += e.pearson;
      j += e.jsd;
      k1 += e.k_agreement.at(1);
      k3 += e.k_agreement.at(3);
      any3 += e.k_agreement.at(3) > 0;
      in_top3 += e.model_argmax_in_human_top3;
    }
    const double n = static_cast<double>(es.size());
    r /= n;
    j /= n;
    double ssr = 0, ssj = 0;
    for (const auto& e : es) {
      ssr += (e.pearson - r) * (e.pearson - r);
      ssj += (e.jsd - j) * (e.jsd - j);
    }
    EXPECT_NEAR(a.mean_pearson, r, 1e-12);
    EXPECT_NEAR(a.mean_jsd, j, 1e-12);
    EXPECT_NEAR(a.sd_pearson, std::sqrt(ssr / (n - 1)), 1e-12);
    EXPECT_NEAR(a.sd_jsd, std::sqrt(ssj / (n - 1)), 1e-12);
    EXPECT_EQ(a.k_agreement_total.at(1), k1);
    EXPECT_EQ(a.k_agreement_total.at(3), k3);
    EXPECT_NEAR(a.k_agreement_mean.at(3), k3 / n, 1e-12);
    EXPECT_NEAR(a.k_overlap_rate.at(3), any3 / n, 1e-12);
    EXPECT_NEAR(a.argmax_in_human_top3_rate, in_top3 / n, 1e-12);
  };
  std::vector<MetaphorEval> inherent, non_inherent, test;
  for (const auto& e : report.items) {
    (e.metaphor_class == MetaphorClass::kVehicleInherent ? inherent
                                                         : non_inherent)
        .push_back(e);
    if (e.id == "m1" || e.id == "m4" || e.id == "m7") test.push_back(e);
  }
  check(report.overall, report.items);
  check(report.inherent, inherent);
  check(report.non_inherent, non_inherent);
  ASSERT_TRUE(report.test.has_value());
  check(*report.test, test);
}

TEST(Evaluate, DeterministicAndRejectsBadK) {
  const Dataset data = testing::SyntheticPaperDataset(4);
  RsaConfig config;
  config.lambda = 20.0;
  const auto a = Evaluate(data.metaphors, data.human, config, data.typicality);
  const auto b = Evaluate(data.metaphors, data.human, config, data.typicality);
  for (std::size_t m = 0; m < a.items.size(); ++m) {
    EXPECT_EQ(a.items[m].model, b.items[m].model);
    EXPECT_EQ(a.items[m].pearson, b.items[m].pearson);
  }
  EvalOptions options;
  options.ks = {60};
  EXPECT_THROW(
      Evaluate(data.metaphors, data.human, config, data.typicality, options),
      DomainError);
}

TEST(Summarize, SingleItemHasZeroSd) {
  MetaphorEval e;
  e.pearson = 0.5;
  e.jsd = 0.2;
  e.k_agreement = {{1, 1}};
  const std::vector<MetaphorEval> one = {e};
  const auto a = Summarize(one);
  EXPECT_EQ(a.count, 1);
  EXPECT_EQ(a.sd_pearson, 0.0);
  EXPECT_EQ(a.mean_pearson, 0.5);
}

TEST(AblateRelevance, UniformTopicRowIsUnchanged) {
  const auto table = MakeTable({{0.25, 0.25, 0.25, 0.25},
                                {0.1, 0.2, 0.3, 0.4},
                                {0.4, 0.1, 0.1, 0.4}});
  const std::vector<MetaphorItem> items = {Item("a", "c0", "c1"),
                                           Item("b", "c0", "c2")};
  HumanResponseTable human;
  human.Add("a", {1, 2, 3, 4});
  human.Add("b", {4, 3, 2, 1});
  RsaConfig config;
  config.lambda = 7.0;
  const auto full = Evaluate(items, human, config, table);
  const auto ablated = AblateRelevance(items, human, config, table);
  EXPECT_EQ(ablated.tag, "ablation: no-relevance");
  EXPECT_EQ(ablated.config.goal_prior, GoalPrior::kUniform);
  for (std::size_t m = 0; m < 2; ++m) {
    for (std::size_t i = 0; i < 4; ++i) {
      EXPECT_NEAR(full.items[m].model[i], ablated.items[m].model[i], 1e-15);
    }
  }
}

TEST(AblateRelevance, TopicFocusedRelevanceHelpsWhenHumansAgree) {
  // Humans pick feature 0, the most typical feature of the topic, which the
  // vehicle does not single out.
  const auto table = MakeTable({{0.347, 0.110, 0.322, 0.221},
                                {0.298, 0.372, 0.075, 0.255},
                                {0.315, 0.201, 0.323, 0.161}});
  const std::vector<MetaphorItem> items = {Item("a", "c0", "c1")};
  HumanResponseTable human;
  human.Add("a", {30, 4, 4, 2});
  RsaConfig config;
  config.lambda = 10.0;
  const double full = Evaluate(items, human, config, table).items[0].pearson;
  const double ablated =
      AblateRelevance(items, human, config, table).items[0].pearson;
  EXPECT_LT(ablated, full - 0.05);
}

TEST(GridAblation, SinglePointMatchesEvaluate) {
  const Dataset data = testing::SyntheticPaperDataset(6);
  RsaConfig config;
  const std::vector<double> grid = {17.5};
  const auto result =
      AblateLambdaInterpolation(data.metaphors, data.metaphors, data.human,
                                config, data.typicality, grid);
  config.lambda = 17.5;
  const auto direct =
      Evaluate(data.metaphors, data.human, config, data.typicality);
  EXPECT_EQ(result.best_lambda, 17.5);
  EXPECT_EQ(result.report.tag, "ablation: grid-lambda");
  ASSERT_EQ(result.report.items.size(), direct.items.size());
  for (std::size_t m = 0; m < direct.items.size(); ++m) {
    EXPECT_EQ(result.report.items[m].model, direct.items[m].model);
  }
  EXPECT_EQ(result.report.overall.mean_pearson, direct.overall.mean_pearson);
  EXPECT_THROW(AblateLambdaInterpolation(data.metaphors, data.metaphors,
                                         data.human, config, data.typicality,
                                         std::vector<double>{}),
               DomainError);
}

TEST(GridAblation, SupersetGridNeverWorse) {
  const Dataset data = testing::SyntheticPaperDataset(7);
  RsaConfig config;
  const std::vector<double> coarse = {1.0, 5.0, 25.0, 80.0};
  std::vector<double> fine = coarse;
  fine.push_back(18.0);
  fine.push_back(22.0);
  const auto a = AblateLambdaInterpolation(data.metaphors, data.metaphors,
                                           data.human, config,
                                           data.typicality, coarse);
  const auto b = AblateLambdaInterpolation(data.metaphors, data.metaphors,
                                           data.human, config,
                                           data.typicality, fine);
  EXPECT_GE(b.best_objective, a.best_objective);
  for (const auto& [lambda, value] : b.scan) {
    EXPECT_LE(value, b.best_objective);
  }
  ASSERT_EQ(b.scan.size(), fine.size());
}

TEST(DefaultLambdaGrid, LogSpacedEndpoints) {
  const auto grid = DefaultLambdaGrid();
  ASSERT_EQ(grid.size(), 200u);
  EXPECT_EQ(grid.front(), 0.5);
  EXPECT_EQ(grid.back(), 100.0);
  const double ratio = grid[1] / grid[0];
  for (std::size_t k = 1; k < grid.size(); ++k) {
    EXPECT_NEAR(grid[k] / grid[k - 1], ratio, 1e-9);
  }
}

TEST(FeatureCorrelation, LinearDependenceAndUndefinedEntries) {
  const auto table = MakeTable({{0.25, 0.25, 0.25, 0.25},
                                {0.1, 0.2, 0.3, 0.4},
                                {0.4, 0.3, 0.2, 0.1},
                                {0.2, 0.3, 0.3, 0.2}});
  const std::vector<MetaphorItem> items = {
      Item("a", "c0", "c1"), Item("b", "c1", "c2"), Item("c", "c2", "c3")};
  HumanResponseTable human;
  // Feature 1 = 2 x feature 0; feature 3 is constant.
  human.Add("a", {0.1, 0.2, 0.6, 0.1});
  human.Add("b", {0.2, 0.4, 0.3, 0.1});
  human.Add("c", {0.05, 0.1, 0.75, 0.1});
  RsaConfig config;
  const auto corr = FeatureCorrelationMatrix(items, CorrelationSource::kHuman,
                                             human, config, table);
  ASSERT_EQ(corr.matrix.size(), 4u);
  EXPECT_NEAR(*corr.matrix[0][1], 1.0, 1e-12);
  EXPECT_NEAR(*corr.matrix[0][2], -1.0, 1e-12);
  EXPECT_FALSE(corr.matrix[3][3].has_value());
  EXPECT_FALSE(corr.matrix[0][3].has_value());
  EXPECT_EQ(corr.features[0], "f0");
  EXPECT_THROW(FeatureCorrelationMatrix(
                   std::span(items).first(2), CorrelationSource::kHuman,
                   human, config, table),
               DomainError);
}

TEST(FeatureCorrelation, ModelMatrixSymmetricWithUnitDiagonal) {
  const Dataset data = testing::SyntheticPaperDataset(8);
  RsaConfig config;
  config.lambda = 20.0;
  for (auto source : {CorrelationSource::kModel, CorrelationSource::kHuman}) {
    const auto corr = FeatureCorrelationMatrix(data.metaphors, source,
                                               data.human, config,
                                               data.typicality);
    const std::size_t n = corr.matrix.size();
    ASSERT_EQ(n, 59u);
    for (std::size_t i = 0; i < n; ++i) {
      if (corr.matrix[i][i]) EXPECT_EQ(*corr.matrix[i][i], 1.0);
      for (std::size_t j = 0; j < n; ++j) {
        ASSERT_EQ(corr.matrix[i][j].has_value(),
                  corr.matrix[j][i].has_value());
        if (corr.matrix[i][j]) {
          EXPECT_NEAR(*corr.matrix[i][j], *corr.matrix[j][i], 1e-12);
          EXPECT_LE(std::abs(*corr.matrix[i][j]), 1.0);
        }
      }
    }
  }
}

}  // namespace
}  // namespace metarsa
