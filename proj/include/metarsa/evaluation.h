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

// Model vs human evaluation: per-metaphor metrics, class aggregates,
// ablations and feature correlation matrices.

#ifndef METARSA_EVALUATION_H_
#define METARSA_EVALUATION_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "metarsa/learn.h"
#include "metarsa/lexicon.h"
#include "metarsa/metrics.h"
#include "metarsa/rsa.h"

namespace metarsa {

struct EvalOptions {
  std::vector<int> ks = {1, 3};
  LogBase jsd_base = LogBase::kTwo;
  // When set, an extra aggregate is computed over these ids.
  std::vector<std::string> test_ids;
};

struct MetaphorEval {
  std::string id;
  MetaphorClass metaphor_class;
  std::vector<double> model;
  std::vector<double> human;
  double pearson = 0.0;
  double jsd = 0.0;
  std::map<int, int> k_agreement;
  std::vector<std::size_t> model_top3;
  std::vector<std::size_t> human_top3;
  bool model_argmax_in_human_top3 = false;
  int human_top3_ties = 0;
};

struct Aggregate {
  int count = 0;
  double mean_pearson = 0.0;
  double sd_pearson = 0.0;  // sample SD; 0 for a single item
  double mean_jsd = 0.0;
  double sd_jsd = 0.0;
  std::map<int, int> k_agreement_total;
  std::map<int, double> k_agreement_mean;
  // Fraction of items sharing at least one of their top-k features.
  std::map<int, double> k_overlap_rate;
  double argmax_in_human_top3_rate = 0.0;
};

struct EvalReport {
  std::string tag;  // "model", "ablation: no-relevance", ...
  RsaConfig config;
  std::vector<MetaphorEval> items;
  Aggregate overall;
  Aggregate inherent;
  Aggregate non_inherent;
  std::optional<Aggregate> test;
  int human_tie_count = 0;
};

// Aggregate over the given per-metaphor entries.
Aggregate Summarize(std::span<const MetaphorEval> entries);

EvalReport Evaluate(std::span<const MetaphorItem> items,
                    const HumanResponseTable& human, const RsaConfig& config,
                    const TypicalityTable& table,
                    const EvalOptions& options = {});

// Evaluate with a uniform goal prior.
EvalReport AblateRelevance(std::span<const MetaphorItem> items,
                           const HumanResponseTable& human,
                           const RsaConfig& config,
                           const TypicalityTable& table,
                           const EvalOptions& options = {});

// 200 log-spaced points from 0.5 to 100.
std::vector<double> DefaultLambdaGrid();

struct GridAblation {
  double best_lambda = 0.0;
  double best_objective = 0.0;
  std::vector<std::pair<double, double>> scan;  // (lambda, train objective)
  EvalReport report;
};

// Picks lambda by maximizing the train objective over `grid`, then
// evaluates `items` at that lambda.
GridAblation AblateLambdaInterpolation(
    std::span<const MetaphorItem> train, std::span<const MetaphorItem> items,
    const HumanResponseTable& human, const RsaConfig& config,
    const TypicalityTable& table, std::span<const double> grid,
    ObjectiveKind objective = ObjectiveKind::kMeanPearson,
    const EvalOptions& options = {});

enum class CorrelationSource { kModel, kHuman };

// n x n Pearson correlations across metaphors between feature
// probabilities. Entries are empty where a feature has zero variance.
struct FeatureCorrelation {
  std::vector<std::string> features;
  std::vector<std::vector<std::optional<double>>> matrix;
};

FeatureCorrelation FeatureCorrelationMatrix(std::span<const MetaphorItem> items,
                                            CorrelationSource source,
                                            const HumanResponseTable& human,
                                            const RsaConfig& config,
                                            const TypicalityTable& table);

}  // namespace metarsa

#endif  // METARSA_EVALUATION_H_
