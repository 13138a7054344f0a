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
#include <set>

#include "metarsa/error.h"

namespace metarsa {

namespace {

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;
};

MeanSd Moments(const std::vector<double>& v) {
  MeanSd out;
  if (v.empty()) return out;
  for (double x : v) out.mean += x;
  out.mean /= static_cast<double>(v.size());
  if (v.size() < 2) return out;
  double ss = 0.0;
  for (double x : v) ss += (x - out.mean) * (x - out.mean);
  out.sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  return out;
}

MetaphorEval EvaluateOne(const MetaphorItem& item,
                         const HumanResponseTable& human,
                         const RsaConfig& config, const TypicalityTable& table,
                         const EvalOptions& options) {
  MetaphorEval e;
  e.id = item.id;
  e.metaphor_class = item.metaphor_class;
  e.model = Interpret(item, config, table).probs();
  e.human = human.at(item.id);
  e.pearson = Pearson(e.model, e.human);
  e.jsd = Jsd(e.model, e.human, options.jsd_base);
  for (int k : options.ks) {
    e.k_agreement[k] =
        KAgreement(e.model, e.human, static_cast<std::size_t>(k));
  }
  const std::size_t top = std::min<std::size_t>(3, e.model.size());
  e.model_top3 = TopK(e.model, top);
  e.human_top3 = TopK(e.human, top);
  e.model_argmax_in_human_top3 =
      std::find(e.human_top3.begin(), e.human_top3.end(), e.model_top3[0]) !=
      e.human_top3.end();
  e.human_top3_ties = TopKTies(e.human, top);
  return e;
}

void CheckOptions(const EvalOptions& options, const TypicalityTable& table) {
  for (int k : options.ks) {
    if (k < 1 || static_cast<std::size_t>(k) > table.num_features()) {
      throw DomainError("k = " + std::to_string(k) + " outside [1, " +
                        std::to_string(table.num_features()) + "]");
    }
  }
}

}  // namespace

Aggregate Summarize(std::span<const MetaphorEval> entries) {
  Aggregate a;
  a.count = static_cast<int>(entries.size());
  if (entries.empty()) return a;
  std::vector<double> r, jsd;
  int in_top3 = 0;
  for (const auto& e : entries) {
    r.push_back(e.pearson);
    jsd.push_back(e.jsd);
    in_top3 += e.model_argmax_in_human_top3 ? 1 : 0;
    for (const auto& [k, v] : e.k_agreement) {
      a.k_agreement_total[k] += v;
      a.k_overlap_rate[k] += v > 0 ? 1.0 : 0.0;
    }
  }
  const auto mr = Moments(r);
  const auto mj = Moments(jsd);
  a.mean_pearson = mr.mean;
  a.sd_pearson = mr.sd;
  a.mean_jsd = mj.mean;
  a.sd_jsd = mj.sd;
  for (const auto& [k, total] : a.k_agreement_total) {
    a.k_agreement_mean[k] = static_cast<double>(total) / a.count;
    a.k_overlap_rate[k] /= a.count;
  }
  a.argmax_in_human_top3_rate = static_cast<double>(in_top3) / a.count;
  return a;
}

EvalReport Evaluate(std::span<const MetaphorItem> items,
                    const HumanResponseTable& human, const RsaConfig& config,
                    const TypicalityTable& table, const EvalOptions& options) {
  CheckOptions(options, table);
  EvalReport report;
  report.tag = "model";
  report.config = config;
  for (const auto& item : items) {
    report.items.push_back(EvaluateOne(item, human, config, table, options));
  }
  std::vector<MetaphorEval> inherent, non_inherent, test;
  const std::set<std::string> test_ids(options.test_ids.begin(),
                                       options.test_ids.end());
  for (const auto& e : report.items) {
    (e.metaphor_class == MetaphorClass::kVehicleInherent ? inherent
                                                         : non_inherent)
        .push_back(e);
    if (test_ids.contains(e.id)) test.push_back(e);
    report.human_tie_count += e.human_top3_ties > 0 ? 1 : 0;
  }
  report.overall = Summarize(report.items);
  report.inherent = Summarize(inherent);
  report.non_inherent = Summarize(non_inherent);
  if (!test_ids.empty()) report.test = Summarize(test);
  return report;
}

EvalReport AblateRelevance(std::span<const MetaphorItem> items,
                           const HumanResponseTable& human,
                           const RsaConfig& config,
                           const TypicalityTable& table,
                           const EvalOptions& options) {
  RsaConfig ablated = config;
  ablated.goal_prior = GoalPrior::kUniform;
  EvalReport report = Evaluate(items, human, ablated, table, options);
  report.tag = "ablation: no-relevance";
  return report;
}

std::vector<double> DefaultLambdaGrid() {
  constexpr int kPoints = 200;
  const double lo = std::log(0.5);
  const double hi = std::log(100.0);
  std::vector<double> grid(kPoints);
  for (int k = 0; k < kPoints; ++k) {
    grid[k] = std::exp(lo + (hi - lo) * k / (kPoints - 1));
  }
  grid.front() = 0.5;
  grid.back() = 100.0;
  return grid;
}

GridAblation AblateLambdaInterpolation(
    std::span<const MetaphorItem> train, std::span<const MetaphorItem> items,
    const HumanResponseTable& human, const RsaConfig& config,
    const TypicalityTable& table, std::span<const double> grid,
    ObjectiveKind objective, const EvalOptions& options) {
  if (grid.empty()) throw DomainError("empty lambda grid");
  GridAblation out;
  bool have_best = false;
  for (double lambda : grid) {
    const double value =
        Objective(lambda, train, human, config, table, objective);
    out.scan.emplace_back(lambda, value);
    if (!have_best || value > out.best_objective) {
      out.best_lambda = lambda;
      out.best_objective = value;
      have_best = true;
    }
  }
  RsaConfig chosen = config;
  chosen.lambda = out.best_lambda;
  out.report = Evaluate(items, human, chosen, table, options);
  out.report.tag = "ablation: grid-lambda";
  return out;
}

FeatureCorrelation FeatureCorrelationMatrix(std::span<const MetaphorItem> items,
                                            CorrelationSource source,
                                            const HumanResponseTable& human,
                                            const RsaConfig& config,
                                            const TypicalityTable& table) {
  if (items.size() < 3) {
    throw DomainError("feature correlation needs at least 3 metaphors");
  }
  const std::size_t n = table.num_features();
  // columns[i] = feature i's probability across metaphors.
  std::vector<std::vector<double>> columns(n,
                                           std::vector<double>(items.size()));
  for (std::size_t m = 0; m < items.size(); ++m) {
    const std::vector<double> probs =
        source == CorrelationSource::kModel
            ? Interpret(items[m], config, table).probs()
            : human.at(items[m].id);
    for (std::size_t i = 0; i < n; ++i) columns[i][m] = probs[i];
  }
  FeatureCorrelation out;
  out.features = table.vocab().names();
  out.matrix.assign(n, std::vector<std::optional<double>>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      std::optional<double> value;
      try {
        value = Pearson(columns[i], columns[j]);
        if (i == j) value = 1.0;
      } catch (const ZeroVarianceError&) {
        value.reset();
      }
      out.matrix[i][j] = value;
      out.matrix[j][i] = value;
    }
  }
  return out;
}

}  // namespace metarsa
