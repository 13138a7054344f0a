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

#include "metarsa/rsa.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "metarsa/error.h"

namespace metarsa {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double SafeLog(double x) { return x > 0.0 ? std::log(x) : kNegInf; }

void CheckLambda(double lambda) {
  if (!std::isfinite(lambda)) throw DomainError("lambda must be finite");
}

void CheckUtilityDomain(const TypicalityTable& table, std::size_t u,
                        std::size_t j) {
  const double t = table.at(u, j);
  if (!(t > 0.0 && t < 1.0)) {
    throw DegenerateUtilityError(
        "degenerate typicality " + FormatValue(t) + " for (" +
        table.category(u) + ", " + table.vocab().name(j) +
        "): utilities need values strictly inside (0, 1)");
  }
}

// Speaker quantities for one goal j and one of the two utility cases
// (state agrees with the goal dimension or not).
struct SpeakerTerm {
  double log_prob = 0.0;  // log S1(vehicle | g_j, case)
  double dlog_prob = 0.0;  // d/d lambda of log_prob
};

// For each goal j: the vehicle's speaker probability when the true state is
// e_j (match) and when it is any e_i, i != j (miss).
struct SpeakerTable {
  std::vector<SpeakerTerm> match;
  std::vector<SpeakerTerm> miss;
};

SpeakerTerm VehicleTerm(std::span<const double> utilities,
                        std::size_t vehicle_pos, double lambda) {
  std::vector<double> logits(utilities.size());
  std::transform(utilities.begin(), utilities.end(), logits.begin(),
                 [lambda](double u) { return lambda * u; });
  const auto log_s = LogSoftmax(logits);
  double expected = 0.0;
  for (std::size_t k = 0; k < utilities.size(); ++k) {
    expected += std::exp(log_s[k]) * utilities[k];
  }
  return {log_s[vehicle_pos], utilities[vehicle_pos] - expected};
}

SpeakerTable BuildSpeakerTable(const TypicalityTable& table,
                               const std::vector<std::size_t>& utterances,
                               std::size_t vehicle, double lambda) {
  const std::size_t n = table.num_features();
  const std::size_t vehicle_pos = static_cast<std::size_t>(
      std::find(utterances.begin(), utterances.end(), vehicle) -
      utterances.begin());
  SpeakerTable out;
  out.match.resize(n);
  out.miss.resize(n);
  std::vector<double> u_match(utterances.size());
  std::vector<double> u_miss(utterances.size());
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < utterances.size(); ++k) {
      CheckUtilityDomain(table, utterances[k], j);
      const double t = table.at(utterances[k], j);
      u_match[k] = std::log(t);
      u_miss[k] = std::log1p(-t);
    }
    out.match[j] = VehicleTerm(u_match, vehicle_pos, lambda);
    out.miss[j] = VehicleTerm(u_miss, vehicle_pos, lambda);
  }
  return out;
}

std::vector<double> LogGoalPrior(const TypicalityTable& table,
                                 std::size_t topic, GoalPrior prior) {
  const Distribution r = Relevance(table, topic, prior);
  return std::vector<double>(r.log_probs().begin(), r.log_probs().end());
}

// log A_i = log sum_j R_j S1(v | g_j, e_i) and its lambda derivative.
struct Likelihood {
  std::vector<double> log_a;
  std::vector<double> dlog_a;
};

Likelihood ComputeLikelihood(const MetaphorItem& metaphor,
                             const RsaConfig& config,
                             const TypicalityTable& table) {
  CheckLambda(config.lambda);
  const std::size_t topic = table.category_index(metaphor.topic);
  const std::size_t vehicle = table.category_index(metaphor.vehicle);
  const auto utterances = Utterances(metaphor, config.utterances, table);
  const SpeakerTable speaker =
      BuildSpeakerTable(table, utterances, vehicle, config.lambda);
  const auto log_r = LogGoalPrior(table, topic, config.goal_prior);

  const std::size_t n = table.num_features();
  Likelihood out;
  out.log_a.resize(n);
  out.dlog_a.resize(n);
  std::vector<double> terms(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      terms[j] = log_r[j] +
                 (i == j ? speaker.match[j].log_prob : speaker.miss[j].log_prob);
    }
    const double lse = LogSumExp(terms);
    double slope = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (terms[j] == kNegInf) continue;
      slope += std::exp(terms[j] - lse) *
               (i == j ? speaker.match[j].dlog_prob : speaker.miss[j].dlog_prob);
    }
    out.log_a[i] = lse;
    out.dlog_a[i] = slope;
  }
  return out;
}

std::vector<std::size_t> PriorSupport(const MetaphorItem& metaphor,
                                      CategoryPrior prior,
                                      const TypicalityTable& table) {
  const std::size_t topic = table.category_index(metaphor.topic);
  if (prior == CategoryPrior::kTopicOnly) return {topic};
  return {topic, table.category_index(metaphor.vehicle)};
}

std::vector<double> FeatureSlope(const Distribution& dist,
                                 std::span<const double> dlog) {
  const auto p = dist.probs();
  double mean = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) mean += p[i] * dlog[i];
  }
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i] = p[i] > 0.0 ? p[i] * (dlog[i] - mean) : 0.0;
  }
  return out;
}

InterpretationSlope FullWithSlope(const MetaphorItem& metaphor,
                                  const RsaConfig& config,
                                  const TypicalityTable& table) {
  const Likelihood lik = ComputeLikelihood(metaphor, config, table);
  const auto support = PriorSupport(metaphor, config.category_prior, table);
  const double log_prior = -std::log(static_cast<double>(support.size()));
  const std::size_t n = table.num_features();
  // Sum over categories of P(c) T[c][i], then times A_i.
  std::vector<double> log_w(n);
  std::vector<double> per_category(support.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < support.size(); ++k) {
      per_category[k] = log_prior + SafeLog(table.at(support[k], i));
    }
    log_w[i] = LogSumExp(per_category) + lik.log_a[i];
  }
  Distribution dist = Distribution::FromLogWeights(std::move(log_w));
  auto slope = FeatureSlope(dist, lik.dlog_a);
  return {std::move(dist), std::move(slope)};
}

InterpretationSlope FastWithSlope(const MetaphorItem& metaphor, double lambda,
                                  const TypicalityTable& table) {
  CheckLambda(lambda);
  const auto alpha = table.row(table.category_index(metaphor.topic));
  const auto beta = table.row(table.category_index(metaphor.vehicle));
  const std::size_t n = beta.size();
  std::vector<double> log_beta(n);
  bool has_zero = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (beta[i] < 0.0) throw DomainError("negative vehicle typicality");
    has_zero = has_zero || beta[i] == 0.0;
    log_beta[i] = SafeLog(beta[i]);
  }
  if (has_zero && lambda != 0.0) {
    throw DegenerateUtilityError("vehicle '" + metaphor.vehicle +
                                 "' has zero typicality entries; cannot "
                                 "raise to a non-zero power");
  }
  std::vector<double> logits(n, 0.0);
  if (lambda != 0.0) {
    for (std::size_t i = 0; i < n; ++i) logits[i] = lambda * log_beta[i];
  }
  const auto log_beta_lambda = LogSoftmax(logits);
  std::vector<double> log_w(n);
  for (std::size_t i = 0; i < n; ++i) {
    log_w[i] = SafeLog(alpha[i]) + log_beta_lambda[i];
  }
  Distribution dist = Distribution::FromLogWeights(std::move(log_w));
  std::vector<double> slope;
  if (has_zero) {
    // lambda == 0 with zeros: the output is alpha restricted to the support
    // of beta^0 (everything), but the one-sided derivative is unbounded.
    slope.assign(n, std::numeric_limits<double>::quiet_NaN());
  } else {
    slope = FeatureSlope(dist, log_beta);
  }
  return {std::move(dist), std::move(slope)};
}

}  // namespace

std::string ToString(UtteranceSet v) {
  return v == UtteranceSet::kAllCategories ? "all" : "pair";
}
std::string ToString(CategoryPrior v) {
  return v == CategoryPrior::kTopicOnly ? "topic" : "uniform";
}
std::string ToString(GoalPrior v) {
  return v == GoalPrior::kRelevance ? "relevance" : "uniform";
}
std::string ToString(InferenceMode v) {
  return v == InferenceMode::kFull ? "full" : "fast";
}

Distribution JointDistribution::FeatureMarginal() const {
  std::vector<double> log_w(num_features, kNegInf);
  std::vector<double> terms(categories.size());
  for (std::size_t i = 0; i < num_features; ++i) {
    for (std::size_t k = 0; k < categories.size(); ++k) {
      terms[k] = joint.log_prob(k * num_features + i);
    }
    log_w[i] = LogSumExp(terms);
  }
  return Distribution::FromLogWeights(std::move(log_w));
}

JointDistribution LiteralListener(const TypicalityTable& table,
                                  std::size_t utterance) {
  if (utterance >= table.num_categories()) {
    throw DomainError("unknown utterance category index");
  }
  const std::size_t m = table.num_categories();
  const std::size_t n = table.num_features();
  std::vector<double> log_w(m * n, kNegInf);
  for (std::size_t i = 0; i < n; ++i) {
    log_w[utterance * n + i] = SafeLog(table.at(utterance, i));
  }
  JointDistribution out;
  out.categories.resize(m);
  for (std::size_t c = 0; c < m; ++c) out.categories[c] = c;
  out.num_features = n;
  out.joint = Distribution::FromLogWeights(std::move(log_w));
  return out;
}

double SpeakerUtility(const TypicalityTable& table, std::size_t utterance,
                      Goal goal, FeatureVector f) {
  const std::size_t n = table.num_features();
  if (utterance >= table.num_categories() || goal.feature >= n ||
      f.index >= n) {
    throw DomainError("speaker utility: index out of range");
  }
  const double t = table.at(utterance, goal.feature);
  const double mass = f.index == goal.feature ? t : 1.0 - t;
  if (!(mass > 0.0)) {
    throw DegenerateUtilityError(
        "utility of '" + table.category(utterance) + "' for goal '" +
        table.vocab().name(goal.feature) + "' is log(0)");
  }
  return f.index == goal.feature ? std::log(t) : std::log1p(-t);
}

std::vector<std::size_t> Utterances(const MetaphorItem& metaphor,
                                    UtteranceSet set,
                                    const TypicalityTable& table) {
  const std::size_t topic = table.category_index(metaphor.topic);
  const std::size_t vehicle = table.category_index(metaphor.vehicle);
  if (set == UtteranceSet::kTopicVehiclePair) {
    if (topic == vehicle) return {vehicle};
    return {topic, vehicle};
  }
  std::vector<std::size_t> out(table.num_categories());
  for (std::size_t c = 0; c < out.size(); ++c) out[c] = c;
  return out;
}

Distribution PragmaticSpeaker(const TypicalityTable& table,
                              const std::vector<std::size_t>& utterances,
                              Goal goal, FeatureVector f, double lambda) {
  CheckLambda(lambda);
  if (utterances.empty()) throw DomainError("empty utterance set");
  std::vector<double> logits(utterances.size());
  for (std::size_t k = 0; k < utterances.size(); ++k) {
    logits[k] = lambda * SpeakerUtility(table, utterances[k], goal, f);
  }
  return Distribution::FromLogWeights(std::move(logits));
}

Distribution Relevance(const TypicalityTable& table, std::size_t topic,
                       GoalPrior prior) {
  if (topic >= table.num_categories()) throw DomainError("unknown topic");
  if (prior == GoalPrior::kUniform) {
    return Distribution::Uniform(table.num_features());
  }
  return Distribution::FromWeights(table.row(topic));
}

std::vector<double> SpeakerLogLikelihood(const MetaphorItem& metaphor,
                                         const RsaConfig& config,
                                         const TypicalityTable& table) {
  return ComputeLikelihood(metaphor, config, table).log_a;
}

JointDistribution PragmaticListener(const MetaphorItem& metaphor,
                                    const RsaConfig& config,
                                    const TypicalityTable& table) {
  if (config.mode != InferenceMode::kFull) {
    throw DomainError("pragmatic listener requires full inference mode");
  }
  const Likelihood lik = ComputeLikelihood(metaphor, config, table);
  const auto support = PriorSupport(metaphor, config.category_prior, table);
  const double log_prior = -std::log(static_cast<double>(support.size()));
  const std::size_t n = table.num_features();
  std::vector<double> log_w(support.size() * n);
  for (std::size_t k = 0; k < support.size(); ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      log_w[k * n + i] =
          log_prior + SafeLog(table.at(support[k], i)) + lik.log_a[i];
    }
  }
  JointDistribution out;
  out.categories = support;
  out.num_features = n;
  out.joint = Distribution::FromLogWeights(std::move(log_w));
  return out;
}

Distribution Interpret(const MetaphorItem& metaphor, const RsaConfig& config,
                       const TypicalityTable& table) {
  if (config.mode == InferenceMode::kFast) {
    return InterpretFast(metaphor, config.lambda, table);
  }
  return FullWithSlope(metaphor, config, table).distribution;
}

Distribution InterpretFast(const MetaphorItem& metaphor, double lambda,
                           const TypicalityTable& table) {
  return FastWithSlope(metaphor, lambda, table).distribution;
}

InterpretationSlope InterpretWithSlope(const MetaphorItem& metaphor,
                                       const RsaConfig& config,
                                       const TypicalityTable& table) {
  if (config.mode == InferenceMode::kFast) {
    return FastWithSlope(metaphor, config.lambda, table);
  }
  return FullWithSlope(metaphor, config, table);
}

}  // namespace metarsa
