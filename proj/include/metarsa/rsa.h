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

// Rational speech act inference for "topic is vehicle" metaphors.
//
// Feature vectors range over the one-hot vertices e_1..e_n of the simplex,
// with P(e_i | c) = T[c][i]. A goal g_j projects a feature vector onto its
// j-th coordinate. Under this support the speaker utility has a closed form:
//
//   U(u | g_j, e_i) = log T[u][j]        if i == j
//                   = log(1 - T[u][j])   otherwise
//
// The pragmatic speaker is softmax(lambda * U) over the utterance set and the
// pragmatic listener is
//
//   L1(c, e_i | u) ∝ P(c) T[c][i] sum_j R(g_j | topic) S1(u | g_j, e_i).
//
// All arithmetic is done on log-probabilities.

#ifndef METARSA_RSA_H_
#define METARSA_RSA_H_

#include <cstddef>
#include <string>
#include <vector>

#include "metarsa/distribution.h"
#include "metarsa/lexicon.h"

namespace metarsa {

enum class UtteranceSet { kAllCategories, kTopicVehiclePair };
enum class CategoryPrior { kTopicOnly, kUniform };
enum class GoalPrior { kRelevance, kUniform };
enum class InferenceMode { kFull, kFast };

std::string ToString(UtteranceSet v);
std::string ToString(CategoryPrior v);
std::string ToString(GoalPrior v);
std::string ToString(InferenceMode v);

struct RsaConfig {
  double lambda = 1.0;
  UtteranceSet utterances = UtteranceSet::kAllCategories;
  CategoryPrior category_prior = CategoryPrior::kTopicOnly;
  GoalPrior goal_prior = GoalPrior::kRelevance;
  InferenceMode mode = InferenceMode::kFull;
};

// Index of the communicated feature dimension.
struct Goal {
  std::size_t feature;
};

// One-hot feature vector e_index.
struct FeatureVector {
  std::size_t index;
};

// Distribution over (category, feature vector) pairs, row-major over the
// listed categories.
struct JointDistribution {
  std::vector<std::size_t> categories;  // table indices
  std::size_t num_features = 0;
  Distribution joint;

  double prob(std::size_t category_pos, std::size_t feature) const {
    return joint.prob(category_pos * num_features + feature);
  }
  // Marginal over features.
  Distribution FeatureMarginal() const;
};

// L0(c, e_i | u): all mass on c == u, distributed as T[u]. The support
// covers every category of the table.
JointDistribution LiteralListener(const TypicalityTable& table,
                                  std::size_t utterance);

// U(u | g, f). Throws DegenerateUtilityError when the argument of the log
// is zero.
double SpeakerUtility(const TypicalityTable& table, std::size_t utterance,
                      Goal goal, FeatureVector f);

// Table indices of the alternatives the speaker chooses among. The vehicle
// is always included.
std::vector<std::size_t> Utterances(const MetaphorItem& metaphor,
                                    UtteranceSet set,
                                    const TypicalityTable& table);

// S1(. | g, f) over `utterances` (same order).
Distribution PragmaticSpeaker(const TypicalityTable& table,
                              const std::vector<std::size_t>& utterances,
                              Goal goal, FeatureVector f, double lambda);

// R(g_j | t) = T[t][j], or uniform under GoalPrior::kUniform.
Distribution Relevance(const TypicalityTable& table, std::size_t topic,
                       GoalPrior prior = GoalPrior::kRelevance);

// log sum_j R(g_j | t) S1(vehicle | g_j, e_i) for every feature i: the
// likelihood the listener attaches to the vehicle given each one-hot state.
std::vector<double> SpeakerLogLikelihood(const MetaphorItem& metaphor,
                                         const RsaConfig& config,
                                         const TypicalityTable& table);

// L1(c, f | vehicle) over the categories with non-zero prior.
JointDistribution PragmaticListener(const MetaphorItem& metaphor,
                                    const RsaConfig& config,
                                    const TypicalityTable& table);

// Marginal interpretation over features. Dispatches on config.mode.
Distribution Interpret(const MetaphorItem& metaphor, const RsaConfig& config,
                       const TypicalityTable& table);

// Topic typicality reweighted by the lambda-sharpened vehicle typicality:
// out_i ∝ T[t][i] softmax(lambda log T[v])_i.
Distribution InterpretFast(const MetaphorItem& metaphor, double lambda,
                           const TypicalityTable& table);

// Interpretation together with d prob_i / d lambda.
struct InterpretationSlope {
  Distribution distribution;
  std::vector<double> dprob_dlambda;
};

InterpretationSlope InterpretWithSlope(const MetaphorItem& metaphor,
                                       const RsaConfig& config,
                                       const TypicalityTable& table);

}  // namespace metarsa

#endif  // METARSA_RSA_H_
