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

// Fitting the speaker rationality lambda to human interpretation data by
// conjugate-gradient ascent on model/human correlation.

#ifndef METARSA_LEARN_H_
#define METARSA_LEARN_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "metarsa/lexicon.h"
#include "metarsa/rsa.h"

namespace metarsa {

enum class ObjectiveKind {
  kMeanPearson,    // unweighted mean of per-metaphor Pearson r
  kPooledPearson,  // one r over all metaphor x feature pairs
};

std::string ToString(ObjectiveKind kind);

// Train-set correlation at `lambda` (config.lambda is ignored).
double Objective(double lambda, std::span<const MetaphorItem> train,
                 const HumanResponseTable& human, const RsaConfig& config,
                 const TypicalityTable& table,
                 ObjectiveKind kind = ObjectiveKind::kMeanPearson);

// Analytic d Objective / d lambda.
double ObjectiveGradient(double lambda, std::span<const MetaphorItem> train,
                         const HumanResponseTable& human,
                         const RsaConfig& config, const TypicalityTable& table,
                         ObjectiveKind kind = ObjectiveKind::kMeanPearson);

// Central difference with step 1e-4 * max(1, |lambda|).
double ObjectiveGradientFiniteDifference(
    double lambda, std::span<const MetaphorItem> train,
    const HumanResponseTable& human, const RsaConfig& config,
    const TypicalityTable& table,
    ObjectiveKind kind = ObjectiveKind::kMeanPearson);

// ---------------------------------------------------------------------------
// Polak-Ribière conjugate gradient ascent with Armijo backtracking.

struct CgOptions {
  int max_iterations = 200;
  double gradient_tolerance = 1e-6;
  double armijo_slope = 1e-4;
  double shrink = 0.5;
  // Backtracking gives up below this step length (relative to max(1, |x|)).
  double min_step = 1e-14;
};

struct CgIterate {
  int iteration;
  std::vector<double> x;
  double value;
};

struct CgResult {
  std::vector<double> x;
  double value = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;  // gradient norm below tolerance
  std::vector<CgIterate> trace;  // accepted iterates, starting point first
};

// Maximizes f. `fn(x, grad)` returns f(x) and writes the gradient. A
// non-finite value during the line search rejects the step.
using ObjectiveFn =
    std::function<double(std::span<const double> x, std::span<double> grad)>;

CgResult MaximizeConjugateGradient(const ObjectiveFn& fn,
                                   std::vector<double> x0,
                                   const CgOptions& options = {});

// ---------------------------------------------------------------------------

struct TraceEntry {
  int iteration;
  double lambda;
  double objective;
};

struct FitResult {
  double lambda_hat = 0.0;
  double objective_value = 0.0;
  int iterations = 0;
  double gradient_norm_at_convergence = 0.0;
  bool converged = false;  // false: max_iterations or line search exhausted
  double init = 1.0;
  std::vector<TraceEntry> trace;
};

struct LearnOptions {
  double init = 1.0;
  int max_iterations = 200;
  double tolerance = 1e-6;
  ObjectiveKind objective = ObjectiveKind::kMeanPearson;
};

FitResult LearnLambda(std::span<const MetaphorItem> train,
                      const HumanResponseTable& human,
                      const RsaConfig& config, const TypicalityTable& table,
                      const LearnOptions& options = {});

inline const std::vector<double> kDefaultStarts = {0.5, 1.0, 5.0, 20.0, 50.0};

// Runs LearnLambda from each start and keeps the best objective (earliest
// start on ties). Starts whose objective is undefined are skipped.
FitResult LearnLambdaMultiStart(std::span<const MetaphorItem> train,
                                const HumanResponseTable& human,
                                const RsaConfig& config,
                                const TypicalityTable& table,
                                const LearnOptions& options = {},
                                std::span<const double> starts =
                                    kDefaultStarts);

// ---------------------------------------------------------------------------

struct TrainTestSplit {
  std::vector<std::string> train;
  std::vector<std::string> test;
  std::uint64_t seed = 0;
};

// Stratified 18/6 split of 24 items (12 per class): 9 + 9 train, 3 + 3
// test. Deterministic in `seed`. Id lists follow the input order.
TrainTestSplit MakeSplit(std::span<const MetaphorItem> items,
                         std::uint64_t seed);

// Items whose id is in `ids`, in the order of `items`.
std::vector<MetaphorItem> SelectItems(std::span<const MetaphorItem> items,
                                      std::span<const std::string> ids);

}  // namespace metarsa

#endif  // METARSA_LEARN_H_
