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

#include "metarsa/distribution.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "metarsa/error.h"

namespace metarsa {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}  // namespace

double LogSumExp(std::span<const double> log_values) {
  if (log_values.empty()) return kNegInf;
  const double max = *std::max_element(log_values.begin(), log_values.end());
  if (max == kNegInf) return kNegInf;
  double sum = 0.0;
  for (double v : log_values) sum += std::exp(v - max);
  return max + std::log(sum);
}

std::vector<double> LogSoftmax(std::span<const double> logits) {
  const double lse = LogSumExp(logits);
  if (!std::isfinite(lse)) {
    throw DomainError("softmax over logits with no finite mass");
  }
  std::vector<double> out(logits.begin(), logits.end());
  for (double& v : out) v -= lse;
  return out;
}

Distribution Distribution::FromLogWeights(std::vector<double> log_weights) {
  for (double w : log_weights) {
    if (std::isnan(w) || w == std::numeric_limits<double>::infinity()) {
      throw DomainError("log-weight is NaN or +inf");
    }
  }
  const double lse = LogSumExp(log_weights);
  if (!std::isfinite(lse)) {
    throw DomainError("distribution has zero total mass");
  }
  for (double& w : log_weights) w -= lse;
  return Distribution(std::move(log_weights));
}

Distribution Distribution::FromWeights(std::span<const double> weights) {
  std::vector<double> logs;
  logs.reserve(weights.size());
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw DomainError("weight is negative or not finite");
    }
    logs.push_back(w > 0.0 ? std::log(w) : kNegInf);
  }
  return FromLogWeights(std::move(logs));
}

Distribution Distribution::Uniform(std::size_t n) {
  if (n == 0) throw DomainError("uniform distribution over empty set");
  return Distribution(
      std::vector<double>(n, -std::log(static_cast<double>(n))));
}

double Distribution::prob(std::size_t i) const {
  return std::exp(log_probs_[i]);
}

std::vector<double> Distribution::probs() const {
  std::vector<double> out(log_probs_.size());
  std::transform(log_probs_.begin(), log_probs_.end(), out.begin(),
                 [](double v) { return std::exp(v); });
  return out;
}

std::size_t Distribution::argmax() const {
  // max_element returns the first maximal element.
  return static_cast<std::size_t>(
      std::max_element(log_probs_.begin(), log_probs_.end()) -
      log_probs_.begin());
}

}  // namespace metarsa
