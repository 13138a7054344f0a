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

#ifndef METARSA_DISTRIBUTION_H_
#define METARSA_DISTRIBUTION_H_

#include <cstddef>
#include <span>
#include <vector>

namespace metarsa {

// log(sum_i exp(x_i)) with max subtraction. Returns -inf for an empty input
// or when every entry is -inf.
double LogSumExp(std::span<const double> log_values);

// Normalized log(softmax(x)). Throws DomainError if every entry is -inf.
std::vector<double> LogSoftmax(std::span<const double> logits);

// Probability vector over a fixed index set. Stored as normalized
// log-probabilities; zero mass is -inf.
class Distribution {
 public:
  Distribution() = default;

  // Normalizes arbitrary (finite or -inf) log-weights. Throws DomainError if
  // the total mass is zero or any weight is NaN/+inf.
  static Distribution FromLogWeights(std::vector<double> log_weights);

  // Normalizes non-negative weights. Throws DomainError on negative/NaN
  // entries or zero total.
  static Distribution FromWeights(std::span<const double> weights);

  static Distribution Uniform(std::size_t n);

  std::size_t size() const { return log_probs_.size(); }
  bool empty() const { return log_probs_.empty(); }

  double prob(std::size_t i) const;
  double log_prob(std::size_t i) const { return log_probs_[i]; }
  std::span<const double> log_probs() const { return log_probs_; }
  std::vector<double> probs() const;

  // Lowest index among the maximal entries.
  std::size_t argmax() const;

 private:
  explicit Distribution(std::vector<double> log_probs)
      : log_probs_(std::move(log_probs)) {}

  std::vector<double> log_probs_;
};

}  // namespace metarsa

#endif  // METARSA_DISTRIBUTION_H_
