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

// Comparisons between two distributions over the same feature vocabulary.

#ifndef METARSA_METRICS_H_
#define METARSA_METRICS_H_

#include <cstddef>
#include <span>
#include <vector>

namespace metarsa {

enum class LogBase { kTwo, kE };

// Sample Pearson correlation. Throws DomainError on length mismatch or
// fewer than 2 entries, ZeroVarianceError if either vector is constant.
double Pearson(std::span<const double> x, std::span<const double> y);

// Jensen-Shannon divergence with 0 log 0 = 0. In [0, 1] for base 2.
double Jsd(std::span<const double> p, std::span<const double> q,
           LogBase base = LogBase::kTwo);

// Indices of the k largest entries, by descending value then ascending
// index.
std::vector<std::size_t> TopK(std::span<const double> p, std::size_t k);

// |TopK(p, k) ∩ TopK(q, k)|.
int KAgreement(std::span<const double> p, std::span<const double> q,
               std::size_t k);

// Number of entries whose value equals another entry's value among the top
// k of p (exact ties that the index order had to break).
int TopKTies(std::span<const double> p, std::size_t k);

}  // namespace metarsa

#endif  // METARSA_METRICS_H_
