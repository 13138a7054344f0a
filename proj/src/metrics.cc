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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "metarsa/error.h"

namespace metarsa {

namespace {

// Sum of squared deviations attributable to rounding alone: every entry
// within a few ulps of the largest magnitude.
double RoundingFloor(std::span<const double> v) {
  double scale = 0.0;
  for (double x : v) scale = std::max(scale, std::abs(x));
  const double ulps = 16.0 * std::numeric_limits<double>::epsilon() * scale;
  return static_cast<double>(v.size()) * ulps * ulps;
}

}  // namespace

double Pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("pearson: length mismatch");
  if (x.size() < 2) throw DomainError("pearson: need at least 2 entries");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (!(sxx > RoundingFloor(x)) || !(syy > RoundingFloor(y))) {
    throw ZeroVarianceError("pearson: zero variance");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double Jsd(std::span<const double> p, std::span<const double> q,
           LogBase base) {
  if (p.size() != q.size()) throw DomainError("jsd: length mismatch");
  // sum_i a_i log(a_i / m_i), skipping a_i == 0.
  auto half_kl = [](double a, double m) {
    return a > 0.0 ? a * std::log(a / m) : 0.0;
  };
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0.0 || q[i] < 0.0) throw DomainError("jsd: negative entry");
    const double m = 0.5 * (p[i] + q[i]);
    total += half_kl(p[i], m) + half_kl(q[i], m);
  }
  double value = 0.5 * total;
  if (base == LogBase::kTwo) value /= std::log(2.0);
  return std::max(0.0, value);
}

std::vector<std::size_t> TopK(std::span<const double> p, std::size_t k) {
  if (k < 1 || k > p.size()) throw DomainError("top-k: k out of range");
  std::vector<std::size_t> idx(p.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&p](std::size_t a, std::size_t b) {
    return p[a] > p[b];
  });
  idx.resize(k);
  return idx;
}

int KAgreement(std::span<const double> p, std::span<const double> q,
               std::size_t k) {
  auto a = TopK(p, k);
  auto b = TopK(q, k);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<std::size_t> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(common));
  return static_cast<int>(common.size());
}

int TopKTies(std::span<const double> p, std::size_t k) {
  const auto top = TopK(p, k);
  int ties = 0;
  for (std::size_t a : top) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i != a && p[i] == p[a]) {
        ++ties;
        break;
      }
    }
  }
  return ties;
}

}  // namespace metarsa
