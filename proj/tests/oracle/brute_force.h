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

// Direct enumeration of the listener/speaker recursion over explicit
// feature vectors, in plain probability space. Shares no code with the
// library: it only takes a matrix of typicalities and returns numbers.
// Intended for tables with a handful of categories and features.

#ifndef METARSA_TESTS_ORACLE_BRUTE_FORCE_H_
#define METARSA_TESTS_ORACLE_BRUTE_FORCE_H_

#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;  // [category][feature]

struct Setup {
  Matrix typicality;
  std::size_t topic = 0;
  std::size_t vehicle = 1;
  double lambda = 1.0;
  std::vector<std::size_t> utterances;  // alternatives the speaker weighs
  bool topic_only_prior = true;         // else uniform over {topic, vehicle}
  bool uniform_goals = false;           // else R(g_j|t) = T[t][j]
};

// The support: every one-hot vector of length n.
inline std::vector<std::vector<double>> Support(std::size_t n) {
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> f(n, 0.0);
    f[i] = 1.0;
    out.push_back(f);
  }
  return out;
}

// P(f | c): mass T[c][i] on the vector with a 1 in position i.
inline double FeaturePrior(const Matrix& t, std::size_t c,
                           const std::vector<double>& f) {
  double p = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) p += f[i] * t[c][i];
  return p;
}

inline double L0(const Matrix& t, std::size_t c, const std::vector<double>& f,
                 std::size_t u) {
  return c == u ? FeaturePrior(t, c, f) : 0.0;
}

// log sum_{c, f'} [g(f) == g(f')] L0(c, f' | u), with g = coordinate j.
inline double Utility(const Matrix& t, std::size_t u, std::size_t goal,
                      const std::vector<double>& f) {
  const auto support = Support(t[0].size());
  double mass = 0.0;
  for (std::size_t c = 0; c < t.size(); ++c) {
    for (const auto& fp : support) {
      if (f[goal] == fp[goal]) mass += L0(t, c, fp, u);
    }
  }
  return std::log(mass);
}

inline double S1(const Setup& s, std::size_t u, std::size_t goal,
                 const std::vector<double>& f) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t alt : s.utterances) {
    const double w = std::exp(s.lambda * Utility(s.typicality, alt, goal, f));
    den += w;
    if (alt == u) num = w;
  }
  return num / den;
}

inline double CategoryPrior(const Setup& s, std::size_t c) {
  if (s.topic_only_prior) return c == s.topic ? 1.0 : 0.0;
  return (c == s.topic || c == s.vehicle) ? 0.5 : 0.0;
}

inline double GoalPrior(const Setup& s, std::size_t goal) {
  const std::size_t n = s.typicality[0].size();
  if (s.uniform_goals) return 1.0 / static_cast<double>(n);
  double row = 0.0;
  for (double v : s.typicality[s.topic]) row += v;
  return s.typicality[s.topic][goal] / row;
}

// Unnormalized L1(c, f | vehicle) for every (c, f) in category-major order.
inline std::vector<double> L1Joint(const Setup& s) {
  const std::size_t n = s.typicality[0].size();
  const auto support = Support(n);
  std::vector<double> joint;
  double z = 0.0;
  for (std::size_t c = 0; c < s.typicality.size(); ++c) {
    for (const auto& f : support) {
      double goals = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        goals += GoalPrior(s, j) * S1(s, s.vehicle, j, f);
      }
      const double w =
          CategoryPrior(s, c) * FeaturePrior(s.typicality, c, f) * goals;
      joint.push_back(w);
      z += w;
    }
  }
  for (double& w : joint) w /= z;
  return joint;
}

// Posterior expectation of each coordinate f_i.
inline std::vector<double> Interpret(const Setup& s) {
  const std::size_t n = s.typicality[0].size();
  const auto support = Support(n);
  const auto joint = L1Joint(s);
  std::vector<double> out(n, 0.0);
  std::size_t k = 0;
  for (std::size_t c = 0; c < s.typicality.size(); ++c) {
    for (const auto& f : support) {
      for (std::size_t i = 0; i < n; ++i) out[i] += joint[k] * f[i];
      ++k;
    }
  }
  return out;
}

}  // namespace oracle

#endif  // METARSA_TESTS_ORACLE_BRUTE_FORCE_H_
