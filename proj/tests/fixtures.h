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

// Shared generators for tests: random typicality tables, synthetic datasets
// shaped like the real one, scratch directories.

#ifndef METARSA_TESTS_FIXTURES_H_
#define METARSA_TESTS_FIXTURES_H_

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "metarsa/lexicon.h"
#include "metarsa/rsa.h"

namespace metarsa::testing {

// Rows of Likert-like ratings in [1, 7], normalized to sum to 1.
inline std::vector<std::vector<double>> RandomRows(std::mt19937_64& rng,
                                                   std::size_t m,
                                                   std::size_t n) {
  std::uniform_real_distribution<double> rating(1.0, 7.0);
  std::vector<std::vector<double>> rows(m, std::vector<double>(n));
  for (auto& row : rows) {
    double sum = 0.0;
    for (double& v : row) sum += (v = rating(rng));
    for (double& v : row) v /= sum;
  }
  return rows;
}

inline TypicalityTable MakeTable(const std::vector<std::vector<double>>& rows) {
  std::vector<std::string> categories, features;
  for (std::size_t c = 0; c < rows.size(); ++c) {
    categories.push_back("c" + std::to_string(c));
  }
  for (std::size_t i = 0; i < rows[0].size(); ++i) {
    features.push_back("f" + std::to_string(i));
  }
  std::vector<double> values;
  for (const auto& row : rows) values.insert(values.end(), row.begin(), row.end());
  return TypicalityTable(categories, FeatureVocab(features), values);
}

inline MetaphorItem Item(std::string id, std::string topic,
                         std::string vehicle,
                         MetaphorClass cls = MetaphorClass::kVehicleInherent) {
  MetaphorItem item;
  item.id = std::move(id);
  item.topic = std::move(topic);
  item.vehicle = std::move(vehicle);
  item.metaphor_class = cls;
  return item;
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path ScratchDir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() /
             ("metarsa_test_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline void WriteText(const std::filesystem::path& path,
                      const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

inline std::string ReadText(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

// Dataset with the real data's shape: 48 categories (24 topics, 24
// vehicles), 59 features, 24 metaphors (12 per class). Human responses are
// 40 forced-choice draws per metaphor from the model at `lambda`.
inline Dataset SyntheticPaperDataset(std::uint64_t seed, double lambda = 20.0,
                                     int responses = 40) {
  std::mt19937_64 rng(seed);
  const std::size_t kCategories = 48, kFeatures = 59, kMetaphors = 24;
  auto rows = RandomRows(rng, kCategories, kFeatures);
  std::vector<std::string> categories, features;
  for (std::size_t c = 0; c < kCategories; ++c) {
    categories.push_back((c < kMetaphors ? "topic" : "vehicle") +
                         std::to_string(c % kMetaphors));
  }
  for (std::size_t i = 0; i < kFeatures; ++i) {
    features.push_back("feature" + std::to_string(i));
  }
  std::vector<double> values;
  for (const auto& row : rows) values.insert(values.end(), row.begin(), row.end());
  Dataset data;
  data.typicality =
      TypicalityTable(categories, FeatureVocab(features), std::move(values));
  RsaConfig config;
  config.lambda = lambda;
  for (std::size_t k = 0; k < kMetaphors; ++k) {
    MetaphorItem item = Item("m" + std::to_string(k), categories[k],
                             categories[k + kMetaphors],
                             k % 2 == 0 ? MetaphorClass::kVehicleInherent
                                        : MetaphorClass::kNonVehicleInherent);
    item.familiarity = 4.0;
    const auto probs = Interpret(item, config, data.typicality).probs();
    std::discrete_distribution<std::size_t> draw(probs.begin(), probs.end());
    std::vector<double> counts(kFeatures, 0.0);
    for (int r = 0; r < responses; ++r) counts[draw(rng)] += 1.0;
    data.human.Add(item.id, counts);
    data.metaphors.push_back(std::move(item));
  }
  return data;
}

}  // namespace metarsa::testing

#endif  // METARSA_TESTS_FIXTURES_H_
