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

// Typicality data, metaphor items and human interpretation distributions:
// in-memory model, CSV ingestion, normalization and validation.
//
// On-disk layout of a dataset directory:
//   typicality.csv  category,feature,value
//   metaphors.csv   id,topic,vehicle,class,familiarity
//   human.csv       metaphor_id,feature,count

#ifndef METARSA_LEXICON_H_
#define METARSA_LEXICON_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace metarsa {

// Tolerance on row sums of typicality rows and human distributions.
inline constexpr double kSimplexTolerance = 1e-9;

// Ordered, duplicate-free list of feature names. Position in the list is the
// canonical feature index everywhere in the library.
class FeatureVocab {
 public:
  FeatureVocab() = default;
  // Throws DomainError on empty/duplicate names or fewer than 2 features.
  explicit FeatureVocab(std::vector<std::string> features);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> find(std::string_view name) const;

  friend bool operator==(const FeatureVocab& a, const FeatureVocab& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Category x feature matrix of typicality values. The constructor checks
// shape and identifiers; simplex constraints are checked by Validate().
class TypicalityTable {
 public:
  TypicalityTable() = default;
  TypicalityTable(std::vector<std::string> categories, FeatureVocab vocab,
                  std::vector<double> row_major_values);

  std::size_t num_categories() const { return categories_.size(); }
  std::size_t num_features() const { return vocab_.size(); }
  const std::vector<std::string>& categories() const { return categories_; }
  const std::string& category(std::size_t c) const {
    return categories_.at(c);
  }
  const FeatureVocab& vocab() const { return vocab_; }

  std::optional<std::size_t> find_category(std::string_view name) const;
  // Throws DomainError("unknown category ...") if absent.
  std::size_t category_index(std::string_view name) const;

  std::span<const double> row(std::size_t c) const;
  double at(std::size_t c, std::size_t feature) const {
    return values_[c * vocab_.size() + feature];
  }

  // Returns a copy with row c replaced.
  TypicalityTable WithRow(std::size_t c, std::span<const double> row) const;

 private:
  std::vector<std::string> categories_;
  FeatureVocab vocab_;
  std::vector<double> values_;
  std::unordered_map<std::string, std::size_t> category_index_;
};

struct RawRating {
  std::string category;
  std::string feature;
  double rating = 0.0;  // mean Likert rating in [1, 7]
};

struct RawRatingsTable {
  std::vector<RawRating> rows;
};

// r_i / sum_j r_j. Throws DomainError on a non-positive sum.
std::vector<double> NormalizeRow(std::span<const double> ratings);

// Row-sum normalization of mean ratings: T[c][i] = r[c][i] / sum_j r[c][j].
// Categories and features keep first-appearance order. Throws DomainError
// on out-of-range ratings, duplicate or missing cells, zero row sums.
TypicalityTable NormalizeRatings(const RawRatingsTable& raw);

enum class MetaphorClass { kVehicleInherent, kNonVehicleInherent };

// "inherent" / "non_inherent".
std::string_view ToString(MetaphorClass cls);
std::optional<MetaphorClass> ParseMetaphorClass(std::string_view text);

struct MetaphorItem {
  std::string id;
  std::string topic;
  std::string vehicle;
  MetaphorClass metaphor_class = MetaphorClass::kVehicleInherent;
  std::optional<double> familiarity;
};

// Per-metaphor interpretation distribution over the feature vocabulary.
// Keeps the weights as ingested so a dataset can be written back unchanged.
class HumanResponseTable {
 public:
  // Normalizes `weights`; throws DomainError on negative entries, zero
  // total, or a duplicate id.
  void Add(const std::string& metaphor_id, std::vector<double> weights);

  bool contains(std::string_view id) const;
  // Normalized distribution; throws DomainError for an unknown id.
  const std::vector<double>& at(std::string_view id) const;
  const std::vector<double>& weights(std::string_view id) const;
  std::vector<std::string> ids() const;
  std::size_t size() const { return probs_.size(); }

 private:
  std::map<std::string, std::vector<double>, std::less<>> probs_;
  std::map<std::string, std::vector<double>, std::less<>> weights_;
};

struct Dataset {
  TypicalityTable typicality;
  std::vector<MetaphorItem> metaphors;
  HumanResponseTable human;
};

struct Violation {
  enum class Kind {
    kRowSum,
    kNegativeEntry,
    kUnknownReference,
    kCoverage,
    kHumanSum,
    kMetaphor,
  };
  Kind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Lists every invariant violation; never throws.
ValidationReport Validate(const TypicalityTable& table,
                          std::span<const MetaphorItem> items,
                          const HumanResponseTable& human);

struct LoadOptions {
  // typicality.csv holds mean Likert ratings rather than typicalities.
  bool raw_ratings = false;
};

// Reads the three CSV files without cross-file checks. Throws IoError for a
// missing/unreadable file and DomainError (with file name and row number)
// for malformed rows, unknown features, duplicate keys, missing cells.
Dataset ParseDataset(const std::filesystem::path& dir,
                     const LoadOptions& options = {});

// ParseDataset followed by Validate; throws DomainError listing the
// violations if the dataset is not usable.
Dataset LoadDataset(const std::filesystem::path& dir,
                    const LoadOptions& options = {});

// Writes the dataset as normalized typicalities, metaphors and the human
// weights as ingested. Values use 12 significant digits.
void WriteDataset(const Dataset& dataset, const std::filesystem::path& dir);

// Formats a value with 12 significant digits.
std::string FormatValue(double value);

// Hex SHA-256 over the three dataset files, in fixed order.
std::string DatasetContentHash(const std::filesystem::path& dir);

}  // namespace metarsa

#endif  // METARSA_LEXICON_H_
