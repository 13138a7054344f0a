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

#include "metarsa/lexicon.h"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <memory>
#include <numeric>
#include <set>
#include <utility>

#include "csv.h"
#include "metarsa/error.h"

namespace metarsa {

namespace {

const std::vector<std::string> kTypicalityHeader = {"category", "feature",
                                                    "value"};
const std::vector<std::string> kMetaphorHeader = {"id", "topic", "vehicle",
                                                  "class", "familiarity"};
const std::vector<std::string> kHumanHeader = {"metaphor_id", "feature",
                                               "count"};

std::string Where(const std::string& file, std::size_t line) {
  return file + ":" + std::to_string(line);
}

// Ordered keys with first-appearance order.
class OrderedKeys {
 public:
  std::size_t Insert(const std::string& key) {
    auto [it, inserted] = index_.emplace(key, keys_.size());
    if (inserted) keys_.push_back(key);
    return it->second;
  }
  const std::vector<std::string>& keys() const { return keys_; }

 private:
  std::vector<std::string> keys_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct Cell {
  std::size_t category;
  std::size_t feature;
  double value;
  std::size_t line;
};

// Assembles a complete matrix; every (category, feature) cell must be set
// exactly once.
TypicalityTable AssembleTable(const OrderedKeys& categories,
                              const OrderedKeys& features,
                              const std::vector<Cell>& cells,
                              const std::string& file) {
  const std::size_t n = features.keys().size();
  const std::size_t m = categories.keys().size();
  std::vector<double> values(m * n, 0.0);
  std::vector<bool> seen(m * n, false);
  for (const Cell& cell : cells) {
    const std::size_t k = cell.category * n + cell.feature;
    if (seen[k]) {
      throw DomainError(Where(file, cell.line) + ": duplicate cell (" +
                        categories.keys()[cell.category] + ", " +
                        features.keys()[cell.feature] + ")");
    }
    seen[k] = true;
    values[k] = cell.value;
  }
  for (std::size_t k = 0; k < seen.size(); ++k) {
    if (!seen[k]) {
      throw DomainError(file + ": missing cell (" + categories.keys()[k / n] +
                        ", " + features.keys()[k % n] + ")");
    }
  }
  return TypicalityTable(categories.keys(), FeatureVocab(features.keys()),
                         std::move(values));
}

TypicalityTable ReadTypicality(const std::filesystem::path& path,
                               bool raw_ratings) {
  const std::string file = path.filename().string();
  const auto rows = csv::ReadFile(path, kTypicalityHeader);
  if (raw_ratings) {
    RawRatingsTable raw;
    for (const auto& row : rows) {
      if (row.fields[0].empty() || row.fields[1].empty()) {
        throw DomainError(Where(file, row.line) + ": empty identifier");
      }
      const double value =
          csv::ParseNumber(row.fields[2], Where(file, row.line));
      if (value < 1.0 || value > 7.0) {
        throw DomainError(Where(file, row.line) +
                          ": rating outside [1, 7]: " + row.fields[2]);
      }
      raw.rows.push_back({row.fields[0], row.fields[1], value});
    }
    return NormalizeRatings(raw);
  }
  OrderedKeys categories;
  OrderedKeys features;
  std::vector<Cell> cells;
  for (const auto& row : rows) {
    if (row.fields[0].empty() || row.fields[1].empty()) {
      throw DomainError(Where(file, row.line) + ": empty identifier");
    }
    const double value = csv::ParseNumber(row.fields[2], Where(file, row.line));
    cells.push_back({categories.Insert(row.fields[0]),
                     features.Insert(row.fields[1]), value, row.line});
  }
  return AssembleTable(categories, features, cells, file);
}

std::vector<MetaphorItem> ReadMetaphors(const std::filesystem::path& path) {
  const std::string file = path.filename().string();
  std::vector<MetaphorItem> items;
  std::set<std::string> ids;
  for (const auto& row : csv::ReadFile(path, kMetaphorHeader)) {
    MetaphorItem item;
    item.id = row.fields[0];
    item.topic = row.fields[1];
    item.vehicle = row.fields[2];
    if (item.id.empty() || item.topic.empty() || item.vehicle.empty()) {
      throw DomainError(Where(file, row.line) + ": empty identifier");
    }
    const auto cls = ParseMetaphorClass(row.fields[3]);
    if (!cls) {
      throw DomainError(Where(file, row.line) + ": class must be 'inherent' " +
                        "or 'non_inherent', got '" + row.fields[3] + "'");
    }
    item.metaphor_class = *cls;
    if (!row.fields[4].empty()) {
      item.familiarity = csv::ParseNumber(row.fields[4], Where(file, row.line));
    }
    if (!ids.insert(item.id).second) {
      throw DomainError(Where(file, row.line) + ": duplicate metaphor id '" +
                        item.id + "'");
    }
    items.push_back(std::move(item));
  }
  return items;
}

HumanResponseTable ReadHuman(const std::filesystem::path& path,
                             const FeatureVocab& vocab) {
  const std::string file = path.filename().string();
  std::map<std::string, std::vector<double>> counts;
  std::map<std::string, std::vector<bool>> seen;
  for (const auto& row : csv::ReadFile(path, kHumanHeader)) {
    const std::string& id = row.fields[0];
    if (id.empty()) {
      throw DomainError(Where(file, row.line) + ": empty metaphor id");
    }
    const auto feature = vocab.find(row.fields[1]);
    if (!feature) {
      throw DomainError(Where(file, row.line) + ": unknown feature '" +
                        row.fields[1] + "'");
    }
    const double count = csv::ParseNumber(row.fields[2], Where(file, row.line));
    if (count < 0.0) {
      throw DomainError(Where(file, row.line) + ": negative count");
    }
    auto& vec = counts[id];
    auto& mask = seen[id];
    if (vec.empty()) {
      vec.assign(vocab.size(), 0.0);
      mask.assign(vocab.size(), false);
    }
    if (mask[*feature]) {
      throw DomainError(Where(file, row.line) + ": duplicate entry (" + id +
                        ", " + row.fields[1] + ")");
    }
    mask[*feature] = true;
    vec[*feature] = count;
  }
  HumanResponseTable human;
  for (auto& [id, vec] : counts) {
    try {
      human.Add(id, std::move(vec));
    } catch (const DomainError& e) {
      throw DomainError(file + ": metaphor '" + id + "': " + e.what());
    }
  }
  return human;
}

void WriteFileOrThrow(const std::filesystem::path& path,
                      const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << contents;
  if (!out) throw IoError("error writing " + path.string());
}

}  // namespace

// ---------------------------------------------------------------------------

FeatureVocab::FeatureVocab(std::vector<std::string> features)
    : names_(std::move(features)) {
  if (names_.size() < 2) {
    throw DomainError("feature vocabulary needs at least 2 features");
  }
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw DomainError("empty feature name");
    if (!index_.emplace(names_[i], i).second) {
      throw DomainError("duplicate feature '" + names_[i] + "'");
    }
  }
}

std::optional<std::size_t> FeatureVocab::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

TypicalityTable::TypicalityTable(std::vector<std::string> categories,
                                 FeatureVocab vocab,
                                 std::vector<double> row_major_values)
    : categories_(std::move(categories)),
      vocab_(std::move(vocab)),
      values_(std::move(row_major_values)) {
  if (categories_.empty()) throw DomainError("typicality table is empty");
  if (values_.size() != categories_.size() * vocab_.size()) {
    throw DomainError("typicality matrix has wrong size");
  }
  for (std::size_t c = 0; c < categories_.size(); ++c) {
    if (categories_[c].empty()) throw DomainError("empty category name");
    if (!category_index_.emplace(categories_[c], c).second) {
      throw DomainError("duplicate category '" + categories_[c] + "'");
    }
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("non-finite typicality value");
  }
}

std::optional<std::size_t> TypicalityTable::find_category(
    std::string_view name) const {
  auto it = category_index_.find(std::string(name));
  if (it == category_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t TypicalityTable::category_index(std::string_view name) const {
  auto c = find_category(name);
  if (!c) throw DomainError("unknown category '" + std::string(name) + "'");
  return *c;
}

std::span<const double> TypicalityTable::row(std::size_t c) const {
  if (c >= categories_.size()) throw DomainError("category index out of range");
  return std::span<const double>(values_).subspan(c * vocab_.size(),
                                                  vocab_.size());
}

TypicalityTable TypicalityTable::WithRow(std::size_t c,
                                         std::span<const double> row) const {
  if (c >= categories_.size() || row.size() != vocab_.size()) {
    throw DomainError("WithRow: bad category index or row length");
  }
  std::vector<double> values = values_;
  std::copy(row.begin(), row.end(), values.begin() + c * vocab_.size());
  return TypicalityTable(categories_, vocab_, std::move(values));
}

std::vector<double> NormalizeRow(std::span<const double> ratings) {
  const double sum = std::accumulate(ratings.begin(), ratings.end(), 0.0);
  if (!(sum > 0.0)) throw DomainError("row sum is not positive");
  std::vector<double> out(ratings.size());
  std::transform(ratings.begin(), ratings.end(), out.begin(),
                 [sum](double r) { return r / sum; });
  return out;
}

TypicalityTable NormalizeRatings(const RawRatingsTable& raw) {
  OrderedKeys categories;
  OrderedKeys features;
  std::vector<Cell> cells;
  for (std::size_t k = 0; k < raw.rows.size(); ++k) {
    const RawRating& r = raw.rows[k];
    if (!(r.rating >= 1.0 && r.rating <= 7.0)) {
      throw DomainError("rating for (" + r.category + ", " + r.feature +
                        ") outside [1, 7]");
    }
    cells.push_back({categories.Insert(r.category), features.Insert(r.feature),
                     r.rating, k + 1});
  }
  TypicalityTable ratings =
      AssembleTable(categories, features, cells, "ratings");
  const std::size_t n = ratings.num_features();
  std::vector<double> values;
  values.reserve(ratings.num_categories() * n);
  for (std::size_t c = 0; c < ratings.num_categories(); ++c) {
    std::vector<double> row;
    try {
      row = NormalizeRow(ratings.row(c));
    } catch (const DomainError&) {
      throw DomainError("zero rating sum for category '" +
                        ratings.category(c) + "'");
    }
    values.insert(values.end(), row.begin(), row.end());
  }
  return TypicalityTable(ratings.categories(), ratings.vocab(),
                         std::move(values));
}

std::string_view ToString(MetaphorClass cls) {
  return cls == MetaphorClass::kVehicleInherent ? "inherent" : "non_inherent";
}

std::optional<MetaphorClass> ParseMetaphorClass(std::string_view text) {
  if (text == "inherent") return MetaphorClass::kVehicleInherent;
  if (text == "non_inherent") return MetaphorClass::kNonVehicleInherent;
  return std::nullopt;
}

void HumanResponseTable::Add(const std::string& metaphor_id,
                             std::vector<double> weights) {
  if (probs_.contains(metaphor_id)) {
    throw DomainError("duplicate human distribution for '" + metaphor_id +
                      "'");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw DomainError("negative or non-finite count");
    }
    sum += w;
  }
  if (!(sum > 0.0)) throw DomainError("all counts are zero");
  std::vector<double> probs(weights.size());
  std::transform(weights.begin(), weights.end(), probs.begin(),
                 [sum](double w) { return w / sum; });
  probs_.emplace(metaphor_id, std::move(probs));
  weights_.emplace(metaphor_id, std::move(weights));
}

bool HumanResponseTable::contains(std::string_view id) const {
  return probs_.find(id) != probs_.end();
}

const std::vector<double>& HumanResponseTable::at(std::string_view id) const {
  auto it = probs_.find(id);
  if (it == probs_.end()) {
    throw DomainError("no human distribution for metaphor '" +
                      std::string(id) + "'");
  }
  return it->second;
}

const std::vector<double>& HumanResponseTable::weights(
    std::string_view id) const {
  auto it = weights_.find(id);
  if (it == weights_.end()) {
    throw DomainError("no human distribution for metaphor '" +
                      std::string(id) + "'");
  }
  return it->second;
}

std::vector<std::string> HumanResponseTable::ids() const {
  std::vector<std::string> out;
  for (const auto& [id, unused] : probs_) out.push_back(id);
  return out;
}

ValidationReport Validate(const TypicalityTable& table,
                          std::span<const MetaphorItem> items,
                          const HumanResponseTable& human) {
  using Kind = Violation::Kind;
  ValidationReport report;
  auto add = [&report](Kind kind, std::string message) {
    report.violations.push_back({kind, std::move(message)});
  };

  for (std::size_t c = 0; c < table.num_categories(); ++c) {
    const auto row = table.row(c);
    const double sum = std::accumulate(row.begin(), row.end(), 0.0);
    if (std::abs(sum - 1.0) > kSimplexTolerance) {
      add(Kind::kRowSum, "typicality row '" + table.category(c) +
                             "' sums to " + FormatValue(sum) + ", not 1");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i] < 0.0) {
        add(Kind::kNegativeEntry, "typicality (" + table.category(c) + ", " +
                                      table.vocab().name(i) + ") is negative");
      }
    }
  }

  std::set<std::string> ids;
  for (const MetaphorItem& item : items) {
    if (!ids.insert(item.id).second) {
      add(Kind::kMetaphor, "duplicate metaphor id '" + item.id + "'");
    }
    if (item.topic == item.vehicle) {
      add(Kind::kMetaphor,
          "metaphor '" + item.id + "' has identical topic and vehicle");
    }
    for (const std::string* noun : {&item.topic, &item.vehicle}) {
      if (!table.find_category(*noun)) {
        add(Kind::kUnknownReference, "metaphor '" + item.id +
                                         "' references unknown category '" +
                                         *noun + "'");
      }
    }
    if (!human.contains(item.id)) {
      add(Kind::kCoverage,
          "no human distribution for metaphor '" + item.id + "'");
    }
  }

  for (const std::string& id : human.ids()) {
    if (!ids.contains(id)) {
      add(Kind::kUnknownReference,
          "human distribution for unknown metaphor '" + id + "'");
    }
    const auto& probs = human.at(id);
    if (probs.size() != table.num_features()) {
      add(Kind::kHumanSum, "human distribution for '" + id +
                               "' has wrong length");
      continue;
    }
    double sum = 0.0;
    bool negative = false;
    for (double p : probs) {
      sum += p;
      negative = negative || p < 0.0;
    }
    if (negative) {
      add(Kind::kNegativeEntry,
          "human distribution for '" + id + "' has negative entries");
    }
    if (std::abs(sum - 1.0) > kSimplexTolerance) {
      add(Kind::kHumanSum, "human distribution for '" + id + "' sums to " +
                               FormatValue(sum));
    }
  }
  return report;
}

Dataset ParseDataset(const std::filesystem::path& dir,
                     const LoadOptions& options) {
  for (const char* name : {"typicality.csv", "metaphors.csv", "human.csv"}) {
    if (!std::filesystem::is_regular_file(dir / name)) {
      throw IoError("missing file " + (dir / name).string());
    }
  }
  Dataset data;
  data.typicality =
      ReadTypicality(dir / "typicality.csv", options.raw_ratings);
  data.metaphors = ReadMetaphors(dir / "metaphors.csv");
  data.human = ReadHuman(dir / "human.csv", data.typicality.vocab());
  return data;
}

Dataset LoadDataset(const std::filesystem::path& dir,
                    const LoadOptions& options) {
  Dataset data = ParseDataset(dir, options);
  const ValidationReport report =
      Validate(data.typicality, data.metaphors, data.human);
  if (!report.ok()) {
    std::string message = "invalid dataset in " + dir.string() + ":";
    for (const Violation& v : report.violations) message += "\n  " + v.message;
    throw DomainError(message);
  }
  return data;
}

std::string FormatValue(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

void WriteDataset(const Dataset& dataset, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  const TypicalityTable& table = dataset.typicality;
  std::string typ = "category,feature,value\n";
  for (std::size_t c = 0; c < table.num_categories(); ++c) {
    for (std::size_t i = 0; i < table.num_features(); ++i) {
      typ += csv::Escape(table.category(c)) + "," +
             csv::Escape(table.vocab().name(i)) + "," +
             FormatValue(table.at(c, i)) + "\n";
    }
  }
  WriteFileOrThrow(dir / "typicality.csv", typ);

  std::string met = "id,topic,vehicle,class,familiarity\n";
  for (const MetaphorItem& item : dataset.metaphors) {
    met += csv::Escape(item.id) + "," + csv::Escape(item.topic) + "," +
           csv::Escape(item.vehicle) + "," +
           std::string(ToString(item.metaphor_class)) + "," +
           (item.familiarity ? FormatValue(*item.familiarity) : "") + "\n";
  }
  WriteFileOrThrow(dir / "metaphors.csv", met);

  std::string hum = "metaphor_id,feature,count\n";
  for (const std::string& id : dataset.human.ids()) {
    const auto& w = dataset.human.weights(id);
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] == 0.0) continue;
      hum += csv::Escape(id) + "," + csv::Escape(table.vocab().name(i)) + "," +
             FormatValue(w[i]) + "\n";
    }
  }
  WriteFileOrThrow(dir / "human.csv", hum);
}

std::string DatasetContentHash(const std::filesystem::path& dir) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 initialization failed");
  }
  for (const char* name : {"typicality.csv", "metaphors.csv", "human.csv"}) {
    std::ifstream in(dir / name, std::ios::binary);
    if (!in) throw IoError("cannot open " + (dir / name).string());
    const std::string bytes((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
    EVP_DigestUpdate(ctx.get(), name, std::char_traits<char>::length(name));
    EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size());
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

}  // namespace metarsa
