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

#ifndef METARSA_CLI_H_
#define METARSA_CLI_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "metarsa/learn.h"
#include "metarsa/metrics.h"
#include "metarsa/rsa.h"

namespace metarsa {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitIoError = 2;

struct RunConfig {
  std::filesystem::path data_dir = ".";
  std::filesystem::path output_dir = "out";
  InferenceMode mode = InferenceMode::kFull;
  std::optional<double> lambda;  // empty: learned
  std::uint64_t split_seed = 0;
  ObjectiveKind objective = ObjectiveKind::kMeanPearson;
  LogBase jsd_base = LogBase::kTwo;
  UtteranceSet utterances = UtteranceSet::kAllCategories;
  CategoryPrior category_prior = CategoryPrior::kTopicOnly;
  bool raw_ratings = false;
  std::vector<int> ks = {1, 3};
};

// Runs one command line (argv[0] is the program name). Normal output goes to
// `out`, diagnostics to `err`. Returns the process exit code.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

// Levenshtein distance, used for "did you mean" suggestions.
std::size_t EditDistance(const std::string& a, const std::string& b);

}  // namespace metarsa

#endif  // METARSA_CLI_H_
