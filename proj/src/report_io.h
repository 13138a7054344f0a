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

// JSON / CSV serialization of run artifacts.

#ifndef METARSA_SRC_REPORT_IO_H_
#define METARSA_SRC_REPORT_IO_H_

#include <string>

#include "json.hpp"
#include "metarsa/cli.h"
#include "metarsa/evaluation.h"
#include "metarsa/learn.h"
#include "metarsa/lexicon.h"

namespace metarsa::io {

using Json = nlohmann::ordered_json;

// Echo of the resolved run configuration. `lambda` is the value actually
// used (null when not applicable).
Json RunConfigJson(const RunConfig& config, std::optional<double> lambda);

Json FitJson(const FitResult& fit, const TrainTestSplit& split,
             const Json& config, const std::string& dataset_hash);

Json ReportJson(const EvalReport& report, const FeatureVocab& vocab,
                const Json& config, const std::string& dataset_hash);

// One row per metaphor, preceded by '#' comment lines with the config and
// dataset hash.
std::string ReportCsv(const EvalReport& report, const FeatureVocab& vocab,
                      const Json& config, const std::string& dataset_hash);

// Header row and first column are feature names; undefined entries are
// empty cells.
std::string CorrelationCsv(const FeatureCorrelation& corr, const Json& config,
                           const std::string& dataset_hash);

std::string Dump(const Json& json);

}  // namespace metarsa::io

#endif  // METARSA_SRC_REPORT_IO_H_
