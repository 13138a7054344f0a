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

#include "report_io.h"

#include "csv.h"

namespace metarsa::io {

namespace {

Json AggregateJson(const Aggregate& a) {
  Json j;
  j["count"] = a.count;
  j["mean_pearson"] = a.mean_pearson;
  j["sd_pearson"] = a.sd_pearson;
  j["mean_jsd"] = a.mean_jsd;
  j["sd_jsd"] = a.sd_jsd;
  Json totals = Json::object();
  for (const auto& [k, v] : a.k_agreement_total) {
    totals[std::to_string(k)] = v;
  }
  Json means = Json::object();
  for (const auto& [k, v] : a.k_agreement_mean) means[std::to_string(k)] = v;
  j["k_agreement_total"] = totals;
  j["k_agreement_mean"] = means;
  Json overlap = Json::object();
  for (const auto& [k, v] : a.k_overlap_rate) overlap[std::to_string(k)] = v;
  j["k_overlap_rate"] = overlap;
  j["argmax_in_human_top3_rate"] = a.argmax_in_human_top3_rate;
  return j;
}

Json Names(const std::vector<std::size_t>& idx, const FeatureVocab& vocab) {
  Json out = Json::array();
  for (std::size_t i : idx) out.push_back(vocab.name(i));
  return out;
}

std::string JoinNames(const std::vector<std::size_t>& idx,
                      const FeatureVocab& vocab) {
  std::string out;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (k) out += ';';
    out += vocab.name(idx[k]);
  }
  return out;
}

std::string CommentHeader(const Json& config, const std::string& hash) {
  return "# config: " + config.dump() + "\n# dataset_sha256: " + hash + "\n";
}

}  // namespace

Json RunConfigJson(const RunConfig& config, std::optional<double> lambda) {
  Json j;
  j["data_dir"] = config.data_dir.string();
  j["output_dir"] = config.output_dir.string();
  j["mode"] = ToString(config.mode);
  j["lambda_source"] = config.lambda ? "fixed" : "learned";
  j["lambda"] = lambda ? Json(*lambda) : Json(nullptr);
  j["split_seed"] = config.split_seed;
  j["objective"] = ToString(config.objective);
  j["jsd_base"] = config.jsd_base == LogBase::kTwo ? "2" : "e";
  j["utterances"] = ToString(config.utterances);
  j["category_prior"] = ToString(config.category_prior);
  j["raw_ratings"] = config.raw_ratings;
  j["k"] = config.ks;
  return j;
}

Json FitJson(const FitResult& fit, const TrainTestSplit& split,
             const Json& config, const std::string& dataset_hash) {
  Json j;
  j["lambda"] = fit.lambda_hat;
  j["objective"] = fit.objective_value;
  j["iterations"] = fit.iterations;
  j["converged"] = fit.converged;
  j["gradient_norm"] = fit.gradient_norm_at_convergence;
  j["init"] = fit.init;
  Json trace = Json::array();
  for (const auto& t : fit.trace) {
    trace.push_back(
        {{"iteration", t.iteration}, {"lambda", t.lambda},
         {"objective", t.objective}});
  }
  j["trace"] = trace;
  j["split_seed"] = split.seed;
  j["split"] = {{"train", split.train}, {"test", split.test}};
  j["config"] = config;
  j["dataset_sha256"] = dataset_hash;
  return j;
}

Json ReportJson(const EvalReport& report, const FeatureVocab& vocab,
                const Json& config, const std::string& dataset_hash) {
  Json j;
  j["tag"] = report.tag;
  j["config"] = config;
  j["dataset_sha256"] = dataset_hash;
  j["goal_prior"] = ToString(report.config.goal_prior);
  j["lambda"] = report.config.lambda;
  Json agg;
  agg["overall"] = AggregateJson(report.overall);
  agg["inherent"] = AggregateJson(report.inherent);
  agg["non_inherent"] = AggregateJson(report.non_inherent);
  if (report.test) agg["test"] = AggregateJson(*report.test);
  j["aggregates"] = agg;
  j["human_tie_count"] = report.human_tie_count;
  j["features"] = vocab.names();
  Json items = Json::array();
  for (const auto& e : report.items) {
    Json item;
    item["id"] = e.id;
    item["class"] = ToString(e.metaphor_class);
    item["pearson"] = e.pearson;
    item["jsd"] = e.jsd;
    Json ka = Json::object();
    for (const auto& [k, v] : e.k_agreement) ka[std::to_string(k)] = v;
    item["k_agreement"] = ka;
    item["model_top3"] = Names(e.model_top3, vocab);
    item["human_top3"] = Names(e.human_top3, vocab);
    item["model_argmax_in_human_top3"] = e.model_argmax_in_human_top3;
    item["human_top3_ties"] = e.human_top3_ties;
    item["model"] = e.model;
    item["human"] = e.human;
    items.push_back(std::move(item));
  }
  j["items"] = items;
  return j;
}

std::string ReportCsv(const EvalReport& report, const FeatureVocab& vocab,
                      const Json& config, const std::string& dataset_hash) {
  std::string out = CommentHeader(config, dataset_hash);
  std::vector<int> ks;
  if (!report.items.empty()) {
    for (const auto& [k, unused] : report.items.front().k_agreement) {
      ks.push_back(k);
    }
  }
  out += "id,class,pearson,jsd";
  for (int k : ks) out += ",k" + std::to_string(k) + "_agreement";
  out += ",model_top3,human_top3,model_argmax_in_human_top3\n";
  for (const auto& e : report.items) {
    out += csv::Escape(e.id) + "," + std::string(ToString(e.metaphor_class)) +
           "," + FormatValue(e.pearson) + "," + FormatValue(e.jsd);
    for (int k : ks) out += "," + std::to_string(e.k_agreement.at(k));
    out += "," + csv::Escape(JoinNames(e.model_top3, vocab)) + "," +
           csv::Escape(JoinNames(e.human_top3, vocab)) + "," +
           (e.model_argmax_in_human_top3 ? "1" : "0") + "\n";
  }
  return out;
}

std::string CorrelationCsv(const FeatureCorrelation& corr, const Json& config,
                           const std::string& dataset_hash) {
  std::string out = CommentHeader(config, dataset_hash);
  out += "feature";
  for (const auto& f : corr.features) out += "," + csv::Escape(f);
  out += "\n";
  for (std::size_t i = 0; i < corr.features.size(); ++i) {
    out += csv::Escape(corr.features[i]);
    for (const auto& v : corr.matrix[i]) {
      out += ",";
      if (v) out += FormatValue(*v);
    }
    out += "\n";
  }
  return out;
}

std::string Dump(const Json& json) { return json.dump(2) + "\n"; }

}  // namespace metarsa::io
