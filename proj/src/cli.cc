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

#include "metarsa/cli.h"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "csv.h"
#include "metarsa/error.h"
#include "metarsa/evaluation.h"
#include "metarsa/lexicon.h"
#include "report_io.h"

namespace metarsa {

namespace {

using io::Json;

// Output files of one command. Nothing touches the output directory until
// Commit(); a failed commit removes whatever it wrote.
class StagedOutputs {
 public:
  void Add(std::string name, std::string contents) {
    files_.emplace_back(std::move(name), std::move(contents));
  }

  void Commit(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    std::vector<fs::path> written;
    try {
      std::error_code ec;
      fs::create_directories(dir, ec);
      if (ec) throw IoError("cannot create " + dir.string());
      for (const auto& [name, contents] : files_) {
        const fs::path tmp = dir / (name + ".tmp");
        written.push_back(tmp);
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << contents;
        out.close();
        if (!out) throw IoError("cannot write " + tmp.string());
      }
      for (const auto& [name, unused] : files_) {
        const fs::path tmp = dir / (name + ".tmp");
        fs::rename(tmp, dir / name, ec);
        if (ec) throw IoError("cannot write " + (dir / name).string());
        written.push_back(dir / name);
      }
    } catch (...) {
      std::error_code ec;
      for (const auto& p : written) fs::remove(p, ec);
      throw;
    }
  }

 private:
  std::vector<std::pair<std::string, std::string>> files_;
};

struct Context {
  RunConfig config;
  Dataset data;
  std::string dataset_hash;
};

Context Load(const RunConfig& config) {
  Context ctx{config, LoadDataset(config.data_dir, {config.raw_ratings}),
              DatasetContentHash(config.data_dir)};
  return ctx;
}

RsaConfig ToRsa(const RunConfig& config, double lambda) {
  RsaConfig rsa;
  rsa.lambda = lambda;
  rsa.mode = config.mode;
  rsa.utterances = config.utterances;
  rsa.category_prior = config.category_prior;
  return rsa;
}

struct ResolvedLambda {
  double lambda = 0.0;
  std::optional<TrainTestSplit> split;
  std::optional<FitResult> fit;
};

std::optional<TrainTestSplit> TrySplit(const Context& ctx) {
  try {
    return MakeSplit(ctx.data.metaphors, ctx.config.split_seed);
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

FitResult Train(const Context& ctx, const TrainTestSplit& split) {
  const auto train = SelectItems(ctx.data.metaphors, split.train);
  LearnOptions options;
  options.objective = ctx.config.objective;
  return LearnLambdaMultiStart(train, ctx.data.human,
                               ToRsa(ctx.config, 1.0), ctx.data.typicality,
                               options);
}

// Reuses params.json from the output directory when it was produced from the
// same data and fit-relevant settings; otherwise fits now.
std::optional<double> CachedLambda(const Context& ctx) {
  const auto path = ctx.config.output_dir / "params.json";
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    const Json params = Json::parse(in);
    const Json& cfg = params.at("config");
    const bool same =
        params.at("dataset_sha256") == ctx.dataset_hash &&
        params.at("split_seed") == ctx.config.split_seed &&
        cfg.at("mode") == ToString(ctx.config.mode) &&
        cfg.at("utterances") == ToString(ctx.config.utterances) &&
        cfg.at("category_prior") == ToString(ctx.config.category_prior) &&
        cfg.at("objective") == ToString(ctx.config.objective);
    if (same) return params.at("lambda").get<double>();
  } catch (const Json::exception&) {
  }
  return std::nullopt;
}

ResolvedLambda Resolve(const Context& ctx) {
  ResolvedLambda out;
  out.split = TrySplit(ctx);
  if (ctx.config.lambda) {
    out.lambda = *ctx.config.lambda;
    return out;
  }
  if (!out.split) {
    throw DomainError(
        "learning lambda needs 24 metaphors with 12 per class; pass --lambda");
  }
  if (auto cached = CachedLambda(ctx)) {
    out.lambda = *cached;
    return out;
  }
  out.fit = Train(ctx, *out.split);
  out.lambda = out.fit->lambda_hat;
  return out;
}

EvalOptions MakeEvalOptions(const RunConfig& config,
                            const std::optional<TrainTestSplit>& split) {
  EvalOptions options;
  options.ks = config.ks;
  options.jsd_base = config.jsd_base;
  if (split) options.test_ids = split->test;
  return options;
}

void PrintSummary(std::ostream& out, const EvalReport& report) {
  auto line = [&out](const char* name, const Aggregate& a) {
    out << name << ": n=" << a.count << " r=" << FormatValue(a.mean_pearson)
        << " (sd " << FormatValue(a.sd_pearson)
        << ") jsd=" << FormatValue(a.mean_jsd) << " (sd "
        << FormatValue(a.sd_jsd) << ")";
    for (const auto& [k, v] : a.k_agreement_total) {
      out << " " << k << "-agreement=" << v << " (mean "
          << FormatValue(a.k_agreement_mean.at(k)) << ")";
    }
    out << "\n";
  };
  out << report.tag << " lambda=" << FormatValue(report.config.lambda) << "\n";
  line("overall", report.overall);
  line("inherent", report.inherent);
  line("non_inherent", report.non_inherent);
  if (report.test) line("test", *report.test);
}

std::vector<std::string> Suggestions(const TypicalityTable& table,
                                     const std::string& noun) {
  std::vector<std::string> out;
  for (const auto& c : table.categories()) {
    if (EditDistance(c, noun) <= 2) out.push_back(c);
  }
  return out;
}

void CheckNoun(const TypicalityTable& table, const std::string& noun) {
  if (table.find_category(noun)) return;
  std::string message = "unknown noun '" + noun + "'";
  const auto near = Suggestions(table, noun);
  if (!near.empty()) {
    message += "; did you mean:";
    for (const auto& s : near) message += " " + s;
  }
  throw DomainError(message);
}

// --- commands -------------------------------------------------------------

int CmdValidate(const RunConfig& config, std::ostream& out,
                std::ostream& err) {
  const Dataset data = ParseDataset(config.data_dir, {config.raw_ratings});
  const auto report = Validate(data.typicality, data.metaphors, data.human);
  for (const auto& v : report.violations) err << v.message << "\n";
  if (!report.ok()) {
    err << report.violations.size() << " violation(s)\n";
    return kExitDomainError;
  }
  out << "ok: " << data.typicality.num_categories() << " categories, "
      << data.typicality.num_features() << " features, "
      << data.metaphors.size() << " metaphors\n";
  return kExitOk;
}

int CmdInterpret(const RunConfig& config, const std::string& topic,
                 const std::string& vehicle, std::ostream& out) {
  const Context ctx = Load(config);
  CheckNoun(ctx.data.typicality, topic);
  CheckNoun(ctx.data.typicality, vehicle);
  const ResolvedLambda lambda = Resolve(ctx);
  MetaphorItem item;
  item.id = topic + "/" + vehicle;
  item.topic = topic;
  item.vehicle = vehicle;
  const auto dist =
      Interpret(item, ToRsa(config, lambda.lambda), ctx.data.typicality);
  const auto probs = dist.probs();
  const auto order = TopK(probs, probs.size());
  const auto& vocab = ctx.data.typicality.vocab();
  out << "# topic=" << topic << " vehicle=" << vehicle
      << " lambda=" << FormatValue(lambda.lambda)
      << " mode=" << ToString(config.mode) << "\n";
  for (std::size_t r = 0; r < order.size(); ++r) {
    out << r + 1 << "\t" << vocab.name(order[r]) << "\t"
        << FormatValue(probs[order[r]]) << "\n";
  }
  const std::size_t k = std::min<std::size_t>(3, order.size());
  out << "top-" << k << ":";
  for (std::size_t r = 0; r < k; ++r) {
    out << (r ? ", " : " ") << vocab.name(order[r]);
  }
  out << "\n";
  return kExitOk;
}

int CmdTrain(const RunConfig& config, std::ostream& out) {
  const Context ctx = Load(config);
  const TrainTestSplit split =
      MakeSplit(ctx.data.metaphors, config.split_seed);
  const FitResult fit = Train(ctx, split);
  StagedOutputs outputs;
  outputs.Add("params.json",
              io::Dump(io::FitJson(fit, split,
                                   io::RunConfigJson(config, fit.lambda_hat),
                                   ctx.dataset_hash)));
  outputs.Commit(config.output_dir);
  out << "lambda=" << FormatValue(fit.lambda_hat)
      << " objective=" << FormatValue(fit.objective_value)
      << " iterations=" << fit.iterations
      << " converged=" << (fit.converged ? "yes" : "no") << "\n";
  return kExitOk;
}

int CmdEval(const RunConfig& config, std::ostream& out) {
  const Context ctx = Load(config);
  const ResolvedLambda lambda = Resolve(ctx);
  const EvalReport report =
      Evaluate(ctx.data.metaphors, ctx.data.human,
               ToRsa(config, lambda.lambda), ctx.data.typicality,
               MakeEvalOptions(config, lambda.split));
  const Json cfg = io::RunConfigJson(config, lambda.lambda);
  const auto& vocab = ctx.data.typicality.vocab();
  StagedOutputs outputs;
  outputs.Add("report.json", io::Dump(io::ReportJson(report, vocab, cfg,
                                                     ctx.dataset_hash)));
  outputs.Add("report.csv",
              io::ReportCsv(report, vocab, cfg, ctx.dataset_hash));
  outputs.Commit(config.output_dir);
  PrintSummary(out, report);
  return kExitOk;
}

int CmdAblate(const RunConfig& config, const std::string& kind,
              const std::vector<double>& grid, std::ostream& out) {
  const Context ctx = Load(config);
  const ResolvedLambda lambda = Resolve(ctx);
  const RsaConfig rsa = ToRsa(config, lambda.lambda);
  const EvalOptions options = MakeEvalOptions(config, lambda.split);
  const auto& vocab = ctx.data.typicality.vocab();
  StagedOutputs outputs;
  if (kind == "no-relevance" || kind == "all") {
    const EvalReport report =
        AblateRelevance(ctx.data.metaphors, ctx.data.human, rsa,
                        ctx.data.typicality, options);
    outputs.Add("ablation_no_relevance.json",
                io::Dump(io::ReportJson(
                    report, vocab, io::RunConfigJson(config, lambda.lambda),
                    ctx.dataset_hash)));
    PrintSummary(out, report);
  }
  if (kind == "grid-lambda" || kind == "all") {
    if (!lambda.split) {
      throw DomainError("grid-lambda ablation needs the 18/6 split");
    }
    const auto train = SelectItems(ctx.data.metaphors, lambda.split->train);
    const auto g = grid.empty() ? DefaultLambdaGrid() : grid;
    const GridAblation result = AblateLambdaInterpolation(
        train, ctx.data.metaphors, ctx.data.human, rsa, ctx.data.typicality,
        g, config.objective, options);
    Json json =
        io::ReportJson(result.report, vocab,
                       io::RunConfigJson(config, result.best_lambda),
                       ctx.dataset_hash);
    json["reference_lambda"] = lambda.lambda;
    json["grid_best_objective"] = result.best_objective;
    Json scan = Json::array();
    for (const auto& [l, v] : result.scan) scan.push_back({l, v});
    json["grid_scan"] = scan;
    outputs.Add("ablation_grid_lambda.json", io::Dump(json));
    PrintSummary(out, result.report);
  }
  outputs.Commit(config.output_dir);
  return kExitOk;
}

int CmdCorr(const RunConfig& config, std::ostream& out) {
  const Context ctx = Load(config);
  const ResolvedLambda lambda = Resolve(ctx);
  const RsaConfig rsa = ToRsa(config, lambda.lambda);
  const Json cfg = io::RunConfigJson(config, lambda.lambda);
  StagedOutputs outputs;
  outputs.Add("corr_model.csv",
              io::CorrelationCsv(
                  FeatureCorrelationMatrix(ctx.data.metaphors,
                                           CorrelationSource::kModel,
                                           ctx.data.human, rsa,
                                           ctx.data.typicality),
                  cfg, ctx.dataset_hash));
  outputs.Add("corr_human.csv",
              io::CorrelationCsv(
                  FeatureCorrelationMatrix(ctx.data.metaphors,
                                           CorrelationSource::kHuman,
                                           ctx.data.human, rsa,
                                           ctx.data.typicality),
                  cfg, ctx.dataset_hash));
  outputs.Commit(config.output_dir);
  out << "wrote corr_model.csv and corr_human.csv to "
      << config.output_dir.string() << "\n";
  return kExitOk;
}

std::vector<int> ParseKs(const std::string& text) {
  std::vector<int> ks;
  for (const auto& field : csv::SplitLine(text)) {
    const double v = csv::ParseNumber(field, "--k");
    if (v != static_cast<int>(v) || v < 1) {
      throw DomainError("--k entries must be positive integers");
    }
    ks.push_back(static_cast<int>(v));
  }
  if (ks.empty()) throw DomainError("--k is empty");
  return ks;
}

std::vector<double> ParseGrid(const std::string& text) {
  std::vector<double> grid;
  if (text.empty()) return grid;
  for (const auto& field : csv::SplitLine(text)) {
    grid.push_back(csv::ParseNumber(field, "--grid"));
  }
  return grid;
}

}  // namespace

std::size_t EditDistance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1,
                         prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Rational speech act model of metaphor interpretation"};
  app.require_subcommand(1);

  RunConfig config;
  std::string data_dir = ".";
  std::string output_dir = "out";
  std::string mode = "full";
  std::string lambda = "learned";
  std::string objective = "mean";
  std::string jsd_base = "2";
  std::string utterances = "all";
  std::string category_prior = "topic";
  std::string ks = "1,3";
  std::string grid;
  std::string kind = "all";
  std::string topic, vehicle;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--data", data_dir, "Dataset directory")
        ->capture_default_str();
    cmd->add_flag("--raw-ratings", config.raw_ratings,
                  "typicality.csv holds mean 1-7 ratings");
  };
  auto add_model = [&](CLI::App* cmd) {
    add_common(cmd);
    cmd->add_option("--out", output_dir, "Output directory")
        ->capture_default_str();
    cmd->add_option("--mode", mode, "full | fast")
        ->check(CLI::IsMember({"full", "fast"}))
        ->capture_default_str();
    cmd->add_option("--lambda", lambda, "Rationality value or 'learned'")
        ->capture_default_str();
    cmd->add_option("--seed", config.split_seed, "Train/test split seed")
        ->capture_default_str();
    cmd->add_option("--objective", objective, "mean | pooled")
        ->check(CLI::IsMember({"mean", "pooled"}))
        ->capture_default_str();
    cmd->add_option("--jsd-base", jsd_base, "2 | e")
        ->check(CLI::IsMember({"2", "e"}))
        ->capture_default_str();
    cmd->add_option("--utterances", utterances, "all | pair")
        ->check(CLI::IsMember({"all", "pair"}))
        ->capture_default_str();
    cmd->add_option("--category-prior", category_prior, "topic | uniform")
        ->check(CLI::IsMember({"topic", "uniform"}))
        ->capture_default_str();
    cmd->add_option("--k", ks, "Comma-separated k values for k-agreement")
        ->capture_default_str();
  };

  auto* validate = app.add_subcommand("validate", "Check a dataset");
  add_common(validate);
  auto* interpret = app.add_subcommand("interpret", "Interpret one metaphor");
  add_model(interpret);
  interpret->add_option("--topic", topic)->required();
  interpret->add_option("--vehicle", vehicle)->required();
  auto* train = app.add_subcommand("train", "Fit lambda, write params.json");
  add_model(train);
  auto* eval = app.add_subcommand("eval", "Write report.json / report.csv");
  add_model(eval);
  auto* ablate = app.add_subcommand("ablate", "Run ablations");
  add_model(ablate);
  ablate->add_option("--kind", kind, "no-relevance | grid-lambda | all")
      ->check(CLI::IsMember({"no-relevance", "grid-lambda", "all"}))
      ->capture_default_str();
  ablate->add_option("--grid", grid, "Comma-separated lambda grid");
  auto* corr = app.add_subcommand("corr", "Feature correlation matrices");
  add_model(corr);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitDomainError;
  }

  try {
    config.data_dir = data_dir;
    config.output_dir = output_dir;
    config.mode = mode == "fast" ? InferenceMode::kFast : InferenceMode::kFull;
    if (lambda != "learned") config.lambda = csv::ParseNumber(lambda, "--lambda");
    config.objective = objective == "pooled" ? ObjectiveKind::kPooledPearson
                                             : ObjectiveKind::kMeanPearson;
    config.jsd_base = jsd_base == "e" ? LogBase::kE : LogBase::kTwo;
    config.utterances = utterances == "pair" ? UtteranceSet::kTopicVehiclePair
                                             : UtteranceSet::kAllCategories;
    config.category_prior = category_prior == "uniform"
                                ? CategoryPrior::kUniform
                                : CategoryPrior::kTopicOnly;
    config.ks = ParseKs(ks);

    if (validate->parsed()) return CmdValidate(config, out, err);
    if (interpret->parsed()) return CmdInterpret(config, topic, vehicle, out);
    if (train->parsed()) return CmdTrain(config, out);
    if (eval->parsed()) return CmdEval(config, out);
    if (ablate->parsed()) return CmdAblate(config, kind, ParseGrid(grid), out);
    if (corr->parsed()) return CmdCorr(config, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  }
  return kExitDomainError;
}

}  // namespace metarsa
