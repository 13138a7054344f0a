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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "metarsa/cli.h"
#include "metarsa/error.h"
#include "metarsa/evaluation.h"
#include "metarsa/learn.h"
#include "metarsa/lexicon.h"
#include "metarsa/metrics.h"
#include "metarsa/rsa.h"

namespace py = pybind11;
using namespace metarsa;

namespace {

MetaphorItem MakeItem(const std::string& topic, const std::string& vehicle) {
  MetaphorItem item;
  item.id = topic + "/" + vehicle;
  item.topic = topic;
  item.vehicle = vehicle;
  return item;
}

py::dict AggregateDict(const Aggregate& a) {
  py::dict d;
  d["count"] = a.count;
  d["mean_pearson"] = a.mean_pearson;
  d["sd_pearson"] = a.sd_pearson;
  d["mean_jsd"] = a.mean_jsd;
  d["sd_jsd"] = a.sd_jsd;
  d["k_agreement_total"] = a.k_agreement_total;
  d["k_agreement_mean"] = a.k_agreement_mean;
  d["k_overlap_rate"] = a.k_overlap_rate;
  d["argmax_in_human_top3_rate"] = a.argmax_in_human_top3_rate;
  return d;
}

}  // namespace

PYBIND11_MODULE(metarsa, m) {
  m.doc() = "Rational speech act model of nominal metaphor interpretation";

  static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
  static py::exception<DomainError> domain_error(m, "DomainError",
                                                 error.ptr());
  static py::exception<IoError> io_error(m, "IoError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const DomainError& e) {
      py::set_error(domain_error, e.what());
    } catch (const IoError& e) {
      py::set_error(io_error, e.what());
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::enum_<InferenceMode>(m, "InferenceMode")
      .value("FULL", InferenceMode::kFull)
      .value("FAST", InferenceMode::kFast);
  py::enum_<UtteranceSet>(m, "UtteranceSet")
      .value("ALL_CATEGORIES", UtteranceSet::kAllCategories)
      .value("TOPIC_VEHICLE_PAIR", UtteranceSet::kTopicVehiclePair);
  py::enum_<CategoryPrior>(m, "CategoryPrior")
      .value("TOPIC_ONLY", CategoryPrior::kTopicOnly)
      .value("UNIFORM", CategoryPrior::kUniform);
  py::enum_<GoalPrior>(m, "GoalPrior")
      .value("RELEVANCE", GoalPrior::kRelevance)
      .value("UNIFORM", GoalPrior::kUniform);
  py::enum_<ObjectiveKind>(m, "ObjectiveKind")
      .value("MEAN_PEARSON", ObjectiveKind::kMeanPearson)
      .value("POOLED_PEARSON", ObjectiveKind::kPooledPearson);

  py::class_<RsaConfig>(m, "RsaConfig")
      .def(py::init<>())
      .def(py::init([](double lambda, InferenceMode mode) {
             RsaConfig c;
             c.lambda = lambda;
             c.mode = mode;
             return c;
           }),
           py::arg("lambda_"), py::arg("mode") = InferenceMode::kFull)
      .def_readwrite("lambda_", &RsaConfig::lambda)
      .def_readwrite("utterances", &RsaConfig::utterances)
      .def_readwrite("category_prior", &RsaConfig::category_prior)
      .def_readwrite("goal_prior", &RsaConfig::goal_prior)
      .def_readwrite("mode", &RsaConfig::mode);

  py::class_<TypicalityTable>(m, "TypicalityTable")
      .def(py::init([](std::vector<std::string> categories,
                       std::vector<std::string> features,
                       const std::vector<std::vector<double>>& rows) {
             std::vector<double> values;
             for (const auto& r : rows) {
               values.insert(values.end(), r.begin(), r.end());
             }
             return TypicalityTable(std::move(categories),
                                    FeatureVocab(std::move(features)),
                                    std::move(values));
           }),
           py::arg("categories"), py::arg("features"), py::arg("rows"))
      .def_property_readonly("categories", &TypicalityTable::categories)
      .def_property_readonly(
          "features",
          [](const TypicalityTable& t) { return t.vocab().names(); })
      .def("row", [](const TypicalityTable& t, const std::string& c) {
        const auto r = t.row(t.category_index(c));
        return std::vector<double>(r.begin(), r.end());
      });

  py::class_<MetaphorItem>(m, "MetaphorItem")
      .def_readonly("id", &MetaphorItem::id)
      .def_readonly("topic", &MetaphorItem::topic)
      .def_readonly("vehicle", &MetaphorItem::vehicle)
      .def_property_readonly("metaphor_class", [](const MetaphorItem& i) {
        return std::string(ToString(i.metaphor_class));
      });

  py::class_<Dataset>(m, "Dataset")
      .def_readonly("typicality", &Dataset::typicality)
      .def_readonly("metaphors", &Dataset::metaphors)
      .def("human", [](const Dataset& d, const std::string& id) {
        return d.human.at(id);
      });

  m.def(
      "load_dataset",
      [](const std::filesystem::path& dir, bool raw_ratings) {
        return LoadDataset(dir, {raw_ratings});
      },
      py::arg("directory"), py::arg("raw_ratings") = false);
  m.def("dataset_sha256", &DatasetContentHash, py::arg("directory"));

  m.def(
      "interpret",
      [](const TypicalityTable& table, const std::string& topic,
         const std::string& vehicle, const RsaConfig& config) {
        return Interpret(MakeItem(topic, vehicle), config, table).probs();
      },
      py::arg("table"), py::arg("topic"), py::arg("vehicle"),
      py::arg("config") = RsaConfig{},
      "Marginal interpretation over features.");

  m.def("pearson", [](const std::vector<double>& x,
                      const std::vector<double>& y) { return Pearson(x, y); });
  m.def(
      "jsd",
      [](const std::vector<double>& p, const std::vector<double>& q,
         bool natural_log) {
        return Jsd(p, q, natural_log ? LogBase::kE : LogBase::kTwo);
      },
      py::arg("p"), py::arg("q"), py::arg("natural_log") = false);
  m.def(
      "k_agreement",
      [](const std::vector<double>& p, const std::vector<double>& q,
         std::size_t k) { return KAgreement(p, q, k); },
      py::arg("p"), py::arg("q"), py::arg("k"));
  m.def(
      "top_k",
      [](const std::vector<double>& p, std::size_t k) { return TopK(p, k); },
      py::arg("p"), py::arg("k"));

  m.def(
      "learn_lambda",
      [](const Dataset& data, const std::vector<std::string>& train_ids,
         const RsaConfig& config, ObjectiveKind objective) {
        const auto train = SelectItems(data.metaphors, train_ids);
        LearnOptions options;
        options.objective = objective;
        const auto fit = LearnLambdaMultiStart(train, data.human, config,
                                               data.typicality, options);
        py::dict d;
        d["lambda"] = fit.lambda_hat;
        d["objective"] = fit.objective_value;
        d["iterations"] = fit.iterations;
        d["converged"] = fit.converged;
        d["gradient_norm"] = fit.gradient_norm_at_convergence;
        return d;
      },
      py::arg("dataset"), py::arg("train_ids"),
      py::arg("config") = RsaConfig{},
      py::arg("objective") = ObjectiveKind::kMeanPearson);

  m.def(
      "make_split",
      [](const Dataset& data, std::uint64_t seed) {
        const auto s = MakeSplit(data.metaphors, seed);
        return py::make_tuple(s.train, s.test);
      },
      py::arg("dataset"), py::arg("seed") = 0);

  m.def(
      "evaluate",
      [](const Dataset& data, const RsaConfig& config) {
        const auto report =
            Evaluate(data.metaphors, data.human, config, data.typicality);
        py::dict d;
        d["overall"] = AggregateDict(report.overall);
        d["inherent"] = AggregateDict(report.inherent);
        d["non_inherent"] = AggregateDict(report.non_inherent);
        py::list items;
        for (const auto& e : report.items) {
          py::dict item;
          item["id"] = e.id;
          item["pearson"] = e.pearson;
          item["jsd"] = e.jsd;
          item["k_agreement"] = e.k_agreement;
          item["model"] = e.model;
          items.append(item);
        }
        d["items"] = items;
        return d;
      },
      py::arg("dataset"), py::arg("config"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<std::string> full = {"metarsa"};
        full.insert(full.end(), args.begin(), args.end());
        std::vector<const char*> argv;
        for (const auto& a : full) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code =
            RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"),
      "Runs the command-line interface; returns (exit_code, stdout, stderr).");
}
