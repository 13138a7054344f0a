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

#include "metarsa/learn.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <set>

#include "metarsa/error.h"
#include "metarsa/metrics.h"

namespace metarsa {

namespace {

struct ValueSlope {
  double value;
  double slope;
};

// Pearson r between x and a constant y, and dr given dx.
ValueSlope PearsonWithSlope(std::span<const double> x,
                            std::span<const double> dx,
                            std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0, dsxy = 0.0, dsxx_half = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double ex = x[i] - mx;
    const double ey = y[i] - my;
    sxy += ex * ey;
    sxx += ex * ex;
    syy += ey * ey;
    dsxy += dx[i] * ey;
    dsxx_half += ex * dx[i];
  }
  Pearson(x, y);  // throws ZeroVarianceError
  const double denom = std::sqrt(sxx * syy);
  const double r = sxy / denom;
  return {r, dsxy / denom - r * dsxx_half / sxx};
}

void CheckTrain(std::span<const MetaphorItem> train,
                const HumanResponseTable& human) {
  if (train.empty()) throw DomainError("empty training set");
  for (const auto& item : train) {
    if (!human.contains(item.id)) {
      throw DomainError("no human distribution for training item '" +
                        item.id + "'");
    }
  }
}

ValueSlope ObjectiveWithSlope(double lambda,
                              std::span<const MetaphorItem> train,
                              const HumanResponseTable& human,
                              const RsaConfig& config,
                              const TypicalityTable& table,
                              ObjectiveKind kind, bool need_slope) {
  CheckTrain(train, human);
  RsaConfig cfg = config;
  cfg.lambda = lambda;
  if (kind == ObjectiveKind::kMeanPearson) {
    double value = 0.0, slope = 0.0;
    for (const auto& item : train) {
      const auto model = InterpretWithSlope(item, cfg, table);
      const auto probs = model.distribution.probs();
      const auto& target = human.at(item.id);
      if (need_slope) {
        const auto vs = PearsonWithSlope(probs, model.dprob_dlambda, target);
        value += vs.value;
        slope += vs.slope;
      } else {
        value += Pearson(probs, target);
      }
    }
    const double m = static_cast<double>(train.size());
    return {value / m, slope / m};
  }
  std::vector<double> x, dx, y;
  for (const auto& item : train) {
    const auto model = InterpretWithSlope(item, cfg, table);
    const auto probs = model.distribution.probs();
    const auto& target = human.at(item.id);
    x.insert(x.end(), probs.begin(), probs.end());
    dx.insert(dx.end(), model.dprob_dlambda.begin(),
              model.dprob_dlambda.end());
    y.insert(y.end(), target.begin(), target.end());
  }
  if (!need_slope) return {Pearson(x, y), 0.0};
  return PearsonWithSlope(x, dx, y);
}

double Dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double Norm(std::span<const double> a) { return std::sqrt(Dot(a, a)); }

// Unbiased integer in [0, bound) from a 64-bit engine.
std::uint64_t UniformBelow(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % bound;
}

}  // namespace

std::string ToString(ObjectiveKind kind) {
  return kind == ObjectiveKind::kMeanPearson ? "mean" : "pooled";
}

double Objective(double lambda, std::span<const MetaphorItem> train,
                 const HumanResponseTable& human, const RsaConfig& config,
                 const TypicalityTable& table, ObjectiveKind kind) {
  return ObjectiveWithSlope(lambda, train, human, config, table, kind, false)
      .value;
}

double ObjectiveGradient(double lambda, std::span<const MetaphorItem> train,
                         const HumanResponseTable& human,
                         const RsaConfig& config, const TypicalityTable& table,
                         ObjectiveKind kind) {
  const double g =
      ObjectiveWithSlope(lambda, train, human, config, table, kind, true)
          .slope;
  if (!std::isfinite(g)) throw DomainError("non-finite gradient");
  return g;
}

double ObjectiveGradientFiniteDifference(double lambda,
                                         std::span<const MetaphorItem> train,
                                         const HumanResponseTable& human,
                                         const RsaConfig& config,
                                         const TypicalityTable& table,
                                         ObjectiveKind kind) {
  const double h = 1e-4 * std::max(1.0, std::abs(lambda));
  const double up = Objective(lambda + h, train, human, config, table, kind);
  const double down = Objective(lambda - h, train, human, config, table, kind);
  return (up - down) / (2.0 * h);
}

CgResult MaximizeConjugateGradient(const ObjectiveFn& fn,
                                   std::vector<double> x0,
                                   const CgOptions& options) {
  const std::size_t dim = x0.size();
  if (dim == 0) throw DomainError("conjugate gradient: empty parameter vector");
  CgResult result;
  std::vector<double> x = std::move(x0);
  std::vector<double> g(dim);
  double f = fn(x, g);
  if (!std::isfinite(f)) {
    throw DomainError("conjugate gradient: objective not finite at start");
  }
  result.trace.push_back({0, x, f});

  std::vector<double> d = g;
  std::vector<double> x_new(dim), g_new(dim);
  double trial_length = std::max(1.0, Norm(x));
  int since_restart = 0;

  for (int it = 1; it <= options.max_iterations; ++it) {
    if (Norm(g) <= options.gradient_tolerance) break;
    double slope = Dot(g, d);
    if (!(slope > 0.0)) {
      d = g;
      slope = Dot(g, g);
      since_restart = 0;
    }
    const double d_norm = Norm(d);
    const double floor_length =
        options.min_step * std::max(1.0, Norm(x));
    double alpha = trial_length / d_norm;
    bool accepted = false;
    double f_new = 0.0;
    while (alpha * d_norm >= floor_length) {
      for (std::size_t k = 0; k < dim; ++k) x_new[k] = x[k] + alpha * d[k];
      try {
        f_new = fn(x_new, g_new);
      } catch (const DomainError&) {
        f_new = std::numeric_limits<double>::quiet_NaN();
      }
      const bool finite =
          std::isfinite(f_new) &&
          std::all_of(g_new.begin(), g_new.end(),
                      [](double v) { return std::isfinite(v); });
      if (finite && f_new >= f + options.armijo_slope * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= options.shrink;
    }
    if (!accepted) break;

    // Next trial step: secant estimate of the 1-D Newton step along the new
    // direction when curvature is negative, else twice the last step.
    std::vector<double> s(dim), y(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      s[k] = x_new[k] - x[k];
      y[k] = g_new[k] - g[k];
    }
    const double step_length = Norm(s);
    const double curvature = Dot(y, s) / Dot(s, s);

    double beta = std::max(0.0, Dot(g_new, y) / Dot(g, g));
    if (++since_restart >= static_cast<int>(dim)) {
      beta = 0.0;
      since_restart = 0;
    }
    for (std::size_t k = 0; k < dim; ++k) d[k] = g_new[k] + beta * d[k];

    double next = 2.0 * step_length;
    if (curvature < 0.0) {
      const double newton = Dot(g_new, d) / (-curvature * Norm(d));
      if (newton > 0.0) next = std::min(newton, 10.0 * step_length);
    }
    trial_length = std::max(next, floor_length);

    x = x_new;
    g = g_new;
    f = f_new;
    result.iterations = it;
    result.trace.push_back({it, x, f});
  }
  result.x = x;
  result.value = f;
  result.gradient_norm = Norm(g);
  result.converged = result.gradient_norm <= options.gradient_tolerance;
  return result;
}

FitResult LearnLambda(std::span<const MetaphorItem> train,
                      const HumanResponseTable& human,
                      const RsaConfig& config, const TypicalityTable& table,
                      const LearnOptions& options) {
  if (!std::isfinite(options.init)) throw DomainError("init must be finite");
  if (!(options.tolerance > 0.0)) throw DomainError("tolerance must be > 0");
  CheckTrain(train, human);
  const ObjectiveFn fn = [&](std::span<const double> x,
                             std::span<double> grad) {
    const auto vs = ObjectiveWithSlope(x[0], train, human, config, table,
                                       options.objective, true);
    grad[0] = vs.slope;
    return vs.value;
  };
  CgOptions cg;
  cg.max_iterations = options.max_iterations;
  cg.gradient_tolerance = options.tolerance;
  const CgResult res = MaximizeConjugateGradient(fn, {options.init}, cg);

  FitResult fit;
  fit.lambda_hat = res.x[0];
  fit.objective_value = res.value;
  fit.iterations = res.iterations;
  fit.gradient_norm_at_convergence = res.gradient_norm;
  fit.converged = res.converged;
  fit.init = options.init;
  for (const auto& it : res.trace) {
    fit.trace.push_back({it.iteration, it.x[0], it.value});
  }
  return fit;
}

FitResult LearnLambdaMultiStart(std::span<const MetaphorItem> train,
                                const HumanResponseTable& human,
                                const RsaConfig& config,
                                const TypicalityTable& table,
                                const LearnOptions& options,
                                std::span<const double> starts) {
  if (starts.empty()) throw DomainError("no starting points");
  std::optional<FitResult> best;
  std::string last_error;
  for (double start : starts) {
    LearnOptions opts = options;
    opts.init = start;
    try {
      FitResult fit = LearnLambda(train, human, config, table, opts);
      if (!best || fit.objective_value > best->objective_value) {
        best = std::move(fit);
      }
    } catch (const DomainError& e) {
      last_error = e.what();
    }
  }
  if (!best) throw DomainError("every start failed: " + last_error);
  return *best;
}

TrainTestSplit MakeSplit(std::span<const MetaphorItem> items,
                         std::uint64_t seed) {
  std::vector<std::size_t> inherent, non_inherent;
  for (std::size_t k = 0; k < items.size(); ++k) {
    (items[k].metaphor_class == MetaphorClass::kVehicleInherent
         ? inherent
         : non_inherent)
        .push_back(k);
  }
  if (items.size() != 24 || inherent.size() != 12) {
    throw DomainError("split needs 24 items with 12 per class, got " +
                      std::to_string(inherent.size()) + " + " +
                      std::to_string(non_inherent.size()));
  }
  std::mt19937_64 rng(seed);
  std::set<std::size_t> train_pos;
  for (auto* group : {&inherent, &non_inherent}) {
    auto& g = *group;
    for (std::size_t i = g.size() - 1; i > 0; --i) {
      std::swap(g[i], g[UniformBelow(rng, i + 1)]);
    }
    train_pos.insert(g.begin(), g.begin() + 9);
  }
  TrainTestSplit split;
  split.seed = seed;
  for (std::size_t k = 0; k < items.size(); ++k) {
    (train_pos.contains(k) ? split.train : split.test).push_back(items[k].id);
  }
  return split;
}

std::vector<MetaphorItem> SelectItems(std::span<const MetaphorItem> items,
                                      std::span<const std::string> ids) {
  const std::set<std::string> wanted(ids.begin(), ids.end());
  std::vector<MetaphorItem> out;
  for (const auto& item : items) {
    if (wanted.contains(item.id)) out.push_back(item);
  }
  if (out.size() != wanted.size()) {
    throw DomainError("split references unknown metaphor ids");
  }
  return out;
}

}  // namespace metarsa
