// Copyright 2026-present the bometrics project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bometrics/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "bometrics/error.hpp"
#include "bometrics/optimize.hpp"
#include "bometrics/rng.hpp"

namespace bometrics {

namespace {

// Seed salts; fixed so that e.g. kBo and a one-point kBboConstant coincide.
enum Salt : std::uint64_t {
    kFitSalt = 1,
    kProposalSalt = 2,
    kRandomFillSalt = 3,
    kLipschitzSalt = 4,
};

std::vector<Point>
uniform_points(std::size_t count, std::size_t dim, std::uint64_t seed) {
    Rng rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<Point> out(count, Point(dim));
    for (auto& p : out) {
        for (auto& v : p) {
            v = unif(rng);
        }
    }
    return out;
}

SurrogateState
fit_model(const StrategyConfig& config, const History& history, std::uint64_t seed,
          const std::optional<KernelHyperparams>& warm_start) {
    if (history.size() == 1) {
        return SurrogateState::condition(history.points, history.values,
                                         warm_start.value_or(default_hyperparams(history.points.dim())));
    }
    FitOptions opts;
    opts.restarts = config.fit_restarts;
    opts.warm_start = warm_start;
    return fit(history, seed, opts);
}

std::uint64_t
proposal_seed(std::uint64_t seed, std::size_t j) {
    return derive_seed(seed, {kProposalSalt, j});
}

}  // namespace

StrategyKind
parse_strategy(std::string_view name) {
    if (name == "random_search") return StrategyKind::kRandomSearch;
    if (name == "bo") return StrategyKind::kBo;
    if (name == "bbo_random") return StrategyKind::kBboRandom;
    if (name == "bbo_constant") return StrategyKind::kBboConstant;
    if (name == "bbo_prediction") return StrategyKind::kBboPrediction;
    if (name == "bbo_pe") return StrategyKind::kBboPe;
    if (name == "bbo_lp") return StrategyKind::kBboLp;
    throw ConfigError("unknown strategy '" + std::string(name) + "'");
}

std::string
to_string(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::kRandomSearch: return "random_search";
        case StrategyKind::kBo: return "bo";
        case StrategyKind::kBboRandom: return "bbo_random";
        case StrategyKind::kBboConstant: return "bbo_constant";
        case StrategyKind::kBboPrediction: return "bbo_prediction";
        case StrategyKind::kBboPe: return "bbo_pe";
        case StrategyKind::kBboLp: return "bbo_lp";
    }
    return "unknown";
}

bool
is_model_based(StrategyKind kind) {
    return kind != StrategyKind::kRandomSearch;
}

double
lipschitz_estimate(const SurrogateState& state, int n_probe, std::uint64_t seed) {
    const std::size_t dim = state.inputs().dim();
    const auto probes = uniform_points(static_cast<std::size_t>(std::max(n_probe, 1)), dim, seed);
    const std::vector<double> lower(dim, 0.0), upper(dim, 1.0);
    const auto mean = [&](std::span<const double> x) { return state.predict(x).mean; };
    double best = 0.0;
    std::vector<double> grad(dim);
    for (const auto& p : probes) {
        finite_difference_gradient(mean, p, lower, upper, 1e-6, grad);
        double norm2 = 0.0;
        for (double g : grad) {
            norm2 += g * g;
        }
        best = std::max(best, std::sqrt(norm2));
    }
    return std::max(best, kLipschitzFloor);
}

Batch
next_batch(const StrategyConfig& config, const History& history, std::size_t batch_size,
           std::uint64_t seed, const std::optional<KernelHyperparams>& warm_start) {
    if (batch_size == 0) {
        throw ConfigError("batch size must be at least 1");
    }
    const std::size_t dim = history.points.dim();
    Batch batch;
    if (config.kind == StrategyKind::kRandomSearch) {
        if (dim == 0) {
            throw ConfigError("random search needs the problem dimension (empty history without dim)");
        }
        batch.points = uniform_points(batch_size, dim, derive_seed(seed, {kRandomFillSalt}));
        return batch;
    }
    if (history.size() == 0) {
        throw ConfigError("model-based strategy '" + to_string(config.kind) + "' needs a nonempty history");
    }

    const auto state = fit_model(config, history, derive_seed(seed, {kFitSalt}), warm_start);
    batch.hyperparams = state.hyperparams();
    const auto& spec = config.acquisition;
    const int starts = config.acquisition_starts;

    auto first = propose(state, spec, starts, proposal_seed(seed, 0));
    batch.points.push_back(first.point);
    if (config.kind == StrategyKind::kBo) {
        return batch;
    }

    switch (config.kind) {
        case StrategyKind::kBboRandom: {
            auto fill = uniform_points(batch_size - 1, dim, derive_seed(seed, {kRandomFillSalt}));
            batch.points.insert(batch.points.end(), fill.begin(), fill.end());
            break;
        }
        case StrategyKind::kBboConstant:
        case StrategyKind::kBboPrediction: {
            History fantasy = history;
            SurrogateState current = state;
            for (std::size_t j = 1; j < batch_size; ++j) {
                const auto& last = batch.points.back();
                const double value = config.kind == StrategyKind::kBboConstant
                                         ? config.liar_constant
                                         : current.predict(last).raw_mean();
                fantasy.append(last, value);
                if (config.refit_fantasies) {
                    FitOptions opts;
                    opts.restarts = config.fit_restarts;
                    opts.warm_start = current.hyperparams();
                    current = fit(fantasy, derive_seed(seed, {kFitSalt, j}), opts);
                } else {
                    current = current.with_observation(last, value);
                }
                batch.points.push_back(propose(current, spec, starts, proposal_seed(seed, j)).point);
            }
            break;
        }
        case StrategyKind::kBboPe: {
            // Posterior variance does not depend on the fantasy values.
            SurrogateState current = state;
            for (std::size_t j = 1; j < batch_size; ++j) {
                const auto& last = batch.points.back();
                current = current.with_observation(last, current.predict(last).raw_mean());
                auto res = maximize_in_unit_box(
                    [&](std::span<const double> x) { return current.predict(x).variance; }, dim, starts,
                    proposal_seed(seed, j));
                batch.points.push_back(res.point);
            }
            break;
        }
        case StrategyKind::kBboLp: {
            const double lipschitz =
                lipschitz_estimate(state, config.lipschitz_probes, derive_seed(seed, {kLipschitzSalt}));
            std::vector<Penalizer> penalizers;
            for (std::size_t j = 1; j < batch_size; ++j) {
                penalizers.emplace_back(state, batch.points.back(), lipschitz);
                batch.points.push_back(propose(state, spec, starts, proposal_seed(seed, j), penalizers).point);
            }
            break;
        }
        default:
            break;
    }
    return batch;
}

}  // namespace bometrics
