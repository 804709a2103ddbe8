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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bometrics/acquisition.hpp"
#include "bometrics/domain.hpp"
#include "bometrics/surrogate.hpp"

namespace bometrics {

enum class StrategyKind {
    kRandomSearch,
    kBo,
    kBboRandom,
    kBboConstant,
    kBboPrediction,
    kBboPe,
    kBboLp,
};

StrategyKind
parse_strategy(std::string_view name);

std::string
to_string(StrategyKind kind);

bool
is_model_based(StrategyKind kind);

struct StrategyConfig {
    StrategyKind kind = StrategyKind::kBo;
    AcquisitionSpec acquisition;
    // Fantasy value for kBboConstant, in raw function units.
    double liar_constant = 100.0;
    int acquisition_starts = kDefaultAcquisitionStarts;
    int fit_restarts = 8;
    // Refit hyperparameters after every fantasy instead of only conditioning.
    bool refit_fantasies = false;
    int lipschitz_probes = 256;
};

struct Batch {
    // Normalized coordinates in [0,1]^d.
    std::vector<Point> points;
    // Hyperparameters of the model fitted to the real history, if any.
    std::optional<KernelHyperparams> hyperparams;
};

// Selects the next batch from a history in normalized coordinates with raw
// function values. kBo always returns a single point. The caller's history
// is never modified; fantasies live in local copies.
Batch
next_batch(const StrategyConfig& config, const History& history, std::size_t batch_size,
           std::uint64_t seed, const std::optional<KernelHyperparams>& warm_start = std::nullopt);

// Largest finite-difference gradient norm of the standardized posterior mean
// over uniform probes, floored at 1e-6.
double
lipschitz_estimate(const SurrogateState& state, int n_probe, std::uint64_t seed);

inline constexpr double kLipschitzFloor = 1e-6;

}  // namespace bometrics
