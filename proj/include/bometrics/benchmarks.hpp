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

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bometrics/domain.hpp"

namespace bometrics {

using Evaluator = std::function<double(std::span<const double>)>;

struct Benchmark {
    std::string name;
    BoxDomain domain;
    Evaluator evaluator;
    // Optimizer locations in problem units.
    OptimaSet optima;

    double
    evaluate(std::span<const double> x) const;

    // Maps x01 from [0,1]^d to the domain and evaluates; throws outside the box.
    double
    evaluate_normalized(std::span<const double> x01) const;

    OptimaSet
    normalized_optima() const;
};

// Accepts "branin", "ackley-16", or a family name plus dim ("ackley", 16).
// Throws ConfigError for unknown names or unsupported dimensions.
Benchmark
get_benchmark(std::string_view name, std::optional<std::size_t> dim = std::nullopt);

// Names of the roster used in the experiments.
std::vector<std::string>
list_benchmarks();

// Tolerance used when validating registered optima against the evaluator.
inline constexpr double kOptimumTolerance = 1e-4;

}  // namespace bometrics
