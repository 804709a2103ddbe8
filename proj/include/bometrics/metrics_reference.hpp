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

// Straightforward single-threaded implementations that follow the metric
// definitions literally (double loops, partial sorts per point). They are the
// baseline for the OpenMP kernels in metrics.hpp: the test suite checks that
// both agree and bench/metrics_bench.cpp measures the speedup.

#include <cstdint>

#include "bometrics/metrics.hpp"

namespace bometrics::reference {

double
precision(const PointSet& queries, const PointSet& optimizers, double delta);

double
recall(const PointSet& queries, const PointSet& optimizers, double delta);

double
average_degree(const PointSet& queries, double delta);

double
average_distance(const PointSet& queries, std::size_t k);

double
pf_precision(const PointSet& queries, const PointSet& optimizers, SampleBudget m, double rate,
             std::uint64_t seed);

double
pf_recall(const PointSet& queries, const PointSet& optimizers, SampleBudget m, double rate,
          std::uint64_t seed);

double
pf_average_degree(const PointSet& queries, SampleBudget m, double rate, std::uint64_t seed);

double
pf_average_distance(const PointSet& queries, SampleBudget m, double success_prob, std::uint64_t seed);

}  // namespace bometrics::reference
