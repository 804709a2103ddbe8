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

// The eleven per-iteration metrics, evaluated on every prefix of a query
// sequence. Shared by the experiment runner and the `metrics` CLI verb so
// that stored metric columns can be recomputed offline.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bometrics/domain.hpp"
#include "bometrics/metrics.hpp"

namespace bometrics {

inline constexpr std::size_t kMetricCount = 11;

inline constexpr std::array<std::string_view, kMetricCount> kMetricNames = {
    "instant_regret", "simple_regret",  "cumulative_regret", "precision",
    "recall",         "avg_degree",     "avg_distance",      "pf_precision",
    "pf_recall",      "pf_avg_degree",  "pf_avg_distance",
};

enum MetricIndex : std::size_t {
    kInstantRegret,
    kSimpleRegret,
    kCumulativeRegret,
    kPrecision,
    kRecall,
    kAvgDegree,
    kAvgDistance,
    kPfPrecision,
    kPfRecall,
    kPfAvgDegree,
    kPfAvgDistance,
};

// NaN marks a metric that is undefined for that prefix.
using MetricRow = std::array<double, kMetricCount>;

struct MetricParams {
    // Ball radius; default max_dist(domain) / 10.
    std::optional<double> delta;
    // Neighbor count; default default_k(t).
    std::optional<std::size_t> k;
    std::size_t m_samples = kDefaultSampleBudget;
    // Exponential rate; default 1 / (0.05 d).
    std::optional<double> rate;
    double success_prob = kDefaultSuccessProb;
};

// Seed of the Monte-Carlo draws for one parameter-free metric at prefix t.
std::uint64_t
pf_sample_seed(std::uint64_t metric_seed, std::size_t t, MetricIndex metric);

// Row t-1 holds the metrics of points[0..t). `values` may be empty (regrets
// become NaN) and `optima` may be null (precision/recall become NaN).
// `domain` is the coordinate frame of the points and fixes the default delta.
std::vector<MetricRow>
metric_rows(const PointSet& points, std::span<const double> values, const OptimaSet* optima,
            const BoxDomain& domain, const MetricParams& params, std::uint64_t metric_seed);

}  // namespace bometrics
