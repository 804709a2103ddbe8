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

#include "bometrics/metric_table.hpp"

#include <limits>

#include "bometrics/error.hpp"
#include "bometrics/rng.hpp"

namespace bometrics {

std::uint64_t
pf_sample_seed(std::uint64_t metric_seed, std::size_t t, MetricIndex metric) {
    return derive_seed(metric_seed, {t, static_cast<std::uint64_t>(metric)});
}

std::vector<MetricRow>
metric_rows(const PointSet& points, std::span<const double> values, const OptimaSet* optima,
            const BoxDomain& domain, const MetricParams& params, std::uint64_t metric_seed) {
    const std::size_t total = points.size();
    if (!values.empty() && values.size() != total) {
        throw ConfigError("metric_rows: values and points differ in length");
    }
    if (points.dim() != domain.dim()) {
        throw ConfigError("metric_rows: point dimension does not match the domain");
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double delta = params.delta ? BallRadius(*params.delta).value() : default_delta(domain).value();
    const double rate = params.rate.value_or(default_rate(domain.dim()));
    const SampleBudget budget(params.m_samples);
    const bool with_regret = !values.empty() && optima != nullptr;

    std::vector<double> simple, cumulative;
    if (with_regret) {
        simple = simple_regret_trace(values, optima->optimal_value);
        cumulative = cumulative_regret_trace(values, optima->optimal_value);
    }

    std::vector<MetricRow> rows(total);
    for (std::size_t t = 1; t <= total; ++t) {
        MetricRow& row = rows[t - 1];
        row.fill(nan);
        if (with_regret) {
            row[kInstantRegret] = instantaneous_regret(values[t - 1], optima->optimal_value);
            row[kSimpleRegret] = simple[t - 1];
            row[kCumulativeRegret] = cumulative[t - 1];
        }

        const PointSet prefix = points.prefix(t);
        const PointGeometry geometry(prefix);
        row[kAvgDegree] = geometry.average_degree(delta);
        const auto degree_radii = sample_radii(budget, rate, pf_sample_seed(metric_seed, t, kPfAvgDegree));
        double acc = 0.0;
        for (double r : degree_radii) {
            acc += geometry.average_degree(r);
        }
        row[kPfAvgDegree] = acc / static_cast<double>(budget.value());

        if (t >= 2) {
            const std::size_t k = params.k.value_or(default_k(t).value());
            row[kAvgDistance] = geometry.average_distance(NeighborCount(k).value());
            acc = 0.0;
            for (auto kk : sample_neighbor_counts(budget, params.success_prob,
                                                  pf_sample_seed(metric_seed, t, kPfAvgDistance))) {
                acc += geometry.average_distance(kk);
            }
            row[kPfAvgDistance] = acc / static_cast<double>(budget.value());
        }

        if (optima != nullptr) {
            const OptimaProximity proximity(prefix, optima->optimizers);
            row[kPrecision] = proximity.precision(delta);
            row[kRecall] = proximity.recall(delta);
            acc = 0.0;
            for (double r : sample_radii(budget, rate, pf_sample_seed(metric_seed, t, kPfPrecision))) {
                acc += proximity.precision(r);
            }
            row[kPfPrecision] = acc / static_cast<double>(budget.value());
            acc = 0.0;
            for (double r : sample_radii(budget, rate, pf_sample_seed(metric_seed, t, kPfRecall))) {
                acc += proximity.recall(r);
            }
            row[kPfRecall] = acc / static_cast<double>(budget.value());
        }
    }
    return rows;
}

}  // namespace bometrics
