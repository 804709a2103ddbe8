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

#include "bometrics/metrics_reference.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "bometrics/error.hpp"

namespace bometrics::reference {

namespace {

bool
within(std::span<const double> a, std::span<const double> b, double delta) {
    return squared_distance(a, b) <= delta * delta;
}

}  // namespace

double
precision(const PointSet& queries, const PointSet& optimizers, double delta) {
    if (queries.empty()) {
        throw ConfigError("precision: empty query set");
    }
    std::size_t hits = 0;
    for (std::size_t i = 0; i < queries.size(); ++i) {
        bool near = false;
        for (std::size_t j = 0; j < optimizers.size() && !near; ++j) {
            near = within(queries[i], optimizers[j], delta);
        }
        hits += near ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(queries.size());
}

double
recall(const PointSet& queries, const PointSet& optimizers, double delta) {
    if (queries.empty() || optimizers.empty()) {
        throw ConfigError("recall: empty point set");
    }
    std::size_t hits = 0;
    for (std::size_t i = 0; i < optimizers.size(); ++i) {
        bool near = false;
        for (std::size_t j = 0; j < queries.size() && !near; ++j) {
            near = within(optimizers[i], queries[j], delta);
        }
        hits += near ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(optimizers.size());
}

double
average_degree(const PointSet& queries, double delta) {
    const std::size_t t = queries.size();
    if (t == 0) {
        throw ConfigError("average_degree: empty query set");
    }
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < t; ++i) {
        for (std::size_t j = 0; j < t; ++j) {
            pairs += within(queries[i], queries[j], delta) ? 1 : 0;
        }
    }
    return static_cast<double>(pairs - t) / static_cast<double>(t);
}

double
average_distance(const PointSet& queries, std::size_t k) {
    const std::size_t t = queries.size();
    if (t < 2) {
        throw ConfigError("average_distance: needs at least two points");
    }
    k = std::clamp<std::size_t>(k, 1, t - 1);
    double total = 0.0;
    std::vector<double> dists;
    for (std::size_t i = 0; i < t; ++i) {
        dists.clear();
        for (std::size_t j = 0; j < t; ++j) {
            if (j != i) {
                dists.push_back(euclidean_distance(queries[i], queries[j]));
            }
        }
        std::partial_sort(dists.begin(), dists.begin() + static_cast<std::ptrdiff_t>(k), dists.end());
        for (std::size_t j = 0; j < k; ++j) {
            total += dists[j];
        }
    }
    return total / (static_cast<double>(k) * static_cast<double>(t));
}

double
pf_precision(const PointSet& queries, const PointSet& optimizers, SampleBudget m, double rate,
             std::uint64_t seed) {
    double acc = 0.0;
    for (double r : sample_radii(m, rate, seed)) {
        acc += precision(queries, optimizers, r);
    }
    return acc / static_cast<double>(m.value());
}

double
pf_recall(const PointSet& queries, const PointSet& optimizers, SampleBudget m, double rate,
          std::uint64_t seed) {
    double acc = 0.0;
    for (double r : sample_radii(m, rate, seed)) {
        acc += recall(queries, optimizers, r);
    }
    return acc / static_cast<double>(m.value());
}

double
pf_average_degree(const PointSet& queries, SampleBudget m, double rate, std::uint64_t seed) {
    double acc = 0.0;
    for (double r : sample_radii(m, rate, seed)) {
        acc += average_degree(queries, r);
    }
    return acc / static_cast<double>(m.value());
}

double
pf_average_distance(const PointSet& queries, SampleBudget m, double success_prob, std::uint64_t seed) {
    double acc = 0.0;
    for (auto k : sample_neighbor_counts(m, success_prob, seed)) {
        acc += average_distance(queries, k);
    }
    return acc / static_cast<double>(m.value());
}

}  // namespace bometrics::reference
