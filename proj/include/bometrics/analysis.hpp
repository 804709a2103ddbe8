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
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bometrics {

// One metric's values per iteration for one round. NaN marks an iteration
// where the metric is undefined (e.g. average distance with one point).
struct MetricTrace {
    std::string name;
    std::vector<double> values;
};

struct AggregatedTrace {
    std::vector<double> mean;
    // Standard error of the mean, sd / sqrt(n) with an n - 1 denominator.
    std::vector<double> std_error;
    std::size_t n_rounds = 0;
};

// Per-iteration mean and standard error across rounds, ignoring NaN entries.
AggregatedTrace
aggregate(std::span<const MetricTrace> rounds);

// Average ranks (1-based), ties share the mean of their positions.
std::vector<double>
fractional_ranks(std::span<const double> values);

// Spearman's rank correlation; nullopt when either ranking is constant.
std::optional<double>
spearman(std::span<const double> x, std::span<const double> y);

class CorrelationMatrix {
public:
    CorrelationMatrix(std::vector<std::string> names);

    std::size_t
    size() const noexcept {
        return names_.size();
    }

    const std::vector<std::string>&
    names() const noexcept {
        return names_;
    }

    const std::optional<double>&
    at(std::size_t i, std::size_t j) const {
        return entries_[i * names_.size() + j];
    }

    std::optional<double>&
    at(std::size_t i, std::size_t j) {
        return entries_[i * names_.size() + j];
    }

    // Entry by metric names; throws std::out_of_range for unknown names.
    const std::optional<double>&
    at(const std::string& a, const std::string& b) const;

private:
    std::vector<std::string> names_;
    std::vector<std::optional<double>> entries_;
};

// Pairwise Spearman over named series of equal length. Iterations where
// either series is NaN are dropped for that pair.
CorrelationMatrix
correlation_matrix(const std::vector<std::pair<std::string, std::vector<double>>>& series);

}  // namespace bometrics
