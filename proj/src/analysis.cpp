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

#include "bometrics/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "bometrics/error.hpp"

namespace bometrics {

AggregatedTrace
aggregate(std::span<const MetricTrace> rounds) {
    if (rounds.empty()) {
        throw ConfigError("aggregate: no traces");
    }
    const std::size_t len = rounds.front().values.size();
    for (const auto& r : rounds) {
        if (r.values.size() != len) {
            throw ConfigError("aggregate: traces of metric '" + r.name + "' have different lengths");
        }
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    AggregatedTrace out;
    out.n_rounds = rounds.size();
    out.mean.assign(len, nan);
    out.std_error.assign(len, nan);
    for (std::size_t t = 0; t < len; ++t) {
        double sum = 0.0;
        std::size_t n = 0;
        for (const auto& r : rounds) {
            if (!std::isnan(r.values[t])) {
                sum += r.values[t];
                ++n;
            }
        }
        if (n == 0) {
            continue;
        }
        const double mean = sum / static_cast<double>(n);
        double ss = 0.0;
        for (const auto& r : rounds) {
            if (!std::isnan(r.values[t])) {
                ss += (r.values[t] - mean) * (r.values[t] - mean);
            }
        }
        out.mean[t] = mean;
        out.std_error[t] = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n)) : 0.0;
    }
    return out;
}

std::vector<double>
fractional_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) {
            ++j;
        }
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) {
            ranks[order[k]] = avg;
        }
        i = j + 1;
    }
    return ranks;
}

std::optional<double>
spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw ConfigError("spearman: series lengths differ");
    }
    if (x.size() < 2) {
        throw ConfigError("spearman: needs at least two observations");
    }
    const auto rx = fractional_ranks(x);
    const auto ry = fractional_ranks(y);
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx <= 0.0 || syy <= 0.0) {
        return std::nullopt;
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

CorrelationMatrix::CorrelationMatrix(std::vector<std::string> names)
    : names_(std::move(names)), entries_(names_.size() * names_.size()) {}

const std::optional<double>&
CorrelationMatrix::at(const std::string& a, const std::string& b) const {
    const auto ia = std::find(names_.begin(), names_.end(), a);
    const auto ib = std::find(names_.begin(), names_.end(), b);
    if (ia == names_.end() || ib == names_.end()) {
        throw std::out_of_range("correlation matrix has no metric '" + (ia == names_.end() ? a : b) + "'");
    }
    return at(static_cast<std::size_t>(ia - names_.begin()), static_cast<std::size_t>(ib - names_.begin()));
}

CorrelationMatrix
correlation_matrix(const std::vector<std::pair<std::string, std::vector<double>>>& series) {
    std::vector<std::string> names;
    for (const auto& [name, values] : series) {
        if (values.size() != series.front().second.size()) {
            throw ConfigError("correlation_matrix: series '" + name + "' has a different length");
        }
        names.push_back(name);
    }
    CorrelationMatrix out(std::move(names));
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < series.size(); ++i) {
        for (std::size_t j = i; j < series.size(); ++j) {
            xs.clear();
            ys.clear();
            const auto& a = series[i].second;
            const auto& b = series[j].second;
            for (std::size_t t = 0; t < a.size(); ++t) {
                if (!std::isnan(a[t]) && !std::isnan(b[t])) {
                    xs.push_back(a[t]);
                    ys.push_back(b[t]);
                }
            }
            std::optional<double> r;
            if (xs.size() >= 2) {
                r = spearman(xs, ys);
                if (r && i == j) {
                    r = 1.0;
                }
            }
            out.at(i, j) = r;
            out.at(j, i) = r;
        }
    }
    return out;
}

}  // namespace bometrics
