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

#include "bometrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "bometrics/error.hpp"
#include "bometrics/rng.hpp"

namespace bometrics {

namespace {

void
require_nonempty(const PointSet& points, const char* what) {
    if (points.empty()) {
        throw ConfigError(std::string(what) + ": point set is empty");
    }
}

void
require_same_dim(const PointSet& a, const PointSet& b, const char* what) {
    if (a.dim() != b.dim()) {
        throw ConfigError(std::string(what) + ": query and optimizer dimensions differ");
    }
}

void
require_positive_rate(double rate) {
    if (!(rate > 0.0) || !std::isfinite(rate)) {
        throw ConfigError("exponential rate must be positive and finite");
    }
}

// Sum in ascending order so the result depends only on the multiset.
double
order_free_sum(std::vector<double> terms) {
    std::sort(terms.begin(), terms.end());
    double acc = 0.0;
    for (double v : terms) {
        acc += v;
    }
    return acc;
}

std::size_t
count_at_most(const std::vector<double>& sorted, double bound) {
    return static_cast<std::size_t>(std::upper_bound(sorted.begin(), sorted.end(), bound) -
                                    sorted.begin());
}

}  // namespace

BallRadius::BallRadius(double delta) : delta_(delta) {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw ConfigError("ball radius must be positive and finite");
    }
}

NeighborCount::NeighborCount(std::size_t k) : k_(k) {
    if (k == 0) {
        throw ConfigError("neighbor count must be at least 1");
    }
}

SampleBudget::SampleBudget(std::size_t m) : m_(m) {
    if (m == 0) {
        throw ConfigError("sample budget must be at least 1");
    }
}

double
instantaneous_regret(double f_xt, double f_star) {
    if (f_xt < f_star - kRegretTolerance) {
        throw ConfigError("function value " + std::to_string(f_xt) +
                          " is below the registered optimum " + std::to_string(f_star));
    }
    return std::max(f_xt - f_star, 0.0);
}

double
simple_regret(std::span<const double> values, double f_star) {
    if (values.empty()) {
        throw ConfigError("simple_regret: empty value sequence");
    }
    double best = values.front();
    for (double v : values) {
        best = std::min(best, v);
    }
    return instantaneous_regret(best, f_star);
}

double
cumulative_regret(std::span<const double> values, double f_star) {
    if (values.empty()) {
        throw ConfigError("cumulative_regret: empty value sequence");
    }
    double acc = 0.0;
    for (double v : values) {
        acc += instantaneous_regret(v, f_star);
    }
    return acc;
}

std::vector<double>
simple_regret_trace(std::span<const double> values, double f_star) {
    std::vector<double> out;
    out.reserve(values.size());
    double best = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        best = i == 0 ? values[i] : std::min(best, values[i]);
        out.push_back(instantaneous_regret(best, f_star));
    }
    return out;
}

std::vector<double>
cumulative_regret_trace(std::span<const double> values, double f_star) {
    std::vector<double> out;
    out.reserve(values.size());
    double acc = 0.0;
    for (double v : values) {
        acc += instantaneous_regret(v, f_star);
        out.push_back(acc);
    }
    return out;
}

PointGeometry::PointGeometry(const PointSet& points) : n_(points.size()) {
    require_nonempty(points, "PointGeometry");
    const std::size_t row = n_ - 1;
    sorted_sq_.resize(n_ * row);
    prefix_dist_.resize(n_ * n_);
    const auto rows = static_cast<std::ptrdiff_t>(n_);
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t si = 0; si < rows; ++si) {
        const auto i = static_cast<std::size_t>(si);
        double* sq = sorted_sq_.data() + i * row;
        std::size_t c = 0;
        for (std::size_t j = 0; j < n_; ++j) {
            if (j != i) {
                sq[c++] = squared_distance(points[i], points[j]);
            }
        }
        std::sort(sq, sq + row);
        double* prefix = prefix_dist_.data() + i * n_;
        prefix[0] = 0.0;
        for (std::size_t j = 0; j < row; ++j) {
            prefix[j + 1] = prefix[j] + std::sqrt(sq[j]);
        }
    }
}

double
PointGeometry::average_degree(double delta) const {
    const double bound = delta * delta;
    const std::size_t row = n_ - 1;
    const auto rows = static_cast<std::ptrdiff_t>(n_);
    std::size_t total = 0;
#pragma omp parallel for reduction(+ : total) schedule(static)
    for (std::ptrdiff_t si = 0; si < rows; ++si) {
        const double* sq = sorted_sq_.data() + static_cast<std::size_t>(si) * row;
        total += static_cast<std::size_t>(std::upper_bound(sq, sq + row, bound) - sq);
    }
    return static_cast<double>(total) / static_cast<double>(n_);
}

double
PointGeometry::average_distance(std::size_t k) const {
    if (n_ < 2) {
        throw ConfigError("average_distance: needs at least two points");
    }
    k = std::clamp<std::size_t>(k, 1, n_ - 1);
    std::vector<double> per_point(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        per_point[i] = prefix_dist_[i * n_ + k];
    }
    return order_free_sum(std::move(per_point)) /
           (static_cast<double>(k) * static_cast<double>(n_));
}

OptimaProximity::OptimaProximity(const PointSet& queries, const PointSet& optimizers)
    : query_sq_(queries.size()), optimum_sq_(optimizers.size()) {
    require_nonempty(queries, "OptimaProximity");
    require_nonempty(optimizers, "OptimaProximity");
    require_same_dim(queries, optimizers, "OptimaProximity");
    const auto nq = static_cast<std::ptrdiff_t>(queries.size());
    const auto no = static_cast<std::ptrdiff_t>(optimizers.size());
#pragma omp parallel
    {
#pragma omp for schedule(static) nowait
        for (std::ptrdiff_t i = 0; i < nq; ++i) {
            double best = squared_distance(queries[static_cast<std::size_t>(i)], optimizers[0]);
            for (std::size_t j = 1; j < optimizers.size(); ++j) {
                best = std::min(best, squared_distance(queries[static_cast<std::size_t>(i)], optimizers[j]));
            }
            query_sq_[static_cast<std::size_t>(i)] = best;
        }
#pragma omp for schedule(static)
        for (std::ptrdiff_t j = 0; j < no; ++j) {
            double best = squared_distance(optimizers[static_cast<std::size_t>(j)], queries[0]);
            for (std::size_t i = 1; i < queries.size(); ++i) {
                best = std::min(best, squared_distance(optimizers[static_cast<std::size_t>(j)], queries[i]));
            }
            optimum_sq_[static_cast<std::size_t>(j)] = best;
        }
    }
    std::sort(query_sq_.begin(), query_sq_.end());
    std::sort(optimum_sq_.begin(), optimum_sq_.end());
}

double
OptimaProximity::precision(double delta) const {
    return static_cast<double>(count_at_most(query_sq_, delta * delta)) /
           static_cast<double>(query_sq_.size());
}

double
OptimaProximity::recall(double delta) const {
    return static_cast<double>(count_at_most(optimum_sq_, delta * delta)) /
           static_cast<double>(optimum_sq_.size());
}

double
precision(const PointSet& queries, const PointSet& optimizers, BallRadius delta) {
    return OptimaProximity(queries, optimizers).precision(delta.value());
}

double
recall(const PointSet& queries, const PointSet& optimizers, BallRadius delta) {
    return OptimaProximity(queries, optimizers).recall(delta.value());
}

double
average_degree(const PointSet& queries, BallRadius delta) {
    return PointGeometry(queries).average_degree(delta.value());
}

double
average_distance(const PointSet& queries, NeighborCount k) {
    if (queries.size() < 2) {
        throw ConfigError("average_distance: needs at least two points");
    }
    return PointGeometry(queries).average_distance(k.value());
}

std::vector<double>
sample_radii(SampleBudget m, double rate, std::uint64_t seed) {
    require_positive_rate(rate);
    Rng rng(seed);
    std::exponential_distribution<double> dist(rate);
    std::vector<double> out(m.value());
    for (auto& d : out) {
        // Exponential draws of exactly 0 are possible in principle; the ball
        // query is still well defined for them.
        d = dist(rng);
    }
    return out;
}

std::vector<std::size_t>
sample_neighbor_counts(SampleBudget m, double success_prob, std::uint64_t seed) {
    if (!(success_prob > 0.0 && success_prob <= 1.0)) {
        throw ConfigError("geometric success probability must lie in (0, 1]");
    }
    std::vector<std::size_t> out(m.value(), 1);
    if (success_prob == 1.0) {
        return out;
    }
    Rng rng(seed);
    std::geometric_distribution<long long> dist(success_prob);
    for (auto& k : out) {
        k = static_cast<std::size_t>(dist(rng)) + 1;
    }
    return out;
}

namespace {

template <typename Metric>
double
mean_over(const std::vector<double>& radii, Metric&& metric) {
    double acc = 0.0;
    for (double r : radii) {
        acc += metric(r);
    }
    return acc / static_cast<double>(radii.size());
}

}  // namespace

double
pf_precision(const PointSet& queries, const PointSet& optimizers, SampleBudget m, double rate,
             std::uint64_t seed) {
    const auto radii = sample_radii(m, rate, seed);
    const OptimaProximity prox(queries, optimizers);
    return mean_over(radii, [&](double r) { return prox.precision(r); });
}

double
pf_recall(const PointSet& queries, const PointSet& optimizers, SampleBudget m, double rate,
          std::uint64_t seed) {
    const auto radii = sample_radii(m, rate, seed);
    const OptimaProximity prox(queries, optimizers);
    return mean_over(radii, [&](double r) { return prox.recall(r); });
}

double
pf_average_degree(const PointSet& queries, SampleBudget m, double rate, std::uint64_t seed) {
    const auto radii = sample_radii(m, rate, seed);
    const PointGeometry geom(queries);
    return mean_over(radii, [&](double r) { return geom.average_degree(r); });
}

double
pf_average_distance(const PointSet& queries, SampleBudget m, double success_prob, std::uint64_t seed) {
    if (queries.size() < 2) {
        throw ConfigError("pf_average_distance: needs at least two points");
    }
    const auto ks = sample_neighbor_counts(m, success_prob, seed);
    const PointGeometry geom(queries);
    double acc = 0.0;
    for (auto k : ks) {
        acc += geom.average_distance(k);
    }
    return acc / static_cast<double>(ks.size());
}

BallRadius
default_delta(const BoxDomain& dom) {
    return BallRadius(max_dist(dom) / 10.0);
}

NeighborCount
default_k(std::size_t t) {
    if (t == 0) {
        throw ConfigError("default_k: t must be at least 1");
    }
    return NeighborCount(std::min<std::size_t>(std::max<std::size_t>(t / 5, 1), 5));
}

double
default_rate(std::size_t dim) {
    if (dim == 0) {
        throw ConfigError("default_rate: dimension must be at least 1");
    }
    return 1.0 / (0.05 * static_cast<double>(dim));
}

}  // namespace bometrics
