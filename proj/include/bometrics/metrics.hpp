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

// Regret-based and geometric performance metrics for black-box optimization.
//
// All geometric metrics work on whatever coordinates they are given; the
// experiment runner passes points normalized to [0,1]^d. Ball membership is
// tested as ||a - b||^2 <= delta^2.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bometrics/domain.hpp"

namespace bometrics {

// Radius of a ball query, delta > 0.
class BallRadius {
public:
    explicit BallRadius(double delta);

    double
    value() const noexcept {
        return delta_;
    }

private:
    double delta_;
};

// Number of nearest neighbors, k >= 1. Clamped to t - 1 at evaluation time.
class NeighborCount {
public:
    explicit NeighborCount(std::size_t k);

    std::size_t
    value() const noexcept {
        return k_;
    }

private:
    std::size_t k_;
};

// Monte-Carlo sample count M >= 1 for the parameter-free metrics.
class SampleBudget {
public:
    explicit SampleBudget(std::size_t m);

    std::size_t
    value() const noexcept {
        return m_;
    }

private:
    std::size_t m_;
};

// --- regret family ---------------------------------------------------------

// Allowed slack before f_xt < f_star is treated as wrong optimum metadata.
inline constexpr double kRegretTolerance = 1e-9;

double
instantaneous_regret(double f_xt, double f_star);

double
simple_regret(std::span<const double> values, double f_star);

double
cumulative_regret(std::span<const double> values, double f_star);

// Prefix-wise traces: entry t-1 is the metric over values[0..t).
std::vector<double>
simple_regret_trace(std::span<const double> values, double f_star);

std::vector<double>
cumulative_regret_trace(std::span<const double> values, double f_star);

// --- geometric family ------------------------------------------------------

double
precision(const PointSet& queries, const PointSet& optimizers, BallRadius delta);

double
recall(const PointSet& queries, const PointSet& optimizers, BallRadius delta);

// Mean number of *other* points within delta of each point.
double
average_degree(const PointSet& queries, BallRadius delta);

// Mean distance to the k nearest neighbors (self excluded). Requires t >= 2.
double
average_distance(const PointSet& queries, NeighborCount k);

// --- parameter-free forms --------------------------------------------------

// delta_i ~ Exponential(rate), i = 1..M. Deterministic in seed.
std::vector<double>
sample_radii(SampleBudget m, double rate, std::uint64_t seed);

// k_i ~ Geometric(success_prob) on {1, 2, ...}. Deterministic in seed.
std::vector<std::size_t>
sample_neighbor_counts(SampleBudget m, double success_prob, std::uint64_t seed);

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

// --- default parameters ----------------------------------------------------

// max_dist(dom) / 10.
BallRadius
default_delta(const BoxDomain& dom);

// min(max(floor(t / 5), 1), 5).
NeighborCount
default_k(std::size_t t);

// Exponential rate 1 / (0.05 d) used in the normalized unit box.
double
default_rate(std::size_t dim);

inline constexpr double kDefaultSuccessProb = 0.5;
inline constexpr std::size_t kDefaultSampleBudget = 100;

// --- precomputed kernels ---------------------------------------------------
//
// Each geometric metric is a function of a few per-point summaries. These
// classes compute them once (OpenMP over points) so that many radii or
// neighbor counts can be evaluated cheaply. Results are exactly invariant to
// the order of the input points.

class PointGeometry {
public:
    explicit PointGeometry(const PointSet& points);

    std::size_t
    size() const noexcept {
        return n_;
    }

    double
    average_degree(double delta) const;

    // k is clamped to size() - 1; requires size() >= 2.
    double
    average_distance(std::size_t k) const;

private:
    std::size_t n_;
    // Row i: ascending squared distances from point i to every other point.
    std::vector<double> sorted_sq_;
    // Row i: prefix sums of the matching Euclidean distances, n_ entries.
    std::vector<double> prefix_dist_;
};

class OptimaProximity {
public:
    OptimaProximity(const PointSet& queries, const PointSet& optimizers);

    double
    precision(double delta) const;

    double
    recall(double delta) const;

private:
    // Ascending nearest-optimizer squared distance of each query.
    std::vector<double> query_sq_;
    // Ascending nearest-query squared distance of each optimizer.
    std::vector<double> optimum_sq_;
};

}  // namespace bometrics
