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


#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "bometrics/error.hpp"
#include "bometrics/strategies.hpp"
#include "test_util.hpp"

namespace bometrics {
namespace {

History
toy_history(std::uint64_t seed, std::size_t n, std::size_t d) {
    std::mt19937_64 rng(seed);
    auto pts = testing::random_points(rng, n, d);
    std::vector<double> y;
    for (auto& p : pts) {
        double v = 0;
        for (double c : p) v += (c - 0.3) * (c - 0.3);
        y.push_back(v + 0.1 * std::sin(12 * p[0]));
    }
    return History(testing::to_set(pts), y);
}

StrategyConfig
fast(StrategyKind kind) {
    StrategyConfig c;
    c.kind = kind;
    c.acquisition_starts = 16;
    c.fit_restarts = 2;
    c.lipschitz_probes = 64;
    return c;
}

void
expect_in_box(const Batch& b) {
    for (const auto& p : b.points)
        for (double v : p) {
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 1.0);
        }
}

TEST(Strategies, ParseRoundTrip) {
    for (auto name : {"random_search", "bo", "bbo_random", "bbo_constant", "bbo_prediction", "bbo_pe", "bbo_lp"}) {
        EXPECT_EQ(to_string(parse_strategy(name)), name);
    }
    EXPECT_THROW(parse_strategy("tpe"), ConfigError);
    EXPECT_FALSE(is_model_based(StrategyKind::kRandomSearch));
    EXPECT_TRUE(is_model_based(StrategyKind::kBboLp));
}

TEST(Strategies, RandomSearchDeterministicInBox) {
    History h(3);
    h.append(Point{0.5, 0.5, 0.5}, 1.0);
    auto a = next_batch(fast(StrategyKind::kRandomSearch), h, 7, 99);
    auto b = next_batch(fast(StrategyKind::kRandomSearch), h, 7, 99);
    EXPECT_EQ(a.points, b.points);
    EXPECT_EQ(a.points.size(), 7u);
    expect_in_box(a);
    EXPECT_NE(a.points, next_batch(fast(StrategyKind::kRandomSearch), h, 7, 100).points);
}

TEST(Strategies, BatchSizesAndDeterminism) {
    const auto h = toy_history(151, 8, 2);
    for (auto kind : {StrategyKind::kBboRandom, StrategyKind::kBboConstant, StrategyKind::kBboPrediction,
                      StrategyKind::kBboPe, StrategyKind::kBboLp}) {
        auto a = next_batch(fast(kind), h, 4, 5);
        auto b = next_batch(fast(kind), h, 4, 5);
        EXPECT_EQ(a.points.size(), 4u) << to_string(kind);
        EXPECT_EQ(a.points, b.points) << to_string(kind);
        EXPECT_TRUE(a.hyperparams.has_value());
        expect_in_box(a);
    }
    EXPECT_EQ(next_batch(fast(StrategyKind::kBo), h, 5, 5).points.size(), 1u);
}

TEST(Strategies, HistoryUntouched) {
    const auto h = toy_history(157, 6, 2);
    History copy = h;
    for (auto kind : {StrategyKind::kBboConstant, StrategyKind::kBboPrediction, StrategyKind::kBboPe}) {
        next_batch(fast(kind), copy, 3, 1);
        EXPECT_EQ(copy.points.flat(), h.points.flat());
        EXPECT_EQ(copy.values, h.values);
    }
}

TEST(Strategies, EmptyHistoryRejected) {
    History h(2);
    EXPECT_THROW(next_batch(fast(StrategyKind::kBo), h, 1, 0), ConfigError);
    EXPECT_THROW(next_batch(fast(StrategyKind::kBboLp), h, 3, 0), ConfigError);
    EXPECT_THROW(next_batch(fast(StrategyKind::kRandomSearch), toy_history(1, 3, 2), 0, 0), ConfigError);
}

TEST(Strategies, SinglePointHistory) {
    History h(2);
    h.append(Point{0.2, 0.9}, 3.0);
    auto b = next_batch(fast(StrategyKind::kBboConstant), h, 3, 4);
    EXPECT_EQ(b.points.size(), 3u);
    expect_in_box(b);
}

TEST(Strategies, ConstantLiarOfOneIsBo) {
    const auto h = toy_history(163, 7, 2);
    auto bo = next_batch(fast(StrategyKind::kBo), h, 1, 21);
    auto cl = next_batch(fast(StrategyKind::kBboConstant), h, 1, 21);
    EXPECT_EQ(bo.points, cl.points);
}

TEST(Strategies, PureExplorationSpreadsOut) {
    const auto h = toy_history(167, 6, 2);
    auto b = next_batch(fast(StrategyKind::kBboPe), h, 5, 3);
    for (std::size_t i = 0; i < b.points.size(); ++i)
        for (std::size_t j = i + 1; j < b.points.size(); ++j) EXPECT_GT(testing::dist(b.points[i], b.points[j]), 1e-6);
}

TEST(Strategies, PureExplorationMatchesGridArgmax) {
    // 1-d: the second point maximizes the variance after conditioning on
    // the history plus the first point.
    History h(PointSet{{0.1}, {0.45}, {0.5}, {0.9}}, {1.0, 0.2, 0.25, 0.7});
    auto cfg = fast(StrategyKind::kBboPe);
    cfg.acquisition_starts = 64;
    auto b = next_batch(cfg, h, 2, 11);
    auto state = SurrogateState::condition(h.points, h.values, *b.hyperparams);
    state = state.with_observation(b.points[0], 0.0);
    double best = -1;
    for (int i = 0; i <= 20000; ++i) {
        const double x = i / 20000.0;
        const double v = state.predict(Point{x}).variance;
        best = std::max(best, v);
    }
    EXPECT_NEAR(state.predict(b.points[1]).variance, best, 1e-6);
}

TEST(Strategies, LocalPenaltyBelowOneAtPending) {
    const auto h = toy_history(173, 8, 2);
    auto cfg = fast(StrategyKind::kBboLp);
    auto b = next_batch(cfg, h, 4, 9);
    auto state = SurrogateState::condition(h.points, h.values, *b.hyperparams);
    const double lip = lipschitz_estimate(state, 64, 1);
    for (const auto& p : b.points) {
        Penalizer pen(state, p, lip);
        EXPECT_LT(pen(p), 1.0);
        const double acq = acquisition_score(state, cfg.acquisition, p);
        if (acq > 0) EXPECT_LT(acq * pen(p), acq);
    }
}

TEST(Lipschitz, FloorForConstantMean) {
    History h(PointSet{{0.1}, {0.5}, {0.9}}, {2.0, 2.0, 2.0});
    auto s = SurrogateState::condition(h.points, h.values, KernelHyperparams{{0.3}, 1.0, 1e-6});
    EXPECT_EQ(lipschitz_estimate(s, 32, 0), kLipschitzFloor);
}

TEST(Lipschitz, LinearSlope) {
    const double slope = 3.0;
    PointSet x(1);
    std::vector<double> y;
    for (int i = 0; i <= 10; ++i) {
        x.push_back(Point{i / 10.0});
        y.push_back(slope * i / 10.0 - 1.0);
    }
    auto s = SurrogateState::condition(x, y, KernelHyperparams{{2.0}, 1.0, 1e-6});
    // The estimate lives in standardized target units.
    const double expected = slope / s.target_scale();
    const double est = lipschitz_estimate(s, 256, 4);
    EXPECT_GT(est, 0.0);
    EXPECT_GE(est, expected / 2);
    EXPECT_LE(est, expected * 2);
}

}  // namespace
}  // namespace bometrics
