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

#include "bometrics/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "bometrics/error.hpp"
#include "bometrics/optimize.hpp"
#include "bometrics/rng.hpp"

namespace bometrics {

namespace {

constexpr double kSigmaFloor = 1e-12;
constexpr double kGradientStep = 1e-6;

double
softplus(double v) {
    return v > 30.0 ? v : std::log1p(std::exp(v));
}

}  // namespace

AcquisitionKind
parse_acquisition(std::string_view name) {
    if (name == "ei" || name == "expected_improvement") {
        return AcquisitionKind::kExpectedImprovement;
    }
    if (name == "ucb") {
        return AcquisitionKind::kUcb;
    }
    throw ConfigError("unknown acquisition '" + std::string(name) + "' (expected ei or ucb)");
}

std::string
to_string(AcquisitionKind kind) {
    return kind == AcquisitionKind::kUcb ? "ucb" : "ei";
}

double
normal_pdf(double z) {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double
normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double
expected_improvement(const Posterior& post, double best) {
    const double sigma = post.stddev();
    const double gap = best - post.mean;
    if (sigma < kSigmaFloor) {
        return std::max(gap, 0.0);
    }
    const double z = gap / sigma;
    return std::max(gap * normal_cdf(z) + sigma * normal_pdf(z), 0.0);
}

double
ucb_score(const Posterior& post, double beta) {
    if (!(beta > 0.0)) {
        throw ConfigError("ucb beta must be positive");
    }
    return -(post.mean - std::sqrt(beta) * post.stddev());
}

double
acquisition_score(const SurrogateState& state, const AcquisitionSpec& spec, std::span<const double> x) {
    const auto post = state.predict(x);
    if (spec.kind == AcquisitionKind::kUcb) {
        return ucb_score(post, spec.ucb_beta);
    }
    return expected_improvement(post, state.best_target());
}

Penalizer::Penalizer(const SurrogateState& state, std::span<const double> center, double lipschitz)
    : center_(center.begin(), center.end()), lipschitz_(lipschitz) {
    const auto post = state.predict(center);
    const double incumbent = std::min(state.best_target(), post.mean);
    gap_ = post.mean - incumbent;
    scale_ = std::numbers::sqrt2 * std::max(post.stddev(), kSigmaFloor);
}

double
Penalizer::operator()(std::span<const double> x) const {
    const double z = (lipschitz_ * euclidean_distance(x, center_) - gap_) / scale_;
    const double p = 0.5 * std::erfc(-z);
    return std::clamp(p, std::numeric_limits<double>::min(), 1.0);
}

ProposalResult
maximize_in_unit_box(const ScoreFunction& score, std::size_t dim, int n_starts, std::uint64_t seed) {
    if (n_starts < 1) {
        throw ConfigError("acquisition optimizer needs at least one start");
    }
    Rng rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<Point> starts(static_cast<std::size_t>(n_starts), Point(dim));
    for (auto& s : starts) {
        for (auto& v : s) {
            v = unif(rng);
        }
    }

    const std::vector<double> lower(dim, 0.0), upper(dim, 1.0);
    auto safe_score = [&](std::span<const double> x) {
        const double v = score(x);
        return std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
    };
    const ObjectiveWithGradient objective = [&](std::span<const double> x, std::span<double> grad) {
        finite_difference_gradient([&](std::span<const double> p) { return -safe_score(p); }, x, lower,
                                   upper, kGradientStep, grad);
        return -safe_score(x);
    };
    BoxMinimizeOptions opts;
    opts.max_iterations = 50;
    opts.gradient_tolerance = 1e-10;
    opts.relative_function_tolerance = 1e-10;

    std::vector<Point> found(starts.size());
    std::vector<double> value(starts.size());
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n_starts; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        const double raw = safe_score(starts[idx]);
        found[idx] = starts[idx];
        value[idx] = raw;
        const auto res = minimize_box(objective, starts[idx], lower, upper, opts);
        if (res.ok && std::isfinite(res.value) && -res.value > raw) {
            found[idx] = res.x;
            value[idx] = -res.value;
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < value.size(); ++i) {
        if (value[i] > value[best]) {
            best = i;
        }
    }
    return {found[best], value[best], n_starts};
}

ProposalResult
propose(const SurrogateState& state, const AcquisitionSpec& spec, int n_starts, std::uint64_t seed,
        std::span<const Penalizer> penalizers) {
    if (penalizers.empty()) {
        return maximize_in_unit_box(
            [&](std::span<const double> x) { return acquisition_score(state, spec, x); },
            state.inputs().dim(), n_starts, seed);
    }
    const bool is_ucb = spec.kind == AcquisitionKind::kUcb;
    return maximize_in_unit_box(
        [&](std::span<const double> x) {
            const double acq = acquisition_score(state, spec, x);
            double v = is_ucb ? softplus(acq) : acq;
            for (const auto& p : penalizers) {
                v *= p(x);
            }
            return v;
        },
        state.inputs().dim(), n_starts, seed);
}

}  // namespace bometrics
