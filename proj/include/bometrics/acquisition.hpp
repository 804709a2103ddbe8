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

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bometrics/domain.hpp"
#include "bometrics/surrogate.hpp"

namespace bometrics {

// Minimization convention throughout: larger scores are more desirable.
enum class AcquisitionKind {
    kExpectedImprovement,
    kUcb,
};

struct AcquisitionSpec {
    AcquisitionKind kind = AcquisitionKind::kExpectedImprovement;
    // Used by kUcb: score = -(mu - sqrt(beta) * sigma).
    double ucb_beta = 4.0;
};

AcquisitionKind
parse_acquisition(std::string_view name);

std::string
to_string(AcquisitionKind kind);

double
normal_pdf(double z);

double
normal_cdf(double z);

// EI for minimization: E[max(best - Y, 0)], Y ~ N(mean, variance).
double
expected_improvement(const Posterior& post, double best);

double
ucb_score(const Posterior& post, double beta);

double
acquisition_score(const SurrogateState& state, const AcquisitionSpec& spec, std::span<const double> x);

// Local penalizer around a pending point: 0.5 * erfc(-z) with
// z = (L * ||x - c|| - (mu(c) - M)) / (sqrt(2) * sigma(c)),
// M = min(incumbent, mu(c)) so that the penalty at the center is <= 1/2.
class Penalizer {
public:
    Penalizer(const SurrogateState& state, std::span<const double> center, double lipschitz);

    // In (0, 1]; tends to 1 far from the center.
    double
    operator()(std::span<const double> x) const;

    const Point&
    center() const noexcept {
        return center_;
    }

private:
    Point center_;
    double lipschitz_;
    double gap_;
    double scale_;
};

struct ProposalResult {
    Point point;
    double acquisition_value = 0.0;
    int n_starts = 0;
};

using ScoreFunction = std::function<double(std::span<const double>)>;

// Multi-start maximization over [0,1]^dim: n_starts uniform draws, each
// refined by a bounded quasi-Newton search on finite-difference gradients.
// Local searches run in parallel; ties go to the lowest start index.
ProposalResult
maximize_in_unit_box(const ScoreFunction& score, std::size_t dim, int n_starts, std::uint64_t seed);

// With penalizers the maximized objective is base(acq) * prod penalty,
// where base is EI itself (non-negative) or softplus of the UCB score.
ProposalResult
propose(const SurrogateState& state, const AcquisitionSpec& spec, int n_starts, std::uint64_t seed,
        std::span<const Penalizer> penalizers = {});

inline constexpr int kDefaultAcquisitionStarts = 128;

}  // namespace bometrics
