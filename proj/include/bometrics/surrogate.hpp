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

// Gaussian-process regression with an ARD Matern 5/2 kernel.
//
// Targets are standardized to zero mean and unit variance before the kernel
// sees them; the prior mean is zero in standardized units. Inputs are
// expected in the normalized unit box.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "bometrics/domain.hpp"
#include "bometrics/optimize.hpp"

namespace bometrics {

inline constexpr double kJitterFloor = 1e-8;

double
matern52(double r);

struct KernelHyperparams {
    std::vector<double> lengthscales;
    double signal_variance = 1.0;
    double noise_variance = 1e-4;

    // Layout: log lengthscales, log signal variance, log noise variance.
    std::vector<double>
    to_log() const;

    static KernelHyperparams
    from_log(std::span<const double> log_params);
};

// Search box for hyperparameter fitting (normalized / standardized units).
struct HyperparamBounds {
    double lengthscale_min = 1e-3;
    double lengthscale_max = 10.0;
    double signal_min = 1e-6;
    double signal_max = 1e3;
    double noise_min = kJitterFloor;
    double noise_max = 1e3;
};

// Latent-function posterior at one input, in standardized target units.
struct Posterior {
    double mean = 0.0;
    double variance = 0.0;
    double target_mean = 0.0;
    double target_scale = 1.0;

    double
    stddev() const noexcept;

    double
    raw_mean() const noexcept {
        return mean * target_scale + target_mean;
    }

    double
    raw_variance() const noexcept {
        return variance * target_scale * target_scale;
    }
};

class SurrogateState {
public:
    // Conditions a GP with fixed hyperparameters on raw targets. Throws
    // NumericalError if the kernel matrix stays indefinite after jitter
    // escalation.
    static SurrogateState
    condition(const PointSet& inputs, std::vector<double> raw_targets, KernelHyperparams hyperparams);

    Posterior
    predict(std::span<const double> x) const;

    // Same hyperparameters, one extra (x, raw value) observation.
    SurrogateState
    with_observation(std::span<const double> x, double raw_value) const;

    double
    log_marginal_likelihood() const noexcept {
        return lml_;
    }

    const KernelHyperparams&
    hyperparams() const noexcept {
        return hyperparams_;
    }

    const PointSet&
    inputs() const noexcept {
        return inputs_;
    }

    const std::vector<double>&
    raw_targets() const noexcept {
        return raw_targets_;
    }

    double
    target_mean() const noexcept {
        return target_mean_;
    }

    double
    target_scale() const noexcept {
        return target_scale_;
    }

    // Smallest standardized training target (incumbent for minimization).
    double
    best_target() const noexcept {
        return best_target_;
    }

    double
    applied_jitter() const noexcept {
        return jitter_;
    }

private:
    SurrogateState() = default;

    PointSet inputs_;
    std::vector<double> raw_targets_;
    KernelHyperparams hyperparams_;
    double target_mean_ = 0.0;
    double target_scale_ = 1.0;
    double best_target_ = 0.0;
    double jitter_ = 0.0;
    double lml_ = 0.0;
    Eigen::MatrixXd chol_lower_;
    Eigen::VectorXd alpha_;
};

struct LmlEvaluation {
    double value = 0.0;
    std::vector<double> gradient;
};

// Log marginal likelihood of standardized targets and its gradient with
// respect to KernelHyperparams::to_log() coordinates.
LmlEvaluation
log_marginal_likelihood(const PointSet& inputs, std::span<const double> targets,
                        std::span<const double> log_params);

struct FitOptions {
    int restarts = 8;
    HyperparamBounds bounds;
    BoxMinimizeOptions minimizer{.max_iterations = 100};
    // Extra start point, e.g. the previous iteration's fit.
    std::optional<KernelHyperparams> warm_start;
};

// Maximizes the log marginal likelihood from a fixed default start plus
// log-uniform restarts and returns the best fit.
SurrogateState
fit(const History& history, std::uint64_t seed, const FitOptions& options = {});

KernelHyperparams
default_hyperparams(std::size_t dim);

}  // namespace bometrics
