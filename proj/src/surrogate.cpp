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

#include "bometrics/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "bometrics/error.hpp"
#include "bometrics/rng.hpp"

namespace bometrics {

namespace {

const double kSqrt5 = std::sqrt(5.0);

constexpr double kJitterLadder[] = {0.0, 1e-10, 1e-8, 1e-6, 1e-4, 1e-2};

Eigen::MatrixXd
latent_kernel(const PointSet& inputs, const KernelHyperparams& hp) {
    const std::size_t n = inputs.size();
    const std::size_t d = inputs.dim();
    Eigen::MatrixXd k(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        k(i, i) = hp.signal_variance;
        for (std::size_t j = i + 1; j < n; ++j) {
            double r2 = 0.0;
            for (std::size_t p = 0; p < d; ++p) {
                const double z = (inputs[i][p] - inputs[j][p]) / hp.lengthscales[p];
                r2 += z * z;
            }
            const double v = hp.signal_variance * matern52(std::sqrt(r2));
            k(i, j) = v;
            k(j, i) = v;
        }
    }
    return k;
}

struct Factorization {
    Eigen::LLT<Eigen::MatrixXd> llt;
    double jitter = 0.0;
};

Factorization
factor_with_jitter(Eigen::MatrixXd k, double noise) {
    const auto n = k.rows();
    k.diagonal().array() += noise;
    for (double extra : kJitterLadder) {
        Factorization f;
        if (extra > 0.0) {
            Eigen::MatrixXd kj = k;
            kj.diagonal().array() += extra;
            f.llt.compute(kj);
        } else {
            f.llt.compute(k);
        }
        if (f.llt.info() == Eigen::Success && (f.llt.matrixLLT().diagonal().array() > 0.0).all()) {
            f.jitter = extra;
            return f;
        }
    }
    throw NumericalError("kernel matrix is not positive definite after jitter escalation (n = " +
                         std::to_string(n) + ")");
}

double
lml_value(const Factorization& f, const Eigen::VectorXd& y, const Eigen::VectorXd& alpha) {
    const double n = static_cast<double>(y.size());
    const Eigen::MatrixXd lower = f.llt.matrixL();
    const double log_det_half = lower.diagonal().array().log().sum();
    return -0.5 * y.dot(alpha) - log_det_half - 0.5 * n * std::log(2.0 * std::numbers::pi);
}

Eigen::Map<const Eigen::VectorXd>
as_vector(std::span<const double> v) {
    return {v.data(), static_cast<Eigen::Index>(v.size())};
}

}  // namespace

double
matern52(double r) {
    const double s = kSqrt5 * r;
    return (1.0 + s + 5.0 * r * r / 3.0) * std::exp(-s);
}

std::vector<double>
KernelHyperparams::to_log() const {
    std::vector<double> out;
    out.reserve(lengthscales.size() + 2);
    for (double l : lengthscales) {
        out.push_back(std::log(l));
    }
    out.push_back(std::log(signal_variance));
    out.push_back(std::log(noise_variance));
    return out;
}

KernelHyperparams
KernelHyperparams::from_log(std::span<const double> log_params) {
    KernelHyperparams hp;
    const std::size_t d = log_params.size() - 2;
    hp.lengthscales.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        hp.lengthscales[i] = std::exp(log_params[i]);
    }
    hp.signal_variance = std::exp(log_params[d]);
    hp.noise_variance = std::exp(log_params[d + 1]);
    return hp;
}

double
Posterior::stddev() const noexcept {
    return std::sqrt(std::max(variance, 0.0));
}

SurrogateState
SurrogateState::condition(const PointSet& inputs, std::vector<double> raw_targets,
                          KernelHyperparams hyperparams) {
    const std::size_t n = inputs.size();
    if (n == 0 || raw_targets.size() != n) {
        throw ConfigError("surrogate: inputs and targets must be nonempty and aligned");
    }
    if (hyperparams.lengthscales.size() != inputs.dim()) {
        throw ConfigError("surrogate: lengthscale count does not match input dimension");
    }
    hyperparams.noise_variance = std::max(hyperparams.noise_variance, kJitterFloor);

    SurrogateState s;
    s.inputs_ = inputs;
    s.hyperparams_ = std::move(hyperparams);

    double mean = 0.0;
    for (double v : raw_targets) {
        mean += v;
    }
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : raw_targets) {
        var += (v - mean) * (v - mean);
    }
    var /= static_cast<double>(n);
    s.target_mean_ = mean;
    s.target_scale_ = var > 1e-24 ? std::sqrt(var) : 1.0;

    Eigen::VectorXd y(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[static_cast<Eigen::Index>(i)] = (raw_targets[i] - s.target_mean_) / s.target_scale_;
    }
    s.best_target_ = y.minCoeff();
    s.raw_targets_ = std::move(raw_targets);

    auto f = factor_with_jitter(latent_kernel(inputs, s.hyperparams_), s.hyperparams_.noise_variance);
    s.jitter_ = f.jitter;
    s.alpha_ = f.llt.solve(y);
    s.lml_ = lml_value(f, y, s.alpha_);
    s.chol_lower_ = f.llt.matrixL();
    return s;
}

Posterior
SurrogateState::predict(std::span<const double> x) const {
    const std::size_t n = inputs_.size();
    const std::size_t d = inputs_.dim();
    Eigen::VectorXd k(n);
    for (std::size_t i = 0; i < n; ++i) {
        double r2 = 0.0;
        for (std::size_t p = 0; p < d; ++p) {
            const double z = (x[p] - inputs_[i][p]) / hyperparams_.lengthscales[p];
            r2 += z * z;
        }
        k[static_cast<Eigen::Index>(i)] = hyperparams_.signal_variance * matern52(std::sqrt(r2));
    }
    Posterior post;
    post.mean = k.dot(alpha_);
    chol_lower_.triangularView<Eigen::Lower>().solveInPlace(k);
    post.variance = std::max(hyperparams_.signal_variance - k.squaredNorm(), 0.0);
    post.target_mean = target_mean_;
    post.target_scale = target_scale_;
    return post;
}

SurrogateState
SurrogateState::with_observation(std::span<const double> x, double raw_value) const {
    PointSet inputs = inputs_;
    inputs.push_back(x);
    auto targets = raw_targets_;
    targets.push_back(raw_value);
    return condition(inputs, std::move(targets), hyperparams_);
}

LmlEvaluation
log_marginal_likelihood(const PointSet& inputs, std::span<const double> targets,
                        std::span<const double> log_params) {
    const std::size_t n = inputs.size();
    const std::size_t d = inputs.dim();
    const auto hp = KernelHyperparams::from_log(log_params);
    const Eigen::VectorXd y = as_vector(targets);

    const Eigen::MatrixXd kf = latent_kernel(inputs, hp);
    const auto f = factor_with_jitter(kf, hp.noise_variance);
    const Eigen::VectorXd alpha = f.llt.solve(y);

    LmlEvaluation out;
    out.value = lml_value(f, y, alpha);
    out.gradient.assign(d + 2, 0.0);

    // dLML/dtheta = 0.5 * sum_ij W_ij dK_ij with W = alpha alpha^T - K^{-1}.
    Eigen::MatrixXd w = -f.llt.solve(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n),
                                                                 static_cast<Eigen::Index>(n)));
    w.noalias() += alpha * alpha.transpose();

    double signal = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        signal += 0.5 * w(ii, ii) * kf(ii, ii);
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto jj = static_cast<Eigen::Index>(j);
            double r2 = 0.0;
            for (std::size_t p = 0; p < d; ++p) {
                const double z = (inputs[i][p] - inputs[j][p]) / hp.lengthscales[p];
                r2 += z * z;
            }
            const double r = std::sqrt(r2);
            // d k / d log(l_p) = s^2 (5/3) (1 + sqrt5 r) exp(-sqrt5 r) (dx_p / l_p)^2
            const double common = w(ii, jj) * hp.signal_variance * (5.0 / 3.0) * (1.0 + kSqrt5 * r) *
                                  std::exp(-kSqrt5 * r);
            for (std::size_t p = 0; p < d; ++p) {
                const double z = (inputs[i][p] - inputs[j][p]) / hp.lengthscales[p];
                out.gradient[p] += common * z * z;
            }
            signal += w(ii, jj) * kf(ii, jj);
        }
    }
    out.gradient[d] = signal;
    out.gradient[d + 1] = 0.5 * hp.noise_variance * w.trace();
    return out;
}

KernelHyperparams
default_hyperparams(std::size_t dim) {
    KernelHyperparams hp;
    hp.lengthscales.assign(dim, 0.5);
    hp.signal_variance = 1.0;
    hp.noise_variance = 1e-4;
    return hp;
}

SurrogateState
fit(const History& history, std::uint64_t seed, const FitOptions& options) {
    if (history.size() < 2) {
        throw ConfigError("surrogate fit needs at least two training points");
    }
    const std::size_t d = history.points.dim();
    const auto& b = options.bounds;
    std::vector<double> lower(d + 2), upper(d + 2);
    for (std::size_t p = 0; p < d; ++p) {
        lower[p] = std::log(b.lengthscale_min);
        upper[p] = std::log(b.lengthscale_max);
    }
    lower[d] = std::log(b.signal_min);
    upper[d] = std::log(b.signal_max);
    lower[d + 1] = std::log(b.noise_min);
    upper[d + 1] = std::log(b.noise_max);

    // Standardize once with the same rule SurrogateState applies.
    const auto probe = SurrogateState::condition(history.points, history.values, default_hyperparams(d));
    std::vector<double> y(history.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] = (history.values[i] - probe.target_mean()) / probe.target_scale();
    }

    std::vector<std::vector<double>> starts;
    starts.push_back(default_hyperparams(d).to_log());
    if (options.warm_start) {
        starts.push_back(options.warm_start->to_log());
    }
    Rng rng(seed);
    while (starts.size() < static_cast<std::size_t>(std::max(options.restarts, 1))) {
        std::vector<double> s(d + 2);
        for (std::size_t p = 0; p < d + 2; ++p) {
            s[p] = std::uniform_real_distribution<double>(lower[p], upper[p])(rng);
        }
        // Keep noise draws in the lower part of the range; benchmarks are noiseless.
        s[d + 1] = std::uniform_real_distribution<double>(lower[d + 1], std::log(1e-2))(rng);
        starts.push_back(std::move(s));
    }

    const ObjectiveWithGradient negative_lml = [&](std::span<const double> theta, std::span<double> grad) {
        try {
            const auto eval = log_marginal_likelihood(history.points, y, theta);
            for (std::size_t p = 0; p < grad.size(); ++p) {
                grad[p] = -eval.gradient[p];
            }
            return -eval.value;
        } catch (const NumericalError&) {
            return std::numeric_limits<double>::infinity();
        }
    };

    std::optional<BoxMinimizeResult> best;
    for (auto& start : starts) {
        auto res = minimize_box(negative_lml, start, lower, upper, options.minimizer);
        if (!res.ok || !std::isfinite(res.value)) {
            continue;
        }
        if (!best || res.value < best->value) {
            best = std::move(res);
        }
    }
    if (!best) {
        throw NumericalError("surrogate fit: every restart failed to evaluate the marginal likelihood");
    }
    return SurrogateState::condition(history.points, history.values, KernelHyperparams::from_log(best->x));
}

}  // namespace bometrics
