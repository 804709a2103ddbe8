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

#include "bometrics/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace bometrics {

namespace {

double
dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += a[i] * b[i];
    }
    return acc;
}

struct CorrectionPair {
    std::vector<double> s;
    std::vector<double> y;
    double rho;
};

bool
blocked(double x, double g, double lo, double hi) {
    return (x <= lo && g > 0.0) || (x >= hi && g < 0.0);
}

}  // namespace

BoxMinimizeResult
minimize_box(const ObjectiveWithGradient& objective, std::vector<double> x0,
             std::span<const double> lower, std::span<const double> upper,
             const BoxMinimizeOptions& options) {
    const std::size_t n = x0.size();
    BoxMinimizeResult result;
    for (std::size_t i = 0; i < n; ++i) {
        x0[i] = std::clamp(x0[i], lower[i], upper[i]);
    }
    std::vector<double> x = std::move(x0);
    std::vector<double> g(n);
    double fx = objective(x, g);
    if (!std::isfinite(fx) || !std::all_of(g.begin(), g.end(), [](double v) { return std::isfinite(v); })) {
        result.x = std::move(x);
        result.value = fx;
        result.ok = false;
        return result;
    }

    std::deque<CorrectionPair> memory;
    std::vector<double> pg(n), dir(n), x_new(n), g_new(n), alpha(options.memory);

    for (int iter = 0; iter < options.max_iterations; ++iter) {
        result.iterations = iter + 1;
        double pg_norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            pg[i] = blocked(x[i], g[i], lower[i], upper[i]) ? 0.0 : g[i];
            pg_norm = std::max(pg_norm, std::abs(pg[i]));
        }
        if (pg_norm < options.gradient_tolerance) {
            result.converged = true;
            break;
        }

        // Two-loop recursion on the free subspace.
        std::copy(pg.begin(), pg.end(), dir.begin());
        for (std::size_t m = memory.size(); m-- > 0;) {
            alpha[m] = memory[m].rho * dot(memory[m].s, dir);
            for (std::size_t i = 0; i < n; ++i) {
                dir[i] -= alpha[m] * memory[m].y[i];
            }
        }
        if (!memory.empty()) {
            const auto& last = memory.back();
            const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
            for (auto& v : dir) {
                v *= gamma;
            }
        }
        for (std::size_t m = 0; m < memory.size(); ++m) {
            const double beta = memory[m].rho * dot(memory[m].y, dir);
            for (std::size_t i = 0; i < n; ++i) {
                dir[i] += (alpha[m] - beta) * memory[m].s[i];
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            dir[i] = pg[i] == 0.0 ? 0.0 : -dir[i];
        }
        if (dot(dir, pg) >= 0.0) {
            memory.clear();
            for (std::size_t i = 0; i < n; ++i) {
                dir[i] = -pg[i];
            }
        }

        double step = memory.empty() ? std::min(1.0, 1.0 / pg_norm) : 1.0;
        bool accepted = false;
        double f_new = fx;
        for (int trial = 0; trial < 40; ++trial) {
            for (std::size_t i = 0; i < n; ++i) {
                x_new[i] = std::clamp(x[i] + step * dir[i], lower[i], upper[i]);
            }
            double decrease = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                decrease += g[i] * (x_new[i] - x[i]);
            }
            if (decrease >= 0.0) {
                step *= 0.5;
                continue;
            }
            f_new = objective(x_new, g_new);
            const bool finite = std::isfinite(f_new) &&
                                std::all_of(g_new.begin(), g_new.end(), [](double v) { return std::isfinite(v); });
            if (finite && f_new <= fx + 1e-4 * decrease) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            if (memory.empty()) {
                break;
            }
            memory.clear();
            continue;
        }

        CorrectionPair pair{std::vector<double>(n), std::vector<double>(n), 0.0};
        for (std::size_t i = 0; i < n; ++i) {
            pair.s[i] = x_new[i] - x[i];
            pair.y[i] = g_new[i] - g[i];
        }
        const double sy = dot(pair.s, pair.y);
        if (sy > 1e-12 * std::sqrt(dot(pair.s, pair.s) * dot(pair.y, pair.y))) {
            pair.rho = 1.0 / sy;
            memory.push_back(std::move(pair));
            if (memory.size() > options.memory) {
                memory.pop_front();
            }
        }

        const double change = fx - f_new;
        x.swap(x_new);
        g.swap(g_new);
        fx = f_new;
        if (change <= options.relative_function_tolerance * std::max(1.0, std::abs(fx))) {
            result.converged = true;
            break;
        }
    }

    result.x = std::move(x);
    result.value = fx;
    return result;
}

void
finite_difference_gradient(const std::function<double(std::span<const double>)>& f,
                           std::span<const double> x, std::span<const double> lower,
                           std::span<const double> upper, double step, std::span<double> grad) {
    std::vector<double> probe(x.begin(), x.end());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double hi = std::min(x[i] + step, upper[i]);
        const double lo = std::max(x[i] - step, lower[i]);
        if (hi <= lo) {
            grad[i] = 0.0;
            continue;
        }
        probe[i] = hi;
        const double f_hi = f(probe);
        probe[i] = lo;
        const double f_lo = f(probe);
        probe[i] = x[i];
        grad[i] = (f_hi - f_lo) / (hi - lo);
    }
}

}  // namespace bometrics
