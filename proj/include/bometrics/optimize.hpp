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
#include <functional>
#include <span>
#include <vector>

namespace bometrics {

// f(x, grad) returns the objective and writes its gradient into grad.
using ObjectiveWithGradient = std::function<double(std::span<const double>, std::span<double>)>;

struct BoxMinimizeOptions {
    int max_iterations = 200;
    std::size_t memory = 8;
    double gradient_tolerance = 1e-8;
    double relative_function_tolerance = 1e-12;
};

struct BoxMinimizeResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
    // False when the objective was not finite at the (clamped) start point.
    bool ok = true;
};

// Limited-memory BFGS with projection onto [lower, upper]. Variables held at
// a bound by the gradient are frozen for the step; the line search backtracks
// along the projected path with an Armijo condition. The returned value never
// exceeds the value at the clamped start point.
BoxMinimizeResult
minimize_box(const ObjectiveWithGradient& objective, std::vector<double> x0,
             std::span<const double> lower, std::span<const double> upper,
             const BoxMinimizeOptions& options = {});

// Central differences, falling back to one-sided steps at the bounds.
void
finite_difference_gradient(const std::function<double(std::span<const double>)>& f,
                           std::span<const double> x, std::span<const double> lower,
                           std::span<const double> upper, double step, std::span<double> grad);

}  // namespace bometrics
