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

#include "bometrics/benchmarks.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bometrics/error.hpp"

namespace bometrics {

namespace {

using std::numbers::pi;

constexpr std::size_t kMaxScalableDim = 100;

double
branin(std::span<const double> x) {
    const double b = 5.1 / (4.0 * pi * pi);
    const double c = 5.0 / pi;
    const double t = 1.0 / (8.0 * pi);
    const double u = x[1] - b * x[0] * x[0] + c * x[0] - 6.0;
    return u * u + 10.0 * (1.0 - t) * std::cos(x[0]) + 10.0;
}

double
ackley(std::span<const double> x) {
    const double d = static_cast<double>(x.size());
    double sq = 0.0;
    double cs = 0.0;
    for (double v : x) {
        sq += v * v;
        cs += std::cos(2.0 * pi * v);
    }
    return -20.0 * std::exp(-0.2 * std::sqrt(sq / d)) - std::exp(cs / d) + 20.0 + std::numbers::e;
}

double
zakharov(std::span<const double> x) {
    double sq = 0.0;
    double weighted = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sq += x[i] * x[i];
        weighted += 0.5 * static_cast<double>(i + 1) * x[i];
    }
    const double w2 = weighted * weighted;
    return sq + w2 + w2 * w2;
}

double
beale(std::span<const double> x) {
    const double a = 1.5 - x[0] + x[0] * x[1];
    const double b = 2.25 - x[0] + x[0] * x[1] * x[1];
    const double c = 2.625 - x[0] + x[0] * x[1] * x[1] * x[1];
    return a * a + b * b + c * c;
}

double
bohachevsky(std::span<const double> x) {
    return x[0] * x[0] + 2.0 * x[1] * x[1] - 0.3 * std::cos(3.0 * pi * x[0]) -
           0.4 * std::cos(4.0 * pi * x[1]) + 0.7;
}

double
bukin6(std::span<const double> x) {
    return 100.0 * std::sqrt(std::abs(x[1] - 0.01 * x[0] * x[0])) + 0.01 * std::abs(x[0] + 10.0);
}

double
colville(std::span<const double> x) {
    const double a = x[0] * x[0] - x[1];
    const double b = x[2] * x[2] - x[3];
    return 100.0 * a * a + (x[0] - 1.0) * (x[0] - 1.0) + (x[2] - 1.0) * (x[2] - 1.0) + 90.0 * b * b +
           10.1 * ((x[1] - 1.0) * (x[1] - 1.0) + (x[3] - 1.0) * (x[3] - 1.0)) +
           19.8 * (x[1] - 1.0) * (x[3] - 1.0);
}

// Shekel's foxholes.
double
de_jong5(std::span<const double> x) {
    constexpr double grid[5] = {-32.0, -16.0, 0.0, 16.0, 32.0};
    double acc = 0.002;
    for (int i = 0; i < 25; ++i) {
        const double a1 = grid[i % 5];
        const double a2 = grid[i / 5];
        acc += 1.0 / (i + 1 + std::pow(x[0] - a1, 6) + std::pow(x[1] - a2, 6));
    }
    return 1.0 / acc;
}

double
eggholder(std::span<const double> x) {
    return -(x[1] + 47.0) * std::sin(std::sqrt(std::abs(x[1] + x[0] / 2.0 + 47.0))) -
           x[0] * std::sin(std::sqrt(std::abs(x[0] - (x[1] + 47.0))));
}

constexpr double kHartmannAlpha[4] = {1.0, 1.2, 3.0, 3.2};

double
hartmann3(std::span<const double> x) {
    constexpr double a[4][3] = {{3.0, 10.0, 30.0}, {0.1, 10.0, 35.0}, {3.0, 10.0, 30.0}, {0.1, 10.0, 35.0}};
    constexpr double p[4][3] = {{0.3689, 0.1170, 0.2673},
                                {0.4699, 0.4387, 0.7470},
                                {0.1091, 0.8732, 0.5547},
                                {0.0381, 0.5743, 0.8828}};
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) {
        double inner = 0.0;
        for (int j = 0; j < 3; ++j) {
            inner += a[i][j] * (x[j] - p[i][j]) * (x[j] - p[i][j]);
        }
        acc -= kHartmannAlpha[i] * std::exp(-inner);
    }
    return acc;
}

double
hartmann6(std::span<const double> x) {
    constexpr double a[4][6] = {{10.0, 3.0, 17.0, 3.5, 1.7, 8.0},
                                {0.05, 10.0, 17.0, 0.1, 8.0, 14.0},
                                {3.0, 3.5, 1.7, 10.0, 17.0, 8.0},
                                {17.0, 8.0, 0.05, 10.0, 0.1, 14.0}};
    constexpr double p[4][6] = {{0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
                                {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
                                {0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650},
                                {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381}};
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) {
        double inner = 0.0;
        for (int j = 0; j < 6; ++j) {
            inner += a[i][j] * (x[j] - p[i][j]) * (x[j] - p[i][j]);
        }
        acc -= kHartmannAlpha[i] * std::exp(-inner);
    }
    return acc;
}

double
levy(std::span<const double> x) {
    const std::size_t d = x.size();
    auto w = [&](std::size_t i) { return 1.0 + (x[i] - 1.0) / 4.0; };
    const double s1 = std::sin(pi * w(0));
    double acc = s1 * s1;
    for (std::size_t i = 0; i + 1 < d; ++i) {
        const double wi = w(i);
        const double s = std::sin(pi * wi + 1.0);
        acc += (wi - 1.0) * (wi - 1.0) * (1.0 + 10.0 * s * s);
    }
    const double wd = w(d - 1);
    const double sd = std::sin(2.0 * pi * wd);
    return acc + (wd - 1.0) * (wd - 1.0) * (1.0 + sd * sd);
}

double
six_hump_camel(std::span<const double> x) {
    const double x1 = x[0];
    const double x2 = x[1];
    return (4.0 - 2.1 * x1 * x1 + x1 * x1 * x1 * x1 / 3.0) * x1 * x1 + x1 * x2 +
           (-4.0 + 4.0 * x2 * x2) * x2 * x2;
}

double
three_hump_camel(std::span<const double> x) {
    const double x1 = x[0];
    const double x2 = x[1];
    const double x1_2 = x1 * x1;
    return 2.0 * x1_2 - 1.05 * x1_2 * x1_2 + x1_2 * x1_2 * x1_2 / 6.0 + x1 * x2 + x2 * x2;
}

BoxDomain
cube(std::size_t d, double lo, double hi) {
    return {std::vector<double>(d, lo), std::vector<double>(d, hi)};
}

// Validates the optimizer metadata against the evaluator.
Benchmark
make(std::string name, BoxDomain domain, Evaluator evaluator, std::vector<Point> optimizers,
     double optimal_value) {
    Benchmark b{std::move(name), std::move(domain), std::move(evaluator),
                OptimaSet{PointSet::from_points(optimizers), optimal_value}};
    for (std::size_t i = 0; i < b.optima.optimizers.size(); ++i) {
        const auto x = b.optima.optimizers[i];
        if (!b.domain.contains(x)) {
            throw NumericalError(b.name + ": registered optimizer " + std::to_string(i) + " lies outside the domain");
        }
        const double v = b.evaluator(x);
        if (std::abs(v - optimal_value) > kOptimumTolerance) {
            throw NumericalError(b.name + ": registered optimizer " + std::to_string(i) + " evaluates to " +
                                 std::to_string(v) + ", not " + std::to_string(optimal_value));
        }
    }
    return b;
}

bool
is_scalable(std::string_view family) {
    return family == "ackley" || family == "zakharov" || family == "levy";
}

}  // namespace

double
Benchmark::evaluate(std::span<const double> x) const {
    if (x.size() != domain.dim()) {
        throw ConfigError(name + ": dimension mismatch");
    }
    return evaluator(x);
}

double
Benchmark::evaluate_normalized(std::span<const double> x01) const {
    if (!BoxDomain::unit(domain.dim()).contains(x01)) {
        throw ConfigError(name + ": normalized point lies outside the unit box");
    }
    return evaluator(denormalize(x01, domain));
}

OptimaSet
Benchmark::normalized_optima() const {
    return {normalize(optima.optimizers, domain), optima.optimal_value};
}

Benchmark
get_benchmark(std::string_view name, std::optional<std::size_t> dim) {
    std::string family(name);
    if (const auto dash = family.rfind('-'); dash != std::string::npos) {
        const std::string suffix = family.substr(dash + 1);
        std::size_t parsed = 0;
        try {
            std::size_t used = 0;
            parsed = std::stoul(suffix, &used);
            if (used != suffix.size()) {
                throw std::invalid_argument(suffix);
            }
        } catch (const std::exception&) {
            throw ConfigError("unknown benchmark '" + std::string(name) + "'");
        }
        if (dim && *dim != parsed) {
            throw ConfigError("benchmark '" + std::string(name) + "' conflicts with dim " + std::to_string(*dim));
        }
        family = family.substr(0, dash);
        dim = parsed;
        if (!is_scalable(family)) {
            throw ConfigError("benchmark '" + family + "' has a fixed dimension");
        }
    }

    if (is_scalable(family)) {
        if (!dim) {
            throw ConfigError("benchmark '" + family + "' needs a dimension (e.g. " + family + "-4)");
        }
        const std::size_t d = *dim;
        if (d < 1 || d > kMaxScalableDim) {
            throw ConfigError("benchmark '" + family + "' does not support dim " + std::to_string(d));
        }
        const std::string full = family + "-" + std::to_string(d);
        if (family == "ackley") {
            return make(full, cube(d, -32.768, 32.768), ackley, {Point(d, 0.0)}, 0.0);
        }
        if (family == "zakharov") {
            return make(full, cube(d, -5.0, 10.0), zakharov, {Point(d, 0.0)}, 0.0);
        }
        return make(full, cube(d, -10.0, 10.0), levy, {Point(d, 1.0)}, 0.0);
    }

    auto fixed = [&](std::size_t d) {
        if (dim && *dim != d) {
            throw ConfigError("benchmark '" + family + "' is " + std::to_string(d) + "-dimensional");
        }
    };
    if (family == "branin") {
        fixed(2);
        return make("branin", BoxDomain({-5.0, 0.0}, {10.0, 15.0}), branin,
                    {{-pi, 12.275}, {pi, 2.275}, {3.0 * pi, 2.475}}, 5.0 / (4.0 * pi));
    }
    if (family == "beale") {
        fixed(2);
        return make("beale", cube(2, -4.5, 4.5), beale, {{3.0, 0.5}}, 0.0);
    }
    if (family == "bohachevsky") {
        fixed(2);
        return make("bohachevsky", cube(2, -100.0, 100.0), bohachevsky, {{0.0, 0.0}}, 0.0);
    }
    if (family == "bukin6") {
        fixed(2);
        return make("bukin6", BoxDomain({-15.0, -3.0}, {-5.0, 3.0}), bukin6, {{-10.0, 1.0}}, 0.0);
    }
    if (family == "colville") {
        fixed(4);
        return make("colville", cube(4, -10.0, 10.0), colville, {{1.0, 1.0, 1.0, 1.0}}, 0.0);
    }
    if (family == "dejong5") {
        fixed(2);
        return make("dejong5", cube(2, -65.536, 65.536), de_jong5, {{-31.97833337797648, -31.978334007870856}},
                    0.9980038377944498);
    }
    if (family == "eggholder") {
        fixed(2);
        return make("eggholder", cube(2, -512.0, 512.0), eggholder, {{512.0, 404.2318051457265}},
                    -959.6406627208507);
    }
    if (family == "hartmann3") {
        fixed(3);
        return make("hartmann3", cube(3, 0.0, 1.0), hartmann3,
                    {{0.11458888122541287, 0.5556488954739371, 0.8525469842172746}}, -3.862779787332663);
    }
    if (family == "hartmann6") {
        fixed(6);
        return make("hartmann6", cube(6, 0.0, 1.0), hartmann6,
                    {{0.20168950909365746, 0.15001069354111374, 0.4768739729250998, 0.2753324275220782,
                      0.3116516172395686, 0.6573005345536702}},
                    -3.3223680114155147);
    }
    if (family == "sixhumpcamel") {
        fixed(2);
        return make("sixhumpcamel", BoxDomain({-3.0, -2.0}, {3.0, 2.0}), six_hump_camel,
                    {{0.08984200893527233, -0.712656403019058}, {-0.08984200893527233, 0.712656403019058}},
                    -1.0316284534898774);
    }
    if (family == "threehumpcamel") {
        fixed(2);
        return make("threehumpcamel", cube(2, -5.0, 5.0), three_hump_camel, {{0.0, 0.0}}, 0.0);
    }
    throw ConfigError("unknown benchmark '" + std::string(name) + "'");
}

std::vector<std::string>
list_benchmarks() {
    return {"branin",    "ackley-4",  "ackley-16",   "beale",          "bohachevsky", "bukin6",
            "colville",  "dejong5",   "eggholder",   "hartmann3",      "hartmann6",   "levy-4",
            "levy-16",   "sixhumpcamel", "threehumpcamel", "zakharov-4", "zakharov-16"};
}

}  // namespace bometrics
