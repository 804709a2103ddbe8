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
#include <span>
#include <vector>

namespace bometrics {

using Point = std::vector<double>;

// Axis-aligned box [lower, upper] in problem units. Bounds are inclusive.
class BoxDomain {
public:
    BoxDomain(std::vector<double> lower, std::vector<double> upper);

    static BoxDomain
    unit(std::size_t dim);

    std::size_t
    dim() const noexcept {
        return lower_.size();
    }

    const std::vector<double>&
    lower() const noexcept {
        return lower_;
    }

    const std::vector<double>&
    upper() const noexcept {
        return upper_;
    }

    bool
    contains(std::span<const double> x, double tol = 0.0) const;

private:
    std::vector<double> lower_;
    std::vector<double> upper_;
};

// Ordered points of a fixed dimension, stored row-major.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::size_t dim) : dim_(dim) {}
    PointSet(std::size_t dim, std::vector<double> flat);
    PointSet(std::initializer_list<Point> points);

    static PointSet
    from_points(const std::vector<Point>& points);

    std::size_t
    dim() const noexcept {
        return dim_;
    }

    std::size_t
    size() const noexcept {
        return dim_ == 0 ? 0 : data_.size() / dim_;
    }

    bool
    empty() const noexcept {
        return data_.empty();
    }

    std::span<const double>
    operator[](std::size_t i) const noexcept {
        return {data_.data() + i * dim_, dim_};
    }

    void
    push_back(std::span<const double> x);

    // First n points as a new set.
    PointSet
    prefix(std::size_t n) const;

    const std::vector<double>&
    flat() const noexcept {
        return data_;
    }

    std::vector<Point>
    to_points() const;

private:
    std::size_t dim_ = 0;
    std::vector<double> data_;
};

// Global optimizer locations and the shared optimal value f(x*).
struct OptimaSet {
    PointSet optimizers;
    double optimal_value = 0.0;
};

// Query points paired with their function values.
struct History {
    PointSet points;
    std::vector<double> values;

    explicit History(std::size_t dim = 0) : points(dim) {}
    History(PointSet p, std::vector<double> v);

    std::size_t
    size() const noexcept {
        return values.size();
    }

    void
    append(std::span<const double> x, double value);
};

Point
normalize(std::span<const double> p, const BoxDomain& dom);

Point
denormalize(std::span<const double> p01, const BoxDomain& dom);

PointSet
normalize(const PointSet& points, const BoxDomain& dom);

// Length of the box diagonal.
double
max_dist(const BoxDomain& dom);

double
euclidean_distance(std::span<const double> a, std::span<const double> b);

double
squared_distance(std::span<const double> a, std::span<const double> b);

// Dense symmetric t x t matrix, row-major, zero diagonal.
class DistanceMatrix {
public:
    explicit DistanceMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

    std::size_t
    size() const noexcept {
        return n_;
    }

    double
    operator()(std::size_t i, std::size_t j) const noexcept {
        return data_[i * n_ + j];
    }

    double&
    operator()(std::size_t i, std::size_t j) noexcept {
        return data_[i * n_ + j];
    }

private:
    std::size_t n_;
    std::vector<double> data_;
};

DistanceMatrix
pairwise_distances(const PointSet& points);

}  // namespace bometrics
