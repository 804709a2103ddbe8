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

#include "bometrics/domain.hpp"

#include <cmath>
#include <string>

#include "bometrics/error.hpp"

namespace bometrics {

namespace {

void
check_dim(std::size_t got, std::size_t want, const char* what) {
    if (got != want) {
        throw ConfigError(std::string(what) + ": dimension mismatch (got " + std::to_string(got) +
                          ", expected " + std::to_string(want) + ")");
    }
}

}  // namespace

BoxDomain::BoxDomain(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.empty()) {
        throw ConfigError("BoxDomain: dimension must be at least 1");
    }
    check_dim(upper_.size(), lower_.size(), "BoxDomain");
    for (std::size_t i = 0; i < lower_.size(); ++i) {
        if (!(lower_[i] < upper_[i])) {
            throw ConfigError("BoxDomain: lower bound must be below upper bound in dimension " +
                              std::to_string(i));
        }
    }
}

BoxDomain
BoxDomain::unit(std::size_t dim) {
    return {std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0)};
}

bool
BoxDomain::contains(std::span<const double> x, double tol) const {
    if (x.size() != dim()) {
        return false;
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] >= lower_[i] - tol && x[i] <= upper_[i] + tol)) {
            return false;
        }
    }
    return true;
}

PointSet::PointSet(std::size_t dim, std::vector<double> flat) : dim_(dim), data_(std::move(flat)) {
    if (dim_ == 0 || data_.size() % dim_ != 0) {
        throw ConfigError("PointSet: flat buffer length is not a multiple of the dimension");
    }
}

PointSet::PointSet(std::initializer_list<Point> points) {
    for (const auto& p : points) {
        if (dim_ == 0) {
            dim_ = p.size();
        }
        push_back(p);
    }
}

PointSet
PointSet::from_points(const std::vector<Point>& points) {
    PointSet out(points.empty() ? 0 : points.front().size());
    for (const auto& p : points) {
        out.push_back(p);
    }
    return out;
}

void
PointSet::push_back(std::span<const double> x) {
    if (dim_ == 0) {
        dim_ = x.size();
    }
    check_dim(x.size(), dim_, "PointSet::push_back");
    data_.insert(data_.end(), x.begin(), x.end());
}

PointSet
PointSet::prefix(std::size_t n) const {
    PointSet out(dim_);
    out.data_.assign(data_.begin(), data_.begin() + static_cast<std::ptrdiff_t>(n * dim_));
    return out;
}

std::vector<Point>
PointSet::to_points() const {
    std::vector<Point> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) {
        auto row = (*this)[i];
        out.emplace_back(row.begin(), row.end());
    }
    return out;
}

History::History(PointSet p, std::vector<double> v) : points(std::move(p)), values(std::move(v)) {
    if (points.size() != values.size()) {
        throw ConfigError("History: points and values differ in length");
    }
}

void
History::append(std::span<const double> x, double value) {
    points.push_back(x);
    values.push_back(value);
}

Point
normalize(std::span<const double> p, const BoxDomain& dom) {
    check_dim(p.size(), dom.dim(), "normalize");
    Point out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        out[i] = (p[i] - dom.lower()[i]) / (dom.upper()[i] - dom.lower()[i]);
    }
    return out;
}

Point
denormalize(std::span<const double> p01, const BoxDomain& dom) {
    check_dim(p01.size(), dom.dim(), "denormalize");
    Point out(p01.size());
    for (std::size_t i = 0; i < p01.size(); ++i) {
        out[i] = dom.lower()[i] + p01[i] * (dom.upper()[i] - dom.lower()[i]);
    }
    return out;
}

PointSet
normalize(const PointSet& points, const BoxDomain& dom) {
    PointSet out(dom.dim());
    for (std::size_t i = 0; i < points.size(); ++i) {
        out.push_back(normalize(points[i], dom));
    }
    return out;
}

double
max_dist(const BoxDomain& dom) {
    return euclidean_distance(dom.lower(), dom.upper());
}

double
squared_distance(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        acc += diff * diff;
    }
    return acc;
}

double
euclidean_distance(std::span<const double> a, std::span<const double> b) {
    return std::sqrt(squared_distance(a, b));
}

DistanceMatrix
pairwise_distances(const PointSet& points) {
    const std::size_t n = points.size();
    DistanceMatrix out(n);
    const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < rows; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        for (std::size_t j = ui + 1; j < n; ++j) {
            const double d = euclidean_distance(points[ui], points[j]);
            out(ui, j) = d;
            out(j, ui) = d;
        }
    }
    return out;
}

}  // namespace bometrics
