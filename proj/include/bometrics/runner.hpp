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
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bometrics/acquisition.hpp"
#include "bometrics/analysis.hpp"
#include "bometrics/csv.hpp"
#include "bometrics/domain.hpp"
#include "bometrics/metric_table.hpp"
#include "bometrics/strategies.hpp"

namespace bometrics {

struct ExperimentConfig {
    std::string benchmark = "branin";
    std::optional<std::size_t> dim;
    StrategyKind strategy = StrategyKind::kBo;
    AcquisitionSpec acquisition;
    // Total true evaluations per round, initial design included.
    std::size_t budget = 500;
    std::size_t n_initial = 5;
    std::size_t batch_size = 5;
    std::size_t n_rounds = 50;
    MetricParams metrics;
    std::uint64_t seed = 0;
    int workers = 1;
    int acquisition_starts = kDefaultAcquisitionStarts;
    int fit_restarts = 8;
    double liar_constant = 100.0;

    // Throws ConfigError on any violation.
    void
    validate() const;
};

struct RoundRecord {
    std::size_t round = 0;
    std::uint64_t seed = 0;
    // Base seed of the parameter-free metric draws (see pf_sample_seed).
    std::uint64_t metric_seed = 0;
    // Normalized coordinates, in evaluation order.
    PointSet points;
    // Raw function values.
    std::vector<double> values;
    std::vector<MetricRow> metrics;
    // 1-based iteration at which each strategy batch starts.
    std::vector<std::size_t> batch_starts;
    double wall_seconds = 0.0;
};

struct RunRecord {
    ExperimentConfig config;
    std::string benchmark_name;
    std::size_t dim = 0;
    std::vector<RoundRecord> rounds;
};

std::uint64_t
round_seed(std::uint64_t master_seed, std::size_t round);

RoundRecord
run_round(const ExperimentConfig& config, std::size_t round);

// Validates, then runs all rounds (in parallel up to config.workers).
RunRecord
run_experiment(const ExperimentConfig& config);

std::string
round_file_name(std::size_t round);

// round_NNN.csv per round plus metadata.json (the only file with timestamps).
void
write_run(const RunRecord& run, const std::filesystem::path& dir);

csv::Table
round_table(const RoundRecord& round, std::size_t dim);

struct LoadedRun {
    std::filesystem::path dir;
    std::string benchmark;
    std::string strategy;
    std::string acquisition;
    // One MetricTrace per metric per round: traces[metric][round].
    std::vector<std::vector<MetricTrace>> traces;
};

LoadedRun
load_run(const std::filesystem::path& dir);

// Mean trace per metric, in kMetricNames order.
std::vector<std::pair<std::string, std::vector<double>>>
mean_traces(const LoadedRun& run);

struct AnalysisSummary {
    std::vector<std::filesystem::path> matrices;
};

// Writes trace_<metric>.csv and spearman.csv per run, plus pooled matrices
// per benchmark (>= 2 strategies) and per strategy (>= 2 benchmarks).
AnalysisSummary
analyze(const std::vector<std::filesystem::path>& run_dirs, const std::filesystem::path& out_dir);

void
write_spearman(const CorrelationMatrix& matrix, const std::filesystem::path& path);

}  // namespace bometrics
