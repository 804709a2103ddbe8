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

#include "bometrics/runner.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <random>
#include <set>

#include "json.hpp"

#include "bometrics/benchmarks.hpp"
#include "bometrics/error.hpp"
#include "bometrics/rng.hpp"

#ifndef BOMETRICS_VERSION
#define BOMETRICS_VERSION "dev"
#endif

namespace bometrics {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

enum Salt : std::uint64_t {
    kRoundSalt = 11,
    kInitialSalt = 12,
    kBatchSalt = 13,
    kMetricSalt = 14,
};

std::string
run_label(const std::string& benchmark, const std::string& strategy, const std::string& acquisition) {
    return strategy == "random_search" ? benchmark + "__" + strategy : benchmark + "__" + strategy + "-" + acquisition;
}

std::string
strategy_label(const std::string& strategy, const std::string& acquisition) {
    return strategy == "random_search" ? strategy : strategy + "-" + acquisition;
}

json
config_json(const ExperimentConfig& c, const std::string& benchmark_name, std::size_t dim) {
    json j;
    j["benchmark"] = benchmark_name;
    j["dim"] = dim;
    j["strategy"] = to_string(c.strategy);
    j["acquisition"] = to_string(c.acquisition.kind);
    j["ucb_beta"] = c.acquisition.ucb_beta;
    j["budget"] = c.budget;
    j["n_initial"] = c.n_initial;
    j["batch_size"] = c.strategy == StrategyKind::kBo ? 1 : c.batch_size;
    j["rounds"] = c.n_rounds;
    j["seed"] = c.seed;
    j["m_samples"] = c.metrics.m_samples;
    j["delta"] = c.metrics.delta ? json(*c.metrics.delta) : json(nullptr);
    j["k"] = c.metrics.k ? json(*c.metrics.k) : json(nullptr);
    j["rate"] = c.metrics.rate ? json(*c.metrics.rate) : json(nullptr);
    j["success_prob"] = c.metrics.success_prob;
    j["acquisition_starts"] = c.acquisition_starts;
    j["fit_restarts"] = c.fit_restarts;
    j["liar_constant"] = c.liar_constant;
    return j;
}

}  // namespace

void
ExperimentConfig::validate() const {
    if (budget < 1 || n_initial < 1 || batch_size < 1 || n_rounds < 1) {
        throw ConfigError("budget, n_initial, batch_size and rounds must all be at least 1");
    }
    if (budget < n_initial) {
        throw ConfigError("budget must be at least n_initial");
    }
    if (metrics.m_samples < 1) {
        throw ConfigError("m_samples must be at least 1");
    }
    if (metrics.delta && !(*metrics.delta > 0.0)) {
        throw ConfigError("delta must be positive");
    }
    if (metrics.k && *metrics.k < 1) {
        throw ConfigError("k must be at least 1");
    }
    if (metrics.rate && !(*metrics.rate > 0.0)) {
        throw ConfigError("rate must be positive");
    }
    if (!(metrics.success_prob > 0.0 && metrics.success_prob <= 1.0)) {
        throw ConfigError("success probability must lie in (0, 1]");
    }
    if (workers < 1 || acquisition_starts < 1 || fit_restarts < 1) {
        throw ConfigError("workers, acquisition starts and fit restarts must be at least 1");
    }
    if (!(acquisition.ucb_beta > 0.0)) {
        throw ConfigError("ucb beta must be positive");
    }
    if (!std::isfinite(liar_constant)) {
        throw ConfigError("liar constant must be finite");
    }
    get_benchmark(benchmark, dim);
}

std::uint64_t
round_seed(std::uint64_t master_seed, std::size_t round) {
    return derive_seed(master_seed, {kRoundSalt, round});
}

RoundRecord
run_round(const ExperimentConfig& config, std::size_t round) {
    const auto started = std::chrono::steady_clock::now();
    const Benchmark bench = get_benchmark(config.benchmark, config.dim);
    const std::size_t dim = bench.domain.dim();

    RoundRecord rec;
    rec.round = round;
    rec.seed = round_seed(config.seed, round);
    rec.metric_seed = derive_seed(rec.seed, {kMetricSalt});

    History history(dim);
    auto evaluate = [&](Point x) {
        for (auto& v : x) {
            v = std::clamp(v, 0.0, 1.0);
        }
        const double y = bench.evaluate_normalized(x);
        if (!std::isfinite(y)) {
            throw NumericalError(bench.name + " returned a non-finite value");
        }
        history.append(x, y);
    };

    Rng init_rng(derive_seed(rec.seed, {kInitialSalt}));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (std::size_t i = 0; i < config.n_initial; ++i) {
        Point x(dim);
        for (auto& v : x) {
            v = unif(init_rng);
        }
        evaluate(std::move(x));
    }

    StrategyConfig strategy;
    strategy.kind = config.strategy;
    strategy.acquisition = config.acquisition;
    strategy.liar_constant = config.liar_constant;
    strategy.acquisition_starts = config.acquisition_starts;
    strategy.fit_restarts = config.fit_restarts;
    const std::size_t batch_size = config.strategy == StrategyKind::kBo ? 1 : config.batch_size;

    std::optional<KernelHyperparams> warm;
    while (history.size() < config.budget) {
        const std::size_t b = std::min(batch_size, config.budget - history.size());
        rec.batch_starts.push_back(history.size() + 1);
        auto batch = next_batch(strategy, history, b, derive_seed(rec.seed, {kBatchSalt, history.size()}), warm);
        if (batch.hyperparams) {
            warm = batch.hyperparams;
        }
        for (auto& p : batch.points) {
            if (history.size() >= config.budget) {
                break;
            }
            evaluate(std::move(p));
        }
    }

    const BoxDomain unit = BoxDomain::unit(dim);
    const OptimaSet optima = bench.normalized_optima();
    rec.metrics = metric_rows(history.points, history.values, &optima, unit, config.metrics, rec.metric_seed);
    rec.points = std::move(history.points);
    rec.values = std::move(history.values);
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return rec;
}

RunRecord
run_experiment(const ExperimentConfig& config) {
    config.validate();
    const Benchmark bench = get_benchmark(config.benchmark, config.dim);
    RunRecord run;
    run.config = config;
    run.benchmark_name = bench.name;
    run.dim = bench.domain.dim();
    run.rounds.resize(config.n_rounds);

    std::vector<std::exception_ptr> errors(config.n_rounds);
    const auto rounds = static_cast<std::ptrdiff_t>(config.n_rounds);
#pragma omp parallel for num_threads(config.workers) schedule(dynamic, 1)
    for (std::ptrdiff_t r = 0; r < rounds; ++r) {
        const auto idx = static_cast<std::size_t>(r);
        try {
            run.rounds[idx] = run_round(config, idx);
        } catch (...) {
            errors[idx] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return run;
}

std::string
round_file_name(std::size_t round) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "round_%03zu.csv", round);
    return buf;
}

csv::Table
round_table(const RoundRecord& round, std::size_t dim) {
    csv::Table table;
    table.header.push_back("iteration");
    for (std::size_t i = 0; i < dim; ++i) {
        table.header.push_back("x_" + std::to_string(i + 1));
    }
    table.header.push_back("f_value");
    for (auto name : kMetricNames) {
        table.header.emplace_back(name);
    }
    for (std::size_t t = 0; t < round.values.size(); ++t) {
        std::vector<std::string> row;
        row.reserve(table.header.size());
        row.push_back(std::to_string(t + 1));
        for (double v : round.points[t]) {
            row.push_back(csv::format_double(v));
        }
        row.push_back(csv::format_double(round.values[t]));
        for (double v : round.metrics[t]) {
            row.push_back(csv::format_double(v));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

void
write_run(const RunRecord& run, const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create " + dir.string() + ": " + ec.message());
    }
    json meta;
    meta["config"] = config_json(run.config, run.benchmark_name, run.dim);
    meta["coordinates"] = "normalized to [0,1]^d";
    meta["pf_seed_rule"] = "derive_seed(metric_seed, {iteration, metric_index})";
    meta["metrics"] = std::vector<std::string>(kMetricNames.begin(), kMetricNames.end());
    meta["version"] = BOMETRICS_VERSION;
    meta["compiler"] = __VERSION__;
    json rounds = json::array();
    for (const auto& r : run.rounds) {
        csv::write(dir / round_file_name(r.round), round_table(r, run.dim));
        rounds.push_back({{"round", r.round},
                          {"file", round_file_name(r.round)},
                          {"seed", r.seed},
                          {"metric_seed", r.metric_seed},
                          {"batch_starts", r.batch_starts},
                          {"wall_seconds", r.wall_seconds}});
    }
    meta["rounds"] = rounds;
    const std::time_t now = std::time(nullptr);
    char stamp[64];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    meta["written_at"] = stamp;

    std::ofstream out(dir / "metadata.json");
    if (!out) {
        throw IoError("cannot write " + (dir / "metadata.json").string());
    }
    out << meta.dump(2) << '\n';
}

LoadedRun
load_run(const fs::path& dir) {
    const fs::path meta_path = dir / "metadata.json";
    std::ifstream in(meta_path);
    if (!in) {
        throw IoError("cannot open " + meta_path.string());
    }
    json meta;
    try {
        in >> meta;
    } catch (const json::exception& e) {
        throw ConfigError(meta_path.string() + ": " + e.what());
    }
    LoadedRun run;
    run.dir = dir;
    try {
        run.benchmark = meta.at("config").at("benchmark").get<std::string>();
        run.strategy = meta.at("config").at("strategy").get<std::string>();
        run.acquisition = meta.at("config").at("acquisition").get<std::string>();
    } catch (const json::exception& e) {
        throw ConfigError(meta_path.string() + ": " + e.what());
    }
    run.traces.resize(kMetricCount);
    std::optional<std::size_t> length;
    for (const auto& r : meta.at("rounds")) {
        const fs::path file = dir / r.at("file").get<std::string>();
        const auto table = csv::read(file);
        if (length && *length != table.rows.size()) {
            throw ConfigError(file.string() + ": has " + std::to_string(table.rows.size()) +
                              " iterations, other rounds have " + std::to_string(*length));
        }
        length = table.rows.size();
        for (std::size_t m = 0; m < kMetricCount; ++m) {
            const std::size_t col = table.column(kMetricNames[m]);
            MetricTrace trace{std::string(kMetricNames[m]), {}};
            trace.values.reserve(table.rows.size());
            for (const auto& row : table.rows) {
                try {
                    trace.values.push_back(csv::parse_double(row[col]));
                } catch (const ConfigError& e) {
                    throw ConfigError(file.string() + ": " + e.what());
                }
            }
            run.traces[m].push_back(std::move(trace));
        }
    }
    if (!length) {
        throw ConfigError(meta_path.string() + ": no rounds recorded");
    }
    return run;
}

std::vector<std::pair<std::string, std::vector<double>>>
mean_traces(const LoadedRun& run) {
    std::vector<std::pair<std::string, std::vector<double>>> out;
    for (std::size_t m = 0; m < kMetricCount; ++m) {
        out.emplace_back(std::string(kMetricNames[m]), aggregate(run.traces[m]).mean);
    }
    return out;
}

void
write_spearman(const CorrelationMatrix& matrix, const fs::path& path) {
    csv::Table table;
    table.header.push_back("metric");
    table.header.insert(table.header.end(), matrix.names().begin(), matrix.names().end());
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        std::vector<std::string> row{matrix.names()[i]};
        for (std::size_t j = 0; j < matrix.size(); ++j) {
            const auto& v = matrix.at(i, j);
            row.push_back(v ? csv::format_double(*v) : std::string());
        }
        table.rows.push_back(std::move(row));
    }
    csv::write(path, table);
}

AnalysisSummary
analyze(const std::vector<fs::path>& run_dirs, const fs::path& out_dir) {
    if (run_dirs.empty()) {
        throw ConfigError("analyze: no run directories given");
    }
    std::vector<LoadedRun> runs;
    for (const auto& dir : run_dirs) {
        runs.push_back(load_run(dir));
    }

    AnalysisSummary summary;
    auto make_dir = [&](const fs::path& p) {
        std::error_code ec;
        fs::create_directories(p, ec);
        if (ec) {
            throw IoError("cannot create " + p.string() + ": " + ec.message());
        }
    };

    // Pools concatenate the member runs' mean traces, in input order.
    std::map<std::string, std::vector<std::size_t>> by_benchmark, by_strategy;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const auto& run = runs[i];
        const std::string label = run_label(run.benchmark, run.strategy, run.acquisition);
        if (!seen.insert(label).second) {
            throw ConfigError(run.dir.string() + ": duplicate run for " + label);
        }
        by_benchmark[run.benchmark].push_back(i);
        by_strategy[strategy_label(run.strategy, run.acquisition)].push_back(i);

        const fs::path dir = out_dir / label;
        make_dir(dir);
        for (std::size_t m = 0; m < kMetricCount; ++m) {
            const auto agg = aggregate(run.traces[m]);
            csv::Table table{{"iteration", "mean", "stderr"}, {}};
            for (std::size_t t = 0; t < agg.mean.size(); ++t) {
                table.rows.push_back(
                    {std::to_string(t + 1), csv::format_double(agg.mean[t]), csv::format_double(agg.std_error[t])});
            }
            csv::write(dir / ("trace_" + std::string(kMetricNames[m]) + ".csv"), table);
        }
        write_spearman(correlation_matrix(mean_traces(run)), dir / "spearman.csv");
        summary.matrices.push_back(dir / "spearman.csv");
    }

    auto pooled = [&](const std::vector<std::size_t>& members) {
        std::vector<std::pair<std::string, std::vector<double>>> series;
        for (auto idx : members) {
            auto means = mean_traces(runs[idx]);
            if (series.empty()) {
                series = std::move(means);
                continue;
            }
            for (std::size_t m = 0; m < kMetricCount; ++m) {
                series[m].second.insert(series[m].second.end(), means[m].second.begin(), means[m].second.end());
            }
        }
        return correlation_matrix(series);
    };
    for (const auto& [bench, members] : by_benchmark) {
        if (members.size() >= 2) {
            const fs::path dir = out_dir / ("pooled_benchmark_" + bench);
            make_dir(dir);
            write_spearman(pooled(members), dir / "spearman.csv");
            summary.matrices.push_back(dir / "spearman.csv");
        }
    }
    for (const auto& [strategy, members] : by_strategy) {
        if (members.size() >= 2) {
            const fs::path dir = out_dir / ("pooled_strategy_" + strategy);
            make_dir(dir);
            write_spearman(pooled(members), dir / "spearman.csv");
            summary.matrices.push_back(dir / "spearman.csv");
        }
    }
    return summary;
}

}  // namespace bometrics
