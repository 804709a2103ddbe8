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

// Command-line front end: run experiments, analyze results, list benchmarks,
// and compute metric traces for user-supplied point files.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bometrics/benchmarks.hpp"
#include "bometrics/csv.hpp"
#include "bometrics/error.hpp"
#include "bometrics/metric_table.hpp"
#include "bometrics/runner.hpp"

namespace {

using namespace bometrics;

// Reads a flat `key = value` file into `--key=value` arguments. Blank lines
// and lines starting with '#' or ';' are skipped.
std::vector<std::string>
config_arguments(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file " + path);
    }
    std::vector<std::string> args;
    std::string line;
    std::size_t lineno = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        }
        for (auto& c : key) {
            if (c == '_') {
                c = '-';
            }
        }
        args.push_back("--" + key + "=" + value);
    }
    return args;
}

// Splices config-file values in front of the command-line flags so that the
// latter win (options take their last value).
std::vector<std::string>
expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::vector<std::string> out;
    std::vector<std::string> rest;
    std::vector<std::string> from_file;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            auto more = config_arguments(args[++i]);
            from_file.insert(from_file.end(), more.begin(), more.end());
        } else if (args[i].rfind("--config=", 0) == 0) {
            auto more = config_arguments(args[i].substr(9));
            from_file.insert(from_file.end(), more.begin(), more.end());
        } else {
            rest.push_back(args[i]);
        }
    }
    if (rest.empty()) {
        return rest;
    }
    // Subcommand name first, then file values, then explicit flags.
    out.push_back(rest.front());
    out.insert(out.end(), from_file.begin(), from_file.end());
    out.insert(out.end(), rest.begin() + 1, rest.end());
    return out;
}

std::vector<double>
parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string cell;
    while (std::getline(in, cell, ',')) {
        out.push_back(csv::parse_double(cell));
    }
    return out;
}

PointSet
read_points(const std::string& path, std::vector<double>* values) {
    const auto table = csv::read(path);
    std::vector<std::size_t> cols;
    for (std::size_t d = 1;; ++d) {
        const std::string name = "x_" + std::to_string(d);
        auto it = std::find(table.header.begin(), table.header.end(), name);
        if (it == table.header.end()) {
            break;
        }
        cols.push_back(static_cast<std::size_t>(it - table.header.begin()));
    }
    if (cols.empty()) {
        throw ConfigError(path + ": no x_1.. columns");
    }
    std::optional<std::size_t> fcol;
    if (auto it = std::find(table.header.begin(), table.header.end(), "f_value"); it != table.header.end()) {
        fcol = static_cast<std::size_t>(it - table.header.begin());
    }
    PointSet points(cols.size());
    Point p(cols.size());
    for (const auto& row : table.rows) {
        for (std::size_t d = 0; d < cols.size(); ++d) {
            p[d] = csv::parse_double(row[cols[d]]);
        }
        points.push_back(p);
        if (values && fcol) {
            values->push_back(csv::parse_double(row[*fcol]));
        }
    }
    return points;
}

struct RunOptions {
    ExperimentConfig cfg;
    std::string strategy = "bo";
    std::string acquisition = "ei";
    std::optional<std::size_t> dim;
    std::optional<double> delta;
    std::optional<std::size_t> k;
    std::optional<double> rate;
    std::string out = "results";
};

struct MetricsOptions {
    std::string points;
    std::string optima;
    std::optional<double> f_star;
    std::string benchmark;
    std::optional<std::size_t> dim;
    std::string lower;
    std::string upper;
    bool normalized = false;
    std::optional<double> delta;
    std::optional<std::size_t> k;
    std::optional<double> rate;
    std::size_t m_samples = kDefaultSampleBudget;
    std::uint64_t seed = 0;
    std::string out;
};

int
do_run(RunOptions& o) {
    o.cfg.strategy = parse_strategy(o.strategy);
    o.cfg.acquisition.kind = parse_acquisition(o.acquisition);
    o.cfg.dim = o.dim;
    o.cfg.metrics.delta = o.delta;
    o.cfg.metrics.k = o.k;
    o.cfg.metrics.rate = o.rate;
    const auto run = run_experiment(o.cfg);
    write_run(run, o.out);
    std::cerr << "wrote " << run.rounds.size() << " round(s) to " << o.out << "\n";
    return 0;
}

int
do_metrics(const MetricsOptions& o) {
    std::vector<double> values;
    PointSet points = read_points(o.points, &values);
    const std::size_t dim = points.dim();

    std::optional<BoxDomain> domain;
    std::optional<OptimaSet> optima;
    if (!o.benchmark.empty()) {
        const auto bench = get_benchmark(o.benchmark, o.dim);
        if (bench.domain.dim() != dim) {
            throw ConfigError("points are " + std::to_string(dim) + "-dimensional, " + bench.name + " is not");
        }
        domain = bench.domain;
        optima = bench.optima;
        if (o.normalized) {
            domain = BoxDomain::unit(dim);
            optima = bench.normalized_optima();
        }
    } else if (!o.lower.empty() || !o.upper.empty()) {
        domain = BoxDomain(parse_list(o.lower), parse_list(o.upper));
    } else {
        domain = BoxDomain::unit(dim);
    }
    if (!o.optima.empty()) {
        optima = OptimaSet{read_points(o.optima, nullptr), optima ? optima->optimal_value : 0.0};
    }
    if (o.f_star) {
        if (!optima) {
            throw ConfigError("--f-star needs optimizer locations (--optima or --benchmark)");
        }
        optima->optimal_value = *o.f_star;
    }
    const bool have_f_star = o.f_star.has_value() || !o.benchmark.empty();

    // Metrics are always computed in the unit box of `domain`.
    const PointSet unit_points = normalize(points, *domain);
    std::optional<OptimaSet> unit_optima;
    if (optima) {
        unit_optima = OptimaSet{normalize(optima->optimizers, *domain), optima->optimal_value};
    }
    MetricParams params;
    params.delta = o.delta;
    params.k = o.k;
    params.rate = o.rate;
    params.m_samples = o.m_samples;
    const std::span<const double> vals = have_f_star ? std::span<const double>(values) : std::span<const double>();
    const auto rows = metric_rows(unit_points, vals, unit_optima ? &*unit_optima : nullptr,
                                  BoxDomain::unit(dim), params, o.seed);

    csv::Table table;
    table.header.push_back("iteration");
    for (auto name : kMetricNames) {
        table.header.emplace_back(name);
    }
    for (std::size_t t = 0; t < rows.size(); ++t) {
        std::vector<std::string> row{std::to_string(t + 1)};
        for (double v : rows[t]) {
            row.push_back(csv::format_double(v));
        }
        table.rows.push_back(std::move(row));
    }
    if (o.out.empty()) {
        csv::write(std::cout, table);
    } else {
        csv::write(o.out, table);
    }
    return 0;
}

}  // namespace

int
main(int argc, char** argv) {
    CLI::App app{"Geometric and regret-based metrics for Bayesian optimization"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    RunOptions run;
    auto* run_cmd = app.add_subcommand("run", "Run strategy x benchmark x rounds and write per-round CSVs");
    run_cmd->add_option("--config", "Flat key = value file; flags override its values");
    run_cmd->add_option("--benchmark", run.cfg.benchmark, "Benchmark name (see list-benchmarks)")->capture_default_str();
    run_cmd->add_option("--dim", run.dim, "Dimension for scalable benchmarks");
    run_cmd->add_option("--strategy", run.strategy,
                        "random_search | bo | bbo_random | bbo_constant | bbo_prediction | bbo_pe | bbo_lp")
        ->capture_default_str();
    run_cmd->add_option("--acquisition", run.acquisition, "ei | ucb")->capture_default_str();
    run_cmd->add_option("--ucb-beta", run.cfg.acquisition.ucb_beta, "UCB exploration weight")->capture_default_str();
    run_cmd->add_option("--budget", run.cfg.budget, "Evaluations per round")->capture_default_str();
    run_cmd->add_option("--n-initial", run.cfg.n_initial, "Uniform initial design size")->capture_default_str();
    run_cmd->add_option("--batch-size", run.cfg.batch_size, "Points per batch")->capture_default_str();
    run_cmd->add_option("--rounds", run.cfg.n_rounds, "Independent rounds")->capture_default_str();
    run_cmd->add_option("--seed", run.cfg.seed, "Master seed")->capture_default_str();
    run_cmd->add_option("--m-samples", run.cfg.metrics.m_samples, "Monte-Carlo samples M")->capture_default_str();
    run_cmd->add_option("--delta", run.delta, "Ball radius in normalized units (default sqrt(d)/10)");
    run_cmd->add_option("--k", run.k, "Neighbor count (default min(max(t/5,1),5))");
    run_cmd->add_option("--rate", run.rate, "Exponential rate (default 1/(0.05 d))");
    run_cmd->add_option("--success-prob", run.cfg.metrics.success_prob, "Geometric success probability")
        ->capture_default_str();
    run_cmd->add_option("--workers", run.cfg.workers, "Rounds run in parallel")->capture_default_str();
    run_cmd->add_option("--starts", run.cfg.acquisition_starts, "Acquisition optimizer starts")->capture_default_str();
    run_cmd->add_option("--restarts", run.cfg.fit_restarts, "GP hyperparameter restarts")->capture_default_str();
    run_cmd->add_option("--liar", run.cfg.liar_constant, "Fantasy value for bbo_constant")->capture_default_str();
    run_cmd->add_option("--out", run.out, "Output directory")->capture_default_str();

    std::vector<std::string> analyze_in;
    std::string analyze_out = "analysis";
    auto* analyze_cmd = app.add_subcommand("analyze", "Aggregate traces and compute Spearman matrices");
    analyze_cmd->add_option("--in", analyze_in, "Run directories")->required()->expected(1, -1)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    analyze_cmd->add_option("--out", analyze_out, "Output directory")->capture_default_str();

    auto* list_cmd = app.add_subcommand("list-benchmarks", "Print the benchmark roster");

    MetricsOptions mo;
    auto* metrics_cmd = app.add_subcommand("metrics", "Compute the 11 metric traces from a CSV of points");
    metrics_cmd->add_option("--points", mo.points, "CSV with x_1..x_d and optional f_value")->required();
    metrics_cmd->add_option("--optima", mo.optima, "CSV with optimizer locations x_1..x_d");
    metrics_cmd->add_option("--f-star", mo.f_star, "Global optimal value");
    metrics_cmd->add_option("--benchmark", mo.benchmark, "Take domain and optima from a benchmark");
    metrics_cmd->add_option("--dim", mo.dim, "Dimension for scalable benchmarks");
    metrics_cmd->add_flag("--normalized", mo.normalized, "Points are already in [0,1]^d (with --benchmark)");
    metrics_cmd->add_option("--lower", mo.lower, "Comma-separated lower bounds");
    metrics_cmd->add_option("--upper", mo.upper, "Comma-separated upper bounds");
    metrics_cmd->add_option("--delta", mo.delta, "Ball radius in normalized units");
    metrics_cmd->add_option("--k", mo.k, "Neighbor count");
    metrics_cmd->add_option("--rate", mo.rate, "Exponential rate");
    metrics_cmd->add_option("--m-samples", mo.m_samples, "Monte-Carlo samples M")->capture_default_str();
    metrics_cmd->add_option("--seed", mo.seed, "Seed of the parameter-free draws")->capture_default_str();
    metrics_cmd->add_option("--out", mo.out, "Output CSV (default stdout)");

    try {
        auto args = expand_config(argc, argv);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ErrorKind::kConfig);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    }

    try {
        if (*run_cmd) {
            return do_run(run);
        }
        if (*analyze_cmd) {
            std::vector<std::filesystem::path> dirs(analyze_in.begin(), analyze_in.end());
            const auto summary = analyze(dirs, analyze_out);
            std::cerr << "wrote " << summary.matrices.size() << " correlation matrices to " << analyze_out << "\n";
            return 0;
        }
        if (*list_cmd) {
            for (const auto& name : list_benchmarks()) {
                const auto b = get_benchmark(name);
                std::cout << name << "\t" << b.domain.dim() << "\t" << b.optima.optimizers.size() << "\t"
                          << csv::format_double(b.optima.optimal_value) << "\n";
            }
            return 0;
        }
        if (*metrics_cmd) {
            return do_metrics(mo);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(ErrorKind::kNumerical);
    }
    return 0;
}
