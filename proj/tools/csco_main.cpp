// csco: Poisson-spectrum degeneracy statistics and state-identification
// probabilities. Subcommands: predict, estimate, sweep, figure, patterns,
// generate. Exit codes: 0 ok, 1 usage error, 2 runtime error, 3 figure gate
// exceeded.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "csco/analytics.hpp"
#include "csco/experiments.hpp"
#include "csco/montecarlo.hpp"
#include "csco/spectra.hpp"

namespace {

namespace an = csco::analytics;
namespace ex = csco::experiments;

// Bad flag combinations detected after parsing; mapped to exit code 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::uint64_t parse_seed(const std::string& text) {
    if (text == "random") {
        std::random_device rd;
        return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }
    try {
        std::size_t used = 0;
        const std::uint64_t value = std::stoull(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return value;
    } catch (const std::exception&) {
        throw UsageError("--seed expects a 64-bit unsigned integer or 'random'");
    }
}

csco::mc::EstimatorKind parse_kind(const std::string& name) {
    using csco::mc::EstimatorKind;
    if (name == "pair") return EstimatorKind::PairDegeneracySorted;
    if (name == "cluster") return EstimatorKind::ClusterStart;
    if (name == "noclusters") return EstimatorKind::NoClusters;
    if (name == "pairperm") return EstimatorKind::PairDegeneracyPermuted;
    if (name == "csco1") return EstimatorKind::CscoSingle;
    if (name == "csco2") return EstimatorKind::CscoTwo;
    throw UsageError("unknown --kind '" + name +
                     "' (pair|cluster|noclusters|pairperm|csco1|csco2)");
}

csco::SpectrumModel parse_model(const std::string& name) {
    if (name == "uniform") return csco::SpectrumModel::UniformInterval;
    if (name == "exponential") return csco::SpectrumModel::ExponentialGaps;
    throw UsageError("unknown --model '" + name + "' (uniform|exponential)");
}

// Writes to --out if set, stdout otherwise.
void deliver(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text).flush()) {
        throw std::runtime_error("cannot write " + out_path);
    }
}

double require(const std::optional<double>& value, const char* flag) {
    if (!value) throw UsageError(std::string("missing required flag ") + flag);
    return *value;
}

// ---------------------------------------------------------------------------
// predict

struct PredictArgs {
    std::string quantity;
    std::optional<double> delta1, delta2, spacing1, spacing2;
    std::optional<std::uint64_t> levels;
    std::string format = "table";
};

struct PredictRow {
    std::string name;
    double exact;
    std::optional<double> asymptotic;
};

int run_predict(const PredictArgs& args) {
    std::vector<PredictRow> rows;
    const auto levels = [&]() -> std::size_t {
        if (!args.levels) throw UsageError("missing required flag --levels");
        if (*args.levels < 2) throw UsageError("--levels must be >= 2");
        return static_cast<std::size_t>(*args.levels);
    };
    const auto p1 = [&] {
        return an::pair_degeneracy_prob(require(args.delta1, "--delta1"),
                                        require(args.spacing1, "--spacing1"));
    };
    const auto p2 = [&] {
        return an::pair_degeneracy_prob(require(args.delta2, "--delta2"),
                                        require(args.spacing2, "--spacing2"));
    };

    if (args.quantity == "p") {
        rows.push_back({"p", p1(), std::nullopt});
    } else if (args.quantity == "p_c") {
        rows.push_back({"p_c", an::cluster_start_prob(p1()), std::nullopt});
    } else if (args.quantity == "no_clusters") {
        const auto pred = an::prob_no_clusters(p1(), levels());
        rows.push_back({"no_clusters", pred.exact, pred.asymptotic});
    } else if (args.quantity == "csco1") {
        const auto pred = an::prob_csco_single(p1(), levels());
        rows.push_back({"csco1", pred.exact, pred.asymptotic});
    } else if (args.quantity == "csco2") {
        const auto pred = an::prob_csco_two(p1(), p2(), levels());
        rows.push_back({"csco2", pred.exact, pred.asymptotic});
    } else if (args.quantity == "conjectures") {
        const auto no_clusters = an::prob_no_clusters_conjecture(p1(), levels());
        rows.push_back(
            {"no_clusters_conjecture", no_clusters.exact, no_clusters.asymptotic});
        if (args.delta2 && args.spacing2) {
            const auto csco2 = an::prob_csco_two_conjecture(p1(), p2(), levels());
            rows.push_back({"csco2_conjecture", csco2.exact, csco2.asymptotic});
        }
    } else {
        throw UsageError("unknown --quantity '" + args.quantity +
                         "' (p|p_c|no_clusters|csco1|csco2|conjectures)");
    }

    std::ostringstream out;
    if (args.format == "csv") {
        out << "quantity,exact,asymptotic\n";
        for (const auto& row : rows) {
            out << row.name << ',' << fmt6(row.exact) << ','
                << (row.asymptotic ? fmt6(*row.asymptotic) : std::string{}) << '\n';
        }
    } else {
        for (const auto& row : rows) {
            out << row.name << ": exact = " << fmt6(row.exact);
            if (row.asymptotic) out << ", asymptotic = " << fmt6(*row.asymptotic);
            out << '\n';
        }
    }
    std::cout << out.str();
    return 0;
}

// ---------------------------------------------------------------------------
// estimate / sweep

struct EstimateArgs {
    std::string kind;
    std::uint64_t levels = 100;
    double spacing = 1.0;
    std::optional<double> spacing2;
    std::string model = "uniform";
    double delta1 = 0.0;
    std::optional<double> delta2;
    std::uint64_t trials = 1000;
    std::string seed = "12345";
    unsigned workers = 1;
    std::string pooling = "pooled";
    std::string out;
};

csco::mc::TrialPlan make_plan(const EstimateArgs& args) {
    csco::mc::TrialPlan plan;
    plan.estimator = parse_kind(args.kind);
    plan.config.n_levels = static_cast<std::size_t>(args.levels);
    plan.config.mean_spacing = args.spacing;
    plan.config.model = parse_model(args.model);
    plan.detector1.delta = args.delta1;
    if (plan.estimator == csco::mc::EstimatorKind::CscoTwo) {
        if (!args.delta2) throw UsageError("--kind csco2 requires --delta2");
        plan.detector2.delta = *args.delta2;
        if (args.spacing2) {
            plan.config2 = plan.config;
            plan.config2->mean_spacing = *args.spacing2;
        }
    }
    plan.n_trials = args.trials;
    plan.seed = csco::Seed{parse_seed(args.seed)};
    plan.workers = args.workers;
    plan.pooling = args.pooling == "pertrial" ? csco::mc::PoolingMode::PerTrialMean
                                              : csco::mc::PoolingMode::PooledSites;
    if (args.pooling != "pooled" && args.pooling != "pertrial") {
        throw UsageError("unknown --pooling '" + args.pooling + "' (pooled|pertrial)");
    }
    if (args.trials < 1) throw UsageError("--trials must be >= 1");
    if (!(args.spacing > 0)) throw UsageError("--spacing must be > 0");
    if (args.delta1 < 0 || (args.delta2 && *args.delta2 < 0)) {
        throw UsageError("detector errors must be >= 0");
    }
    return plan;
}

int run_estimate(const EstimateArgs& args) {
    const auto est = csco::mc::run(make_plan(args));
    std::ostringstream out;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%llu,%llu\n", est.mean,
                  est.std_error, static_cast<unsigned long long>(est.n_trials),
                  static_cast<unsigned long long>(est.n_events));
    out << "mean,stderr,n_trials,n_events\n" << buf;
    deliver(out.str(), args.out);
    return 0;
}

struct SweepArgs {
    EstimateArgs base;
    std::string vary;
    std::optional<double> from, to;
    std::uint64_t steps = 0;
    std::string grid;
};

std::vector<double> build_grid(const SweepArgs& args) {
    std::vector<double> grid;
    if (!args.grid.empty()) {
        std::istringstream in(args.grid);
        std::string token;
        while (std::getline(in, token, ',')) {
            try {
                grid.push_back(std::stod(token));
            } catch (const std::exception&) {
                throw UsageError("--grid expects comma-separated numbers");
            }
        }
    } else {
        if (!args.from || !args.to || args.steps == 0) {
            throw UsageError("sweep needs either --grid or --from/--to/--steps");
        }
        if (args.steps == 1) {
            grid.push_back(*args.from);
        } else {
            const double step = (*args.to - *args.from) /
                                static_cast<double>(args.steps - 1);
            for (std::uint64_t i = 0; i < args.steps; ++i) {
                grid.push_back(*args.from + step * static_cast<double>(i));
            }
        }
    }
    if (grid.empty()) throw UsageError("sweep grid is empty");
    return grid;
}

int run_sweep(const SweepArgs& args) {
    csco::mc::SweepVariable vary;
    if (args.vary == "delta") {
        vary = csco::mc::SweepVariable::DetectorError;
    } else if (args.vary == "levels") {
        vary = csco::mc::SweepVariable::SpectrumLength;
    } else {
        throw UsageError("unknown --vary '" + args.vary + "' (delta|levels)");
    }
    auto plan = make_plan(args.base);
    // CscoTwo detector-error sweeps keep delta2/delta1 fixed; default 1:1.
    if (vary == csco::mc::SweepVariable::DetectorError &&
        plan.estimator == csco::mc::EstimatorKind::CscoTwo &&
        !(plan.detector1.delta > 0)) {
        throw UsageError("csco2 delta sweep needs --delta1 > 0 to set the ratio");
    }
    const auto table = csco::mc::sweep(plan, build_grid(args), vary);
    std::ostringstream out;
    ex::write_table_csv(table, out);
    deliver(out.str(), args.base.out);
    return 0;
}

// ---------------------------------------------------------------------------
// figure

struct FigureArgs {
    std::string id;
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> levels;
    std::string seed;
    std::optional<double> gate;
    std::string grid;
    unsigned workers = 1;
    std::string out = ".";
};

int run_figure_cmd(const FigureArgs& args) {
    const auto id = ex::parse_figure_id(args.id);
    if (!id) throw UsageError("unknown --id '" + args.id + "' (fig3..fig8)");

    ex::FigureOverrides overrides;
    overrides.trials = args.trials;
    if (args.levels) overrides.n_levels = static_cast<std::size_t>(*args.levels);
    if (!args.seed.empty()) overrides.seed = parse_seed(args.seed);
    overrides.gate = args.gate;
    overrides.workers = args.workers;
    if (!args.grid.empty()) {
        SweepArgs grid_args;
        grid_args.grid = args.grid;
        overrides.grid = build_grid(grid_args);
    }

    auto report = ex::run_figure(*id, overrides);
    report.artifacts = ex::emit(report, args.out);
    for (const auto& path : report.artifacts) {
        std::cout << "wrote " << path << '\n';
    }
    std::cout << ex::to_string(*id) << ": max|z| = " << fmt6(report.max_abs_z)
              << " (gate " << fmt6(report.gate) << "): "
              << (report.pass ? "PASS" : "FAIL") << '\n';
    return report.pass ? 0 : 3;
}

// ---------------------------------------------------------------------------
// patterns

struct PatternsArgs {
    std::optional<double> rate1, error1, rate2, error2;
    std::optional<std::uint64_t> levels;
    std::string format = "table";
};

int run_patterns(const PatternsArgs& args) {
    const double rate1 = require(args.rate1, "--rate1");
    const double rate2 = require(args.rate2, "--rate2");
    const double error1 = require(args.error1, "--error1");
    const double error2 = require(args.error2, "--error2");
    if (!(rate1 > 0) || !(rate2 > 0)) throw UsageError("rates must be > 0");
    if (error1 < 0 || error2 < 0) throw UsageError("errors must be >= 0");

    // rate is events per unit of the identifier, i.e. 1 / mean spacing.
    const double p1 = an::pair_degeneracy_prob(error1, 1.0 / rate1);
    const double p2 = an::pair_degeneracy_prob(error2, 1.0 / rate2);
    const double ambiguity = an::pattern_ambiguity(p1, p2);
    const double no_ambiguity = 1.0 - ambiguity;
    std::optional<double> exact;
    if (args.levels) {
        if (*args.levels < 2) throw UsageError("--levels must be >= 2");
        exact = an::prob_csco_two(p1, p2, static_cast<std::size_t>(*args.levels)).exact;
    }

    std::ostringstream out;
    if (args.format == "csv") {
        out << "p1,p2,no_ambiguity_asymptotic,no_ambiguity_exact,ambiguity\n";
        out << fmt6(p1) << ',' << fmt6(p2) << ',' << fmt6(no_ambiguity) << ','
            << (exact ? fmt6(*exact) : std::string{}) << ',' << fmt6(ambiguity)
            << '\n';
    } else {
        out << "p1 = " << fmt6(p1) << '\n';
        out << "p2 = " << fmt6(p2) << '\n';
        out << "no unidentifiable patterns (asymptotic) = " << fmt6(no_ambiguity)
            << '\n';
        if (exact) {
            out << "no unidentifiable patterns (exact, N = " << *args.levels
                << ") = " << fmt6(*exact) << '\n';
        }
        out << "at least one unidentifiable pattern = " << fmt6(ambiguity) << '\n';
    }
    std::cout << out.str();
    return 0;
}

// ---------------------------------------------------------------------------
// generate

struct GenerateArgs {
    std::uint64_t levels = 100;
    double spacing = 1.0;
    std::string model = "uniform";
    std::string seed = "12345";
    bool sorted = false;
    bool permuted = false;
    std::string out;
};

int run_generate(const GenerateArgs& args) {
    if (args.sorted && args.permuted) {
        throw UsageError("--sorted and --permuted are mutually exclusive");
    }
    if (args.levels < 1) throw UsageError("--levels must be >= 1");
    if (!(args.spacing > 0)) throw UsageError("--spacing must be > 0");
    csco::GeneratorConfig config;
    config.n_levels = static_cast<std::size_t>(args.levels);
    config.mean_spacing = args.spacing;
    config.model = parse_model(args.model);
    const csco::Seed seed{parse_seed(args.seed)};

    const std::vector<double>& values =
        args.permuted ? csco::generate_permuted(config, seed).values
                      : csco::generate_sorted(config, seed).values;
    std::ostringstream out;
    for (double v : values) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g\n", v);
        out << buf;
    }
    deliver(out.str(), args.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Degeneracy statistics of Poisson spectra under finite detector "
                 "resolution"};
    app.require_subcommand(1);

    PredictArgs predict_args;
    auto* predict = app.add_subcommand(
        "predict", "Evaluate the closed-form probabilities");
    predict->set_config("--config");
    predict->add_option("--quantity", predict_args.quantity,
                        "p|p_c|no_clusters|csco1|csco2|conjectures")
        ->required();
    predict->add_option("--delta1", predict_args.delta1, "detector error 1");
    predict->add_option("--delta2", predict_args.delta2, "detector error 2");
    predict->add_option("--spacing1", predict_args.spacing1, "mean spacing 1");
    predict->add_option("--spacing2", predict_args.spacing2, "mean spacing 2");
    predict->add_option("--levels", predict_args.levels, "spectrum length N");
    predict->add_option("--format", predict_args.format, "table|csv");

    EstimateArgs estimate_args;
    auto* estimate = app.add_subcommand(
        "estimate", "Monte Carlo estimate of one statistic");
    auto add_estimate_options = [](CLI::App* cmd, EstimateArgs& a) {
        cmd->set_config("--config");
        cmd->add_option("--kind", a.kind,
                        "pair|cluster|noclusters|pairperm|csco1|csco2")
            ->required();
        cmd->add_option("--levels", a.levels, "spectrum length N");
        cmd->add_option("--spacing", a.spacing, "mean level spacing");
        cmd->add_option("--spacing2", a.spacing2, "mean spacing, observable 2");
        cmd->add_option("--model", a.model, "uniform|exponential");
        cmd->add_option("--delta1", a.delta1, "detector error 1");
        cmd->add_option("--delta2", a.delta2, "detector error 2 (csco2)");
        cmd->add_option("--trials", a.trials, "Monte Carlo realizations");
        cmd->add_option("--seed", a.seed, "master seed (integer or 'random')");
        cmd->add_option("--workers", a.workers, "parallel workers (0 = auto)");
        cmd->add_option("--pooling", a.pooling, "pooled|pertrial");
        cmd->add_option("--out", a.out, "write output to file instead of stdout");
    };
    add_estimate_options(estimate, estimate_args);

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand(
        "sweep", "Monte Carlo sweep over a detector-error or length grid");
    add_estimate_options(sweep, sweep_args.base);
    sweep->add_option("--vary", sweep_args.vary, "delta|levels")->required();
    sweep->add_option("--from", sweep_args.from, "grid start");
    sweep->add_option("--to", sweep_args.to, "grid end");
    sweep->add_option("--steps", sweep_args.steps, "number of grid points");
    sweep->add_option("--grid", sweep_args.grid, "explicit comma-separated grid");

    FigureArgs figure_args;
    auto* figure = app.add_subcommand(
        "figure", "Reproduce a named experiment preset and emit CSV + plot");
    figure->set_config("--config");
    figure->add_option("--id", figure_args.id, "fig3..fig8")->required();
    figure->add_option("--trials", figure_args.trials, "Monte Carlo realizations");
    figure->add_option("--levels", figure_args.levels, "spectrum length N");
    figure->add_option("--seed", figure_args.seed, "master seed (integer or 'random')");
    figure->add_option("--gate", figure_args.gate, "max |z| accepted (default 4)");
    figure->add_option("--grid", figure_args.grid, "explicit comma-separated grid");
    figure->add_option("--workers", figure_args.workers, "parallel workers (0 = auto)");
    figure->add_option("--out", figure_args.out, "output directory (default .)");

    PatternsArgs patterns_args;
    auto* patterns = app.add_subcommand(
        "patterns", "Ambiguity odds when identifying patterns by two noisy "
                    "numeric identifiers");
    patterns->set_config("--config");
    patterns->add_option("--rate1", patterns_args.rate1,
                         "events per unit of identifier 1");
    patterns->add_option("--error1", patterns_args.error1,
                         "measurement error of identifier 1");
    patterns->add_option("--rate2", patterns_args.rate2,
                         "events per unit of identifier 2");
    patterns->add_option("--error2", patterns_args.error2,
                         "measurement error of identifier 2");
    patterns->add_option("--levels", patterns_args.levels,
                         "set size N for the exact finite-N value");
    patterns->add_option("--format", patterns_args.format, "table|csv");

    GenerateArgs generate_args;
    auto* generate = app.add_subcommand("generate", "Generate one spectrum");
    generate->set_config("--config");
    generate->add_option("--levels", generate_args.levels, "spectrum length N");
    generate->add_option("--spacing", generate_args.spacing, "mean level spacing");
    generate->add_option("--model", generate_args.model, "uniform|exponential");
    generate->add_option("--seed", generate_args.seed,
                         "master seed (integer or 'random')");
    generate->add_flag("--sorted", generate_args.sorted, "ascending order (default)");
    generate->add_flag("--permuted", generate_args.permuted, "state-index order");
    generate->add_option("--out", generate_args.out,
                         "write output to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (predict->parsed()) return run_predict(predict_args);
        if (estimate->parsed()) return run_estimate(estimate_args);
        if (sweep->parsed()) return run_sweep(sweep_args);
        if (figure->parsed()) return run_figure_cmd(figure_args);
        if (patterns->parsed()) return run_patterns(patterns_args);
        if (generate->parsed()) return run_generate(generate_args);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
