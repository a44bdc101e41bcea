#include "csco/experiments.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace csco::experiments {

namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string fmt(const std::optional<double>& v) {
    return v ? fmt(*v) : std::string{};
}

struct Preset {
    mc::TrialPlan plan;
    mc::SweepVariable vary = mc::SweepVariable::DetectorError;
    std::vector<double> grid;
    // Companion sweeps run on the same grid with their own plan.
    std::vector<std::pair<std::string, mc::TrialPlan>> companions;
};

Preset make_preset(FigureId id) {
    Preset preset;
    mc::TrialPlan& plan = preset.plan;
    plan.config.n_levels = 100;
    plan.config.mean_spacing = 1.0;
    plan.n_trials = 1000;
    plan.seed = Seed{kDefaultMasterSeed};
    preset.grid = default_delta_grid();

    switch (id) {
        case FigureId::Fig3:
            plan.estimator = mc::EstimatorKind::PairDegeneracySorted;
            break;
        case FigureId::Fig4:
            plan.estimator = mc::EstimatorKind::ClusterStart;
            break;
        case FigureId::Fig5:
            plan.estimator = mc::EstimatorKind::NoClusters;
            break;
        case FigureId::Fig6:
            plan.estimator = mc::EstimatorKind::PairDegeneracyPermuted;
            break;
        case FigureId::Fig7: {
            plan.estimator = mc::EstimatorKind::CscoSingle;
            // Companion two-observable curve with delta1 = 2 * delta2.
            mc::TrialPlan pair_plan = plan;
            pair_plan.estimator = mc::EstimatorKind::CscoTwo;
            pair_plan.detector1.delta = 1.0;
            pair_plan.detector2.delta = 0.5;
            preset.companions.emplace_back("pair", pair_plan);
            break;
        }
        case FigureId::Fig8:
            plan.estimator = mc::EstimatorKind::CscoTwo;
            plan.detector1.delta = 0.1;
            plan.detector2.delta = 0.05;
            preset.vary = mc::SweepVariable::SpectrumLength;
            preset.grid = default_length_grid();
            break;
    }
    return preset;
}

void write_plot_script(const FigureReport& report,
                       const std::vector<std::string>& csv_names, std::ostream& out) {
    const bool vs_length = report.id == FigureId::Fig8;
    out << "# gnuplot script; run from the directory holding the CSVs\n";
    out << "set datafile separator \",\"\n";
    out << "set xlabel \"" << (vs_length ? "spectrum length N" : "detector error")
        << "\"\n";
    out << "set ylabel \"probability\"\n";
    out << "set key left top\n";
    if (vs_length) out << "set logscale x\n";
    out << "plot ";
    for (std::size_t t = 0; t < report.tables.size(); ++t) {
        const std::string& csv = csv_names[t];
        const std::string tag =
            report.tables[t].label.empty() ? std::string{} : " (" + report.tables[t].label + ")";
        if (t > 0) out << ", \\\n     ";
        out << "\"" << csv << "\" using 1:2 with lines lc rgb \"green\" title "
            << "\"prediction" << tag << "\"";
        const auto& first_row = report.tables[t].table.rows.front();
        if (first_row.analytic_conjecture ||
            report.tables[t].table.rows.back().analytic_conjecture) {
            out << ", \\\n     \"" << csv
                << "\" using 1:4 with lines lc rgb \"blue\" title \"combinatorial model"
                << tag << "\"";
            out << ", \\\n     \"" << csv
                << "\" using 1:5 with lines lc rgb \"purple\" title "
                << "\"combinatorial asymptotic" << tag << "\"";
        }
        out << ", \\\n     \"" << csv
            << "\" using 1:6:7 with yerrorbars pt 7 lc rgb \"red\" title "
            << "\"Monte Carlo" << tag << "\"";
    }
    out << "\n";
}

}  // namespace

std::optional<FigureId> parse_figure_id(std::string_view name) {
    if (name == "fig3") return FigureId::Fig3;
    if (name == "fig4") return FigureId::Fig4;
    if (name == "fig5") return FigureId::Fig5;
    if (name == "fig6") return FigureId::Fig6;
    if (name == "fig7") return FigureId::Fig7;
    if (name == "fig8") return FigureId::Fig8;
    return std::nullopt;
}

std::string to_string(FigureId id) {
    switch (id) {
        case FigureId::Fig3: return "fig3";
        case FigureId::Fig4: return "fig4";
        case FigureId::Fig5: return "fig5";
        case FigureId::Fig6: return "fig6";
        case FigureId::Fig7: return "fig7";
        case FigureId::Fig8: return "fig8";
    }
    return "fig?";
}

std::vector<double> default_delta_grid() {
    std::vector<double> grid(26);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid[i] = 0.5 * static_cast<double>(i) / static_cast<double>(grid.size() - 1);
    }
    return grid;
}

std::vector<double> default_length_grid() {
    return {50, 100, 200, 400, 800};
}

FigureReport run_figure(FigureId id, const FigureOverrides& overrides) {
    Preset preset = make_preset(id);
    auto apply = [&](mc::TrialPlan& plan) {
        if (overrides.n_levels) plan.config.n_levels = *overrides.n_levels;
        if (overrides.trials) plan.n_trials = *overrides.trials;
        if (overrides.seed) plan.seed = Seed{*overrides.seed};
        plan.workers = overrides.workers;
    };
    apply(preset.plan);
    if (overrides.grid) preset.grid = *overrides.grid;

    FigureReport report;
    report.id = id;
    report.gate = overrides.gate.value_or(kDefaultGate);
    report.tables.push_back(
        NamedTable{"", mc::sweep(preset.plan, preset.grid, preset.vary)});
    for (auto& [label, plan] : preset.companions) {
        apply(plan);
        report.tables.push_back(NamedTable{label, mc::sweep(plan, preset.grid, preset.vary)});
    }
    report.max_abs_z = mc::zscore_report(report.tables.front().table).max_abs_z;
    report.pass = report.max_abs_z <= report.gate;
    return report;
}

void write_table_csv(const mc::SweepTable& table, std::ostream& out) {
    out << "x,analytic_exact,analytic_asymptotic,analytic_conjecture,"
           "analytic_conjecture_asymptotic,mc_mean,mc_stderr,n_trials,n_events\n";
    for (const auto& row : table.rows) {
        out << fmt(row.x) << ',' << fmt(row.analytic_exact) << ','
            << fmt(row.analytic_asymptotic) << ',' << fmt(row.analytic_conjecture)
            << ',' << fmt(row.analytic_conjecture_asymptotic) << ','
            << fmt(row.mc.mean) << ',' << fmt(row.mc.std_error) << ','
            << row.mc.n_trials << ',' << row.mc.n_events << '\n';
    }
}

std::vector<std::string> emit(const FigureReport& report, const std::string& out_dir) {
    if (report.tables.empty()) {
        throw std::invalid_argument("emit: report holds no tables");
    }
    for (const auto& named : report.tables) {
        if (named.table.rows.empty()) {
            throw std::invalid_argument("emit: refusing to write an empty sweep table");
        }
    }

    const fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw std::runtime_error("emit: cannot create directory " + dir.string() +
                                 ": " + ec.message());
    }

    const std::string base = to_string(report.id);
    std::vector<std::string> csv_names;
    std::vector<std::string> written;
    for (const auto& named : report.tables) {
        const std::string name =
            named.label.empty() ? base + ".csv" : base + "_" + named.label + ".csv";
        csv_names.push_back(name);
        const fs::path path = dir / name;
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("emit: cannot write " + path.string());
        }
        write_table_csv(named.table, out);
        if (!out.flush()) {
            throw std::runtime_error("emit: write failed for " + path.string());
        }
        written.push_back(path.string());
    }

    const fs::path plot_path = dir / (base + ".plot");
    std::ofstream plot(plot_path, std::ios::binary | std::ios::trunc);
    if (!plot) {
        throw std::runtime_error("emit: cannot write " + plot_path.string());
    }
    write_plot_script(report, csv_names, plot);
    if (!plot.flush()) {
        throw std::runtime_error("emit: write failed for " + plot_path.string());
    }
    written.push_back(plot_path.string());
    return written;
}

}  // namespace csco::experiments
