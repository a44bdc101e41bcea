#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "csco/montecarlo.hpp"

namespace csco::experiments {

// Named presets reproducing the standard sweep experiments end to end.
// fig3: sorted consecutive-pair degeneracy vs detector error
// fig4: cluster-start pattern frequency vs detector error
// fig5: no-cluster probability vs detector error, with the combinatorial
//       model and its asymptotic as extra curves
// fig6: state-index-order consecutive-pair degeneracy vs detector error
// fig7: single-observable identification probability vs detector error,
//       with a companion two-observable curve at delta1 = 2 * delta2
// fig8: two-observable identification probability vs spectrum length at
//       delta1 = 0.1, delta2 = 0.05
enum class FigureId { Fig3, Fig4, Fig5, Fig6, Fig7, Fig8 };

// "fig3".."fig8"; empty optional for anything else.
std::optional<FigureId> parse_figure_id(std::string_view name);
std::string to_string(FigureId id);

inline constexpr std::uint64_t kDefaultMasterSeed = 12345;
inline constexpr double kDefaultGate = 4.0;

// 26 evenly spaced detector errors on [0, 0.5] (in units of the spacing).
std::vector<double> default_delta_grid();
// Spectrum lengths {50, 100, 200, 400, 800}.
std::vector<double> default_length_grid();

struct FigureOverrides {
    std::optional<std::size_t> n_levels;
    std::optional<std::uint64_t> trials;
    std::optional<std::vector<double>> grid;
    std::optional<std::uint64_t> seed;
    std::optional<double> gate;
    unsigned workers = 1;
};

struct NamedTable {
    std::string label;  // empty for the primary table
    mc::SweepTable table;
};

struct FigureReport {
    FigureId id = FigureId::Fig3;
    std::vector<NamedTable> tables;  // primary first
    double max_abs_z = 0.0;          // over the primary table
    double gate = kDefaultGate;
    bool pass = false;
    std::vector<std::string> artifacts;  // filled by emit()
};

FigureReport run_figure(FigureId id, const FigureOverrides& overrides = {});

// Writes <id>.csv (plus <id>_<label>.csv per companion table) and <id>.plot
// under out_dir, creating it if needed. Validates every table before any
// file is touched. Returns the paths written.
std::vector<std::string> emit(const FigureReport& report, const std::string& out_dir);

// Shared CSV schema:
// x,analytic_exact,analytic_asymptotic,analytic_conjecture,
// analytic_conjecture_asymptotic,mc_mean,mc_stderr,n_trials,n_events
// with empty cells for absent analytic columns.
void write_table_csv(const mc::SweepTable& table, std::ostream& out);

}  // namespace csco::experiments
