#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "csco/degeneracy.hpp"
#include "csco/spectra.hpp"

namespace csco::mc {

// One estimator per reproduced statistic. The first three act on the sorted
// spectrum, the rest on the state-index order; NoClusters, CscoSingle and
// CscoTwo are per-realization predicates, the others pool per-site events.
enum class EstimatorKind {
    PairDegeneracySorted,   // consecutive sorted gap below delta
    ClusterStart,           // interior gap pattern (wide, narrow, narrow)
    NoClusters,             // realization has no two adjacent narrow gaps
    PairDegeneracyPermuted, // consecutive state-index pair degenerate
    CscoSingle,             // realization has no degenerate pair at all
    CscoTwo,                // no pair degenerate under both detectors
};

// Pooled binomial counting over all sites of all trials (the default, with
// the tighter stderr), or mean of per-trial fractions as a cross-check.
// Both yield the same mean; only the standard error differs.
enum class PoolingMode {
    PooledSites,
    PerTrialMean,
};

struct TrialPlan {
    EstimatorKind estimator = EstimatorKind::PairDegeneracySorted;
    GeneratorConfig config{};
    // Second observable for CscoTwo; defaults to `config`. Must have the
    // same n_levels.
    std::optional<GeneratorConfig> config2;
    DetectorModel detector1{};
    DetectorModel detector2{};
    std::uint64_t n_trials = 1000;
    Seed seed{};
    unsigned workers = 1;  // 0 = hardware concurrency
    PoolingMode pooling = PoolingMode::PooledSites;
};

void validate(const TrialPlan& plan);

// Monte Carlo proportion. n_events is the binomial denominator: trials for
// per-realization predicates, trials * sites for pooled per-site counts.
struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n_trials = 0;
    std::uint64_t n_events = 0;
};

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};

// Wilson score interval; better behaved than the Wald bar when the mean
// sits near 0 or 1.
Interval wilson_interval(std::uint64_t hits, std::uint64_t events, double z);

// Runs the plan. Deterministic in the master seed for any worker count:
// trial t draws from seed.derive(t, stream) and the reduction sums integer
// counts, so partitioning cannot change the result.
Estimate run(const TrialPlan& plan);

struct SweepRow {
    double x = 0.0;
    std::optional<double> analytic_exact;
    std::optional<double> analytic_asymptotic;
    std::optional<double> analytic_conjecture;
    std::optional<double> analytic_conjecture_asymptotic;
    Estimate mc;
};

struct SweepTable {
    std::vector<SweepRow> rows;
};

enum class SweepVariable {
    DetectorError,
    SpectrumLength,
};

// One run() per grid value, each with a seed derived from (master seed, row
// index), plus the matching closed forms. For DetectorError the grid sets
// detector1 and detector2 keeps its delta ratio to detector1 fixed; for
// SpectrumLength grid values must be integers >= 2.
SweepTable sweep(const TrialPlan& plan, const std::vector<double>& grid,
                 SweepVariable vary);

struct ZScoreRow {
    double x = 0.0;
    double z = 0.0;
    bool excluded = false;  // stderr was zero; z not defined
};

struct ZScoreReport {
    std::vector<ZScoreRow> rows;
    double max_abs_z = 0.0;
    std::size_t n_excluded = 0;
};

// z = (mc.mean - analytic_exact) / mc.std_error per row; rows with zero
// stderr (mean pinned at 0 or 1) are flagged and excluded from max_abs_z.
ZScoreReport zscore_report(const SweepTable& table);

}  // namespace csco::mc
