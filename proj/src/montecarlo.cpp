#include "csco/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "csco/analytics.hpp"

namespace csco::mc {

namespace {

bool per_realization(EstimatorKind kind) {
    return kind == EstimatorKind::NoClusters || kind == EstimatorKind::CscoSingle ||
           kind == EstimatorKind::CscoTwo;
}

std::uint64_t sites_per_trial(const TrialPlan& plan) {
    const std::size_t n = plan.config.n_levels;
    switch (plan.estimator) {
        case EstimatorKind::PairDegeneracySorted:
        case EstimatorKind::PairDegeneracyPermuted:
            return n - 1;
        case EstimatorKind::ClusterStart:
            return n - 3;
        case EstimatorKind::NoClusters:
        case EstimatorKind::CscoSingle:
        case EstimatorKind::CscoTwo:
            return 1;
    }
    return 0;
}

// Hits for one trial; at most sites_per_trial of them.
std::uint64_t run_trial(const TrialPlan& plan, std::uint64_t trial) {
    const Seed s1 = plan.seed.derive(trial, kStreamPrimary);
    switch (plan.estimator) {
        case EstimatorKind::PairDegeneracySorted: {
            const auto flags =
                degenerate_gap_flags(generate_sorted(plan.config, s1), plan.detector1);
            return static_cast<std::uint64_t>(
                std::count(flags.begin(), flags.end(), true));
        }
        case EstimatorKind::ClusterStart:
            return count_cluster_start_pattern(generate_sorted(plan.config, s1),
                                               plan.detector1)
                .hits;
        case EstimatorKind::NoClusters:
            return has_clusters(generate_sorted(plan.config, s1), plan.detector1) ? 0 : 1;
        case EstimatorKind::PairDegeneracyPermuted: {
            const auto spectrum = generate_permuted(plan.config, s1);
            std::uint64_t hits = 0;
            for (std::size_t k = 0; k + 1 < spectrum.size(); ++k) {
                if (std::abs(spectrum.values[k + 1] - spectrum.values[k]) <
                    plan.detector1.delta) {
                    ++hits;
                }
            }
            return hits;
        }
        case EstimatorKind::CscoSingle: {
            // Set property: no degenerate pair means every sorted gap >= delta.
            const auto g = gaps(generate_sorted(plan.config, s1));
            return std::all_of(g.begin(), g.end(),
                               [&](double gap) { return !(gap < plan.detector1.delta); })
                       ? 1
                       : 0;
        }
        case EstimatorKind::CscoTwo: {
            SpectrumPair pair;
            pair.first = generate_permuted(plan.config, s1);
            pair.second = generate_permuted(plan.config2 ? *plan.config2 : plan.config,
                                            plan.seed.derive(trial, kStreamSecondary));
            return is_csco_pair(pair, plan.detector1, plan.detector2).is_csco ? 1 : 0;
        }
    }
    return 0;
}

struct Counts {
    std::uint64_t hits = 0;
    std::uint64_t hits_sq = 0;  // sum of per-trial hits^2, for PerTrialMean
};

Counts accumulate(const TrialPlan& plan, std::uint64_t first, std::uint64_t last) {
    Counts counts;
    for (std::uint64_t t = first; t < last; ++t) {
        const std::uint64_t h = run_trial(plan, t);
        counts.hits += h;
        counts.hits_sq += h * h;
    }
    return counts;
}

Estimate estimate_from(const TrialPlan& plan, const Counts& counts) {
    const std::uint64_t sites = sites_per_trial(plan);
    Estimate est;
    est.n_trials = plan.n_trials;
    est.n_events = plan.n_trials * sites;
    est.mean = static_cast<double>(counts.hits) / static_cast<double>(est.n_events);
    if (plan.pooling == PoolingMode::PooledSites || plan.n_trials < 2) {
        est.std_error = std::sqrt(est.mean * (1.0 - est.mean) /
                                  static_cast<double>(est.n_events));
    } else {
        // Sample variance of the per-trial fractions.
        const double trials = static_cast<double>(plan.n_trials);
        const double mean_sq = static_cast<double>(counts.hits_sq) /
                               (static_cast<double>(sites) * static_cast<double>(sites));
        const double var =
            std::max(0.0, (mean_sq - trials * est.mean * est.mean) / (trials - 1.0));
        est.std_error = std::sqrt(var / trials);
    }
    return est;
}

// Closed-form columns matching the estimator, from the plan's detectors,
// spacings and length. Conjecture columns stay empty outside their domain.
void fill_analytics(SweepRow& row, const TrialPlan& plan) {
    namespace an = csco::analytics;
    const std::size_t n = plan.config.n_levels;
    const double p1 =
        an::pair_degeneracy_prob(plan.detector1.delta, plan.config.mean_spacing);
    switch (plan.estimator) {
        case EstimatorKind::PairDegeneracySorted:
            row.analytic_exact = p1;
            break;
        case EstimatorKind::ClusterStart:
            row.analytic_exact = an::cluster_start_prob(p1);
            break;
        case EstimatorKind::NoClusters: {
            const auto pred = an::prob_no_clusters(p1, n);
            row.analytic_exact = pred.exact;
            row.analytic_asymptotic = pred.asymptotic;
            try {
                const auto conj = an::prob_no_clusters_conjecture(p1, n);
                row.analytic_conjecture = conj.exact;
                row.analytic_conjecture_asymptotic = conj.asymptotic;
            } catch (const std::domain_error&) {
            }
            break;
        }
        case EstimatorKind::PairDegeneracyPermuted: {
            const auto pred = an::randomized_pair_degeneracy_prob(p1, n);
            row.analytic_exact = pred.exact;
            row.analytic_asymptotic = pred.asymptotic;
            break;
        }
        case EstimatorKind::CscoSingle: {
            const auto pred = an::prob_csco_single(p1, n);
            row.analytic_exact = pred.exact;
            row.analytic_asymptotic = pred.asymptotic;
            break;
        }
        case EstimatorKind::CscoTwo: {
            const GeneratorConfig& cfg2 = plan.config2 ? *plan.config2 : plan.config;
            const double p2 =
                an::pair_degeneracy_prob(plan.detector2.delta, cfg2.mean_spacing);
            const auto pred = an::prob_csco_two(p1, p2, n);
            row.analytic_exact = pred.exact;
            row.analytic_asymptotic = pred.asymptotic;
            try {
                const auto conj = an::prob_csco_two_conjecture(p1, p2, n);
                row.analytic_conjecture = conj.exact;
                row.analytic_conjecture_asymptotic = conj.asymptotic;
            } catch (const std::domain_error&) {
            }
            break;
        }
    }
}

}  // namespace

void validate(const TrialPlan& plan) {
    csco::validate(plan.config);
    if (plan.config2) {
        csco::validate(*plan.config2);
        if (plan.config2->n_levels != plan.config.n_levels) {
            throw std::invalid_argument("TrialPlan: spectra must have equal n_levels");
        }
    }
    if (plan.n_trials < 1) {
        throw std::invalid_argument("TrialPlan: n_trials must be >= 1");
    }
    if (!(plan.detector1.delta >= 0.0) || !(plan.detector2.delta >= 0.0)) {
        throw std::invalid_argument("TrialPlan: detector delta must be >= 0");
    }
    const std::size_t min_levels =
        plan.estimator == EstimatorKind::ClusterStart ? 4 : 2;
    if (plan.config.n_levels < min_levels) {
        throw std::invalid_argument("TrialPlan: spectrum too short for estimator");
    }
}

Interval wilson_interval(std::uint64_t hits, std::uint64_t events, double z) {
    if (events == 0) throw std::invalid_argument("wilson_interval: no events");
    const double n = static_cast<double>(events);
    const double m = static_cast<double>(hits) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (m + z2 / (2.0 * n)) / denom;
    const double half =
        z * std::sqrt(m * (1.0 - m) / n + z2 / (4.0 * n * n)) / denom;
    return Interval{std::max(0.0, center - half), std::min(1.0, center + half)};
}

Estimate run(const TrialPlan& plan) {
    validate(plan);
    unsigned workers = plan.workers;
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(
        std::min<std::uint64_t>(workers, plan.n_trials));

    Counts total;
    if (workers <= 1) {
        total = accumulate(plan, 0, plan.n_trials);
    } else {
        std::vector<Counts> partial(workers);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::uint64_t chunk = (plan.n_trials + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t first = std::min<std::uint64_t>(w * chunk, plan.n_trials);
            const std::uint64_t last =
                std::min<std::uint64_t>(first + chunk, plan.n_trials);
            pool.emplace_back(
                [&, first, last, w] { partial[w] = accumulate(plan, first, last); });
        }
        for (auto& th : pool) th.join();
        for (const auto& c : partial) {
            total.hits += c.hits;
            total.hits_sq += c.hits_sq;
        }
    }
    return estimate_from(plan, total);
}

SweepTable sweep(const TrialPlan& plan, const std::vector<double>& grid,
                 SweepVariable vary) {
    if (grid.empty()) {
        throw std::invalid_argument("sweep: empty grid");
    }
    double delta_ratio = 0.0;
    if (vary == SweepVariable::DetectorError &&
        plan.estimator == EstimatorKind::CscoTwo) {
        if (!(plan.detector1.delta > 0.0)) {
            throw std::invalid_argument(
                "sweep: CscoTwo detector-error sweep needs detector1.delta > 0 "
                "to fix the delta ratio");
        }
        delta_ratio = plan.detector2.delta / plan.detector1.delta;
    }

    std::vector<double> xs = grid;
    std::sort(xs.begin(), xs.end());

    SweepTable table;
    table.rows.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        TrialPlan row_plan = plan;
        row_plan.seed = plan.seed.derive(i, kStreamRow);
        const double x = xs[i];
        if (vary == SweepVariable::DetectorError) {
            if (!(x >= 0.0)) {
                throw std::invalid_argument("sweep: detector error must be >= 0");
            }
            row_plan.detector1.delta = x;
            if (plan.estimator == EstimatorKind::CscoTwo) {
                row_plan.detector2.delta = x * delta_ratio;
            }
        } else {
            const double rounded = std::round(x);
            if (!(std::abs(x - rounded) < 1e-9) || rounded < 2.0) {
                throw std::invalid_argument(
                    "sweep: spectrum length must be an integer >= 2");
            }
            row_plan.config.n_levels = static_cast<std::size_t>(rounded);
            if (row_plan.config2) row_plan.config2->n_levels = row_plan.config.n_levels;
        }

        SweepRow row;
        row.x = x;
        row.mc = run(row_plan);
        fill_analytics(row, row_plan);
        table.rows.push_back(std::move(row));
    }
    return table;
}

ZScoreReport zscore_report(const SweepTable& table) {
    ZScoreReport report;
    report.rows.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        ZScoreRow zr;
        zr.x = row.x;
        if (row.mc.std_error > 0.0 && row.analytic_exact) {
            zr.z = (row.mc.mean - *row.analytic_exact) / row.mc.std_error;
            report.max_abs_z = std::max(report.max_abs_z, std::abs(zr.z));
        } else {
            zr.excluded = true;
            ++report.n_excluded;
        }
        report.rows.push_back(zr);
    }
    return report;
}

}  // namespace csco::mc
