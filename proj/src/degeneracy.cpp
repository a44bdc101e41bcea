#include "csco/degeneracy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace csco {

namespace {

// Indices of `values` sorted by value; the workhorse for the window scans.
std::vector<std::size_t> value_order(const std::vector<double>& values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    return order;
}

DegeneratePair make_pair_1based(std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    return DegeneratePair{a + 1, b + 1};
}

}  // namespace

std::vector<bool> degenerate_gap_flags(const SortedSpectrum& spectrum,
                                       const DetectorModel& det) {
    const auto g = gaps(spectrum);  // throws for N < 2
    std::vector<bool> flags(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) flags[k] = g[k] < det.delta;
    return flags;
}

std::vector<DegeneratePair> enumerate_degenerate_pairs(const PermutedSpectrum& spectrum,
                                                       const DetectorModel& det) {
    const auto& v = spectrum.values;
    std::vector<DegeneratePair> pairs;
    if (v.size() < 2 || det.delta <= 0.0) return pairs;

    const auto order = value_order(v);
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (std::size_t j = i + 1; j < order.size(); ++j) {
            if (!(v[order[j]] - v[order[i]] < det.delta)) break;
            pairs.push_back(make_pair_1based(order[i], order[j]));
        }
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

bool has_clusters(const SortedSpectrum& spectrum, const DetectorModel& det) {
    if (spectrum.size() < 3) return false;
    const auto flags = degenerate_gap_flags(spectrum, det);
    for (std::size_t k = 0; k + 1 < flags.size(); ++k) {
        if (flags[k] && flags[k + 1]) return true;
    }
    return false;
}

ClusterStartCount count_cluster_start_pattern(const SortedSpectrum& spectrum,
                                              const DetectorModel& det) {
    if (spectrum.size() < 4) {
        throw std::invalid_argument(
            "count_cluster_start_pattern: need at least 4 levels");
    }
    const auto g = gaps(spectrum);
    ClusterStartCount count;
    count.sites = g.size() - 2;
    for (std::size_t k = 1; k + 1 < g.size(); ++k) {
        if (g[k - 1] > det.delta && g[k] < det.delta && g[k + 1] < det.delta) {
            ++count.hits;
        }
    }
    return count;
}

CscoVerdict is_csco_single(const PermutedSpectrum& spectrum, const DetectorModel& det) {
    CscoVerdict verdict;
    verdict.witnesses = enumerate_degenerate_pairs(spectrum, det);
    verdict.is_csco = verdict.witnesses.empty();
    return verdict;
}

CscoVerdict is_csco_pair(const SpectrumPair& pair, const DetectorModel& det1,
                         const DetectorModel& det2) {
    if (pair.first.size() != pair.second.size()) {
        throw std::invalid_argument("is_csco_pair: spectra differ in length");
    }
    CscoVerdict verdict;
    const auto& v2 = pair.second.values;
    for (const auto& p : enumerate_degenerate_pairs(pair.first, det1)) {
        if (std::abs(v2[p.n1 - 1] - v2[p.n2 - 1]) < det2.delta) {
            verdict.witnesses.push_back(p);
        }
    }
    verdict.is_csco = verdict.witnesses.empty();
    return verdict;
}

}  // namespace csco
