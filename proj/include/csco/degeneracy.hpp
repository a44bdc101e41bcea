#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "csco/spectra.hpp"

namespace csco {

// Detection resolution: two values closer than `delta` cannot be told apart.
struct DetectorModel {
    double delta = 0.0;
};

// Pair of state indices (1-based, n1 < n2) whose values are degenerate under
// the associated detector: |I[n1] - I[n2]| < delta, strictly.
struct DegeneratePair {
    std::size_t n1 = 0;
    std::size_t n2 = 0;

    auto operator<=>(const DegeneratePair&) const = default;
};

// Outcome of a CSCO check. is_csco holds exactly when `witnesses` is empty;
// otherwise `witnesses` lists every unresolvable index pair.
struct CscoVerdict {
    bool is_csco = true;
    std::vector<DegeneratePair> witnesses;
};

// flag[k] = (values[k+1] - values[k] < delta). Throws for N < 2.
std::vector<bool> degenerate_gap_flags(const SortedSpectrum& spectrum,
                                       const DetectorModel& det);

// All index pairs (n1 < n2, 1-based) with |values[n1] - values[n2]| < delta,
// in lexicographic order. Sorted-window scan, near-linear for small delta.
std::vector<DegeneratePair> enumerate_degenerate_pairs(const PermutedSpectrum& spectrum,
                                                       const DetectorModel& det);

// True iff two consecutive sorted gaps are both below delta, i.e. some
// degenerate pairs share an element. False for N < 3.
bool has_clusters(const SortedSpectrum& spectrum, const DetectorModel& det);

struct ClusterStartCount {
    std::uint64_t hits = 0;   // interior gaps matching (wide, narrow, narrow)
    std::uint64_t sites = 0;  // interior gaps with both neighbors present
};

// Counts interior sites whose gap pattern marks the left end of a cluster:
// previous gap > delta, this gap < delta, next gap < delta. Sites are the
// N-3 gaps with a neighbor on each side; the spectrum edges are not counted.
// Throws for N < 4.
ClusterStartCount count_cluster_start_pattern(const SortedSpectrum& spectrum,
                                              const DetectorModel& det);

// A single observable identifies the state iff it has no degenerate pair at
// all; equivalently every consecutive sorted gap is >= delta.
CscoVerdict is_csco_single(const PermutedSpectrum& spectrum, const DetectorModel& det);

// Two observables identify the state iff no index pair is degenerate under
// both detectors at once. Throws if the spectra differ in length.
CscoVerdict is_csco_pair(const SpectrumPair& pair, const DetectorModel& det1,
                         const DetectorModel& det2);

}  // namespace csco
