#pragma once

#include <cstddef>
#include <cstdint>

namespace csco::analytics {

// Pair bookkeeping for an N-level spectrum.
struct PairCounts {
    std::size_t n_levels = 0;          // N
    std::size_t consecutive_pairs = 0; // N - 1
    std::uint64_t all_pairs = 0;       // N (N - 1) / 2
    double expected_degenerate = 0.0;  // p * (N - 1), real-valued
};

PairCounts pair_counts(std::size_t n_levels, double p);

// Finite-N value of a closed form together with its large-N limit.
struct Prediction {
    double exact = 0.0;
    double asymptotic = 0.0;
};

// Factorials of non-integer pair counts: evaluate the Gamma extension as-is,
// or round to the nearest integer first (for cross-checks against integer
// combinatorics).
enum class Rounding {
    Continuous,
    NearestInteger,
};

// Probability that a consecutive pair of the sorted spectrum is degenerate:
// p = 1 - exp(-delta / mean_spacing). Throws if mean_spacing <= 0 or delta < 0.
double pair_degeneracy_prob(double delta, double mean_spacing);

// Mean number of degenerate consecutive pairs, p * (N - 1).
double expected_degenerate_pairs(double p, std::size_t n_levels);

// Probability that a given interior gap starts a cluster of degenerate
// pairs: (1 - p) * p^2.
double cluster_start_prob(double p);

// Probability that no degenerate pairs share an element anywhere in the
// spectrum. exact: (1 - p_c)^(N-1); asymptotic: exp(-p^2 N).
Prediction prob_no_clusters(double p, std::size_t n_levels);

// Combinatorial model of the same probability: Mbar pairs drawn uniformly
// from the N(N-1)/2 possible pairs are pairwise disjoint,
//   N! (Np - Mbar)! / (2^Mbar Np! (N - 2 Mbar)!)      with Np = N(N-1)/2,
// evaluated in log space. asymptotic: exp(-2 p^2 N). Throws
// std::domain_error once N - 2 Mbar <= -1.
Prediction prob_no_clusters_conjecture(double p, std::size_t n_levels,
                                       Rounding rounding = Rounding::Continuous);

// Probability that a consecutive pair of the spectrum in state-index order
// is degenerate. exact: 2p/(N-1); asymptotic: 2p/N.
Prediction randomized_pair_degeneracy_prob(double p, std::size_t n_levels);

// Probability that one observable alone identifies the state: no degenerate
// pair at all. exact: (1-p)^(N-1); asymptotic: exp(-p N).
Prediction prob_csco_single(double p, std::size_t n_levels);

// Probability that two independently permuted observables identify the
// state: no index pair degenerate under both detectors.
// exact: (1 - pr1 pr2)^(N(N-1)/2) with pri = 2 pi / (N-1);
// asymptotic: exp(-2 p1 p2), independent of N.
Prediction prob_csco_two(double p1, double p2, std::size_t n_levels);

// Combinatorial model of the same probability:
//   (Np - M1)! (Np - M2)! / (Np! (Np - M1 - M2)!)     with Mi = pi (N-1),
// evaluated in log space. asymptotic: exp(-2 p1 p2). Throws
// std::domain_error once Np - M1 - M2 <= -1.
Prediction prob_csco_two_conjecture(double p1, double p2, std::size_t n_levels,
                                    Rounding rounding = Rounding::Continuous);

// Probability that at least one pattern in a large set is unidentifiable by
// two error-limited identifiers: 1 - exp(-2 p1 p2). Symmetric in (p1, p2).
double pattern_ambiguity(double p1, double p2);

}  // namespace csco::analytics
