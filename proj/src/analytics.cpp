#include "csco/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace csco::analytics {

namespace {

constexpr double kLn2 = 0.6931471805599453;

void check_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
    }
}

void check_levels(std::size_t n_levels) {
    if (n_levels < 2) {
        throw std::invalid_argument("n_levels must be >= 2");
    }
}

double all_pairs_of(std::size_t n) {
    return 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
}

double round_if(double m, Rounding rounding) {
    return rounding == Rounding::NearestInteger ? std::round(m) : m;
}

// log Gamma(x + 1), the continuous factorial.
double log_factorial(double x) {
    return std::lgamma(x + 1.0);
}

}  // namespace

PairCounts pair_counts(std::size_t n_levels, double p) {
    check_levels(n_levels);
    check_probability(p, "p");
    PairCounts counts;
    counts.n_levels = n_levels;
    counts.consecutive_pairs = n_levels - 1;
    counts.all_pairs = static_cast<std::uint64_t>(n_levels) * (n_levels - 1) / 2;
    counts.expected_degenerate = p * static_cast<double>(n_levels - 1);
    return counts;
}

double pair_degeneracy_prob(double delta, double mean_spacing) {
    if (!(mean_spacing > 0.0)) {
        throw std::invalid_argument("mean_spacing must be > 0");
    }
    if (!(delta >= 0.0)) {
        throw std::invalid_argument("delta must be >= 0");
    }
    return -std::expm1(-delta / mean_spacing);
}

double expected_degenerate_pairs(double p, std::size_t n_levels) {
    check_probability(p, "p");
    check_levels(n_levels);
    return p * static_cast<double>(n_levels - 1);
}

double cluster_start_prob(double p) {
    check_probability(p, "p");
    return (1.0 - p) * p * p;
}

Prediction prob_no_clusters(double p, std::size_t n_levels) {
    check_probability(p, "p");
    check_levels(n_levels);
    const double pc = cluster_start_prob(p);
    const double n = static_cast<double>(n_levels);
    Prediction out;
    out.exact = std::exp((n - 1.0) * std::log1p(-pc));
    out.asymptotic = std::exp(-p * p * n);
    return out;
}

Prediction prob_no_clusters_conjecture(double p, std::size_t n_levels,
                                       Rounding rounding) {
    check_probability(p, "p");
    check_levels(n_levels);
    const double n = static_cast<double>(n_levels);
    const double np = all_pairs_of(n_levels);
    const double m = round_if(p * (n - 1.0), rounding);
    if (!(n - 2.0 * m > -1.0)) {
        throw std::domain_error("conjecture formula outside domain: N - 2*Mbar <= -1");
    }
    Prediction out;
    out.exact = std::exp(log_factorial(n) + log_factorial(np - m) - m * kLn2 -
                         log_factorial(np) - log_factorial(n - 2.0 * m));
    out.asymptotic = std::exp(-2.0 * p * p * n);
    return out;
}

Prediction randomized_pair_degeneracy_prob(double p, std::size_t n_levels) {
    check_probability(p, "p");
    check_levels(n_levels);
    const double n = static_cast<double>(n_levels);
    Prediction out;
    out.exact = std::min(1.0, 2.0 * p / (n - 1.0));
    out.asymptotic = std::min(1.0, 2.0 * p / n);
    return out;
}

Prediction prob_csco_single(double p, std::size_t n_levels) {
    check_probability(p, "p");
    check_levels(n_levels);
    const double n = static_cast<double>(n_levels);
    Prediction out;
    out.exact = p < 1.0 ? std::exp((n - 1.0) * std::log1p(-p)) : 0.0;
    out.asymptotic = std::exp(-p * n);
    return out;
}

Prediction prob_csco_two(double p1, double p2, std::size_t n_levels) {
    check_probability(p1, "p1");
    check_probability(p2, "p2");
    check_levels(n_levels);
    const double q = randomized_pair_degeneracy_prob(p1, n_levels).exact *
                     randomized_pair_degeneracy_prob(p2, n_levels).exact;
    Prediction out;
    out.exact = q < 1.0 ? std::exp(all_pairs_of(n_levels) * std::log1p(-q)) : 0.0;
    out.asymptotic = std::exp(-2.0 * p1 * p2);
    return out;
}

Prediction prob_csco_two_conjecture(double p1, double p2, std::size_t n_levels,
                                    Rounding rounding) {
    check_probability(p1, "p1");
    check_probability(p2, "p2");
    check_levels(n_levels);
    const double n = static_cast<double>(n_levels);
    const double np = all_pairs_of(n_levels);
    const double m1 = round_if(p1 * (n - 1.0), rounding);
    const double m2 = round_if(p2 * (n - 1.0), rounding);
    if (!(np - m1 - m2 > -1.0)) {
        throw std::domain_error(
            "conjecture formula outside domain: Np - M1 - M2 <= -1");
    }
    Prediction out;
    out.exact = std::exp(log_factorial(np - m1) + log_factorial(np - m2) -
                         log_factorial(np) - log_factorial(np - m1 - m2));
    out.asymptotic = std::exp(-2.0 * p1 * p2);
    return out;
}

double pattern_ambiguity(double p1, double p2) {
    check_probability(p1, "p1");
    check_probability(p2, "p2");
    return -std::expm1(-2.0 * p1 * p2);
}

}  // namespace csco::analytics
