#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace csco {

// Spectrum generation model.
//
// UniformInterval: N independent uniform draws on [0, (N+1)*mean_spacing].
// The draw order models the state-index (permuted) order; sorting yields the
// monotonic spectrum. ExponentialGaps: cumulative sums of N independent
// exponential gaps with mean `mean_spacing`, the first sum acting as the
// offset of the lowest level; the permuted order is a uniform random shuffle.
// Both produce the same consecutive-gap statistics at large N.
enum class SpectrumModel {
    UniformInterval,
    ExponentialGaps,
};

struct GeneratorConfig {
    std::size_t n_levels = 100;  // N
    double mean_spacing = 1.0;   // mean gap between consecutive sorted levels
    SpectrumModel model = SpectrumModel::UniformInterval;
};

// Throws std::invalid_argument on n_levels < 1 or mean_spacing <= 0.
void validate(const GeneratorConfig& config);

// Stateless, counter-based seed derivation. Identical (master, index, stream)
// always yields identical draws, independent of evaluation order, so trials
// can run in parallel or be replayed individually.
struct Seed {
    std::uint64_t master = 0;

    [[nodiscard]] Seed derive(std::uint64_t index, std::uint64_t stream_tag) const;
};

// Stream tags used by the Monte Carlo harness. Anything generated from the
// same master seed but a different tag is an independent stream.
inline constexpr std::uint64_t kStreamPrimary = 1;
inline constexpr std::uint64_t kStreamSecondary = 2;
inline constexpr std::uint64_t kStreamRow = 3;

// Spectrum listed in state-index order n = 1..N: the index carries no
// information about the magnitude of the value.
struct PermutedSpectrum {
    std::vector<double> values;

    [[nodiscard]] std::size_t size() const { return values.size(); }
};

// Monotonically increasing spectrum. Generated spectra are strictly
// increasing: exact ties (possible only in finite precision) are broken at
// generation time by nudging the later draw up one representable step.
struct SortedSpectrum {
    std::vector<double> values;

    [[nodiscard]] std::size_t size() const { return values.size(); }
};

// Two independently permuted spectra over the same state indices.
struct SpectrumPair {
    PermutedSpectrum first;
    PermutedSpectrum second;
};

SortedSpectrum generate_sorted(const GeneratorConfig& config, Seed seed);
PermutedSpectrum generate_permuted(const GeneratorConfig& config, Seed seed);

// Ascending rearrangement; stable for exact ties.
SortedSpectrum sort_spectrum(const PermutedSpectrum& spectrum);

// Consecutive differences values[k+1] - values[k].
// Throws std::invalid_argument for spectra with fewer than 2 levels.
std::vector<double> gaps(const SortedSpectrum& spectrum);

}  // namespace csco
