#include "csco/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace csco {

namespace {

// SplitMix64 finalizer; full-avalanche 64-bit mixer.
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::mt19937_64 make_engine(Seed seed) {
    return std::mt19937_64(mix64(seed.master));
}

// Uniform double in [0, 1) from the top 53 bits of the engine output.
// <random> distributions are implementation-defined; this is not.
double uniform01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Unbiased integer in [0, n) by rejection.
std::uint64_t bounded(std::mt19937_64& eng, std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
        const std::uint64_t r = eng();
        if (r >= threshold) return r % n;
    }
}

double bump_up(double x) {
    return std::nextafter(x, std::numeric_limits<double>::infinity());
}

// Breaks exact ties in `values` by bumping the later draw one representable
// step up, cascading if needed. Returns the index order that sorts `values`
// ascending (ties resolved by draw index, so the bump hits the later draw).
std::vector<std::size_t> break_ties_and_rank(std::vector<double>& values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (values[a] != values[b]) return values[a] < values[b];
        return a < b;
    });
    for (std::size_t k = 1; k < order.size(); ++k) {
        double& cur = values[order[k]];
        const double prev = values[order[k - 1]];
        if (cur <= prev) cur = bump_up(prev);
    }
    return order;
}

std::vector<double> uniform_draws(const GeneratorConfig& config, std::mt19937_64& eng) {
    const double span = static_cast<double>(config.n_levels + 1) * config.mean_spacing;
    std::vector<double> values(config.n_levels);
    for (double& v : values) v = uniform01(eng) * span;
    return values;
}

// Cumulative exponential gaps; the first draw doubles as the offset of the
// lowest level, so the result is already ascending. Zero-width gaps (a
// possible uniform01() == 0) are widened to one representable step.
std::vector<double> exponential_levels(const GeneratorConfig& config, std::mt19937_64& eng) {
    std::vector<double> values(config.n_levels);
    double level = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        level -= config.mean_spacing * std::log(1.0 - uniform01(eng));
        if (k > 0 && level <= values[k - 1]) level = bump_up(values[k - 1]);
        values[k] = level;
    }
    return values;
}

}  // namespace

void validate(const GeneratorConfig& config) {
    if (config.n_levels < 1) {
        throw std::invalid_argument("GeneratorConfig: n_levels must be >= 1");
    }
    if (!(config.mean_spacing > 0.0)) {
        throw std::invalid_argument("GeneratorConfig: mean_spacing must be > 0");
    }
}

Seed Seed::derive(std::uint64_t index, std::uint64_t stream_tag) const {
    std::uint64_t h = master;
    h = mix64(h ^ mix64(index));
    h = mix64(h ^ mix64(stream_tag));
    return Seed{h};
}

SortedSpectrum generate_sorted(const GeneratorConfig& config, Seed seed) {
    validate(config);
    auto eng = make_engine(seed);
    std::vector<double> values;
    if (config.model == SpectrumModel::UniformInterval) {
        values = uniform_draws(config, eng);
        const auto order = break_ties_and_rank(values);
        std::vector<double> sorted(values.size());
        for (std::size_t k = 0; k < order.size(); ++k) sorted[k] = values[order[k]];
        values = std::move(sorted);
    } else {
        values = exponential_levels(config, eng);
    }
    return SortedSpectrum{std::move(values)};
}

PermutedSpectrum generate_permuted(const GeneratorConfig& config, Seed seed) {
    validate(config);
    auto eng = make_engine(seed);
    std::vector<double> values;
    if (config.model == SpectrumModel::UniformInterval) {
        // The raw draw order is the permuted order.
        values = uniform_draws(config, eng);
        break_ties_and_rank(values);
    } else {
        // Fisher-Yates with the engine continuing past the gap draws.
        values = exponential_levels(config, eng);
        for (std::size_t i = values.size(); i > 1; --i) {
            const std::uint64_t j = bounded(eng, i);
            std::swap(values[i - 1], values[j]);
        }
    }
    return PermutedSpectrum{std::move(values)};
}

SortedSpectrum sort_spectrum(const PermutedSpectrum& spectrum) {
    std::vector<double> values = spectrum.values;
    std::stable_sort(values.begin(), values.end());
    return SortedSpectrum{std::move(values)};
}

std::vector<double> gaps(const SortedSpectrum& spectrum) {
    if (spectrum.size() < 2) {
        throw std::invalid_argument("gaps: no gaps defined for fewer than 2 levels");
    }
    std::vector<double> out(spectrum.size() - 1);
    for (std::size_t k = 0; k + 1 < spectrum.size(); ++k) {
        out[k] = spectrum.values[k + 1] - spectrum.values[k];
    }
    return out;
}

}  // namespace csco
