#pragma once

#include <cstdint>
#include <random>

#include "srot/matrix.hpp"

namespace srot {

/// SplitMix64 finalizer. Used to derive per-trial seeds as
/// base_seed ^ mix_seed(trial_index).
constexpr std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Deterministic generator. The raw engine (mt19937_64) is fully specified
/// by the standard; the real-valued draws are computed here rather than via
/// <random> distributions so streams match across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Standard normal (Box-Muller, one draw per call).
    double normal();

    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

Matrix random_gaussian(std::size_t rows, std::size_t cols, Rng& rng);

/// Haar-ish random orthogonal matrix: Gram-Schmidt QR of a Gaussian matrix
/// with the sign of diag(R) fixed positive.
Matrix random_orthogonal(std::size_t n, Rng& rng);

}  // namespace srot
