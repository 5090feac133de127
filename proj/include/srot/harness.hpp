#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "srot/core.hpp"

namespace srot::harness {

/// Random instance recipe. The gap is centred at zero: Delta = (-D/2, D/2).
struct GenConfig {
    std::size_t dim0 = 4;
    std::size_t dim1 = 6;
    double D = 4.0;
    double d = 1.0;
    /// Target ||B|| / d.
    double ratio = 0.5;
    /// Width of the bands of spec(A1) on either side of the gap.
    double span = 1.0;
    /// Apply a random block-orthogonal change of basis.
    bool conjugate = false;
    std::uint64_t seed = 0;
};

/// Throws ConfigInvalid.
void validate(const GenConfig& cfg);

struct Instance {
    BlockOperator block;
    SpectralDisposition disposition;
};

Instance generate_instance(const GenConfig& cfg);

struct TrialOptions {
    /// Run the fixed-point cross-check when ratio is at or below this.
    double fixed_point_ratio = 0.9;
    /// When false elapsed_ms is reported as 0 so that report streams are
    /// reproducible byte for byte.
    bool record_timing = true;
    /// Permit ratio >= sqrt(D/d) (exploration only; guarantees lapse).
    bool allow_large_perturbation = false;
};

/// Bound violations below this (absolute) count as failures.
inline constexpr double kMarginTolerance = 1e-8;

struct TrialReport {
    std::uint64_t seed = 0;
    std::size_t dim0 = 0;
    std::size_t dim1 = 0;
    double D = 0.0;
    double d = 0.0;
    double v = 0.0;
    Region region = Region::OutsideOmega;
    double distance = 0.0;
    double bound = 0.0;
    double margin = 0.0;
    std::optional<double> apriori;
    double x_norm = 0.0;
    double riccati_residual = 0.0;
    double lemma_max_residual = 0.0;
    /// "extraction" or "fixed-point"; empty when no X was produced.
    std::string method;
    double elapsed_ms = 0.0;
    /// ||X_fixed_point - X_extraction|| when the cross-check ran and converged.
    std::optional<double> fixed_point_deviation;
    /// Set when a pipeline stage failed; numeric fields after that stage are NaN.
    std::optional<std::string> error;

    bool ok() const { return !error.has_value(); }
    bool violates_bound() const { return ok() && margin < -kMarginTolerance; }
};

/// Ground-truth measurement on a fixed instance: disposition, ||V||, the
/// in-gap spectrum of L and ||E_A(sigma0) - E_L(omega0)||.
struct Measurement {
    SpectralDisposition disposition;
    double v = 0.0;
    std::vector<double> omega0;
    double distance = 0.0;
};

Measurement measure(const BlockOperator& block);

TrialReport run_trial(const GenConfig& cfg, const TrialOptions& options = {});

struct SweepSummary {
    std::size_t count = 0;
    std::size_t failures = 0;
    std::size_t violations = 0;
    std::optional<double> min_margin;
    /// max distance / bound over trials with a positive bound.
    std::optional<double> max_distance_bound_ratio;
};

struct SweepResult {
    std::vector<TrialReport> reports;
    SweepSummary summary;
};

/// Seed of trial i: base_seed ^ mix_seed(i).
std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t trial);

/// One report per (trial, ratio) pair, ordered trial-major. Trials may run on
/// `threads` workers; output order never depends on scheduling.
SweepResult run_sweep(const GenConfig& base, std::size_t trials, const std::vector<double>& ratio_grid,
                      const TrialOptions& options = {}, unsigned threads = 1);

SweepSummary summarize(const std::vector<TrialReport>& reports);

}  // namespace srot::harness
