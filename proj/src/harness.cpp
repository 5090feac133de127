#include "srot/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include "srot/bounds.hpp"
#include "srot/errors.hpp"
#include "srot/random.hpp"
#include "srot/riccati.hpp"
#include "srot/spectral.hpp"

namespace srot::harness {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Matrix conjugated(const Matrix& a, const Matrix& q) { return q * a * q.transposed(); }

}  // namespace

void validate(const GenConfig& cfg) {
    auto fail = [](const std::string& what) { throw Error(ErrorKind::ConfigInvalid, what); };
    if (cfg.dim0 < 1) fail("dim0 must be positive");
    if (cfg.dim1 < 2) fail("dim1 must be at least 2 so both gap edges carry an eigenvalue");
    if (!std::isfinite(cfg.D) || !(cfg.D > 0.0)) fail("D must be positive");
    if (!std::isfinite(cfg.d) || !(cfg.d > 0.0) || cfg.d > 0.5 * cfg.D) fail("need 0 < d <= D/2");
    if (!std::isfinite(cfg.ratio) || !(cfg.ratio >= 0.0)) fail("ratio must be non-negative");
    if (!std::isfinite(cfg.span) || !(cfg.span > 0.0)) fail("span must be positive");
}

Instance generate_instance(const GenConfig& cfg) {
    validate(cfg);
    Rng rng(cfg.seed);
    const double half = 0.5 * cfg.D;

    // spec(A0) in [-D/2 + d, D/2 - d] with one value on an end so that the
    // distance to spec(A1) is exactly d.
    const double lo = -half + cfg.d;
    const double hi = half - cfg.d;
    std::vector<double> sigma0(cfg.dim0);
    sigma0[0] = rng.uniform() < 0.5 ? lo : hi;
    for (std::size_t i = 1; i < cfg.dim0; ++i) sigma0[i] = rng.uniform(lo, hi);

    // spec(A1) outside the gap, with both edges pinned.
    std::vector<double> sigma1(cfg.dim1);
    sigma1[0] = -half;
    sigma1[1] = half;
    for (std::size_t i = 2; i < cfg.dim1; ++i) {
        const double offset = rng.uniform(0.0, cfg.span);
        sigma1[i] = rng.uniform() < 0.5 ? -half - offset : half + offset;
    }

    Matrix b(cfg.dim0, cfg.dim1);
    const Matrix g = random_gaussian(cfg.dim0, cfg.dim1, rng);
    if (cfg.ratio > 0.0) {
        b = g;
        b *= cfg.ratio * cfg.d / operator_norm(g);
    }

    Matrix a0 = Matrix::diagonal(sigma0);
    Matrix a1 = Matrix::diagonal(sigma1);
    if (cfg.conjugate) {
        const Matrix q0 = random_orthogonal(cfg.dim0, rng);
        const Matrix q1 = random_orthogonal(cfg.dim1, rng);
        a0 = conjugated(a0, q0);
        a1 = conjugated(a1, q1);
        b = q0 * b * q1.transposed();
    }
    return Instance{make_block_operator(SymMatrix(a0), SymMatrix(a1), b),
                    make_disposition(std::move(sigma0), std::move(sigma1))};
}

Measurement measure(const BlockOperator& block) {
    Measurement m;
    m.disposition = spectral::find_disposition(block);
    m.v = block.perturbation_norm();
    const auto partition = spectral::perturbed_partition(block, m.disposition);
    m.omega0 = partition.omega0;
    m.distance = spectral::projection_distance(spectral::unperturbed_projector(block), partition.P0);
    return m;
}

TrialReport run_trial(const GenConfig& cfg, const TrialOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    TrialReport r;
    r.seed = cfg.seed;
    r.dim0 = cfg.dim0;
    r.dim1 = cfg.dim1;
    r.D = cfg.D;
    r.d = cfg.d;
    r.v = r.distance = r.bound = r.margin = r.x_norm = r.riccati_residual = r.lemma_max_residual = kNaN;

    try {
        const Instance inst = generate_instance(cfg);
        const auto& block = inst.block;
        const SpectralDisposition disp = spectral::find_disposition(block);
        r.D = disp.D;
        r.d = disp.d;
        r.v = block.perturbation_norm();
        r.region = classify_region(r.D, r.d, r.v).region;

        spectral::PartitionOptions popts;
        popts.allow_large_perturbation = options.allow_large_perturbation;
        const auto partition = spectral::perturbed_partition(block, disp, popts);
        r.distance = spectral::projection_distance(spectral::unperturbed_projector(block), partition.P0);

        if (r.v < std::sqrt(r.d * r.D)) {
            const auto eval = bounds::m_total(r.D, r.d, r.v);
            r.bound = eval.projection_bound;
            r.apriori = eval.apriori_bound;
            r.margin = r.bound - r.distance;
        } else if (r.v < std::sqrt(2.0) * r.d) {
            r.apriori = bounds::apriori_bound(r.d, r.v);
        }

        const bool cross_check = cfg.ratio <= options.fixed_point_ratio;
        std::optional<AngularOperator> x;
        try {
            x = riccati::extract_angular_operator(partition, block);
            r.method = "extraction";
        } catch (const Error&) {
            if (!cross_check) throw;
        }
        if (cross_check) {
            try {
                auto fp = riccati::solve_riccati_fixed_point(block, disp);
                if (x) {
                    r.fixed_point_deviation = operator_norm(fp.X - x->X);
                } else {
                    x = std::move(fp);
                    r.method = "fixed-point";
                }
            } catch (const Error& e) {
                if (!x) throw;
                if (e.kind() != ErrorKind::NoConvergence) throw;
            }
        }

        r.x_norm = x->norm;
        r.riccati_residual = x->riccati_residual;
        r.lemma_max_residual = riccati::verify_lemma_identities(*x, block, cfg.seed).max_residual;
    } catch (const Error& e) {
        r.error = e.what();
    }

    if (options.record_timing) {
        r.elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    return r;
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t trial) {
    return base_seed ^ mix_seed(static_cast<std::uint64_t>(trial));
}

SweepSummary summarize(const std::vector<TrialReport>& reports) {
    SweepSummary s;
    s.count = reports.size();
    for (const auto& r : reports) {
        if (!r.ok()) {
            ++s.failures;
            continue;
        }
        if (r.violates_bound()) ++s.violations;
        if (std::isfinite(r.margin)) s.min_margin = std::min(s.min_margin.value_or(r.margin), r.margin);
        if (std::isfinite(r.bound) && r.bound > 0.0) {
            const double q = r.distance / r.bound;
            s.max_distance_bound_ratio = std::max(s.max_distance_bound_ratio.value_or(q), q);
        }
    }
    return s;
}

SweepResult run_sweep(const GenConfig& base, std::size_t trials, const std::vector<double>& ratio_grid,
                      const TrialOptions& options, unsigned threads) {
    validate(base);
    for (double ratio : ratio_grid) {
        if (!(ratio >= 0.0) || (!options.allow_large_perturbation && !(ratio < std::sqrt(base.D / base.d)))) {
            throw Error(ErrorKind::ConfigInvalid, "ratio grid must lie in [0, sqrt(D/d))");
        }
    }

    const std::size_t total = trials * ratio_grid.size();
    SweepResult out;
    out.reports.resize(total);
    auto run_one = [&](std::size_t k) {
        GenConfig cfg = base;
        cfg.seed = trial_seed(base.seed, k / ratio_grid.size());
        cfg.ratio = ratio_grid[k % ratio_grid.size()];
        out.reports[k] = run_trial(cfg, options);
    };

    threads = std::max(1u, threads);
    if (threads == 1 || total < 2) {
        for (std::size_t k = 0; k < total; ++k) run_one(k);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t k = next++; k < total; k = next++) run_one(k);
            });
        }
        for (auto& th : pool) th.join();
    }
    out.summary = summarize(out.reports);
    return out;
}

}  // namespace srot::harness
