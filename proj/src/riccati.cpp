#include "srot/riccati.hpp"

#include <algorithm>
#include <cmath>

#include "srot/errors.hpp"
#include "srot/linalg.hpp"
#include "srot/random.hpp"

namespace srot::riccati {

namespace {

constexpr double kConditionLimit = 1e12;
constexpr double kResidualFactor = 1e-8;
constexpr double kClusterTolerance = 1e-8;
// Left singular vectors paired with sigma below this fraction of ||X|| are
// treated as belonging to ker(X), where the partial isometry vanishes.
constexpr double kKernelCutoff = 1e-12;

double normalized(double lhs, double rhs) { return std::abs(lhs - rhs) / (1.0 + std::abs(lhs) + std::abs(rhs)); }

double sq(std::span<const double> v) { return dot(v, v); }

// (I + |X|^2)^{p/2} = W diag((1 + sigma^2)^{p/2}) W^T.
Matrix modulus_power(const AngularOperator& x, double p) {
    const std::size_t n = x.right_vectors.rows();
    Matrix scaled = x.right_vectors;
    for (std::size_t j = 0; j < n; ++j) {
        const double f = std::pow(1.0 + x.singular_values[j] * x.singular_values[j], 0.5 * p);
        for (std::size_t i = 0; i < n; ++i) scaled(i, j) *= f;
    }
    return scaled * x.right_vectors.transposed();
}

IdentityPair evaluate_pair(double lambda, std::span<const double> u, std::span<const double> uu,
                           const BlockOperator& block, const Matrix& lam0) {
    const auto a0u = block.a0().matrix() * u;
    const auto btu = block.b().transposed() * u;
    const auto a1uu = block.a1().matrix() * uu;
    const auto buu = block.b() * uu;
    const auto lu = lam0 * u;

    const double cross = dot(a0u, buu) + dot(btu, a1uu);
    const double n_a0u = sq(a0u);
    const double n_btu = sq(btu);
    const double n_a1uu = sq(a1uu);
    const double n_buu = sq(buu);
    const double n_lu = sq(lu);

    IdentityPair pair;
    pair.lambda = lambda;
    pair.id2_residual = normalized(lambda * (n_a0u + n_btu - n_a1uu - n_buu), (1.0 - lambda * lambda) * cross);
    pair.id1_residual = normalized(lambda * cross, n_lu - n_a0u - n_btu);
    pair.id3_residual = normalized(lambda * lambda * (n_a1uu + n_buu - n_lu), n_a0u + n_btu - n_lu);
    return pair;
}

}  // namespace

double riccati_residual(const Matrix& x, const BlockOperator& block) {
    if (x.rows() != block.dim1() || x.cols() != block.dim0()) {
        throw Error(ErrorKind::DimensionMismatch, "X must be dim1 x dim0");
    }
    Matrix r = x * block.a0().matrix();
    r -= block.a1().matrix() * x;
    r += x * block.b() * x;
    r -= block.b().transposed();
    return operator_norm(r);
}

double riccati_scale(const BlockOperator& block, double x_norm) {
    const double ops = 1.0 + operator_norm(block.a0().matrix()) + operator_norm(block.a1().matrix()) +
                       operator_norm(block.b());
    return ops * (1.0 + x_norm) * (1.0 + x_norm);
}

AngularOperator make_angular_operator(Matrix x, const BlockOperator& block) {
    AngularOperator op;
    op.riccati_residual = riccati_residual(x, block);
    auto s = svd(x);
    op.singular_values = std::move(s.sigma);
    op.left_vectors = std::move(s.left);
    op.right_vectors = std::move(s.right);
    op.norm = op.singular_values.empty() ? 0.0 : op.singular_values.front();
    op.X = std::move(x);
    return op;
}

AngularOperator extract_angular_operator(const spectral::SpectrumPartition& partition, const BlockOperator& block) {
    const std::size_t dim0 = block.dim0();
    const std::size_t dim1 = block.dim1();
    if (static_cast<std::size_t>(partition.rank0) != dim0 || partition.basis.cols() != dim0) {
        throw Error(ErrorKind::GapEmptyOrRankMismatch, "in-gap subspace dimension differs from dim0");
    }
    const Matrix y0 = partition.basis.block(0, 0, dim0, dim0);
    const Matrix y1 = partition.basis.block(dim0, 0, dim1, dim0);

    // Y0 W = U S, so Y0^{-1} = W S^{-1} U^T.
    const Svd s = svd(y0);
    const double smin = s.sigma.back();
    if (!(smin > 0.0) || s.sigma.front() / smin > kConditionLimit) {
        throw Error(ErrorKind::GraphExtractionFailed, "perturbed subspace is not a graph over the A0 block");
    }
    Matrix w_scaled = s.right;
    for (std::size_t j = 0; j < dim0; ++j)
        for (std::size_t i = 0; i < dim0; ++i) w_scaled(i, j) /= s.sigma[j];
    const Matrix y0_inv = w_scaled * s.left.transposed();

    AngularOperator op = make_angular_operator(y1 * y0_inv, block);
    if (op.riccati_residual > kResidualFactor * riccati_scale(block, op.norm)) {
        throw Error(ErrorKind::ResidualTooLarge,
                    "Riccati residual " + std::to_string(op.riccati_residual) + " of extracted X is too large");
    }
    return op;
}

AngularOperator solve_riccati_fixed_point(const BlockOperator& block, const SpectralDisposition& disp, double tol,
                                          int max_iter) {
    const auto e0 = spectral::sym_eig(block.a0());
    const auto e1 = spectral::sym_eig(block.a1());
    const std::size_t dim0 = block.dim0();
    const std::size_t dim1 = block.dim1();

    Matrix divisor(dim1, dim0);
    for (std::size_t i = 0; i < dim1; ++i) {
        for (std::size_t j = 0; j < dim0; ++j) {
            divisor(i, j) = e1.values[i] - e0.values[j];
            if (std::abs(divisor(i, j)) < 0.5 * disp.d) {
                throw Error(ErrorKind::DispositionViolated, "Sylvester divisor smaller than d/2");
            }
        }
    }

    const Matrix bt = block.b().transposed();
    const Matrix q0t = e0.vectors.transposed();
    const Matrix q1t = e1.vectors.transposed();
    Matrix x(dim1, dim0);
    for (int iter = 0; iter < max_iter; ++iter) {
        Matrix rhs = x * block.b() * x - bt;
        Matrix t = q1t * rhs * e0.vectors;
        for (std::size_t i = 0; i < dim1; ++i)
            for (std::size_t j = 0; j < dim0; ++j) t(i, j) /= divisor(i, j);
        Matrix next = e1.vectors * t * q0t;
        const double step = operator_norm(next - x);
        x = std::move(next);
        if (!std::isfinite(step)) break;
        if (step <= tol) return make_angular_operator(std::move(x), block);
    }
    throw Error(ErrorKind::NoConvergence,
                "Riccati fixed-point iteration did not converge in " + std::to_string(max_iter) + " steps");
}

SymMatrix lambda0(const AngularOperator& x, const BlockOperator& block,
                  std::optional<std::span<const double>> omega0) {
    Matrix lam = modulus_power(x, 1.0) * (block.a0().matrix() + block.b() * x.X) * modulus_power(x, -1.0);
    const double scale = riccati_scale(block, x.norm);
    const double asym = operator_norm(lam - lam.transposed());
    if (asym > kResidualFactor * scale) {
        throw Error(ErrorKind::ResidualTooLarge, "Lambda0 is not self-adjoint: asymmetry " + std::to_string(asym));
    }
    // Symmetrize explicitly; the check above bounds what is discarded.
    for (std::size_t i = 0; i < lam.rows(); ++i)
        for (std::size_t j = i + 1; j < lam.cols(); ++j) lam(i, j) = lam(j, i) = 0.5 * (lam(i, j) + lam(j, i));
    SymMatrix result(lam);

    if (omega0) {
        std::vector<double> expected(omega0->begin(), omega0->end());
        std::sort(expected.begin(), expected.end());
        const auto values = spectral::sym_eig(result).values;
        if (values.size() != expected.size()) {
            throw Error(ErrorKind::ResidualTooLarge, "spectrum of Lambda0 has the wrong size");
        }
        for (std::size_t k = 0; k < values.size(); ++k) {
            if (std::abs(values[k] - expected[k]) > kResidualFactor * scale) {
                throw Error(ErrorKind::ResidualTooLarge, "spectrum of Lambda0 differs from omega0");
            }
        }
    }
    return result;
}

IdentityResiduals verify_lemma_identities(const AngularOperator& x, const BlockOperator& block, std::uint64_t seed) {
    const Matrix lam = lambda0(x, block).matrix();
    const std::size_t dim0 = block.dim0();
    const std::size_t dim1 = block.dim1();
    const std::size_t rank_cap = x.left_vectors.cols();
    const double kernel = kKernelCutoff * x.norm;

    // Uu for the i-th right singular vector; zero on ker(X).
    auto image = [&](std::size_t i) {
        std::vector<double> uu(dim1, 0.0);
        if (i < rank_cap && x.singular_values[i] > kernel && x.singular_values[i] > 0.0) uu = x.left_vectors.column(i);
        return uu;
    };

    IdentityResiduals out;
    auto record = [&](IdentityPair pair) {
        out.max_residual = std::max({out.max_residual, pair.id1_residual, pair.id2_residual, pair.id3_residual});
        out.per_pair.push_back(pair);
    };

    for (std::size_t i = 0; i < dim0; ++i) {
        record(evaluate_pair(x.singular_values[i], x.right_vectors.column(i), image(i), block, lam));
    }

    Rng rng(seed);
    const double cluster_tol = kClusterTolerance * std::max(x.norm, 1.0);
    std::size_t start = 0;
    while (start < dim0) {
        std::size_t end = start + 1;
        while (end < dim0 && x.singular_values[start] - x.singular_values[end] <= cluster_tol) ++end;
        const std::size_t k = end - start;
        if (k >= 2) {
            const Matrix rot = random_orthogonal(k, rng);
            double lambda = 0.0;
            for (std::size_t i = start; i < end; ++i) lambda += x.singular_values[i];
            lambda /= static_cast<double>(k);
            for (std::size_t c = 0; c < k; ++c) {
                std::vector<double> u(dim0, 0.0);
                std::vector<double> uu(dim1, 0.0);
                for (std::size_t r = 0; r < k; ++r) {
                    const double f = rot(r, c);
                    const auto wr = x.right_vectors.column(start + r);
                    const auto ur = image(start + r);
                    for (std::size_t i = 0; i < dim0; ++i) u[i] += f * wr[i];
                    for (std::size_t i = 0; i < dim1; ++i) uu[i] += f * ur[i];
                }
                IdentityPair pair = evaluate_pair(lambda, u, uu, block, lam);
                pair.rotated = true;
                record(pair);
            }
        }
        start = end;
    }
    return out;
}

}  // namespace srot::riccati
