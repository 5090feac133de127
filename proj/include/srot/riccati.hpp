#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "srot/core.hpp"
#include "srot/spectral.hpp"

namespace srot::riccati {

/// Normalized residuals of the three eigenvector identities for |X|,
/// evaluated on one eigenpair (lambda, u) of |X|.
struct IdentityPair {
    double lambda = 0.0;
    double id1_residual = 0.0;
    double id2_residual = 0.0;
    double id3_residual = 0.0;
    /// True when (lambda, u) came from a random rotation inside a cluster of
    /// repeated singular values rather than straight from the SVD.
    bool rotated = false;
};

struct IdentityResiduals {
    std::vector<IdentityPair> per_pair;
    double max_residual = 0.0;
};

/// ||X A0 - A1 X + X B X - B^T||.
double riccati_residual(const Matrix& x, const BlockOperator& block);

/// Scale used by the residual acceptance test:
/// (1 + ||A0|| + ||A1|| + ||B||) (1 + ||X||)^2.
double riccati_scale(const BlockOperator& block, double x_norm);

/// Packages X with its SVD and Riccati residual.
AngularOperator make_angular_operator(Matrix x, const BlockOperator& block);

/// X = Y1 Y0^{-1} for the in-gap eigenvector basis Y = [Y0; Y1] of L.
/// Throws GraphExtractionFailed if cond(Y0) > 1e12 and ResidualTooLarge if
/// the Riccati residual exceeds 1e-8 times riccati_scale.
AngularOperator extract_angular_operator(const spectral::SpectrumPartition& partition,
                                         const BlockOperator& block);

/// Fixed-point iteration X_{k+1} = S^{-1}(X_k B X_k - B^T), S(Y) = A1 Y - Y A0,
/// starting from X_0 = 0. The Sylvester inverse is applied entrywise in the
/// eigenbases of A0 and A1. Throws NoConvergence after max_iter steps.
AngularOperator solve_riccati_fixed_point(const BlockOperator& block, const SpectralDisposition& disp,
                                          double tol = 1e-13, int max_iter = 1000);

/// Lambda0 = (I + |X|^2)^{1/2} (A0 + B X) (I + |X|^2)^{-1/2}.
///
/// Throws ResidualTooLarge when Lambda0 is not symmetric to 1e-8 (scaled) or,
/// if `omega0` is given, when its spectrum does not match omega0.
SymMatrix lambda0(const AngularOperator& x, const BlockOperator& block,
                  std::optional<std::span<const double>> omega0 = std::nullopt);

/// Evaluates the three identities on every eigenpair of |X| returned by the
/// SVD, then again on a seeded random orthonormal rebasing of each cluster of
/// repeated singular values.
IdentityResiduals verify_lemma_identities(const AngularOperator& x, const BlockOperator& block,
                                          std::uint64_t seed = 0);

}  // namespace srot::riccati
