#pragma once

#include <vector>

#include "srot/core.hpp"

namespace srot::spectral {

/// Eigendecomposition with its measured residual
/// ||S * vectors - vectors * diag(values)||.
struct EigenSystem {
    std::vector<double> values;
    Matrix vectors;
    double residual = 0.0;
    double matrix_norm = 0.0;
};

/// Spectrum of L = A + V split by the gap: omega0 inside, omega1 outside,
/// P0 the spectral projector onto the omega0 eigenvectors.
struct SpectrumPartition {
    std::vector<double> omega0;
    std::vector<double> omega1;
    SymMatrix P0;
    int rank0 = 0;
    /// Orthonormal in-gap eigenvectors of L (n x rank0), spanning range(P0).
    Matrix basis;
    /// False only when the override flag let a rank mismatch through.
    bool rank_matches = true;
};

inline constexpr double kResidualTolerance = 1e-10;
inline constexpr double kBoundaryTolerance = 1e-9;

EigenSystem sym_eig(const SymMatrix& s);

/// Sum of v v^T over eigenvalues in (lo, hi). Throws EigenvalueOnBoundary if
/// an eigenvalue is within 1e-9 (1 + ||S||) of either end.
SymMatrix spectral_projection(const EigenSystem& es, double lo, double hi);

SpectralDisposition find_disposition(const BlockOperator& block);

struct PartitionOptions {
    /// Allow ||B|| >= sqrt(dD); rank mismatches are then reported through
    /// `rank_matches` instead of thrown.
    bool allow_large_perturbation = false;
};

SpectrumPartition perturbed_partition(const BlockOperator& block, const SpectralDisposition& disp,
                                      PartitionOptions options = {});

/// Projector onto the A0 coordinate block, i.e. E_A(sigma0) in block form.
SymMatrix unperturbed_projector(const BlockOperator& block);

/// ||P - Q|| for two orthogonal projectors. Throws NotAProjector when either
/// argument fails the symmetric-idempotent check.
double projection_distance(const SymMatrix& p, const SymMatrix& q);

}  // namespace srot::spectral
