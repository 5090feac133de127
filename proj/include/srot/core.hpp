#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "srot/matrix.hpp"

namespace srot {

/// Real symmetric matrix. Construction symmetrizes as (M + M^T)/2 and
/// rejects inputs whose asymmetry exceeds kAsymmetryTolerance relative to
/// the largest entry.
class SymMatrix {
public:
    static constexpr double kAsymmetryTolerance = 1e-12;

    SymMatrix() = default;
    explicit SymMatrix(const Matrix& m);

    std::size_t size() const { return m_.rows(); }
    const Matrix& matrix() const { return m_; }
    double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

private:
    Matrix m_;
};

/// Block decomposition of A = diag(A0, A1) and the off-diagonal perturbation
/// V = [[0, B], [B^T, 0]] on a space split into parts of size dim0 and dim1.
class BlockOperator {
public:
    BlockOperator(SymMatrix a0, SymMatrix a1, Matrix b);

    std::size_t dim0() const { return a0_.size(); }
    std::size_t dim1() const { return a1_.size(); }
    std::size_t dim() const { return dim0() + dim1(); }

    const SymMatrix& a0() const { return a0_; }
    const SymMatrix& a1() const { return a1_; }
    const Matrix& b() const { return b_; }

    /// diag(A0, A1)
    SymMatrix unperturbed() const;
    /// [[0, B], [B^T, 0]]
    SymMatrix perturbation() const;
    /// A + V
    SymMatrix perturbed() const;

    /// ||V|| = ||B||.
    double perturbation_norm() const;

private:
    SymMatrix a0_;
    SymMatrix a1_;
    Matrix b_;
};

/// Throws DimensionMismatch unless B is dim0 x dim1.
BlockOperator make_block_operator(const SymMatrix& a0, const SymMatrix& a1, const Matrix& b);

/// Spectrum of A0 sitting in a finite gap (gamma_l, gamma_r) of the spectrum
/// of A1, at exact distance d from it.
struct SpectralDisposition {
    std::vector<double> sigma0;
    std::vector<double> sigma1;
    double gamma_l = 0.0;
    double gamma_r = 0.0;
    double d = 0.0;
    double D = 0.0;
};

/// Builds the disposition from two eigenvalue lists (any order). Throws
/// DispositionViolated when sigma0 is not strictly inside a single finite gap
/// of sigma1.
SpectralDisposition make_disposition(std::vector<double> sigma0, std::vector<double> sigma1);

enum class Region {
    Omega1_0,
    Omega1_1,
    BoundaryOmega12,
    Omega2,
    OutsideOmega,
};

std::string_view to_string(Region r);

struct BoundPoint {
    double D = 0.0;
    double d = 0.0;
    double v = 0.0;
    Region region = Region::OutsideOmega;
};

inline constexpr double kDefaultBoundaryTolerance = 1e-9;

/// Places (D, d, v) in the bound domain. The boundary v = sqrt(d(D - d)) is
/// matched within tol * sqrt(dD).
BoundPoint classify_region(double D, double d, double v, double tol = kDefaultBoundaryTolerance);

/// Angular operator X : A0-space -> A1-space (dim1 x dim0) with its SVD
/// X * right_vectors = left_vectors * diag(singular_values).
///
/// `singular_values` has dim0 entries (the eigenvalues of |X|, descending)
/// and `right_vectors` is a full dim0 x dim0 orthogonal matrix, so every
/// eigenvector of |X| is available. `left_vectors` is dim1 x min(dim0, dim1).
struct AngularOperator {
    Matrix X;
    std::vector<double> singular_values;
    Matrix left_vectors;
    Matrix right_vectors;
    double norm = 0.0;
    double riccati_residual = 0.0;
};

}  // namespace srot
