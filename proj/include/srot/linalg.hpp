#pragma once

#include <cstddef>
#include <vector>

#include "srot/matrix.hpp"

namespace srot {

/// Result of the cyclic Jacobi eigenvalue iteration. Values ascending,
/// column i of `vectors` pairs with values[i].
struct JacobiEigen {
    std::vector<double> values;
    Matrix vectors;
    int sweeps = 0;
};

/// Cyclic-by-row two-sided Jacobi on a symmetric matrix. Only the upper
/// triangle is read. Deterministic: fixed sweep order, no pivot search.
/// Throws NoConvergence after `max_sweeps`.
JacobiEigen jacobi_eigen(const Matrix& s, int max_sweeps = 100);

/// Thin singular value decomposition A * right = left * diag(sigma).
///
/// For an m x n input, `right` is a full n x n orthogonal matrix and `sigma`
/// holds n values in descending order (entries beyond min(m, n) are
/// round-off zeros). `left` is m x min(m, n) with orthonormal columns;
/// columns belonging to vanishing singular values are completed to an
/// orthonormal set.
struct Svd {
    std::vector<double> sigma;
    Matrix left;
    Matrix right;
    int sweeps = 0;
};

/// One-sided (Hestenes) Jacobi SVD.
Svd svd(const Matrix& a, int max_sweeps = 80);

std::vector<double> singular_values(const Matrix& a);

/// Random-free completion: fills the zero columns of `q` (m x k, k <= m)
/// with unit vectors orthogonal to the nonzero ones via Gram-Schmidt against
/// the standard basis.
void complete_orthonormal(Matrix& q, std::vector<bool> filled);

}  // namespace srot
