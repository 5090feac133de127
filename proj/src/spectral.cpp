#include "srot/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "srot/errors.hpp"
#include "srot/linalg.hpp"

namespace srot::spectral {

namespace {

// ||P^2 - P|| and ||P - P^T||; Frobenius first since it bounds the operator
// norm from above and is cheap.
double projector_defect(const Matrix& p) {
    const Matrix idem = p * p - p;
    const Matrix asym = p - p.transposed();
    double defect = std::max(idem.frobenius_norm(), asym.frobenius_norm());
    if (defect > kResidualTolerance) {
        defect = std::max(operator_norm(idem), operator_norm(asym));
    }
    return defect;
}

Matrix outer_sum(const Matrix& basis) { return basis * basis.transposed(); }

// One pass of modified Gram-Schmidt over the columns.
void reorthogonalize(Matrix& q) {
    for (std::size_t j = 0; j < q.cols(); ++j) {
        auto col = q.column(j);
        for (std::size_t k = 0; k < j; ++k) {
            double proj = 0.0;
            for (std::size_t i = 0; i < q.rows(); ++i) proj += q(i, k) * col[i];
            for (std::size_t i = 0; i < q.rows(); ++i) col[i] -= proj * q(i, k);
        }
        const double nrm = norm2(col);
        for (double& x : col) x /= nrm;
        q.set_column(j, col);
    }
}

}  // namespace

EigenSystem sym_eig(const SymMatrix& s) {
    auto je = jacobi_eigen(s.matrix());
    EigenSystem es;
    es.values = std::move(je.values);
    es.vectors = std::move(je.vectors);
    for (double v : es.values) es.matrix_norm = std::max(es.matrix_norm, std::abs(v));

    Matrix r = s.matrix() * es.vectors;
    for (std::size_t j = 0; j < r.cols(); ++j)
        for (std::size_t i = 0; i < r.rows(); ++i) r(i, j) -= es.vectors(i, j) * es.values[j];
    es.residual = operator_norm(r);
    return es;
}

SymMatrix spectral_projection(const EigenSystem& es, double lo, double hi) {
    if (!(lo < hi)) {
        throw Error(ErrorKind::DomainError, "spectral interval must satisfy lo < hi");
    }
    const double tol = kBoundaryTolerance * (1.0 + es.matrix_norm);
    const std::size_t n = es.vectors.rows();
    std::vector<std::size_t> inside;
    for (std::size_t k = 0; k < es.values.size(); ++k) {
        const double lambda = es.values[k];
        if (std::abs(lambda - lo) <= tol || std::abs(lambda - hi) <= tol) {
            throw Error(ErrorKind::EigenvalueOnBoundary,
                        "eigenvalue " + std::to_string(lambda) + " is on the interval boundary");
        }
        if (lambda > lo && lambda < hi) inside.push_back(k);
    }
    Matrix basis(n, inside.size());
    for (std::size_t c = 0; c < inside.size(); ++c)
        for (std::size_t i = 0; i < n; ++i) basis(i, c) = es.vectors(i, inside[c]);
    return SymMatrix(outer_sum(basis));
}

SpectralDisposition find_disposition(const BlockOperator& block) {
    return make_disposition(sym_eig(block.a0()).values, sym_eig(block.a1()).values);
}

SymMatrix unperturbed_projector(const BlockOperator& block) {
    Matrix p(block.dim(), block.dim());
    for (std::size_t i = 0; i < block.dim0(); ++i) p(i, i) = 1.0;
    return SymMatrix(p);
}

SpectrumPartition perturbed_partition(const BlockOperator& block, const SpectralDisposition& disp,
                                      PartitionOptions options) {
    const double v = block.perturbation_norm();
    if (!options.allow_large_perturbation && !(v < std::sqrt(disp.d * disp.D))) {
        throw Error(ErrorKind::DomainError, "||B|| >= sqrt(d |Delta|); pass the override to explore this regime");
    }

    const SymMatrix l = block.perturbed();
    const EigenSystem es = sym_eig(l);
    const double tol = kBoundaryTolerance * (1.0 + es.matrix_norm);
    const std::size_t n = block.dim();

    // The gap endpoints belong to the closed complement of the gap, so an
    // eigenvalue of L sitting on them is part of omega1. It only becomes an
    // error when it leaves the in-gap count short.
    SpectrumPartition part;
    std::vector<std::size_t> inside;
    bool on_boundary = false;
    for (std::size_t k = 0; k < es.values.size(); ++k) {
        const double lambda = es.values[k];
        if (std::abs(lambda - disp.gamma_l) <= tol || std::abs(lambda - disp.gamma_r) <= tol) {
            on_boundary = true;
            part.omega1.push_back(lambda);
        } else if (lambda > disp.gamma_l && lambda < disp.gamma_r) {
            inside.push_back(k);
            part.omega0.push_back(lambda);
        } else {
            part.omega1.push_back(lambda);
        }
    }

    Matrix basis(n, inside.size());
    for (std::size_t c = 0; c < inside.size(); ++c)
        for (std::size_t i = 0; i < n; ++i) basis(i, c) = es.vectors(i, inside[c]);
    if (es.residual > kResidualTolerance * (1.0 + es.matrix_norm)) reorthogonalize(basis);

    Matrix p0 = outer_sum(basis);
    const double trace = p0.trace();
    part.rank0 = static_cast<int>(std::lround(trace));
    if (std::abs(trace - static_cast<double>(inside.size())) > 0.5) {
        throw Error(ErrorKind::ResidualTooLarge, "projector trace disagrees with its eigenvector count");
    }
    part.P0 = SymMatrix(p0);
    part.basis = std::move(basis);

    if (static_cast<std::size_t>(part.rank0) != block.dim0()) {
        part.rank_matches = false;
        if (!options.allow_large_perturbation) {
            if (on_boundary) {
                throw Error(ErrorKind::EigenvalueOnBoundary,
                            "an eigenvalue of L sits on the gap boundary and the in-gap count is short");
            }
            throw Error(ErrorKind::GapEmptyOrRankMismatch,
                        "found " + std::to_string(part.rank0) + " eigenvalues of L in the gap, expected " +
                            std::to_string(block.dim0()));
        }
    }
    return part;
}

double projection_distance(const SymMatrix& p, const SymMatrix& q) {
    if (p.size() != q.size()) {
        throw Error(ErrorKind::DimensionMismatch, "projectors differ in size");
    }
    if (projector_defect(p.matrix()) > kResidualTolerance || projector_defect(q.matrix()) > kResidualTolerance) {
        throw Error(ErrorKind::NotAProjector, "argument is not a symmetric idempotent matrix");
    }
    const auto values = jacobi_eigen(p.matrix() - q.matrix()).values;
    const double dist = std::max(std::abs(values.front()), std::abs(values.back()));
    if (dist > 1.0 + 1e-9) {
        throw Error(ErrorKind::NotAProjector, "projector difference has norm above one");
    }
    return std::min(dist, 1.0);
}

}  // namespace srot::spectral
