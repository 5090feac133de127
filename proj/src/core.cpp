#include "srot/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "srot/errors.hpp"

namespace srot {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::EigenvalueOnBoundary: return "EigenvalueOnBoundary";
        case ErrorKind::DispositionViolated: return "DispositionViolated";
        case ErrorKind::GapEmptyOrRankMismatch: return "GapEmptyOrRankMismatch";
        case ErrorKind::NotAProjector: return "NotAProjector";
        case ErrorKind::GraphExtractionFailed: return "GraphExtractionFailed";
        case ErrorKind::ResidualTooLarge: return "ResidualTooLarge";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::ConfigInvalid: return "ConfigInvalid";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

SymMatrix::SymMatrix(const Matrix& m) {
    const std::size_t n = m.rows();
    if (n == 0 || n != m.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "symmetric matrix must be square and non-empty");
    }
    if (!m.all_finite()) {
        throw Error(ErrorKind::DomainError, "symmetric matrix has non-finite entries");
    }
    const double scale = m.max_abs();
    m_ = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m_(i, i) = m(i, i);
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(m(i, j) - m(j, i)) > kAsymmetryTolerance * scale) {
                throw Error(ErrorKind::DimensionMismatch,
                            "matrix is not symmetric at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
            }
            m_(i, j) = m_(j, i) = 0.5 * (m(i, j) + m(j, i));
        }
    }
}

BlockOperator::BlockOperator(SymMatrix a0, SymMatrix a1, Matrix b)
    : a0_(std::move(a0)), a1_(std::move(a1)), b_(std::move(b)) {
    if (b_.rows() != a0_.size() || b_.cols() != a1_.size()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "B is " + std::to_string(b_.rows()) + "x" + std::to_string(b_.cols()) + ", expected " +
                        std::to_string(a0_.size()) + "x" + std::to_string(a1_.size()));
    }
    if (!b_.all_finite()) {
        throw Error(ErrorKind::DomainError, "B has non-finite entries");
    }
}

SymMatrix BlockOperator::unperturbed() const {
    Matrix a(dim(), dim());
    a.set_block(0, 0, a0_.matrix());
    a.set_block(dim0(), dim0(), a1_.matrix());
    return SymMatrix(a);
}

SymMatrix BlockOperator::perturbation() const {
    Matrix v(dim(), dim());
    v.set_block(0, dim0(), b_);
    v.set_block(dim0(), 0, b_.transposed());
    return SymMatrix(v);
}

SymMatrix BlockOperator::perturbed() const {
    Matrix l(dim(), dim());
    l.set_block(0, 0, a0_.matrix());
    l.set_block(dim0(), dim0(), a1_.matrix());
    l.set_block(0, dim0(), b_);
    l.set_block(dim0(), 0, b_.transposed());
    return SymMatrix(l);
}

double BlockOperator::perturbation_norm() const { return operator_norm(b_); }

BlockOperator make_block_operator(const SymMatrix& a0, const SymMatrix& a1, const Matrix& b) {
    return BlockOperator(a0, a1, b);
}

SpectralDisposition make_disposition(std::vector<double> sigma0, std::vector<double> sigma1) {
    if (sigma0.empty() || sigma1.empty()) {
        throw Error(ErrorKind::DispositionViolated, "both spectra must be non-empty");
    }
    std::sort(sigma0.begin(), sigma0.end());
    std::sort(sigma1.begin(), sigma1.end());
    const double lo = sigma0.front();
    const double hi = sigma0.back();

    constexpr double kNone = std::numeric_limits<double>::quiet_NaN();
    double gamma_l = kNone;
    double gamma_r = kNone;
    for (double s : sigma1) {
        if (s >= lo && s <= hi) {
            throw Error(ErrorKind::DispositionViolated,
                        "an eigenvalue of A1 lies in the closed convex hull of spec(A0)");
        }
        if (s < lo) gamma_l = s;
        if (s > hi && std::isnan(gamma_r)) gamma_r = s;
    }
    if (std::isnan(gamma_l) || std::isnan(gamma_r)) {
        throw Error(ErrorKind::DispositionViolated, "spec(A0) is not inside a finite gap of spec(A1)");
    }

    SpectralDisposition disp;
    disp.gamma_l = gamma_l;
    disp.gamma_r = gamma_r;
    disp.D = gamma_r - gamma_l;
    disp.d = std::min(lo - gamma_l, gamma_r - hi);
    disp.sigma0 = std::move(sigma0);
    disp.sigma1 = std::move(sigma1);
    return disp;
}

std::string_view to_string(Region r) {
    switch (r) {
        case Region::Omega1_0: return "Omega1_0";
        case Region::Omega1_1: return "Omega1_1";
        case Region::BoundaryOmega12: return "BoundaryOmega12";
        case Region::Omega2: return "Omega2";
        case Region::OutsideOmega: return "OutsideOmega";
    }
    return "Unknown";
}

BoundPoint classify_region(double D, double d, double v, double tol) {
    BoundPoint p{D, d, v, Region::OutsideOmega};
    if (!(D > 0.0) || !(d > 0.0) || d > 0.5 * D || !(v >= 0.0)) return p;
    const double outer = std::sqrt(d * D);
    if (v >= outer) return p;
    const double boundary12 = std::sqrt(d * (D - d));
    if (std::abs(v - boundary12) <= tol * outer) {
        p.region = Region::BoundaryOmega12;
    } else if (v <= 0.5 * std::sqrt(d * (D - 2.0 * d))) {
        p.region = Region::Omega1_0;
    } else if (v < boundary12) {
        p.region = Region::Omega1_1;
    } else {
        p.region = Region::Omega2;
    }
    return p;
}

}  // namespace srot
