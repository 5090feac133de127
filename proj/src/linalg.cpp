#include "srot/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "srot/errors.hpp"

namespace srot {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// Off-diagonal mass (relative to the Frobenius norm) at which the Jacobi
// sweep stops, and the per-entry level below which a rotation is skipped.
constexpr double kStop = 1e-3 * kEps;
constexpr double kSkip = 1e-5 * kEps;

// Rotation (c, s) annihilating the off-diagonal entry of
// [[app, apq], [apq, aqq]], with |theta| <= pi/4.
void jacobi_rotation(double app, double aqq, double apq, double& c, double& s) {
    const double tau = (aqq - app) / (2.0 * apq);
    const double t = std::copysign(1.0, tau) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    c = 1.0 / std::sqrt(1.0 + t * t);
    s = t * c;
}

}  // namespace

JacobiEigen jacobi_eigen(const Matrix& s, int max_sweeps) {
    const std::size_t n = s.rows();
    if (n != s.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "eigendecomposition needs a square matrix");
    }
    if (!s.all_finite()) {
        throw Error(ErrorKind::DomainError, "matrix has non-finite entries");
    }

    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = s(i, j);
    Matrix v = Matrix::identity(n);

    const double scale = a.frobenius_norm();
    JacobiEigen out;
    bool converged = scale == 0.0 || n == 1;

    while (!converged) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (std::sqrt(off) <= kStop * scale) {
            converged = true;
            break;
        }
        if (out.sweeps >= max_sweeps) break;
        ++out.sweeps;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= kSkip * scale) {
                    a(p, q) = a(q, p) = 0.0;
                    continue;
                }
                double c = 0.0;
                double sn = 0.0;
                jacobi_rotation(a(p, p), a(q, q), apq, c, sn);
                const double t = sn / c;
                a(p, p) -= t * apq;
                a(q, q) += t * apq;
                a(p, q) = a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = a(p, k) = c * akp - sn * akq;
                    a(k, q) = a(q, k) = sn * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - sn * vkq;
                    v(k, q) = sn * vkp + c * vkq;
                }
            }
        }
    }
    if (!converged) {
        throw Error(ErrorKind::NoConvergence,
                    "Jacobi eigenvalue iteration exceeded " + std::to_string(max_sweeps) + " sweeps");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    // Stable sort keeps ties in index order, so output is reproducible.
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]);
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

void complete_orthonormal(Matrix& q, std::vector<bool> filled) {
    const std::size_t m = q.rows();
    // Residual of e_i after projecting out the filled columns (two passes of
    // modified Gram-Schmidt).
    auto residual = [&](std::size_t i) {
        std::vector<double> e(m, 0.0);
        e[i] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < q.cols(); ++k) {
                if (!filled[k]) continue;
                double proj = 0.0;
                for (std::size_t r = 0; r < m; ++r) proj += q(r, k) * e[r];
                for (std::size_t r = 0; r < m; ++r) e[r] -= proj * q(r, k);
            }
        }
        return e;
    };
    for (std::size_t j = 0; j < q.cols(); ++j) {
        if (filled[j]) continue;
        // The best unit vector keeps at least sqrt(free / m) of its length.
        std::vector<double> best;
        double best_norm = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            auto e = residual(i);
            const double nrm = norm2(e);
            if (nrm > best_norm) {
                best_norm = nrm;
                best = std::move(e);
            }
        }
        if (!(best_norm > 1e-3)) {
            throw Error(ErrorKind::DimensionMismatch, "cannot complete orthonormal basis");
        }
        for (std::size_t r = 0; r < m; ++r) q(r, j) = best[r] / best_norm;
        filled[j] = true;
    }
}

namespace {

// One-sided Jacobi for m >= n.
Svd svd_tall(const Matrix& a, int max_sweeps) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    if (!a.all_finite()) {
        throw Error(ErrorKind::DomainError, "matrix has non-finite entries");
    }

    Matrix w = a;  // columns are rotated in place until mutually orthogonal
    Matrix v = Matrix::identity(n);
    Svd out;
    bool converged = n <= 1 || m == 0;
    // Columns that have collapsed to round-off level are left alone; rotating
    // them against each other can cycle without converging.
    const double floor = kEps * kEps * a.frobenius_norm() * a.frobenius_norm();
    // Round-off in the inner product itself is about sqrt(m) eps; a tighter
    // orthogonality test can fail forever.
    const double ortho = kEps * std::sqrt(static_cast<double>(std::max<std::size_t>(m, 1)));

    while (!converged && out.sweeps < max_sweeps) {
        ++out.sweeps;
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0.0;
                double beta = 0.0;
                double gamma = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    alpha += w(i, p) * w(i, p);
                    beta += w(i, q) * w(i, q);
                    gamma += w(i, p) * w(i, q);
                }
                if (gamma == 0.0 || std::min(alpha, beta) <= floor ||
                    std::abs(gamma) <= ortho * std::sqrt(alpha * beta)) {
                    continue;
                }
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < m; ++i) {
                    const double wp = w(i, p);
                    const double wq = w(i, q);
                    w(i, p) = c * wp - s * wq;
                    w(i, q) = s * wp + c * wq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vp = v(i, p);
                    const double vq = v(i, q);
                    v(i, p) = c * vp - s * vq;
                    v(i, q) = s * vp + c * vq;
                }
            }
        }
        converged = !rotated;
    }
    if (!converged) {
        throw Error(ErrorKind::NoConvergence,
                    "one-sided Jacobi SVD exceeded " + std::to_string(max_sweeps) + " sweeps");
    }

    std::vector<double> norms(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += w(i, j) * w(i, j);
        norms[j] = std::sqrt(s);
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return norms[i] > norms[j]; });

    const std::size_t r = std::min(m, n);
    out.sigma.resize(n);
    out.right = Matrix(n, n);
    out.left = Matrix(m, r);
    const double cutoff = (norms.empty() ? 0.0 : norms[order[0]]) * kEps * static_cast<double>(std::max(m, n));
    std::vector<bool> filled(r, false);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t j = order[k];
        out.sigma[k] = norms[j];
        for (std::size_t i = 0; i < n; ++i) out.right(i, k) = v(i, j);
        if (k < r && norms[j] > cutoff && norms[j] > 0.0) {
            for (std::size_t i = 0; i < m; ++i) out.left(i, k) = w(i, j) / norms[j];
            filled[k] = true;
        }
    }
    complete_orthonormal(out.left, filled);
    return out;
}

}  // namespace

Svd svd(const Matrix& a, int max_sweeps) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    if (m >= n) return svd_tall(a, max_sweeps);

    // Wide input: at least n - m columns would have to be rotated down to
    // round-off, where the iteration can cycle. Factor A^T instead and swap.
    const Svd t = svd_tall(a.transposed(), max_sweeps);
    Svd out;
    out.sweeps = t.sweeps;
    out.sigma.assign(n, 0.0);
    std::copy(t.sigma.begin(), t.sigma.end(), out.sigma.begin());
    out.left = t.right;
    out.right = Matrix(n, n);
    out.right.set_block(0, 0, t.left);
    std::vector<bool> filled(n, false);
    std::fill(filled.begin(), filled.begin() + static_cast<std::ptrdiff_t>(m), true);
    complete_orthonormal(out.right, filled);
    return out;
}

std::vector<double> singular_values(const Matrix& a) {
    // Jacobi on the shorter side converges in fewer rotations.
    if (a.rows() < a.cols()) {
        auto s = svd(a.transposed()).sigma;
        return s;
    }
    return svd(a).sigma;
}

}  // namespace srot
