#include "srot/random.hpp"

#include <cmath>
#include <numbers>

namespace srot {

double Rng::normal() {
    // 1 - u keeps the logarithm argument in (0, 1].
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Matrix random_gaussian(std::size_t rows, std::size_t cols, Rng& rng) {
    Matrix m(rows, cols);
    for (double& x : m.data()) x = rng.normal();
    return m;
}

Matrix random_orthogonal(std::size_t n, Rng& rng) {
    Matrix q = random_gaussian(n, n, rng);
    for (std::size_t j = 0; j < n; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                double proj = 0.0;
                for (std::size_t i = 0; i < n; ++i) proj += q(i, k) * q(i, j);
                for (std::size_t i = 0; i < n; ++i) q(i, j) -= proj * q(i, k);
            }
        }
        double nrm = 0.0;
        for (std::size_t i = 0; i < n; ++i) nrm += q(i, j) * q(i, j);
        nrm = std::sqrt(nrm);
        for (std::size_t i = 0; i < n; ++i) q(i, j) /= nrm;
    }
    return q;
}

}  // namespace srot
