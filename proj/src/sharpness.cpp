#include "srot/sharpness.hpp"

#include <cmath>

#include "srot/bounds.hpp"
#include "srot/errors.hpp"

namespace srot::examples {

namespace {

void require_family(double gamma, double a, double b1, double b2) {
    if (!(a >= 0.0) || !(a < gamma)) throw Error(ErrorKind::DomainError, "need 0 <= a < gamma");
    if (!(b1 >= 0.0) || !(b2 >= 0.0)) throw Error(ErrorKind::DomainError, "need b1, b2 >= 0");
}

}  // namespace

BlockOperator almosel_build(double gamma, double a, double b1, double b2) {
    require_family(gamma, a, b1, b2);
    return make_block_operator(SymMatrix(Matrix{{a}}), SymMatrix(Matrix{{-gamma, 0.0}, {0.0, gamma}}),
                               Matrix{{b1, b2}});
}

double almosel_case1_angular_norm(double d, double v) {
    if (!(d > 0.0) || !(v >= 0.0)) throw Error(ErrorKind::DomainError, "need d > 0 and v >= 0");
    return 2.0 * v / (d + std::sqrt(d * d + 4.0 * v * v));
}

double almosel_case1_expected(double d, double v) { return bounds::sin_arctan(almosel_case1_angular_norm(d, v)); }

AlmoselCase2 almosel_case2_params(double gamma, double a, double b) {
    require_family(gamma, a, 0.0, 0.0);
    const double lower = std::sqrt(gamma * gamma - a * a);
    const double upper = std::sqrt(2.0 * gamma * (gamma - a));
    if (b < lower * (1.0 - 1e-12) || !(b < upper)) {
        throw Error(ErrorKind::DomainError, "need sqrt(gamma^2 - a^2) <= b < sqrt(2 gamma (gamma - a))");
    }

    AlmoselCase2 p;
    if (a > 0.0) {
        const double c = (2.0 * gamma * gamma - b * b) / (2.0 * a);
        p.z0 = gamma * gamma / (c + std::sqrt(std::max(c * c - gamma * gamma, 0.0)));
    }
    const double g2 = gamma * gamma;
    p.t = (b * b * (gamma - p.z0) + (g2 - p.z0 * p.z0) * (a - p.z0)) / (2.0 * gamma * b * b);
    if (!(p.t >= 0.0 && p.t < 1.0) || !(p.z0 > -gamma && p.z0 < gamma)) {
        throw Error(ErrorKind::ResidualTooLarge, "case-2 parameters left their admissible range");
    }
    p.b1 = std::sqrt(1.0 - p.t) * b;
    p.b2 = std::sqrt(p.t) * b;
    return p;
}

BlockOperator ms55_build(double gamma, double a, double b1, double b2) {
    require_family(gamma, a, b1, b2);
    return make_block_operator(SymMatrix(Matrix{{-a, 0.0}, {0.0, a}}),
                               SymMatrix(Matrix{{-gamma, 0.0}, {0.0, gamma}}), Matrix{{b1, b2}, {b2, b1}});
}

Ms55Kappas ms55_kappas(double gamma, double a, double b1, double b2) {
    require_family(gamma, a, b1, b2);
    if (!(b1 + b2 < std::sqrt(2.0 * gamma * (gamma - a)))) {
        throw Error(ErrorKind::DomainError, "need b1 + b2 < sqrt(2 gamma (gamma - a))");
    }
    const double rp = std::sqrt((gamma + a) * (gamma + a) + 4.0 * b2 * b2);
    const double rm = std::sqrt((gamma - a) * (gamma - a) + 4.0 * b1 * b1);
    const double denom = (gamma + a) * rm + (gamma - a) * rp;
    return {2.0 * b1 * rp / denom, 2.0 * b2 * rm / denom};
}

Matrix ms55_angular_operator(const Ms55Kappas& k) {
    return Matrix{{k.kappa1, k.kappa2}, {-k.kappa2, -k.kappa1}};
}

Ms55Case ms55_case_params(double gamma, double a, double b) {
    require_family(gamma, a, 0.0, 0.0);
    const double lower = 0.5 * std::sqrt(2.0 * (gamma - a) * a);
    const double upper = std::sqrt(gamma * gamma - a * a);
    if (!(b > lower) || !(b < upper)) {
        throw Error(ErrorKind::DomainError, "need sqrt(2 (gamma - a) a)/2 < b < sqrt(gamma^2 - a^2)");
    }
    Ms55Case p;
    if (a > 0.0) {
        // (sqrt(g^2 b^2 + a^2 (g^2 - a^2 - b^2)) - g b) / a, rationalized.
        const double g = gamma;
        const double root = std::sqrt(g * g * b * b + a * a * (g * g - a * a - b * b));
        p.beta = a * (g * g - a * a - b * b) / (root + g * b);
    }
    p.b1 = 0.5 * (b + p.beta);
    p.b2 = 0.5 * (b - p.beta);
    if (!(p.b1 > 0.0) || !(p.b2 > 0.0)) {
        throw Error(ErrorKind::ResidualTooLarge, "case parameters produced a non-positive coupling");
    }
    return p;
}

}  // namespace srot::examples
