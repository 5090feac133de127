#include "srot/bounds.hpp"

#include <cmath>
#include <string>

#include "srot/errors.hpp"

namespace srot::bounds {

namespace {

// Relative slack accepted on closed domain edges, and the (relative)
// round-off level below which a negative radicand is clamped to zero.
constexpr double kEdgeSlack = 1e-12;
constexpr double kRadicandGuard = 1e-12;

[[noreturn]] void domain(const std::string& what) { throw Error(ErrorKind::DomainError, what); }

void require_disposition(double D, double d) {
    if (!(D > 0.0) || !(d > 0.0) || d > 0.5 * D) domain("need D > 0 and 0 < d <= D/2");
}

void require_v(double v) {
    if (!(v >= 0.0) || !std::isfinite(v)) domain("need v >= 0");
}

double guarded_sqrt(double x, double scale) {
    if (x >= 0.0) return std::sqrt(x);
    if (x >= -kRadicandGuard * scale) return 0.0;
    domain("negative radicand " + std::to_string(x));
}

// sqrt(d(D - d)), the Omega1 / Omega2 interface.
double interface_v(double D, double d) { return std::sqrt(d * (D - d)); }

// sqrt(d(D - 2d)) / 2, the Omega1_0 / Omega1_1 interface.
double inner_v(double D, double d) { return 0.5 * std::sqrt(d * (D - 2.0 * d)); }

}  // namespace

double half_angle_tan(double x) { return x / (1.0 + std::hypot(1.0, x)); }

double sin_arctan(double m) { return m / std::hypot(1.0, m); }

double r_v(double D, double d, double v) {
    if (!(d > 0.0) || !(d < D)) domain("r_V needs 0 < d < D");
    require_v(v);
    const double r = v * half_angle_tan(2.0 * v / (D - d));
    if (v < std::sqrt(d * D) && !(r < d)) {
        throw Error(ErrorKind::ResidualTooLarge, "r_V >= d inside the admissible range");
    }
    return r;
}

double kappa(double D, double d, double v) {
    require_disposition(D, d);
    require_v(v);
    const double edge = interface_v(D, d);
    if (!(v < edge)) domain("kappa is defined only for v < sqrt(d(D - d))");
    if (v <= inner_v(D, d)) return 2.0 * v / d;
    const double denom = 2.0 * (edge - v) * (edge + v);
    return (v * D + edge * std::sqrt((D - 2.0 * d) * (D - 2.0 * d) + 4.0 * v * v)) / denom;
}

double m1(double D, double d, double v) {
    require_disposition(D, d);
    require_v(v);
    const double edge = interface_v(D, d);
    if (v > edge * (1.0 + kEdgeSlack)) domain("M1 is defined only for v <= sqrt(d(D - d))");
    if (v <= inner_v(D, d)) return 2.0 * v / (d + std::sqrt(d * d + 4.0 * v * v));
    const double root = std::sqrt((D - 2.0 * d) * (D - 2.0 * d) + 4.0 * v * v);
    const double num = v * (2.0 * v + root) + edge * (D - 2.0 * edge);
    return num / (D * v + edge * root);
}

double m1_trig(double D, double d, double v) { return std::tan(0.5 * std::atan(kappa(D, d, v))); }

double m2(double D, double d, double v) {
    require_disposition(D, d);
    require_v(v);
    if (v < interface_v(D, d) * (1.0 - kEdgeSlack) || !(v < std::sqrt(d * D))) {
        domain("M2 is defined only for sqrt(d(D - d)) <= v < sqrt(dD)");
    }
    const double scale = D * D;
    const double r1 = guarded_sqrt(d * D - v * v, scale);
    const double r2 = guarded_sqrt((D - d) * D - v * v, scale);
    return guarded_sqrt(1.0 + 2.0 * v * v / scale - 2.0 / scale * r1 * r2, 1.0);
}

BoundEvaluation m_total(double D, double d, double v) {
    require_disposition(D, d);
    require_v(v);
    if (!(v < std::sqrt(d * D))) domain("need v < sqrt(dD)");

    BoundEvaluation e;
    e.point = classify_region(D, d, v);
    e.r_V = r_v(D, d, v);
    const double edge = interface_v(D, d);
    if (v < edge) {
        e.kappa = kappa(D, d, v);
        e.M1 = m1(D, d, v);
        e.M = *e.M1;
    } else {
        if (v == edge) e.M1 = m1(D, d, v);
        e.M2 = m2(D, d, v);
        e.M = *e.M2;
    }
    e.projection_bound = sin_arctan(e.M);
    if (v < std::sqrt(2.0) * d) e.apriori_bound = apriori_bound(d, v);
    return e;
}

double apriori_bound(double d, double v) {
    if (!(d > 0.0)) domain("need d > 0");
    require_v(v);
    if (!(v < std::sqrt(2.0) * d)) domain("a priori bound needs v < sqrt(2) d");
    return sin_arctan(v / d);
}

double phi(double gamma, double a, double b, double z) {
    return (b * b + 2.0 * z * (a - z)) / (gamma * gamma - z * z);
}

PhiMaximum phi_maximizer(double gamma, double a, double b) {
    if (!(a >= 0.0) || !(a < gamma)) domain("need 0 <= a < gamma");
    const double lower = std::sqrt(gamma * gamma - a * a);
    const double upper = std::sqrt(2.0 * gamma * (gamma - a));
    if (b < lower * (1.0 - kEdgeSlack) || !(b < upper)) {
        domain("need sqrt(gamma^2 - a^2) <= b < sqrt(2 gamma (gamma - a))");
    }

    PhiMaximum out;
    if (a > 0.0) {
        // Smaller root of a z^2 - (2 gamma^2 - b^2) z + a gamma^2 = 0, written
        // via the product of roots to avoid cancellation when c >> gamma.
        const double c = (2.0 * gamma * gamma - b * b) / (2.0 * a);
        out.z0 = gamma * gamma / (c + std::sqrt(std::max(c * c - gamma * gamma, 0.0)));
    }
    out.phi_max = phi(gamma, a, b, out.z0);

    if (!(out.z0 >= 0.0 && out.z0 < gamma)) {
        throw Error(ErrorKind::ResidualTooLarge, "stationary point of phi left [0, gamma)");
    }
    const double m = m2(2.0 * gamma, gamma - a, b);
    if (std::abs(out.phi_max - m * m) > 1e-10 * m * m) {
        throw Error(ErrorKind::ResidualTooLarge, "phi(z0) disagrees with M2^2");
    }
    return out;
}

}  // namespace srot::bounds
