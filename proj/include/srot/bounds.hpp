#pragma once

#include <optional>

#include "srot/core.hpp"

// Estimating functions for the rotation of the spectral subspace of A0 under
// an off-diagonal perturbation of norm v, in terms of the gap length D and
// the distance d from spec(A0) to spec(A1).
//
// Domain: Omega = {D > 0, 0 < d <= D/2, 0 <= v < sqrt(dD)}, split into
//   Omega1 = {v < sqrt(d(D - d))}      where M = M1 (< 1)
//   Omega2 = {v >= sqrt(d(D - d))}     where M = M2 (in [1, sqrt 2))
// and Omega1 itself into Omega1_0 (v <= sqrt(d(D - 2d))/2) and Omega1_1.
namespace srot::bounds {

struct BoundEvaluation {
    BoundPoint point;
    double r_V = 0.0;
    std::optional<double> kappa;
    std::optional<double> M1;
    std::optional<double> M2;
    double M = 0.0;
    /// sin(arctan M)
    double projection_bound = 0.0;
    /// sin(arctan(v/d)), defined for v < sqrt(2) d.
    std::optional<double> apriori_bound;
};

/// tan(arctan(x)/2) = x / (1 + sqrt(1 + x^2)).
double half_angle_tan(double x);

/// sin(arctan m) = m / sqrt(1 + m^2).
double sin_arctan(double m);

/// Spectral inclusion radius v tan(arctan(2v/(D - d))/2).
double r_v(double D, double d, double v);

double kappa(double D, double d, double v);

/// M1 via its algebraic forms; continuous extension to v = sqrt(d(D-d)).
double m1(double D, double d, double v);

/// tan(arctan(kappa)/2) evaluated literally with std::tan/std::atan.
/// Reference only; m1() is the production path.
double m1_trig(double D, double d, double v);

double m2(double D, double d, double v);

BoundEvaluation m_total(double D, double d, double v);

double apriori_bound(double d, double v);

struct PhiMaximum {
    double z0 = 0.0;
    double phi_max = 0.0;
};

/// phi(z) = (b^2 + 2 z (a - z)) / (gamma^2 - z^2) on [0, gamma).
double phi(double gamma, double a, double b, double z);

/// Stationary point z0 of phi on [0, gamma) and phi(z0), for a gap centred at
/// zero with half-width gamma and spec(A0) = {a}.
PhiMaximum phi_maximizer(double gamma, double a, double b);

}  // namespace srot::bounds
