#pragma once

#include "srot/core.hpp"

// Two explicit low-dimensional families on which the projection bound is
// attained with equality. Both use the gap (-gamma, gamma) of
// spec(A1) = {-gamma, gamma}, so D = 2 gamma and d = gamma - a.
namespace srot::examples {

/// 3x3 family: A0 = [a], A1 = diag(-gamma, gamma), B = [b1 b2].
BlockOperator almosel_build(double gamma, double a, double b1, double b2);

/// ||X|| = 2v / (d + sqrt(d^2 + 4 v^2)) for the b1 = 0 member.
double almosel_case1_angular_norm(double d, double v);

/// Projection distance of the b1 = 0 member, sin(arctan ||X||).
double almosel_case1_expected(double d, double v);

struct AlmoselCase2 {
    double z0 = 0.0;
    double t = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
};

/// Splitting b = ||B|| into (b1, b2) so that the 3x3 instance attains the M2
/// bound. Requires sqrt(gamma^2 - a^2) <= b < sqrt(2 gamma (gamma - a)).
AlmoselCase2 almosel_case2_params(double gamma, double a, double b);

/// 4x4 family: A0 = diag(-a, a), A1 = diag(-gamma, gamma),
/// B = [[b1, b2], [b2, b1]], with ||B|| = b1 + b2.
BlockOperator ms55_build(double gamma, double a, double b1, double b2);

struct Ms55Kappas {
    double kappa1 = 0.0;
    double kappa2 = 0.0;
};

/// Entries of the closed-form angular operator X = [[k1, k2], [-k2, -k1]].
Ms55Kappas ms55_kappas(double gamma, double a, double b1, double b2);

/// X assembled from ms55_kappas.
Matrix ms55_angular_operator(const Ms55Kappas& k);

struct Ms55Case {
    double beta = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
};

/// Splitting b = ||B|| into (b1, b2) so that the 4x4 instance attains the M1
/// bound on Omega1_1. Requires sqrt(2 (gamma - a) a)/2 < b < sqrt(gamma^2 - a^2).
Ms55Case ms55_case_params(double gamma, double a, double b);

}  // namespace srot::examples
