#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "srot/core.hpp"
#include "srot/errors.hpp"
#include "srot/random.hpp"

using namespace srot;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an srot::Error");
    return ErrorKind::ParseError;
}

int rank(Region r) { return static_cast<int>(r); }

}  // namespace

TEST_CASE("SymMatrix symmetrizes round-off and rejects real asymmetry") {
    const SymMatrix s(Matrix{{1.0, 2.0 + 1e-15}, {2.0, 3.0}});
    CHECK(s(0, 1) == s(1, 0));
    CHECK(kind_of([] { SymMatrix(Matrix{{1.0, 2.0}, {2.1, 3.0}}); }) == ErrorKind::DimensionMismatch);
    CHECK(kind_of([] { SymMatrix(Matrix(2, 3)); }) == ErrorKind::DimensionMismatch);
    CHECK(kind_of([] { SymMatrix(Matrix{}); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("make_block_operator assembles the 3x3 family") {
    const auto block = make_block_operator(SymMatrix(Matrix{{1.0}}), SymMatrix(Matrix{{-2.0, 0.0}, {0.0, 2.0}}),
                                           Matrix{{0.3, 0.4}});
    CHECK(block.dim() == 3);
    const auto l = block.perturbed();
    CHECK(l(0, 0) == 1.0);
    CHECK(l(0, 1) == 0.3);
    CHECK(l(2, 0) == 0.4);
    CHECK(l(1, 2) == 0.0);
    CHECK(block.perturbation_norm() == doctest::Approx(0.5));
    CHECK(block.unperturbed()(0, 2) == 0.0);
    CHECK(block.perturbation()(0, 0) == 0.0);
}

TEST_CASE("make_block_operator accepts zero coupling and rejects bad shapes") {
    const auto zero = make_block_operator(SymMatrix(Matrix{{0.0}}), SymMatrix(Matrix{{1.0}}), Matrix{{0.0}});
    CHECK(zero.perturbation_norm() == 0.0);

    const SymMatrix a2(Matrix{{1, 0}, {0, 1}});
    CHECK(kind_of([&] { make_block_operator(a2, a2, Matrix(2, 3)); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("classify_region examples") {
    CHECK(classify_region(4, 1, 0.5).region == Region::Omega1_0);
    CHECK(classify_region(4, 1, std::sqrt(3.0)).region == Region::BoundaryOmega12);
    CHECK(classify_region(2, 1, 1.5).region == Region::OutsideOmega);
    CHECK(classify_region(4, 1, 1.0).region == Region::Omega1_1);
    CHECK(classify_region(4, 1, 1.9).region == Region::Omega2);
    CHECK(classify_region(4, 1, 2.0).region == Region::OutsideOmega);
    CHECK(classify_region(4, 2.5, 0.1).region == Region::OutsideOmega);
    CHECK(classify_region(4, 0.0, 0.1).region == Region::OutsideOmega);
    // D = 2d: Omega1_0 is the single point v = 0.
    CHECK(classify_region(2, 1, 0.0).region == Region::Omega1_0);
    CHECK(classify_region(2, 1, 0.3).region == Region::Omega1_1);
}

TEST_CASE("classify_region is a monotone partition in v") {
    Rng rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        const double D = rng.uniform(0.1, 10.0);
        const double d = rng.uniform(1e-3, 0.5) * D;
        const double vmax = 1.2 * std::sqrt(d * D);
        int last = -1;
        for (int k = 0; k <= 200; ++k) {
            const double v = vmax * k / 200.0;
            const Region r = classify_region(D, d, v).region;
            // Recompute the label straight from the defining inequalities.
            const double edge = std::sqrt(d * (D - d));
            Region expect;
            if (v >= std::sqrt(d * D)) expect = Region::OutsideOmega;
            else if (std::abs(v - edge) <= 1e-9 * std::sqrt(d * D)) expect = Region::BoundaryOmega12;
            else if (v <= 0.5 * std::sqrt(d * (D - 2 * d))) expect = Region::Omega1_0;
            else if (v < edge) expect = Region::Omega1_1;
            else expect = Region::Omega2;
            CHECK(r == expect);
            CHECK(rank(r) >= last);
            last = rank(r);
        }
    }
}

TEST_CASE("make_disposition reproduces brute-force distance and gap") {
    Rng rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        const double gl = rng.uniform(-5, 0);
        const double gr = gl + rng.uniform(0.5, 5);
        std::vector<double> s1 = {gl, gr};
        for (int k = 0; k < 4; ++k) s1.push_back(rng.uniform() < 0.5 ? gl - rng.uniform(0, 3) : gr + rng.uniform(0, 3));
        std::vector<double> s0;
        for (int k = 0; k < 3; ++k) s0.push_back(rng.uniform(gl + 0.01 * (gr - gl), gr - 0.01 * (gr - gl)));

        const auto disp = make_disposition(s0, s1);
        double brute = std::numeric_limits<double>::infinity();
        for (double a : s0)
            for (double b : s1) brute = std::min(brute, std::abs(a - b));
        CHECK(disp.d == brute);
        CHECK(disp.D == gr - gl);
        CHECK(disp.gamma_l == gl);
        CHECK(disp.gamma_r == gr);
        CHECK(disp.d <= 0.5 * disp.D);
        CHECK(std::is_sorted(disp.sigma0.begin(), disp.sigma0.end()));
    }
}

TEST_CASE("make_disposition rejects spectra outside a single finite gap") {
    CHECK(kind_of([] { make_disposition({0, 3}, {-1, 1}); }) == ErrorKind::DispositionViolated);
    CHECK(kind_of([] { make_disposition({0}, {1, 2}); }) == ErrorKind::DispositionViolated);
    CHECK(kind_of([] { make_disposition({0}, {-1, 0}); }) == ErrorKind::DispositionViolated);
    CHECK(kind_of([] { make_disposition({}, {-1, 1}); }) == ErrorKind::DispositionViolated);
}
