#include <doctest.h>

#include <array>
#include <cmath>

#include "oracles.hpp"
#include "srot/errors.hpp"
#include "srot/harness.hpp"
#include "srot/riccati.hpp"
#include "srot/sharpness.hpp"
#include "srot/spectral.hpp"

using namespace srot;
using namespace srot::riccati;

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

AngularOperator extract(const BlockOperator& block) {
    const auto part = spectral::perturbed_partition(block, spectral::find_disposition(block));
    return extract_angular_operator(part, block);
}

// [I; X] stacked.
Matrix graph(const Matrix& x) {
    Matrix g(x.cols() + x.rows(), x.cols());
    g.set_block(0, 0, Matrix::identity(x.cols()));
    g.set_block(x.cols(), 0, x);
    return g;
}

// [-X^T; I] stacked.
Matrix cograph(const Matrix& x) {
    Matrix g(x.cols() + x.rows(), x.rows());
    g.set_block(0, 0, -1.0 * x.transposed());
    g.set_block(x.cols(), 0, Matrix::identity(x.rows()));
    return g;
}

// Two uncoupled copies of the 3x3 family: every singular value of X is double.
BlockOperator doubled_almosel(double gamma, double a, double b1, double b2) {
    const SymMatrix a0(Matrix::diagonal(std::vector<double>{a, a}));
    const SymMatrix a1(Matrix::diagonal(std::vector<double>{-gamma, gamma, -gamma, gamma}));
    const Matrix b{{b1, b2, 0, 0}, {0, 0, b1, b2}};
    return make_block_operator(a0, a1, b);
}

}  // namespace

TEST_CASE("zero coupling gives X = 0") {
    const auto block = make_block_operator(SymMatrix(Matrix{{0.0}}), SymMatrix(Matrix{{-1, 0}, {0, 1}}), Matrix(1, 2));
    const auto x = extract(block);
    CHECK(x.norm == 0.0);
    CHECK(x.riccati_residual == 0.0);
}

TEST_CASE("riccati_residual by hand and shape checks") {
    const auto block = examples::almosel_build(2, 1, 0, 0.5);
    // X = 0 leaves exactly -B^T.
    CHECK(riccati_residual(Matrix(2, 1), block) == doctest::Approx(0.5));
    CHECK(kind_of([&] { riccati_residual(Matrix(1, 2), block); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("the 3x3 family: ||X|| has its closed form and sin(arctan ||X||) is the distance") {
    for (double v : {0.1, 0.5, 1.0, 1.3}) {
        const auto block = examples::almosel_build(2, 1, 0, v);
        const auto disp = spectral::find_disposition(block);
        const auto part = spectral::perturbed_partition(block, disp);
        const auto x = extract_angular_operator(part, block);
        // In-gap eigenvalue z solves (z - a)(z - gamma) = v^2, so X = (0, v / (z - gamma)).
        const double z = 0.5 * (1 + 2) - std::sqrt(0.25 + v * v);
        CHECK(x.X(0, 0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
        CHECK(x.X(1, 0) == doctest::Approx(v / (z - 2.0)).epsilon(1e-12));
        CHECK(x.norm == doctest::Approx(examples::almosel_case1_angular_norm(1.0, v)).epsilon(1e-12));
        const double dist = spectral::projection_distance(spectral::unperturbed_projector(block), part.P0);
        CHECK(dist == doctest::Approx(x.norm / std::hypot(1.0, x.norm)).epsilon(1e-12));
    }
}

TEST_CASE("the 4x4 family: extracted X matches the closed-form angular operator") {
    for (auto [g, a, b1, b2] : {std::array<double, 4>{2, 1, 0.7, 0.2}, {1, 0.3, 0.4, 0.4}, {3, 0, 1.0, 0.5},
                                {2, 1, 0.72474487139158905, 0.27525512860841095}}) {
        const auto block = examples::ms55_build(g, a, b1, b2);
        const auto x = extract(block);
        const Matrix ref = examples::ms55_angular_operator(examples::ms55_kappas(g, a, b1, b2));
        CHECK((x.X - ref).max_abs() <= 1e-8);
        // Closed form solves the Riccati equation on its own.
        CHECK(riccati_residual(ref, block) <= 1e-12);
    }
}

TEST_CASE("graph of X is invariant for L and its orthogonal complement is the graph of -X^T") {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
        harness::GenConfig cfg;
        cfg.dim0 = 3;
        cfg.dim1 = 5;
        cfg.ratio = 0.9;
        cfg.conjugate = true;
        cfg.seed = seed;
        const auto inst = harness::generate_instance(cfg);
        const auto& block = inst.block;
        const auto part = spectral::perturbed_partition(block, spectral::find_disposition(block));
        const auto x = extract_angular_operator(part, block);
        const Matrix g = graph(x.X);
        const Matrix lam = block.a0().matrix() + block.b() * x.X;
        CHECK((block.perturbed().matrix() * g - g * lam).max_abs() <= 1e-10);
        // P0 fixes the graph and kills the co-graph.
        const Matrix& p0 = part.P0.matrix();
        CHECK((p0 * g - g).max_abs() <= 1e-10);
        CHECK((p0 * cograph(x.X)).max_abs() <= 1e-10);
        CHECK((g.transposed() * cograph(x.X)).max_abs() <= 1e-14);
        // A0 + BX is similar to L restricted to the graph: same spectrum as omega0.
        const auto ref = oracle::eigenvalues(lambda0(x, block).matrix());
        for (std::size_t k = 0; k < ref.size(); ++k) CHECK(part.omega0[k] == doctest::Approx(ref[k]).epsilon(1e-10));
    }
}

TEST_CASE("fixed-point iteration agrees with extraction") {
    for (std::uint64_t seed = 10; seed < 30; ++seed) {
        harness::GenConfig cfg;
        cfg.dim0 = 1 + seed % 5;
        cfg.dim1 = 2 + seed % 7;
        cfg.D = seed % 2 ? 2.0 : 4.0;
        cfg.ratio = 0.2 + 0.035 * static_cast<double>(seed - 10);
        cfg.conjugate = seed % 3 == 0;
        cfg.seed = seed;
        const auto inst = harness::generate_instance(cfg);
        const auto x = extract(inst.block);
        const auto fp = solve_riccati_fixed_point(inst.block, inst.disposition);
        CHECK((fp.X - x.X).max_abs() <= 1e-8 * (1.0 + x.norm));
    }
}

TEST_CASE("fixed-point iteration gives up on couplings far outside its basin") {
    const auto block = examples::almosel_build(1, 0.5, 0.0, 3.0);
    const auto disp = spectral::find_disposition(block);
    CHECK(kind_of([&] { solve_riccati_fixed_point(block, disp, 1e-13, 200); }) == ErrorKind::NoConvergence);
}

TEST_CASE("lambda0 on the 3x3 family") {
    SUBCASE("a = 0, b = 1.2 split evenly: Lambda0 = z0 = 0") {
        const auto block = examples::almosel_build(1, 0, 1.2 / std::sqrt(2.0), 1.2 / std::sqrt(2.0));
        const auto x = extract(block);
        CHECK(lambda0(x, block)(0, 0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    }
    SUBCASE("Lambda0 reproduces the in-gap eigenvalue and rejects a wrong one") {
        const auto block = examples::almosel_build(2, 1, 0.3, 0.4);
        const auto part = spectral::perturbed_partition(block, spectral::find_disposition(block));
        const auto x = extract_angular_operator(part, block);
        CHECK(lambda0(x, block, part.omega0)(0, 0) == doctest::Approx(part.omega0[0]).epsilon(1e-12));
        const std::vector<double> wrong{part.omega0[0] + 0.1};
        CHECK(kind_of([&] { lambda0(x, block, wrong); }) == ErrorKind::ResidualTooLarge);
    }
}

TEST_CASE("eigenvector identities hold on the closed-form 4x4 operator") {
    const auto block = examples::ms55_build(2, 1, 0.7, 0.2);
    const auto x = make_angular_operator(examples::ms55_angular_operator(examples::ms55_kappas(2, 1, 0.7, 0.2)), block);
    const auto ids = verify_lemma_identities(x, block);
    CHECK(ids.per_pair.size() == 2);
    CHECK(ids.max_residual <= 1e-10);
}

TEST_CASE("eigenvector identities survive rotation inside repeated singular values") {
    const auto block = doubled_almosel(2, 0.5, 0.3, 0.6);
    const auto x = extract(block);
    CHECK(x.singular_values[0] == doctest::Approx(x.singular_values[1]).epsilon(1e-12));
    for (std::uint64_t seed : {0u, 1u, 99u}) {
        const auto ids = verify_lemma_identities(x, block, seed);
        std::size_t rotated = 0;
        for (const auto& p : ids.per_pair) rotated += p.rotated ? 1 : 0;
        CHECK(rotated == 2);
        CHECK(ids.max_residual <= 1e-10);
    }
}

TEST_CASE("eigenvector identities with a kernel in X") {
    // Second copy uncoupled: sigma = 0 and the partner vector vanishes.
    const SymMatrix a0(Matrix::diagonal(std::vector<double>{0.5, -0.5}));
    const SymMatrix a1(Matrix::diagonal(std::vector<double>{-2, 2}));
    const auto block = make_block_operator(a0, a1, Matrix{{0.4, 0.3}, {0.0, 0.0}});
    const auto x = extract(block);
    CHECK(x.singular_values[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    CHECK(verify_lemma_identities(x, block).max_residual <= 1e-10);
}

TEST_CASE("eigenvector identities on random instances") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        harness::GenConfig cfg;
        cfg.dim0 = 2 + seed % 5;
        cfg.dim1 = 3 + seed % 6;
        cfg.ratio = 0.3 + 0.03 * static_cast<double>(seed);
        cfg.conjugate = true;
        cfg.seed = seed;
        const auto inst = harness::generate_instance(cfg);
        const auto x = extract(inst.block);
        CHECK(verify_lemma_identities(x, inst.block, seed).max_residual <= 1e-8);
    }
}

TEST_CASE("wide angular operator from a four-by-two instance") {
    // dim1 < dim0 leaves X with a two-dimensional kernel.
    harness::GenConfig cfg;
    cfg.dim0 = 4;
    cfg.dim1 = 2;
    cfg.D = 2.0;
    cfg.ratio = 1.2;
    cfg.seed = 7958955049054603981ull;
    const auto r = harness::run_trial(cfg);
    REQUIRE(r.ok());
    CHECK(r.margin >= 0.0);
    CHECK(r.lemma_max_residual <= 1e-8);
    const auto inst = harness::generate_instance(cfg);
    const auto x = extract(inst.block);
    CHECK(x.singular_values.size() == 4);
    CHECK(x.singular_values[2] <= 1e-12 * x.norm);
    CHECK(x.singular_values[3] <= 1e-12 * x.norm);
}
