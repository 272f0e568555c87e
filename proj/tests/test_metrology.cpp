#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lhs/metrology.hpp"
#include "test_support.hpp"

#include <cmath>
#include <random>

using namespace lhs;
using namespace lhs::test;

namespace {

QuantumState ghz_pure(std::size_t n) {
    const QubitLayout layout = b_layout(n);
    Vector v = Vector::Zero(layout.dim());
    v(0) = v(layout.dim() - 1) = 1.0 / std::sqrt(2.0);
    return QuantumState(layout, (v * v.adjoint()).eval());
}

QuantumState plus_polarized(std::size_t n) {
    const QubitLayout layout = b_layout(n);
    Vector v = Vector::Constant(layout.dim(), 1.0 / std::sqrt(static_cast<double>(layout.dim())));
    return QuantumState(layout, (v * v.adjoint()).eval());
}

} // namespace

TEST_CASE("qfi: commuting, Bell, and GHZ generator values") {
    const QubitLayout b2 = b_layout(2);
    const HermitianObservable j_z2 = collective_spin(b2, {0, 0, 1});
    const QuantumState mixed(b2, (Matrix::Identity(4, 4) / 4.0).eval());
    CHECK(qfi(mixed, j_z2).value == doctest::Approx(0.0).epsilon(1e-10));

    CHECK(qfi(ghz_pure(2), j_z2).value == doctest::Approx(4.0).epsilon(1e-10));

    // Pure-state oracle: F_Q = 4 Var, and Var[GHZ_4, J_z] = 4.
    const QubitLayout b4 = b_layout(4);
    const HermitianObservable j_z4 = collective_spin(b4, {0, 0, 1});
    const QuantumState ghz4 = ghz_pure(4);
    CHECK(variance(ghz4, j_z4) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(qfi(ghz4, j_z4).value == doctest::Approx(16.0).epsilon(1e-10));
    CHECK(qfi(ghz4, j_z4).spectral_cutoff_used == kQfiSpectralCutoff);

    CHECK_THROWS_AS(qfi(mixed, j_z4), std::invalid_argument);
}

TEST_CASE("qfi rejects non-positive matrices instead of clamping") {
    Matrix not_a_state = Matrix::Zero(2, 2);
    not_a_state(0, 0) = 1.5;
    not_a_state(1, 1) = -0.5;
    CHECK_THROWS_AS(qfi_matrix(not_a_state, pauli_z()), std::invalid_argument);
}

TEST_CASE("squeezing_ratio: commuting pair, coherent state, Bell chain") {
    const QubitLayout b2 = b_layout(2);
    const HermitianObservable j_z2 = collective_spin(b2, {0, 0, 1});
    CHECK(squeezing_ratio(ghz_pure(2), j_z2, j_z2) == doctest::Approx(0.0));

    // x-polarized coherent state of four qubits: |<J_x>|^2 / Var[J_y] = N.
    const QubitLayout b4 = b_layout(4);
    const QuantumState coherent = plus_polarized(4);
    const HermitianObservable j_z4 = collective_spin(b4, {0, 0, 1});
    const HermitianObservable j_y4 = collective_spin(b4, {0, 1, 0});
    const HermitianObservable j_x4 = collective_spin(b4, {1, 0, 0});
    // Oracle from the explicit 16x16 moments.
    const double jx_mean = expectation(coherent, j_x4);
    const double jy_var = oracle_variance(coherent.matrix(), j_y4.matrix());
    CHECK(jx_mean == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(jy_var == doctest::Approx(1.0).epsilon(1e-12));
    const double ratio = squeezing_ratio(coherent, j_z4, j_y4);
    CHECK(ratio == doctest::Approx(jx_mean * jx_mean / jy_var).epsilon(1e-10));
    CHECK(ratio == doctest::Approx(4.0).epsilon(1e-10));
    CHECK(ratio <= qfi(coherent, j_z4).value + 1e-8);

    // The Bell pair has <J_x> = 0, so the moment bound is blind while the
    // QFI saturates the chain.
    const HermitianObservable j_y2 = collective_spin(b2, {0, 1, 0});
    const double bell_ratio = squeezing_ratio(ghz_pure(2), j_z2, j_y2);
    CHECK(bell_ratio == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(bell_ratio <= qfi(ghz_pure(2), j_z2).value + 1e-8);
}

TEST_CASE("squeezing_ratio: degenerate denominators") {
    const QubitLayout b1 = b_layout(1);
    const HermitianObservable half_z(b1, (pauli_z() / 2.0).eval());
    const HermitianObservable half_x(b1, (pauli_x() / 2.0).eval());
    Matrix up = Matrix::Zero(2, 2);
    up(0, 0) = 1.0;
    const QuantumState eigen(b1, up);
    // Eigenstate of M: numerator and denominator both vanish -> 0.
    CHECK(squeezing_ratio(eigen, half_x, half_z) == 0.0);

    // A large-norm generator pushes the numerator above threshold while the
    // variance of M stays below it: indeterminate.
    const double eps = 9e-13;
    Vector v(2);
    v << std::sqrt(1.0 - eps), std::sqrt(eps);
    const QuantumState near_eigen(b1, (v * v.adjoint()).eval());
    const HermitianObservable big_y(b1, (1e4 * pauli_y() / 2.0).eval());
    CHECK_THROWS_AS(squeezing_ratio(near_eigen, big_y, half_z), std::domain_error);
}

TEST_CASE("qfi_variance_gap: pure states, the mixed qubit, the diagonal pair") {
    std::mt19937_64 rng(5);
    const QubitLayout b2 = b_layout(2);
    const HermitianObservable obs(b2, random_hermitian(4, rng));
    CHECK(qfi_variance_gap(random_pure_state(b2, rng), obs) == doctest::Approx(0.0).epsilon(1e-8));

    const QubitLayout b1 = b_layout(1);
    const QuantumState mixed1(b1, (Matrix::Identity(2, 2) / 2.0).eval());
    CHECK(qfi_variance_gap(mixed1, HermitianObservable(b1, (pauli_z() / 2.0).eval())) ==
          doctest::Approx(1.0).epsilon(1e-10));

    Matrix diag = Matrix::Zero(4, 4);
    diag(0, 0) = diag(3, 3) = 0.5;
    CHECK(qfi_variance_gap(QuantumState(b2, diag), collective_spin(b2, {0, 0, 1})) ==
          doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("qfi properties: pure identity, convexity, concavity, bounds") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::size_t> dim_dist(2, 16);
    std::uniform_real_distribution<double> weight(0.0, 1.0);

    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t dim = dim_dist(rng);
        const Vector v = random_pure_vector(dim, rng);
        const Matrix rho = v * v.adjoint();
        const Matrix h = random_hermitian(dim, rng);
        CHECK(std::abs(qfi_matrix(rho, h) - 4.0 * oracle_variance(rho, h)) <= 1e-8);
    }

    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t dim = dim_dist(rng);
        const Matrix rho1 = random_density_matrix(dim, rng);
        const Matrix rho2 = random_density_matrix(dim, rng);
        const Matrix h = random_hermitian(dim, rng);
        const double t = weight(rng);
        const Matrix mix = t * rho1 + (1 - t) * rho2;
        CHECK(qfi_matrix(mix, h) <= t * qfi_matrix(rho1, h) + (1 - t) * qfi_matrix(rho2, h) + 1e-8);
        CHECK(variance_matrix(mix, h) >=
              t * variance_matrix(rho1, h) + (1 - t) * variance_matrix(rho2, h) - 1e-8);
        CHECK(qfi_matrix(mix, h) <= 4.0 * variance_matrix(mix, h) + 1e-8);
    }

    // Heisenberg ceiling for collective rotations.
    for (std::size_t n : {1u, 2u, 3u, 4u}) {
        const QubitLayout layout = b_layout(n);
        const HermitianObservable j_z = collective_spin(layout, {0, 0, 1});
        for (int trial = 0; trial < 25; ++trial) {
            const QuantumState rho = random_state(layout, rng);
            CHECK(qfi(rho, j_z).value <= static_cast<double>(n * n) + 1e-6);
            CHECK(qfi(rho, j_z).value >= 0.0);
        }
    }

    // Moment bound stays under the QFI on random triples.
    const QubitLayout b2 = b_layout(2);
    for (int trial = 0; trial < 40; ++trial) {
        const QuantumState rho = random_state(b2, rng);
        const HermitianObservable gen(b2, random_hermitian(4, rng));
        const HermitianObservable meas(b2, random_hermitian(4, rng));
        CHECK(squeezing_ratio(rho, gen, meas) <= qfi(rho, gen).value + 1e-8);
    }
}
