#include <doctest.h>

#include <cmath>

#include "bellscope/linalg.hpp"
#include "bellscope/rng.hpp"
#include "oracles.hpp"

using namespace bellscope;

namespace {

ComplexMatrix random_hermitian(int d, Rng& rng) {
    ComplexMatrix h(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        h(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = rng.gaussian();
        for (int j = i + 1; j < d; ++j) {
            const Complex z = rng.complex_gaussian();
            h(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = z;
            h(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = std::conj(z);
        }
    }
    return h;
}

ComplexMatrix diag(std::vector<double> values) {
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

}  // namespace

TEST_CASE("hermitian_eigs: fixed spectra") {
    auto id3 = hermitian_eigs(ComplexMatrix::identity(3));
    for (double ev : id3.eigenvalues) CHECK(ev == doctest::Approx(1.0).epsilon(1e-12));

    auto d = hermitian_eigs(diag({1.0, 3.0, 2.0}));
    CHECK(d.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(d.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(d.eigenvalues[2] == doctest::Approx(1.0).epsilon(1e-12));

    auto px = hermitian_eigs(pauli(1));
    CHECK(px.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(px.eigenvalues[1] == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("hermitian_eigs: rejects bad input") {
    ComplexMatrix m(2, 2);
    m(0, 1) = 1.0;  // not Hermitian: (1,0) stays 0
    CHECK_THROWS_AS(hermitian_eigs(m), ValidationError);
    CHECK_THROWS_AS(hermitian_eigs(ComplexMatrix::identity(17)), ValidationError);
}

TEST_CASE("hermitian_eigs: reconstruction and orthonormality on random matrices") {
    int k = 0;
    for (int d : {2, 3, 4, 8}) {
        for (int rep = 0; rep < 250; ++rep) {
            Rng rng(11, static_cast<std::uint64_t>(k++));
            const ComplexMatrix h = random_hermitian(d, rng);
            const auto eig = hermitian_eigs(h);

            ComplexMatrix lambda(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
            double sum = 0.0;
            for (int i = 0; i < d; ++i) {
                lambda(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) =
                    eig.eigenvalues[static_cast<std::size_t>(i)];
                sum += eig.eigenvalues[static_cast<std::size_t>(i)];
                if (i > 0)
                    REQUIRE(eig.eigenvalues[static_cast<std::size_t>(i)] <=
                            eig.eigenvalues[static_cast<std::size_t>(i - 1)] + 1e-12);
            }
            const ComplexMatrix v = eig.eigenvectors;
            REQUIRE((h - v * lambda * v.adjoint()).max_abs_diff(
                        ComplexMatrix(static_cast<std::size_t>(d), static_cast<std::size_t>(d))) <
                    1e-10);
            REQUIRE((v.adjoint() * v)
                        .max_abs_diff(ComplexMatrix::identity(static_cast<std::size_t>(d))) <
                    1e-10);
            REQUIRE(std::abs(sum - h.trace().real()) < 1e-10);
        }
    }
}

TEST_CASE("kron: fixed products") {
    CHECK(kron(pauli(0), pauli(0)).max_abs_diff(ComplexMatrix::identity(4)) == 0.0);

    const ComplexMatrix zz = kron(pauli(3), pauli(3));
    CHECK(zz.max_abs_diff(diag({1.0, -1.0, -1.0, 1.0})) == 0.0);

    // sigma_x x I flips the first qubit: hand expansion has ones on the
    // anti-block-diagonal
    const ComplexMatrix xi = kron(pauli(1), pauli(0));
    ComplexMatrix expected(4, 4);
    expected(0, 2) = expected(2, 0) = expected(1, 3) = expected(3, 1) = 1.0;
    CHECK(xi.max_abs_diff(expected) == 0.0);
}

TEST_CASE("partial_trace: fixed cases") {
    // |000><000| keep (0,1) -> |00><00|
    ComplexMatrix rho(8, 8);
    rho(0, 0) = 1.0;
    ComplexMatrix expected(4, 4);
    expected(0, 0) = 1.0;
    CHECK(partial_trace(rho, 3, {0, 1}).max_abs_diff(expected) < 1e-14);

    // GHZ_3 keep (0,1) -> (|00><00| + |11><11|)/2, against the direct oracle
    ComplexMatrix ghz(8, 8);
    ghz(0, 0) = ghz(0, 7) = ghz(7, 0) = ghz(7, 7) = 0.5;
    const ComplexMatrix reduced = partial_trace(ghz, 3, {0, 1});
    ComplexMatrix ghz_expected(4, 4);
    ghz_expected(0, 0) = ghz_expected(3, 3) = 0.5;
    CHECK(reduced.max_abs_diff(ghz_expected) < 1e-14);
    CHECK(reduced.max_abs_diff(oracles::direct_partial_trace(ghz, 3, {0, 1})) < 1e-14);

    // keep all -> identity map
    CHECK(partial_trace(ghz, 3, {0, 1, 2}).max_abs_diff(ghz) < 1e-14);
}

TEST_CASE("partial_trace: validation") {
    ComplexMatrix rho(4, 4);
    rho(0, 0) = 1.0;
    CHECK_THROWS_AS(partial_trace(rho, 2, {0, 0}), ValidationError);
    CHECK_THROWS_AS(partial_trace(rho, 2, {0, 2}), ValidationError);
}

TEST_CASE("partial_trace: trace preservation, hermiticity, composition") {
    for (int rep = 0; rep < 50; ++rep) {
        Rng rng(23, static_cast<std::uint64_t>(rep));
        // random 3-qubit density from a Gaussian Hermitian square
        ComplexMatrix g(8, 8);
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t j = 0; j < 8; ++j) g(i, j) = rng.complex_gaussian();
        ComplexMatrix rho = g * g.adjoint();
        rho = (Complex{1.0, 0.0} / rho.trace()) * rho;

        const ComplexMatrix r01 = partial_trace(rho, 3, {0, 1});
        REQUIRE(std::abs(r01.trace() - rho.trace()) < 1e-12);
        REQUIRE(r01.hermiticity_defect() == 0.0);  // symmetrized output

        // tracing out qubit 2 then qubit 1 == tracing out {1,2} at once
        const ComplexMatrix two_step = partial_trace(partial_trace(rho, 3, {0, 1}), 2, {0});
        const ComplexMatrix one_step = partial_trace(rho, 3, {0});
        REQUIRE(two_step.max_abs_diff(one_step) < 1e-12);

        // against the independent oracle
        REQUIRE(r01.max_abs_diff(oracles::direct_partial_trace(rho, 3, {0, 1})) < 1e-12);
    }
}

TEST_CASE("singular_values_3x3: fixed cases and transpose invariance") {
    const Mat3 id{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    auto sv = singular_values_3x3(id);
    for (double s : sv) CHECK(s == doctest::Approx(1.0).epsilon(1e-12));

    const Mat3 d{{{2.0 / 3.0, 0, 0}, {0, 2.0 / 3.0, 0}, {0, 0, -1.0 / 3.0}}};
    sv = singular_values_3x3(d);
    CHECK(sv[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(sv[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(sv[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    sv = singular_values_3x3(Mat3{});
    for (double s : sv) CHECK(s == 0.0);

    for (int rep = 0; rep < 200; ++rep) {
        Rng rng(31, static_cast<std::uint64_t>(rep));
        Mat3 m{};
        for (auto& row : m)
            for (double& x : row) x = rng.gaussian();
        const auto a = singular_values_3x3(m);
        const auto b = singular_values_3x3(transpose(m));
        for (int i = 0; i < 3; ++i) {
            REQUIRE(a[static_cast<std::size_t>(i)] >= -1e-15);
            REQUIRE(std::abs(a[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(i)]) <
                    1e-10);
        }
        // sigma_i^2 are eigenvalues of M^T M
        const auto tau = gram_eigenvalues_3x3(m);
        for (int i = 0; i < 3; ++i)
            REQUIRE(std::abs(a[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(i)] -
                             tau[static_cast<std::size_t>(i)]) < 1e-10);
    }
}
