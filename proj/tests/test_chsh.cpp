#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bellscope/chsh.hpp"
#include "bellscope/states.hpp"
#include "oracles.hpp"

using namespace bellscope;

namespace {

const double kRoot2 = std::numbers::sqrt2;

DensityMatrix maximally_mixed_2q() {
    return DensityMatrix(2, Complex{0.25, 0.0} * ComplexMatrix::identity(4));
}

SchmidtParams random_schmidt(std::uint64_t seed, std::uint64_t index, bool zero_l4 = false) {
    Rng rng(seed, index);
    std::array<double, 5> l{};
    const int live = zero_l4 ? 4 : 5;
    for (int i = 0; i < live; ++i) l[static_cast<std::size_t>(i)] = rng.gaussian();
    return SchmidtParams::normalized(l, rng.uniform(0.0, std::numbers::pi));
}

}  // namespace

TEST_CASE("correlation_matrix: fixed states") {
    // |00><00|: m = e3 e3^T, both Bloch vectors along +z
    const auto c00 = correlation_matrix(DensityMatrix::from_pure(named_state("basis(00)")));
    for (int s = 0; s < 3; ++s)
        for (int t = 0; t < 3; ++t)
            CHECK(c00.m[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)] ==
                  doctest::Approx(s == 2 && t == 2 ? 1.0 : 0.0).epsilon(1e-12));
    CHECK(c00.bloch_a[2] == doctest::Approx(1.0));
    CHECK(c00.bloch_b[2] == doctest::Approx(1.0));

    // singlet: m = -I, zero Bloch vectors (direct trace oracle value)
    const auto cs = correlation_matrix(DensityMatrix::from_pure(named_state("singlet")));
    for (int s = 0; s < 3; ++s) {
        for (int t = 0; t < 3; ++t)
            CHECK(cs.m[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)] ==
                  doctest::Approx(s == t ? -1.0 : 0.0).epsilon(1e-12));
        CHECK(std::abs(cs.bloch_a[static_cast<std::size_t>(s)]) < 1e-12);
        CHECK(std::abs(cs.bloch_b[static_cast<std::size_t>(s)]) < 1e-12);
    }

    const auto cm = correlation_matrix(maximally_mixed_2q());
    for (const auto& row : cm.m)
        for (double x : row) CHECK(std::abs(x) < 1e-12);

    CHECK_THROWS_AS(correlation_matrix(DensityMatrix::from_pure(named_state("w3"))),
                    ValidationError);
}

TEST_CASE("chsh_max: fixed values") {
    CHECK(chsh_max(DensityMatrix::from_pure(named_state("singlet"))).value ==
          doctest::Approx(2.0 * kRoot2).epsilon(1e-12));
    CHECK(chsh_max(DensityMatrix::from_pure(named_state("basis(00)"))).value ==
          doctest::Approx(2.0).epsilon(1e-12));

    const DensityMatrix w_pair =
        reduced(DensityMatrix::from_pure(named_state("w3")), {0, 1});
    const double w_value = chsh_max(w_pair).value;
    CHECK(w_value == doctest::Approx(4.0 * kRoot2 / 3.0).epsilon(1e-10));
    // brute-force settings maximization agrees
    CHECK(oracles::SettingsMaximizer(w_pair.matrix).maximize() ==
          doctest::Approx(w_value).epsilon(1e-7));

    const auto r = chsh_max(DensityMatrix::from_pure(named_state("singlet")));
    CHECK(r.value == doctest::Approx(2.0 * std::sqrt(r.tau1 + r.tau2)).epsilon(1e-12));
    CHECK(r.tau1 >= r.tau2);
    CHECK(r.tau2 >= r.tau_min);
    CHECK(r.tau_min >= -1e-10);
}

TEST_CASE("evaluate_bell: paper intro settings on the singlet") {
    MeasurementSettings s;
    s.a1 = {1, 0, 0};
    s.a2 = {0, 0, 1};
    s.b1 = {1.0 / kRoot2, 0, 1.0 / kRoot2};
    s.b2 = {1.0 / kRoot2, 0, -1.0 / kRoot2};
    const double v = evaluate_bell(DensityMatrix::from_pure(named_state("singlet")), s);
    CHECK(v == doctest::Approx(-2.0 * kRoot2).epsilon(1e-12));

    MeasurementSettings all_z;
    all_z.a1 = all_z.a2 = all_z.b1 = all_z.b2 = {0, 0, 1};
    CHECK(evaluate_bell(DensityMatrix::from_pure(named_state("basis(00)")), all_z) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(evaluate_bell(maximally_mixed_2q(), all_z)) < 1e-12);

    MeasurementSettings bad = all_z;
    bad.a1 = {0, 0, 2};
    CHECK_THROWS_AS(evaluate_bell(maximally_mixed_2q(), bad), ValidationError);
}

TEST_CASE("optimal_settings: achieves the Horodecki maximum") {
    for (const char* name : {"singlet", "basis(00)"}) {
        const DensityMatrix rho = DensityMatrix::from_pure(named_state(name));
        const auto settings = optimal_settings(rho);
        CHECK(std::abs(std::abs(evaluate_bell(rho, settings)) - chsh_max(rho).value) < 1e-8);
    }
    CHECK_THROWS_AS(optimal_settings(maximally_mixed_2q()), NumericError);
}

TEST_CASE("optimal_settings: 100 random mixed states") {
    for (int k = 0; k < 100; ++k) {
        const DensityMatrix rho = random_mixed(2, 2, 101, static_cast<std::uint64_t>(k));
        const double target = chsh_max(rho).value;
        if (target < 1e-8) continue;  // degenerate, excluded by precondition
        const auto settings = optimal_settings(rho);
        REQUIRE(std::abs(std::abs(evaluate_bell(rho, settings)) - target) < 1e-8);
    }
}

TEST_CASE("chsh_max agrees with direct settings maximization") {
    for (int k = 0; k < 20; ++k) {
        const DensityMatrix rho = random_mixed(2, 2, 202, static_cast<std::uint64_t>(k));
        const double direct = oracles::SettingsMaximizer(rho.matrix).maximize();
        REQUIRE(std::abs(direct - chsh_max(rho).value) < 1e-6);
    }
}

TEST_CASE("local-unitary invariance of chsh_max") {
    for (int k = 0; k < 500; ++k) {
        const DensityMatrix rho = random_mixed(2, 2, 303, static_cast<std::uint64_t>(k));
        Rng rng(304, static_cast<std::uint64_t>(k));
        const ComplexMatrix u = oracles::random_unitary_2x2(rng);
        const ComplexMatrix v = oracles::random_unitary_2x2(rng);
        const ComplexMatrix uv = kron(u, v);
        const DensityMatrix rotated(2, (uv * rho.matrix * uv.adjoint()).symmetrized());
        REQUIRE(std::abs(chsh_max(rotated).value - chsh_max(rho).value) < 1e-9);
    }
}

TEST_CASE("Tsirelson ceiling and settings bound") {
    for (int k = 0; k < 2000; ++k) {
        const DensityMatrix rho = random_mixed(2, 2, 404, static_cast<std::uint64_t>(k));
        const auto r = chsh_max(rho);
        REQUIRE(r.value <= 2.0 * kRoot2 + 1e-10);
        // value^2 = 4(||m||_F^2 - tau_min) <= 4 ||m||_F^2
        const double frob = frobenius_sq(correlation_matrix(rho).m);
        REQUIRE(std::abs(r.value * r.value - 4.0 * (frob - r.tau_min)) < 1e-10);
        REQUIRE(r.value * r.value <= 4.0 * frob + 1e-10);

        Rng rng(405, static_cast<std::uint64_t>(k));
        for (int rep = 0; rep < 5; ++rep) {
            auto unit = [&] {
                Vec3 v{rng.gaussian(), rng.gaussian(), rng.gaussian()};
                return (1.0 / norm(v)) * v;
            };
            MeasurementSettings s{unit(), unit(), unit(), unit()};
            REQUIRE(std::abs(evaluate_bell(rho, s)) <= r.value + 1e-9);
        }
    }
}

TEST_CASE("convexity of the CHSH maximum under mixing") {
    for (int k = 0; k < 200; ++k) {
        Rng rng(505, static_cast<std::uint64_t>(k));
        const double w = rng.uniform(0.05, 0.95);
        const PureState s1 = random_pure(2, 506, static_cast<std::uint64_t>(k));
        const PureState s2 = random_pure(2, 507, static_cast<std::uint64_t>(k));
        const DensityMatrix mixture = mix(Ensemble{{{w, s1}, {1.0 - w, s2}}});
        const double lhs = chsh_max(mixture).value;
        const double rhs = w * chsh_max(DensityMatrix::from_pure(s1)).value +
                           (1.0 - w) * chsh_max(DensityMatrix::from_pure(s2)).value;
        REQUIRE(lhs <= rhs + 1e-9);
    }
}

TEST_CASE("analytic_reduced_ab matches the numeric partial trace") {
    const auto zero = analytic_reduced_ab(SchmidtParams({1, 0, 0, 0, 0}, 0.0));
    CHECK(std::abs(zero.matrix(0, 0) - Complex{1.0, 0.0}) < 1e-15);

    const double rh = 1.0 / kRoot2;
    const auto ghz = analytic_reduced_ab(SchmidtParams({rh, 0, 0, 0, rh}, 0.0));
    CHECK(std::abs(ghz.matrix(0, 0) - Complex{0.5, 0.0}) < 1e-15);
    CHECK(std::abs(ghz.matrix(3, 3) - Complex{0.5, 0.0}) < 1e-15);
    CHECK(std::abs(ghz.matrix(0, 3)) < 1e-15);

    for (int k = 0; k < 200; ++k) {
        const SchmidtParams p = random_schmidt(606, static_cast<std::uint64_t>(k));
        const ComplexMatrix numeric = partial_trace(schmidt_state(p).projector(), 3, {0, 1});
        REQUIRE(analytic_reduced_ab(p).matrix.max_abs_diff(numeric) < 1e-12);
        REQUIRE(analytic_reduced_ab(p).matrix.hermiticity_defect() == 0.0);
    }
}

TEST_CASE("analytic_m_ab matches the numeric pipeline") {
    const auto zero = analytic_m_ab(SchmidtParams({1, 0, 0, 0, 0}, 0.0));
    for (int s = 0; s < 3; ++s)
        for (int t = 0; t < 3; ++t)
            CHECK(zero.m[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)] ==
                  doctest::Approx(s == 2 && t == 2 ? 1.0 : 0.0).epsilon(1e-12));

    // Bell pair on AB: m = diag(1, -1, 1)
    const double rh = 1.0 / kRoot2;
    const auto bell = analytic_m_ab(SchmidtParams({rh, 0, 0, rh, 0}, 0.0));
    CHECK(bell.m[0][0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(bell.m[1][1] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(bell.m[2][2] == doctest::Approx(1.0).epsilon(1e-12));

    for (int k = 0; k < 200; ++k) {
        const SchmidtParams p = random_schmidt(707, static_cast<std::uint64_t>(k));
        const auto numeric = correlation_matrix(
            DensityMatrix(2, partial_trace(schmidt_state(p).projector(), 3, {0, 1})));
        const auto analytic = analytic_m_ab(p);
        for (int s = 0; s < 3; ++s)
            for (int t = 0; t < 3; ++t)
                REQUIRE(std::abs(
                            analytic.m[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)] -
                            numeric.m[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)]) <
                        1e-12);
    }
}

TEST_CASE("closed_form_chsh_sq: fixed values and numeric agreement") {
    const auto product = closed_form_chsh_sq(SchmidtParams({1, 0, 0, 0, 0}, 0.0));
    for (double v : product) CHECK(v == doctest::Approx(4.0).epsilon(1e-12));

    const double rh = 1.0 / kRoot2;
    const auto bell_ac = closed_form_chsh_sq(SchmidtParams({rh, 0, rh, 0, 0}, 0.0));
    CHECK(std::abs(bell_ac[0]) < 1e-12);
    CHECK(bell_ac[1] == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(std::abs(bell_ac[2]) < 1e-12);

    const auto half = closed_form_chsh_sq(SchmidtParams({rh, 0, 0.5, 0.5, 0}, 0.0));
    CHECK(half[0] == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(half[1] == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(half[2] == doctest::Approx(2.0).epsilon(1e-12));

    CHECK_THROWS_AS(closed_form_chsh_sq(SchmidtParams::normalized({1, 0, 0, 0, 0.5}, 0.0)),
                    ValidationError);

    for (int k = 0; k < 1000; ++k) {
        const SchmidtParams p = random_schmidt(808, static_cast<std::uint64_t>(k), true);
        const auto cf = closed_form_chsh_sq(p);
        const DensityMatrix rho = DensityMatrix::from_pure(schmidt_state(p));
        const std::array<std::pair<int, int>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
        for (int i = 0; i < 3; ++i) {
            const auto u = static_cast<std::size_t>(i);
            const double v = chsh_max(reduced(rho, {pairs[u].first, pairs[u].second})).value;
            REQUIRE(std::abs(cf[u] - v * v) < 1e-9);
        }
    }
}
