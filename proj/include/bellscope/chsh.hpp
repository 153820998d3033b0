#pragma once

#include <cmath>
#include <numbers>

#include "bellscope/errors.hpp"
#include "bellscope/linalg.hpp"
#include "bellscope/states.hpp"

namespace bellscope {

// Pauli correlation data of a two-qubit state, unnormalized trace
// convention: m_st = tr(rho sigma_s x sigma_t).
struct CorrelationMatrix {
    Mat3 m{};
    Vec3 bloch_a{};
    Vec3 bloch_b{};
};

struct ChshResult {
    double value = 0.0;  // maximal CHSH mean, 2*sqrt(tau1 + tau2)
    double tau1 = 0.0;
    double tau2 = 0.0;
    double tau_min = 0.0;
};

struct MeasurementSettings {
    Vec3 a1{}, a2{}, b1{}, b2{};
};

namespace detail {

inline void require_unit(const Vec3& v, const char* label) {
    if (std::abs(norm(v) - 1.0) > 1e-10)
        throw ValidationError(std::string("MeasurementSettings: ") + label +
                              " is not a unit vector");
}

inline double real_trace_product(const ComplexMatrix& rho, const ComplexMatrix& op,
                                 const char* context) {
    Complex t{0.0, 0.0};
    for (std::size_t i = 0; i < rho.rows(); ++i)
        for (std::size_t k = 0; k < rho.cols(); ++k) t += rho(i, k) * op(k, i);
    if (std::abs(t.imag()) > 1e-10)
        throw NumericError(std::string(context) + ": trace has non-vanishing imaginary part");
    return t.real();
}

}  // namespace detail

inline CorrelationMatrix correlation_matrix(const DensityMatrix& rho) {
    if (rho.n != 2) throw ValidationError("correlation_matrix: state must be two-qubit");
    CorrelationMatrix out;
    for (int s = 0; s < 3; ++s) {
        for (int t = 0; t < 3; ++t)
            out.m[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)] =
                detail::real_trace_product(rho.matrix, kron(pauli(s + 1), pauli(t + 1)),
                                           "correlation_matrix");
        out.bloch_a[static_cast<std::size_t>(s)] = detail::real_trace_product(
            rho.matrix, kron(pauli(s + 1), pauli(0)), "correlation_matrix");
        out.bloch_b[static_cast<std::size_t>(s)] = detail::real_trace_product(
            rho.matrix, kron(pauli(0), pauli(s + 1)), "correlation_matrix");
    }
    return out;
}

// Horodecki criterion: maximal CHSH mean value 2*sqrt(tau1 + tau2), where
// tau1 >= tau2 >= tau_min are the eigenvalues of M^T M.
inline ChshResult chsh_max(const DensityMatrix& rho) {
    const auto corr = correlation_matrix(rho);
    const auto tau = gram_eigenvalues_3x3(corr.m);
    ChshResult r;
    r.tau1 = tau[0];
    r.tau2 = tau[1];
    r.tau_min = tau[2];
    r.value = 2.0 * std::sqrt(std::max(tau[0] + tau[1], 0.0));
    return r;
}

// Mean value of the Bell operator
//   B = A1xB1 + A1xB2 + A2xB1 - A2xB2,  A_i = a_i . sigma,  B_j = b_j . sigma,
// evaluated as tr(rho B) on the explicit 4x4 operator.
inline double evaluate_bell(const DensityMatrix& rho, const MeasurementSettings& s) {
    if (rho.n != 2) throw ValidationError("evaluate_bell: state must be two-qubit");
    detail::require_unit(s.a1, "a1");
    detail::require_unit(s.a2, "a2");
    detail::require_unit(s.b1, "b1");
    detail::require_unit(s.b2, "b2");

    auto bloch_op = [](const Vec3& v) {
        ComplexMatrix op(2, 2);
        for (int k = 0; k < 3; ++k)
            op = op + Complex{v[static_cast<std::size_t>(k)], 0.0} * pauli(k + 1);
        return op;
    };
    const ComplexMatrix a1 = bloch_op(s.a1);
    const ComplexMatrix a2 = bloch_op(s.a2);
    const ComplexMatrix b1 = bloch_op(s.b1);
    const ComplexMatrix b2 = bloch_op(s.b2);
    const ComplexMatrix bell = kron(a1, b1 + b2) + kron(a2, b1 - b2);
    return detail::real_trace_product(rho.matrix, bell, "evaluate_bell");
}

// Settings achieving the Horodecki maximum: b1, b2 are combinations of the
// two dominant right-singular directions of M, a1, a2 their normalized
// images under M.
inline MeasurementSettings optimal_settings(const DensityMatrix& rho) {
    const auto corr = correlation_matrix(rho);

    ComplexMatrix gram(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k)
                s += corr.m[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] *
                     corr.m[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
            gram(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = s;
        }
    const auto eig = hermitian_eigs(gram);
    if (eig.eigenvalues[0] <= 1e-24)
        throw NumericError("optimal_settings: zero correlation matrix (tau1 = 0)");

    auto column = [&](std::size_t j) {
        Vec3 v{};
        for (std::size_t i = 0; i < 3; ++i) v[i] = eig.eigenvectors(i, j).real();
        return (1.0 / norm(v)) * v;  // eigenvectors of a real matrix, real up to phase
    };
    const Vec3 c1 = column(0);
    const Vec3 c2 = column(1);

    const Vec3 mc1 = matvec(corr.m, c1);
    const Vec3 mc2 = matvec(corr.m, c2);
    const double s1 = norm(mc1);
    const double s2 = norm(mc2);

    MeasurementSettings out;
    out.a1 = (1.0 / s1) * mc1;
    out.a2 = s2 > 1e-14 * s1 ? (1.0 / s2) * mc2 : c2;
    const double chi = std::atan2(s2, s1);
    out.b1 = std::cos(chi) * c1 + std::sin(chi) * c2;
    out.b2 = std::cos(chi) * c1 - std::sin(chi) * c2;
    out.b1 = (1.0 / norm(out.b1)) * out.b1;
    out.b2 = (1.0 / norm(out.b2)) * out.b2;
    return out;
}

// Closed-form reduction rho_AB of the Schmidt state, traced over qubit C.
// Basis order |00>,|01>,|10>,|11>.
inline DensityMatrix analytic_reduced_ab(const SchmidtParams& p) {
    const double l0 = p.lambda[0], l1 = p.lambda[1], l2 = p.lambda[2], l3 = p.lambda[3],
                 l4 = p.lambda[4];
    const Complex eip = std::polar(1.0, p.psi);
    ComplexMatrix m(4, 4);
    m(0, 0) = l0 * l0;
    m(0, 2) = l0 * l1 * std::conj(eip);
    m(0, 3) = l0 * l3;
    m(2, 0) = l0 * l1 * eip;
    m(2, 2) = l1 * l1 + l2 * l2;
    m(2, 3) = l1 * l3 * eip + l2 * l4;
    m(3, 0) = l0 * l3;
    m(3, 2) = l1 * l3 * std::conj(eip) + l2 * l4;
    m(3, 3) = l3 * l3 + l4 * l4;
    return DensityMatrix(2, m);
}

// Closed-form Pauli coefficient matrix M^AB of the Schmidt state.
inline CorrelationMatrix analytic_m_ab(const SchmidtParams& p) {
    const double l0 = p.lambda[0], l1 = p.lambda[1], l2 = p.lambda[2], l3 = p.lambda[3],
                 l4 = p.lambda[4];
    const double c = std::cos(p.psi), s = std::sin(p.psi);
    CorrelationMatrix out;
    out.m = {{{2 * l0 * l3, 0.0, 2 * l0 * l1 * c},
              {0.0, -2 * l0 * l3, 2 * l0 * l1 * s},
              {-2 * (l1 * l3 * c + l2 * l4), 2 * l1 * l3 * s,
               l0 * l0 + l3 * l3 + l4 * l4 - l1 * l1 - l2 * l2}}};
    // Bloch vectors from the closed-form reduction.
    const auto rho = analytic_reduced_ab(p);
    for (int k = 0; k < 3; ++k) {
        out.bloch_a[static_cast<std::size_t>(k)] = detail::real_trace_product(
            rho.matrix, kron(pauli(k + 1), pauli(0)), "analytic_m_ab");
        out.bloch_b[static_cast<std::size_t>(k)] = detail::real_trace_product(
            rho.matrix, kron(pauli(0), pauli(k + 1)), "analytic_m_ab");
    }
    return out;
}

// Closed-form squared CHSH maxima (sq_ab, sq_ac, sq_bc) for lambda4 = 0.
inline std::array<double, 3> closed_form_chsh_sq(const SchmidtParams& p) {
    if (std::abs(p.lambda[4]) > 1e-12)
        throw ValidationError("closed_form_chsh_sq: requires lambda4 = 0");
    const double L0 = p.lambda[0] * p.lambda[0];
    const double L1 = p.lambda[1] * p.lambda[1];
    const double L2 = p.lambda[2] * p.lambda[2];
    const double L3 = p.lambda[3] * p.lambda[3];

    // pattern shared by the three pairs: 2[(1-2x)^2 + 4(u + 3w)
    //   + sqrt(((1-2x)^2 + 4(u + w))^2 - 16 w' (1-2x)^2)]
    auto branch = [](double x, double u, double w) {
        const double g = (1.0 - 2.0 * x) * (1.0 - 2.0 * x);
        const double inner = g + 4.0 * (u + w);
        const double rad = std::max(inner * inner - 16.0 * w * g, 0.0);
        return 2.0 * (g + 4.0 * (u + 3.0 * w) + std::sqrt(rad));
    };
    const double sq_bc = branch(L0, L0 * L1, L2 * L3);
    const double sq_ac = branch(L3, L1 * L3, L0 * L2);
    const double sq_ab = branch(L2, L1 * L2, L0 * L3);
    return {sq_ab, sq_ac, sq_bc};
}

}  // namespace bellscope
