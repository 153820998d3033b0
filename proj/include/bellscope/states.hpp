#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "bellscope/errors.hpp"
#include "bellscope/linalg.hpp"
#include "bellscope/rng.hpp"

namespace bellscope {

constexpr int kMaxQubits = 12;

// Pure n-qubit state. Qubit 0 is the leftmost tensor factor, so amplitude
// index i carries qubit q in bit (n-1-q).
struct PureState {
    int n = 0;
    std::vector<Complex> amplitudes;

    PureState() = default;

    PureState(int qubits, std::vector<Complex> amps) : n(qubits), amplitudes(std::move(amps)) {
        if (n < 1 || n > kMaxQubits) throw ValidationError("PureState: qubit count out of range");
        if (amplitudes.size() != (std::size_t{1} << n))
            throw ValidationError("PureState: amplitude count must be 2^n");
        double norm_sq = 0.0;
        for (const auto& a : amplitudes) norm_sq += std::norm(a);
        if (std::abs(norm_sq - 1.0) > 1e-10)
            throw ValidationError("PureState: amplitudes are not normalized");
    }

    ComplexMatrix projector() const {
        const std::size_t dim = amplitudes.size();
        ComplexMatrix p(dim, dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                p(i, j) = amplitudes[i] * std::conj(amplitudes[j]);
        return p;
    }
};

struct DensityMatrix {
    int n = 0;
    ComplexMatrix matrix;

    DensityMatrix() = default;

    DensityMatrix(int qubits, ComplexMatrix m) : n(qubits), matrix(std::move(m)) {
        if (n < 1 || n > kMaxQubits)
            throw ValidationError("DensityMatrix: qubit count out of range");
        const std::size_t dim = std::size_t{1} << n;
        if (matrix.rows() != dim || matrix.cols() != dim)
            throw ValidationError("DensityMatrix: matrix size must be 2^n x 2^n");
        if (!matrix.is_hermitian(1e-10))
            throw ValidationError("DensityMatrix: matrix is not Hermitian");
        if (std::abs(matrix.trace() - Complex{1.0, 0.0}) > 1e-10)
            throw ValidationError("DensityMatrix: trace is not 1");
        // PSD check needs the eigensolver, which is capped at 16x16.
        if (dim <= 16) {
            const auto eig = hermitian_eigs(matrix);
            if (eig.eigenvalues.back() < -1e-9)
                throw ValidationError("DensityMatrix: matrix is not positive semidefinite");
        }
    }

    static DensityMatrix from_pure(const PureState& psi) {
        return DensityMatrix(psi.n, psi.projector());
    }
};

// Generalized Schmidt form of a three-qubit state:
//   lambda0|000> + lambda1 e^{i psi}|100> + lambda2|101> + lambda3|110> + lambda4|111>
// Signed lambdas are accepted (signs are absorbable phases).
struct SchmidtParams {
    std::array<double, 5> lambda{};
    double psi = 0.0;

    SchmidtParams() = default;

    SchmidtParams(const std::array<double, 5>& l, double angle) : lambda(l), psi(angle) {
        double sum_sq = 0.0;
        for (double x : lambda) sum_sq += x * x;
        if (std::abs(sum_sq - 1.0) > 1e-10)
            throw ValidationError("SchmidtParams: sum of lambda^2 must be 1");
        if (psi < -1e-12 || psi > std::numbers::pi + 1e-12)
            throw ValidationError("SchmidtParams: psi must lie in [0, pi]");
    }

    // Convenience: normalize the 5-vector before constructing.
    static SchmidtParams normalized(const std::array<double, 5>& l, double angle) {
        double s = 0.0;
        for (double x : l) s += x * x;
        if (s <= 0.0) throw ValidationError("SchmidtParams: zero lambda vector");
        const double inv = 1.0 / std::sqrt(s);
        std::array<double, 5> scaled{};
        for (int i = 0; i < 5; ++i) scaled[static_cast<std::size_t>(i)] = l[static_cast<std::size_t>(i)] * inv;
        return SchmidtParams(scaled, angle);
    }
};

struct Ensemble {
    std::vector<std::pair<double, PureState>> members;

    explicit Ensemble(std::vector<std::pair<double, PureState>> m) : members(std::move(m)) {
        if (members.empty()) throw ValidationError("Ensemble: no members");
        double total = 0.0;
        const int n = members.front().second.n;
        for (const auto& [w, psi] : members) {
            if (w <= 0.0 || w > 1.0)
                throw ValidationError("Ensemble: weight must be in (0, 1]");
            if (psi.n != n) throw ValidationError("Ensemble: mixed qubit counts");
            total += w;
        }
        if (std::abs(total - 1.0) > 1e-10) throw ValidationError("Ensemble: weights must sum to 1");
    }
};

inline PureState schmidt_state(const SchmidtParams& p) {
    std::vector<Complex> amps(8, Complex{0.0, 0.0});
    amps[0b000] = p.lambda[0];
    amps[0b100] = p.lambda[1] * std::polar(1.0, p.psi);
    amps[0b101] = p.lambda[2];
    amps[0b110] = p.lambda[3];
    amps[0b111] = p.lambda[4];
    return PureState(3, std::move(amps));
}

// Named fixtures. "singlet" is (|01> - |10>)/sqrt(2); note it is the state
// usually written |psi_minus>.
inline PureState named_state(const std::string& name) {
    const double rh = 1.0 / std::numbers::sqrt2;
    if (name == "singlet") {
        return PureState(2, {0.0, rh, -rh, 0.0});
    }
    if (name == "bell_phi_plus") {
        return PureState(2, {rh, 0.0, 0.0, rh});
    }
    if (name == "w3") {
        const double t = 1.0 / std::sqrt(3.0);
        std::vector<Complex> amps(8, Complex{0.0, 0.0});
        amps[0b001] = t;
        amps[0b010] = t;
        amps[0b100] = t;
        return PureState(3, std::move(amps));
    }
    if (name.rfind("ghz(", 0) == 0 && name.back() == ')') {
        const int n = std::stoi(name.substr(4, name.size() - 5));
        if (n < 2 || n > kMaxQubits) throw ValidationError("named_state: ghz qubit count out of range");
        std::vector<Complex> amps(std::size_t{1} << n, Complex{0.0, 0.0});
        amps.front() = rh;
        amps.back() = rh;
        return PureState(n, std::move(amps));
    }
    if (name.rfind("basis(", 0) == 0 && name.back() == ')') {
        const std::string bits = name.substr(6, name.size() - 7);
        if (bits.empty() || bits.size() > kMaxQubits)
            throw ValidationError("named_state: basis bitstring length out of range");
        std::size_t index = 0;
        for (char c : bits) {
            if (c != '0' && c != '1') throw ValidationError("named_state: bad basis bitstring");
            index = (index << 1) | static_cast<std::size_t>(c - '0');
        }
        std::vector<Complex> amps(std::size_t{1} << bits.size(), Complex{0.0, 0.0});
        amps[index] = 1.0;
        return PureState(static_cast<int>(bits.size()), std::move(amps));
    }
    throw ValidationError("named_state: unknown state name '" + name + "'");
}

// Haar-random pure state: normalized vector of iid standard complex normals.
// Deterministic per (seed, sample_index).
inline PureState random_pure(int n, std::uint64_t seed, std::uint64_t sample_index = 0) {
    if (n < 1 || n > kMaxQubits) throw ValidationError("random_pure: qubit count out of range");
    Rng rng(seed, sample_index);
    std::vector<Complex> amps(std::size_t{1} << n);
    double norm_sq = 0.0;
    for (auto& a : amps) {
        a = rng.complex_gaussian();
        norm_sq += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (auto& a : amps) a *= inv;
    return PureState(n, std::move(amps));
}

inline DensityMatrix mix(const Ensemble& ensemble) {
    const int n = ensemble.members.front().second.n;
    const std::size_t dim = std::size_t{1} << n;
    ComplexMatrix acc(dim, dim);
    for (const auto& [w, psi] : ensemble.members) acc = acc + Complex{w, 0.0} * psi.projector();
    return DensityMatrix(n, acc.symmetrized());
}

// Random mixed state: reduction of a Haar pure state on n + ancilla qubits.
inline DensityMatrix random_mixed(int n, int ancilla_qubits, std::uint64_t seed,
                                  std::uint64_t sample_index = 0) {
    if (ancilla_qubits < 1) throw ValidationError("random_mixed: need at least one ancilla qubit");
    if (n < 1 || n + ancilla_qubits > kMaxQubits)
        throw ValidationError("random_mixed: qubit count out of range");
    const PureState big = random_pure(n + ancilla_qubits, seed, sample_index);
    std::vector<int> keep(static_cast<std::size_t>(n));
    std::iota(keep.begin(), keep.end(), 0);
    return DensityMatrix(n, partial_trace(big.projector(), big.n, keep));
}

// Reduction of a density matrix to the given qubits.
inline DensityMatrix reduced(const DensityMatrix& rho, const std::vector<int>& keep) {
    return DensityMatrix(static_cast<int>(keep.size()), partial_trace(rho.matrix, rho.n, keep));
}

}  // namespace bellscope
