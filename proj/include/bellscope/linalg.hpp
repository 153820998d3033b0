#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

#include "bellscope/errors.hpp"

namespace bellscope {

using Complex = std::complex<double>;

// Dense complex matrix, row-major. Sized for few-qubit operators (<= 16x16
// for eigensolves; tensor-product carriers may be larger).
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_)
            throw ValidationError("ComplexMatrix: entry count does not match rows*cols");
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<Complex>& entries() const { return data_; }

    ComplexMatrix adjoint() const {
        ComplexMatrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
        return out;
    }

    Complex trace() const {
        Complex t{0.0, 0.0};
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

    double hermiticity_defect() const {
        if (rows_ != cols_) return std::numeric_limits<double>::infinity();
        double worst = 0.0;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i; j < cols_; ++j)
                worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return worst;
    }

    bool is_hermitian(double tol) const { return hermiticity_defect() <= tol; }

    // (X + X^dag)/2, kills rounding drift on results that must be Hermitian
    ComplexMatrix symmetrized() const {
        ComplexMatrix out(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                out(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
        return out;
    }

    friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
        require_same_shape(a, b);
        ComplexMatrix out(a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.data_.size(); ++k) out.data_[k] = a.data_[k] + b.data_[k];
        return out;
    }

    friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
        require_same_shape(a, b);
        ComplexMatrix out(a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.data_.size(); ++k) out.data_[k] = a.data_[k] - b.data_[k];
        return out;
    }

    friend ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
        ComplexMatrix out(a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.data_.size(); ++k) out.data_[k] = s * a.data_[k];
        return out;
    }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        if (a.cols_ != b.rows_) throw ValidationError("ComplexMatrix: shape mismatch in product");
        ComplexMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Complex aik = a(i, k);
                if (aik == Complex{0.0, 0.0}) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
            }
        return out;
    }

    double max_abs_diff(const ComplexMatrix& other) const {
        require_same_shape(*this, other);
        double worst = 0.0;
        for (std::size_t k = 0; k < data_.size(); ++k)
            worst = std::max(worst, std::abs(data_[k] - other.data_[k]));
        return worst;
    }

private:
    static void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw ValidationError("ComplexMatrix: shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

// Pauli matrices; pauli(0) is the 2x2 identity.
inline const ComplexMatrix& pauli(int k) {
    static const std::array<ComplexMatrix, 4> sigma = [] {
        std::array<ComplexMatrix, 4> s{ComplexMatrix(2, 2), ComplexMatrix(2, 2),
                                       ComplexMatrix(2, 2), ComplexMatrix(2, 2)};
        s[0](0, 0) = 1.0;
        s[0](1, 1) = 1.0;
        s[1](0, 1) = 1.0;
        s[1](1, 0) = 1.0;
        s[2](0, 1) = Complex{0.0, -1.0};
        s[2](1, 0) = Complex{0.0, 1.0};
        s[3](0, 0) = 1.0;
        s[3](1, 1) = -1.0;
        return s;
    }();
    if (k < 0 || k > 3) throw ValidationError("pauli: index must be in 0..3");
    return sigma[static_cast<std::size_t>(k)];
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex{0.0, 0.0}) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

struct EigenDecomposition {
    std::vector<double> eigenvalues;  // descending
    ComplexMatrix eigenvectors;       // orthonormal columns, paired with eigenvalues
};

// Cyclic complex Jacobi for Hermitian matrices, d <= 16.
// Off-diagonal threshold 1e-13, budget 100 sweeps.
inline EigenDecomposition hermitian_eigs(const ComplexMatrix& h, double herm_tol = 1e-10) {
    const std::size_t d = h.rows();
    if (d == 0 || d != h.cols()) throw ValidationError("hermitian_eigs: matrix must be square");
    if (d > 16) throw ValidationError("hermitian_eigs: dimension exceeds 16");
    if (!h.is_hermitian(herm_tol))
        throw ValidationError("hermitian_eigs: input is not Hermitian within tolerance");

    ComplexMatrix a = h.symmetrized();
    ComplexMatrix v = ComplexMatrix::identity(d);

    constexpr double kOffThreshold = 1e-13;
    constexpr int kMaxSweeps = 100;

    bool converged = (d == 1);
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < d; ++p)
            for (std::size_t q = p + 1; q < d; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off < kOffThreshold) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) {
                const double r = std::abs(a(p, q));
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                if (r <= kOffThreshold * 1e-3 ||
                    r <= 1e-18 * (std::abs(app) + std::abs(aqq))) {
                    continue;
                }
                const Complex phase = a(p, q) / r;
                // rotation angle annihilating the (p,q) entry:
                // r*(c^2 - s^2) + (aqq - app)*c*s = 0
                const double theta = (aqq - app) / (2.0 * r);
                // small-magnitude root of t^2 - 2*theta*t - 1 = 0
                double t;
                if (std::abs(theta) > 1e154) {
                    t = -1.0 / (2.0 * theta);
                } else {
                    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    if (theta > 0.0) t = -t;
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // unitary G: G(p,p)=c, G(p,q)=-s*phase, G(q,p)=s*conj(phase), G(q,q)=c
                for (std::size_t k = 0; k < d; ++k) {
                    if (k == p || k == q) continue;
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = c * akp + s * std::conj(phase) * akq;
                    a(k, q) = -s * phase * akp + c * akq;
                    a(p, k) = std::conj(a(k, p));
                    a(q, k) = std::conj(a(k, q));
                }
                a(p, p) = app * c * c + 2.0 * r * c * s + aqq * s * s;
                a(q, q) = app * s * s - 2.0 * r * c * s + aqq * c * c;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t k = 0; k < d; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = c * vkp + s * std::conj(phase) * vkq;
                    v(k, q) = -s * phase * vkp + c * vkq;
                }
            }
        }
    }
    if (!converged) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < d; ++p)
            for (std::size_t q = p + 1; q < d; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off >= kOffThreshold)
            throw NumericError("hermitian_eigs: Jacobi sweeps did not converge");
    }

    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> diag(d);
    for (std::size_t i = 0; i < d; ++i) diag[i] = a(i, i).real();
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return diag[x] > diag[y]; });

    EigenDecomposition out;
    out.eigenvalues.resize(d);
    out.eigenvectors = ComplexMatrix(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        out.eigenvalues[j] = diag[order[j]];
        for (std::size_t i = 0; i < d; ++i) out.eigenvectors(i, j) = v(i, order[j]);
    }
    return out;
}

// Partial trace over the complement of `keep`. Qubit 0 is the leftmost
// tensor factor (most significant bit of the basis index). The order of
// `keep` defines the tensor order of the output.
inline ComplexMatrix partial_trace(const ComplexMatrix& rho, int n, const std::vector<int>& keep) {
    const std::size_t dim = std::size_t{1} << n;
    if (rho.rows() != dim || rho.cols() != dim)
        throw ValidationError("partial_trace: matrix size does not match qubit count");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int q : keep) {
        if (q < 0 || q >= n) throw ValidationError("partial_trace: qubit index out of range");
        if (seen[static_cast<std::size_t>(q)])
            throw ValidationError("partial_trace: duplicate qubit index");
        seen[static_cast<std::size_t>(q)] = true;
    }
    std::vector<int> traced;
    for (int q = 0; q < n; ++q)
        if (!seen[static_cast<std::size_t>(q)]) traced.push_back(q);

    const int nk = static_cast<int>(keep.size());
    const int nt = static_cast<int>(traced.size());
    const std::size_t kd = std::size_t{1} << nk;
    const std::size_t td = std::size_t{1} << nt;

    auto full_index = [&](std::size_t kb, std::size_t tb) {
        std::size_t x = 0;
        for (int pos = 0; pos < nk; ++pos) {
            const std::size_t bit = (kb >> (nk - 1 - pos)) & 1u;
            x |= bit << (n - 1 - keep[static_cast<std::size_t>(pos)]);
        }
        for (int pos = 0; pos < nt; ++pos) {
            const std::size_t bit = (tb >> (nt - 1 - pos)) & 1u;
            x |= bit << (n - 1 - traced[static_cast<std::size_t>(pos)]);
        }
        return x;
    };

    ComplexMatrix out(kd, kd);
    for (std::size_t a = 0; a < kd; ++a)
        for (std::size_t b = 0; b < kd; ++b) {
            Complex sum{0.0, 0.0};
            for (std::size_t e = 0; e < td; ++e) sum += rho(full_index(a, e), full_index(b, e));
            out(a, b) = sum;
        }
    return out.symmetrized();
}

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline Vec3 matvec(const Mat3& m, const Vec3& x) {
    Vec3 y{0.0, 0.0, 0.0};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) y[static_cast<std::size_t>(i)] += m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
    return y;
}

inline Mat3 transpose(const Mat3& m) {
    Mat3 t{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return t;
}

inline double frobenius_sq(const Mat3& m) {
    double s = 0.0;
    for (const auto& row : m)
        for (double x : row) s += x * x;
    return s;
}

// Eigenvalues of M^T M, descending (nonnegative up to rounding).
inline std::array<double, 3> gram_eigenvalues_3x3(const Mat3& m) {
    ComplexMatrix g(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k)
                s += m[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] *
                     m[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
            g(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = s;
        }
    const auto eig = hermitian_eigs(g);
    return {eig.eigenvalues[0], eig.eigenvalues[1], eig.eigenvalues[2]};
}

// Singular values of a real 3x3 matrix, descending.
inline std::array<double, 3> singular_values_3x3(const Mat3& m) {
    auto tau = gram_eigenvalues_3x3(m);
    std::array<double, 3> sv{};
    for (int i = 0; i < 3; ++i)
        sv[static_cast<std::size_t>(i)] = std::sqrt(std::max(tau[static_cast<std::size_t>(i)], 0.0));
    return sv;
}

}  // namespace bellscope
