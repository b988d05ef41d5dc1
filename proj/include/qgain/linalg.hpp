// linalg.hpp
// Small dense complex matrices and a cyclic Jacobi eigensolver for Hermitian input.
//
// Matrices are immutable values: every operation returns a new matrix. Dimensions in this
// library never exceed a handful of rows, so copies are cheap and aliasing is impossible.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace qgain {

template <typename Real>
class Matrix {
public:
    using real_type = Real;
    using value_type = std::complex<Real>;

    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    Matrix(std::size_t rows, std::size_t cols, std::vector<value_type> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_) {
            throw Error(ErrorKind::DimensionMismatch,
                        "matrix data has " + std::to_string(data_.size()) + " entries, expected " +
                            std::to_string(rows_ * cols_));
        }
        check_finite();
    }

    Matrix(std::initializer_list<std::initializer_list<value_type>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_) {
                throw Error(ErrorKind::DimensionMismatch, "ragged matrix literal");
            }
            data_.insert(data_.end(), row.begin(), row.end());
        }
        check_finite();
    }

    template <typename Fn>
    static Matrix generate(std::size_t rows, std::size_t cols, Fn&& fn) {
        std::vector<value_type> data(rows * cols);
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) {
                data[i * cols + j] = value_type(fn(i, j));
            }
        }
        return Matrix(rows, cols, std::move(data));
    }

    static Matrix identity(std::size_t n) {
        return generate(n, n, [](std::size_t i, std::size_t j) { return value_type(i == j ? 1 : 0); });
    }

    static Matrix diagonal(std::span<const Real> diag) {
        return generate(diag.size(), diag.size(), [&](std::size_t i, std::size_t j) {
            return i == j ? value_type(diag[i]) : value_type(0);
        });
    }

    static Matrix diagonal(std::initializer_list<Real> diag) {
        return diagonal(std::span<const Real>(diag.begin(), diag.size()));
    }

    // |e_k><e_k| in dimension n.
    static Matrix projector(std::size_t k, std::size_t n) {
        return generate(n, n, [k](std::size_t i, std::size_t j) {
            return value_type(i == k && j == k ? 1 : 0);
        });
    }

    // |ket><bra|
    static Matrix outer(std::span<const value_type> ket, std::span<const value_type> bra) {
        return generate(ket.size(), bra.size(), [&](std::size_t i, std::size_t j) {
            return ket[i] * std::conj(bra[j]);
        });
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    std::span<const value_type> data() const noexcept { return data_; }

    const value_type& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix adjoint() const {
        return generate(cols_, rows_, [this](std::size_t i, std::size_t j) {
            return std::conj((*this)(j, i));
        });
    }

    value_type trace() const {
        value_type t = 0;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

    Real frobenius_norm() const {
        Real s = 0;
        for (const auto& z : data_) s += std::norm(z);
        return std::sqrt(s);
    }

    Real max_abs() const {
        Real m = 0;
        for (const auto& z : data_) m = std::max(m, std::abs(z));
        return m;
    }

    // Sub-block of `rows` x `cols` starting at (r0, c0).
    Matrix block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const {
        if (r0 + rows > rows_ || c0 + cols > cols_) {
            throw Error(ErrorKind::DimensionMismatch, "block exceeds matrix bounds");
        }
        return generate(rows, cols, [&](std::size_t i, std::size_t j) { return (*this)(r0 + i, c0 + j); });
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        require_same_shape(a, b);
        std::vector<value_type> out(a.data_.size());
        std::transform(a.data_.begin(), a.data_.end(), b.data_.begin(), out.begin(), std::plus<>{});
        return Matrix(a.rows_, a.cols_, std::move(out));
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        require_same_shape(a, b);
        std::vector<value_type> out(a.data_.size());
        std::transform(a.data_.begin(), a.data_.end(), b.data_.begin(), out.begin(), std::minus<>{});
        return Matrix(a.rows_, a.cols_, std::move(out));
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) {
            throw Error(ErrorKind::DimensionMismatch,
                        "cannot multiply " + a.shape_string() + " by " + b.shape_string());
        }
        std::vector<value_type> out(a.rows_ * b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const value_type aik = a(i, k);
                if (aik == value_type(0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) out[i * b.cols_ + j] += aik * b(k, j);
            }
        }
        return Matrix(a.rows_, b.cols_, std::move(out));
    }

    friend Matrix operator*(value_type s, const Matrix& m) {
        std::vector<value_type> out(m.data_);
        for (auto& z : out) z *= s;
        return Matrix(m.rows_, m.cols_, std::move(out));
    }

    friend Matrix operator*(const Matrix& m, value_type s) { return s * m; }
    friend Matrix operator/(const Matrix& m, value_type s) { return (value_type(1) / s) * m; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

    std::string shape_string() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

private:
    static void require_same_shape(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
            throw Error(ErrorKind::DimensionMismatch,
                        "shape " + a.shape_string() + " differs from " + b.shape_string());
        }
    }

    void check_finite() const {
        for (const auto& z : data_) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw Error(ErrorKind::InternalNumericalError, "non-finite matrix entry");
            }
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<value_type> data_;
};

using ComplexScalar = std::complex<double>;
using ComplexMatrix = Matrix<double>;
using ComplexVector = std::vector<ComplexScalar>;

inline constexpr double kHermitianTol = 1e-10;

// Kronecker product: entry (i*b.rows + k, j*b.cols + l) = a(i,j) * b(k,l).
template <typename Real>
Matrix<Real> kron(const Matrix<Real>& a, const Matrix<Real>& b) {
    const std::size_t br = b.rows(), bc = b.cols();
    return Matrix<Real>::generate(a.rows() * br, a.cols() * bc, [&](std::size_t r, std::size_t c) {
        return a(r / br, c / bc) * b(r % br, c % bc);
    });
}

template <typename Real>
Real max_norm_diff(const Matrix<Real>& a, const Matrix<Real>& b) {
    return (a - b).max_abs();
}

// max |a_ij - conj(a_ji)|
template <typename Real>
Real hermiticity_residual(const Matrix<Real>& a) {
    if (!a.is_square()) throw Error(ErrorKind::NotSquare, "matrix is " + a.shape_string());
    Real r = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = i; j < a.cols(); ++j) r = std::max(r, std::abs(a(i, j) - std::conj(a(j, i))));
    }
    return r;
}

template <typename Real>
struct HermitianEigenResult {
    std::vector<Real> eigenvalues;  // ascending
    Matrix<Real> eigenvectors;      // column k pairs with eigenvalues[k]
};

namespace detail {

template <typename Real>
Real off_diagonal_norm(const std::vector<std::complex<Real>>& a, std::size_t n) {
    Real s = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) s += std::norm(a[i * n + j]);
        }
    }
    return std::sqrt(s);
}

} // namespace detail

// Cyclic complex Jacobi. Each rotation J = D R combines a phase D = diag(1, conj(e)) that makes
// a_pq real and the classic real Jacobi rotation R; A <- J^H A J and V <- V J.
// Stops when the off-diagonal Frobenius norm is <= 1e-13 * max(1, ||A||_F).
template <typename Real>
HermitianEigenResult<Real> hermitian_eigen(const Matrix<Real>& a, Real tol = Real(kHermitianTol)) {
    using C = std::complex<Real>;
    constexpr int kMaxSweeps = 100;

    if (!a.is_square()) throw Error(ErrorKind::NotSquare, "matrix is " + a.shape_string());
    const Real herm = hermiticity_residual(a);
    if (herm > tol) {
        throw Error(ErrorKind::NotHermitian,
                    "max |a_ij - conj(a_ji)| = " + std::to_string(herm) + " exceeds tolerance", herm);
    }

    const std::size_t n = a.rows();
    std::vector<C> m(a.data().begin(), a.data().end());
    // Symmetrize so the iteration sees an exactly Hermitian matrix.
    for (std::size_t i = 0; i < n; ++i) {
        m[i * n + i] = C(m[i * n + i].real(), 0);
        for (std::size_t j = i + 1; j < n; ++j) {
            const C avg = Real(0.5) * (m[i * n + j] + std::conj(m[j * n + i]));
            m[i * n + j] = avg;
            m[j * n + i] = std::conj(avg);
        }
    }
    std::vector<C> v(n * n);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1;

    const Real threshold = Real(1e-13) * std::max(Real(1), a.frobenius_norm());
    int sweep = 0;
    while (detail::off_diagonal_norm(m, n) > threshold) {
        if (++sweep > kMaxSweeps) {
            throw Error(ErrorKind::NoConvergence, "Jacobi iteration exceeded 100 sweeps");
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const C apq = m[p * n + q];
                const Real mag = std::abs(apq);
                if (mag == Real(0)) continue;
                const C phase = apq / mag;
                const Real app = m[p * n + p].real();
                const Real aqq = m[q * n + q].real();
                const Real theta = (aqq - app) / (2 * mag);
                const Real t = (theta >= 0 ? Real(1) : Real(-1)) /
                               (std::abs(theta) + std::sqrt(theta * theta + 1));
                const Real c = 1 / std::sqrt(t * t + 1);
                const Real s = t * c;

                const C jpp = c, jpq = s;
                const C jqp = -s * std::conj(phase), jqq = c * std::conj(phase);

                // Columns: A <- A J
                for (std::size_t k = 0; k < n; ++k) {
                    const C akp = m[k * n + p], akq = m[k * n + q];
                    m[k * n + p] = akp * jpp + akq * jqp;
                    m[k * n + q] = akp * jpq + akq * jqq;
                    const C vkp = v[k * n + p], vkq = v[k * n + q];
                    v[k * n + p] = vkp * jpp + vkq * jqp;
                    v[k * n + q] = vkp * jpq + vkq * jqq;
                }
                // Rows: A <- J^H A
                for (std::size_t k = 0; k < n; ++k) {
                    const C apk = m[p * n + k], aqk = m[q * n + k];
                    m[p * n + k] = std::conj(jpp) * apk + std::conj(jqp) * aqk;
                    m[q * n + k] = std::conj(jpq) * apk + std::conj(jqq) * aqk;
                }
                m[p * n + q] = 0;
                m[q * n + p] = 0;
                m[p * n + p] = C(m[p * n + p].real(), 0);
                m[q * n + q] = C(m[q * n + q].real(), 0);
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return m[x * n + x].real() < m[y * n + y].real();
    });

    HermitianEigenResult<Real> result;
    result.eigenvalues.reserve(n);
    for (std::size_t k : order) result.eigenvalues.push_back(m[k * n + k].real());
    result.eigenvectors = Matrix<Real>::generate(n, n, [&](std::size_t i, std::size_t j) {
        return v[i * n + order[j]];
    });
    return result;
}

} // namespace qgain
