// states.hpp
// Validated density matrices, von Neumann entropy, the qubit portrait of a qutrit and the
// embedding of a qutrit into a two-qubit (two-mode) space.

#pragma once

#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "linalg.hpp"

namespace qgain {

struct DensityTolerances {
    double herm = 1e-10;   // max-norm Hermiticity
    double psd = 1e-9;     // eigenvalues must be >= -psd
    double trace = 1e-9;   // |Tr - 1|
};

// A Hermitian, positive semidefinite, unit-trace matrix. Only obtainable through
// validate_density, so every instance satisfies the invariants at its tolerances.
// The spectrum computed during validation is kept and reused by entropy and purity.
class DensityMatrix {
public:
    std::size_t dim() const noexcept { return mat_.rows(); }
    const ComplexMatrix& matrix() const noexcept { return mat_; }
    const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }
    const DensityTolerances& tolerances() const noexcept { return tol_; }
    const ComplexScalar& operator()(std::size_t i, std::size_t j) const { return mat_(i, j); }

private:
    DensityMatrix(ComplexMatrix m, std::vector<double> eig, DensityTolerances tol)
        : mat_(std::move(m)), eigenvalues_(std::move(eig)), tol_(tol) {}

    friend DensityMatrix validate_density(const ComplexMatrix&, const DensityTolerances&);

    ComplexMatrix mat_;
    std::vector<double> eigenvalues_;
    DensityTolerances tol_;
};

inline DensityMatrix validate_density(const ComplexMatrix& m, const DensityTolerances& tol = {}) {
    if (!m.is_square() || m.rows() == 0) {
        throw Error(ErrorKind::NotSquare, "density matrix must be square and non-empty, got " + m.shape_string());
    }
    auto eig = hermitian_eigen(m, tol.herm);
    const double min_eig = eig.eigenvalues.front();
    if (min_eig < -tol.psd) {
        std::ostringstream os;
        os << "eigenvalue " << min_eig << " < -" << tol.psd;
        throw Error(ErrorKind::NotPositive, os.str(), min_eig);
    }
    const double tr = m.trace().real();
    if (std::abs(tr - 1.0) > tol.trace) {
        std::ostringstream os;
        os.precision(12);
        os << "trace " << tr << " differs from 1 by more than " << tol.trace;
        throw Error(ErrorKind::TraceNotOne, os.str(), tr);
    }
    return DensityMatrix(m, std::move(eig.eigenvalues), tol);
}

// Revalidation of a matrix that is a density matrix by construction; failure is a bug upstream.
inline DensityMatrix validate_internal(const ComplexMatrix& m, std::string_view what) {
    try {
        return validate_density(m);
    } catch (const Error& e) {
        throw Error(ErrorKind::InternalNumericalError, std::string(what) + " produced an invalid state (" + e.what() + ")");
    }
}

// Entropy in nats: -sum lambda ln lambda, with 0 ln 0 = 0. Eigenvalues in [-tol_psd, 0) are
// rounding noise and count as zero; anything more negative was rejected by validation.
inline double von_neumann_entropy(const DensityMatrix& rho) {
    double s = 0;
    for (double lambda : rho.eigenvalues()) {
        if (lambda > 0) s -= lambda * std::log(lambda);
    }
    return s;
}

inline double purity(const DensityMatrix& rho) {
    double p = 0;
    for (const auto& z : rho.matrix().data()) p += std::norm(z);
    return p;
}

inline bool is_pure(const DensityMatrix& rho, double tol = 1e-9) { return purity(rho) >= 1 - tol; }

inline void require_dim(const DensityMatrix& rho, std::size_t d, std::string_view what) {
    if (rho.dim() != d) {
        throw Error(ErrorKind::DimensionMismatch,
                    std::string(what) + " expects dimension " + std::to_string(d) + ", got " + std::to_string(rho.dim()));
    }
}

// sigma = [[r11 + r22, r13], [r31, r33]]
inline DensityMatrix qubit_portrait(const DensityMatrix& rho3) {
    require_dim(rho3, 3, "qubit_portrait");
    const auto& r = rho3.matrix();
    ComplexMatrix sigma{{r(0, 0) + r(1, 1), r(0, 2)}, {r(2, 0), r(2, 2)}};
    return validate_internal(sigma, "qubit_portrait");
}

// Qutrit in the upper-left 3x3 block of a 4x4 two-mode state; fourth row and column zero.
inline DensityMatrix embed_qutrit(const DensityMatrix& rho3) {
    require_dim(rho3, 3, "embed_qutrit");
    const auto& r = rho3.matrix();
    auto m = ComplexMatrix::generate(4, 4, [&](std::size_t i, std::size_t j) {
        return (i < 3 && j < 3) ? r(i, j) : ComplexScalar(0);
    });
    return validate_internal(m, "embed_qutrit");
}

// Largest |entry| in the fourth row or column of a 4x4 matrix.
inline double support_residual(const ComplexMatrix& m) {
    double r = 0;
    for (std::size_t k = 0; k < 4; ++k) r = std::max({r, std::abs(m(3, k)), std::abs(m(k, 3))});
    return r;
}

inline DensityMatrix extract_qutrit(const DensityMatrix& rho4, double tol = 1e-10) {
    require_dim(rho4, 4, "extract_qutrit");
    const double leak = support_residual(rho4.matrix());
    if (leak > tol) {
        std::ostringstream os;
        os << "fourth row/column has entry of magnitude " << leak << " > " << tol;
        throw Error(ErrorKind::SupportLeak, os.str(), leak);
    }
    // Trace of the block differs from 1 by at most the leaked weight, which is within tolerance.
    return validate_density(rho4.matrix().block(0, 0, 3, 3), rho4.tolerances());
}

} // namespace qgain
