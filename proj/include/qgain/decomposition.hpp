// decomposition.hpp
// Two-term tensor-product form of a two-mode state,
//
//     rho = sum_{n,m} alpha_nm |e_n><e_m| (x) |h_n><h_m|,   n, m in {1, 2},
//
// with alpha a unit-trace positive semidefinite 2x2 matrix and h_1, h_2 unit vectors in C^2.
// States of this form whose fourth row and column vanish have h_2 = (1, 0); the residual
// phase freedom h_1 -> e^{it} h_1, alpha_12 -> alpha_12 e^{-it} is fixed by taking the first
// component of h_1 real and nonnegative.

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "error.hpp"
#include "linalg.hpp"
#include "random.hpp"
#include "states.hpp"

namespace qgain {

inline constexpr double kDecompositionTol = 1e-9;

using Ket2 = std::array<ComplexScalar, 2>;

class TensorDecomposition {
public:
    // Checks alpha (Hermitian within 1e-10, eigenvalues >= -1e-9, unit trace within 1e-9)
    // and that h1, h2 are unit vectors within 1e-10.
    TensorDecomposition(ComplexMatrix alpha, Ket2 h1, Ket2 h2) : alpha_(std::move(alpha)), h1_(h1), h2_(h2) {
        if (alpha_.rows() != 2 || alpha_.cols() != 2) {
            throw Error(ErrorKind::DimensionMismatch, "alpha must be 2x2, got " + alpha_.shape_string());
        }
        validate_density(alpha_);
        for (const Ket2* h : {&h1_, &h2_}) {
            const double norm = std::sqrt(std::norm((*h)[0]) + std::norm((*h)[1]));
            if (std::abs(norm - 1.0) > 1e-10) {
                std::ostringstream os;
                os << "h vector has norm " << norm;
                throw Error(ErrorKind::DimensionMismatch, os.str(), norm);
            }
        }
    }

    const ComplexMatrix& alpha() const noexcept { return alpha_; }
    const Ket2& h1() const noexcept { return h1_; }
    const Ket2& h2() const noexcept { return h2_; }
    double weight1() const { return alpha_(0, 0).real(); }
    double weight2() const { return alpha_(1, 1).real(); }

private:
    ComplexMatrix alpha_;
    Ket2 h1_;
    Ket2 h2_;
};

struct FormDiagnostics {
    double minor_residual = 0;   // |r11 r22 - r12 r21|
    double det3_residual = 0;    // |det of the upper-left 3x3 block|
    double support_residual = 0; // max |entry| in row/column 4
    bool decomposable = false;
};

inline ComplexScalar det3(const ComplexMatrix& m) {
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

inline FormDiagnostics check_form_conditions(const DensityMatrix& rho4, double tol = kDecompositionTol) {
    require_dim(rho4, 4, "check_form_conditions");
    const auto& r = rho4.matrix();
    FormDiagnostics d;
    d.minor_residual = std::abs(r(0, 0) * r(1, 1) - r(0, 1) * r(1, 0));
    d.det3_residual = std::abs(det3(r));
    d.support_residual = support_residual(r);
    d.decomposable = d.minor_residual <= tol && d.det3_residual <= tol && d.support_residual <= tol;
    return d;
}

inline DensityMatrix reconstruct(const TensorDecomposition& dec) {
    const std::array<Ket2, 2> h{dec.h1(), dec.h2()};
    ComplexMatrix rho(4, 4);
    for (std::size_t n = 0; n < 2; ++n) {
        for (std::size_t m = 0; m < 2; ++m) {
            const auto basis = ComplexMatrix::generate(2, 2, [&](std::size_t i, std::size_t j) {
                return ComplexScalar(i == n && j == m ? 1 : 0);
            });
            rho = rho + dec.alpha()(n, m) * kron(basis, ComplexMatrix::outer(h[n], h[m]));
        }
    }
    return validate_internal(rho, "reconstruct");
}

// Recovers (alpha, h1, h2 = (1, 0)) from a state satisfying the form conditions.
//
// alpha_11 = r11 + r22, alpha_22 = r33, x = sqrt(r11 / alpha_11), |y| = sqrt(r22 / alpha_11),
// arg y = arg r21 (y real when r21 = 0), and alpha_12 = r13 / x or r23 / y, whichever divisor is
// larger. The result is checked by reconstructing and comparing against the input.
inline TensorDecomposition extract_decomposition(const DensityMatrix& rho4, double tol = kDecompositionTol) {
    const auto diag = check_form_conditions(rho4, tol);
    if (!diag.decomposable) {
        std::ostringstream os;
        os << "form conditions fail at tol " << tol << " (minor " << diag.minor_residual << ", det3 "
           << diag.det3_residual << ", support " << diag.support_residual << ")";
        throw Error(ErrorKind::NotDecomposable, os.str(),
                    std::max({diag.minor_residual, diag.det3_residual, diag.support_residual}));
    }

    const auto& r = rho4.matrix();
    const double r11 = r(0, 0).real(), r22 = r(1, 1).real();
    const double alpha11 = r11 + r22;
    const double alpha22 = r(2, 2).real();
    const Ket2 h2{1.0, 0.0};

    ComplexScalar alpha12 = 0;
    Ket2 h1{1.0, 0.0};
    if (alpha11 <= tol) {
        // Zero-weight first component: h1 carries no data.
        const double leftover = std::max({std::abs(r(0, 0)), std::abs(r(0, 1)), std::abs(r(1, 1)),
                                          std::abs(r(0, 2)), std::abs(r(1, 2))});
        if (leftover > tol) {
            std::ostringstream os;
            os << "alpha_11 = " << alpha11 << " but block entries reach " << leftover;
            throw Error(ErrorKind::InconsistentEntries, os.str(), leftover);
        }
    } else {
        const double x = std::sqrt(std::max(r11, 0.0) / alpha11);
        const double y_abs = std::sqrt(std::max(r22, 0.0) / alpha11);
        const double r21_abs = std::abs(r(1, 0));
        const ComplexScalar y = r21_abs > 0 ? y_abs * (r(1, 0) / r21_abs) : ComplexScalar(y_abs);
        h1 = {x, y};
        alpha12 = x >= y_abs ? r(0, 2) / x : r(1, 2) / y;
    }

    const ComplexMatrix alpha{{alpha11, alpha12}, {std::conj(alpha12), alpha22}};
    std::optional<TensorDecomposition> dec;
    try {
        dec.emplace(alpha, h1, h2);
    } catch (const Error& e) {
        throw Error(ErrorKind::InconsistentEntries, std::string("extracted alpha is invalid (") + e.what() + ")");
    }
    const double mismatch = max_norm_diff(reconstruct(*dec).matrix(), r);
    if (mismatch > tol) {
        std::ostringstream os;
        os << "reconstruction differs from input by " << mismatch << " > " << tol;
        throw Error(ErrorKind::InconsistentEntries, os.str(), mismatch);
    }
    return *dec;
}

// alpha = G G^H / Tr(G G^H) for a 2x2 Ginibre G; x ~ U[0, 1]; y = e^{i phi} sqrt(1 - x^2) with
// phi ~ U[0, 2 pi); h2 = (1, 0). Deterministic in the seed.
inline TensorDecomposition random_decomposable(std::uint64_t seed) {
    auto rng = make_rng(seed);
    const auto alpha = random_density_matrix(2, rng);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    const double x = unit(rng);
    const double phi = angle(rng);
    const ComplexScalar y = std::polar(std::sqrt(1.0 - x * x), phi);
    // G G^H / Tr is Hermitian only up to rounding; symmetrize before validation.
    const ComplexMatrix herm{{alpha(0, 0).real(), alpha(0, 1)}, {std::conj(alpha(0, 1)), alpha(1, 1).real()}};
    return TensorDecomposition(herm / herm.trace(), Ket2{x, y}, Ket2{1.0, 0.0});
}

} // namespace qgain
