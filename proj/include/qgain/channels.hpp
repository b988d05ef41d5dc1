// channels.hpp
// Quantum channels in Kraus form and the amplitude damping channel.

#pragma once

#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "linalg.hpp"
#include "states.hpp"

namespace qgain {

inline constexpr double kCompletenessTol = 1e-10;

// A list of Kraus operators A_k (out_dim x in_dim) with sum_k A_k^H A_k = I.
class KrausChannel {
public:
    std::size_t in_dim() const noexcept { return in_dim_; }
    std::size_t out_dim() const noexcept { return out_dim_; }
    const std::vector<ComplexMatrix>& ops() const noexcept { return ops_; }

private:
    KrausChannel(std::size_t in, std::size_t out, std::vector<ComplexMatrix> ops)
        : in_dim_(in), out_dim_(out), ops_(std::move(ops)) {}

    friend KrausChannel validate_channel(std::vector<ComplexMatrix>, double);

    std::size_t in_dim_;
    std::size_t out_dim_;
    std::vector<ComplexMatrix> ops_;
};

// || sum_k A_k^H A_k - I ||_max
inline double completeness_residual(const std::vector<ComplexMatrix>& ops) {
    if (ops.empty()) return 1.0;
    ComplexMatrix sum(ops.front().cols(), ops.front().cols());
    for (const auto& a : ops) sum = sum + a.adjoint() * a;
    return max_norm_diff(sum, ComplexMatrix::identity(sum.rows()));
}

inline KrausChannel validate_channel(std::vector<ComplexMatrix> ops, double tol = kCompletenessTol) {
    if (ops.empty()) throw Error(ErrorKind::NotTracePreserving, "channel has no Kraus operators");
    const std::size_t out = ops.front().rows(), in = ops.front().cols();
    for (const auto& a : ops) {
        if (a.rows() != out || a.cols() != in) {
            throw Error(ErrorKind::DimensionMismatch,
                        "Kraus operator " + a.shape_string() + " differs from " + ops.front().shape_string());
        }
    }
    const double residual = completeness_residual(ops);
    if (residual > tol) {
        std::ostringstream os;
        os << "completeness residual " << residual << " > " << tol;
        throw Error(ErrorKind::NotTracePreserving, os.str(), residual);
    }
    return KrausChannel(in, out, std::move(ops));
}

// Damping strength gamma in [0, 1].
class GammaParam {
public:
    explicit GammaParam(double gamma) : gamma_(gamma) {
        if (!(gamma >= 0.0 && gamma <= 1.0)) {
            std::ostringstream os;
            os << "gamma = " << gamma << " outside [0, 1]";
            throw Error(ErrorKind::GammaOutOfRange, os.str(), gamma);
        }
    }
    double value() const noexcept { return gamma_; }

private:
    double gamma_;
};

// A0 = [[1, 0], [0, sqrt(1 - g)]], A1 = [[0, sqrt(g)], [0, 0]]
inline KrausChannel amplitude_damping(GammaParam g) {
    const double gamma = g.value();
    ComplexMatrix a0{{1.0, 0.0}, {0.0, std::sqrt(1.0 - gamma)}};
    ComplexMatrix a1{{0.0, std::sqrt(gamma)}, {0.0, 0.0}};
    return validate_channel({std::move(a0), std::move(a1)});
}

inline DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho) {
    if (rho.dim() != ch.in_dim()) {
        throw Error(ErrorKind::DimensionMismatch, "channel input dimension " + std::to_string(ch.in_dim()) +
                                                      " does not match state dimension " + std::to_string(rho.dim()));
    }
    ComplexMatrix out(ch.out_dim(), ch.out_dim());
    for (const auto& a : ch.ops()) out = out + a * rho.matrix() * a.adjoint();
    return validate_internal(out, "apply_channel");
}

// Entrywise form of the amplitude damping map on a qubit:
// [[r11 + g r22, sqrt(1-g) r12], [sqrt(1-g) r21, (1-g) r22]]
inline DensityMatrix amplitude_damping_closed_form(GammaParam g, const DensityMatrix& rho2) {
    require_dim(rho2, 2, "amplitude_damping_closed_form");
    const double gamma = g.value();
    const double damp = std::sqrt(1.0 - gamma);
    const auto& r = rho2.matrix();
    ComplexMatrix out{{r(0, 0) + gamma * r(1, 1), damp * r(0, 1)},
                      {damp * r(1, 0), (1.0 - gamma) * r(1, 1)}};
    return validate_internal(out, "amplitude_damping_closed_form");
}

// Id_{d_left} (x) channel, with Kraus operators I (x) A_k.
inline KrausChannel tensor_with_identity(const KrausChannel& ch, std::size_t d_left) {
    if (d_left == 0) throw Error(ErrorKind::DimensionMismatch, "identity factor must have dimension >= 1");
    const auto id = ComplexMatrix::identity(d_left);
    std::vector<ComplexMatrix> ops;
    ops.reserve(ch.ops().size());
    for (const auto& a : ch.ops()) ops.push_back(kron(id, a));
    return validate_channel(std::move(ops));
}

} // namespace qgain
