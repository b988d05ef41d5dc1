// bounds.hpp
// Entropy gain of Id (x) Omega on two-mode states of tensor-product form, and its lower bound
//
//     S((Id (x) Omega)(rho)) - S(rho) >= sum_j alpha_jj S(Omega(|h_j><h_j|)).
//
// Also the qutrit-level view of the same computation under amplitude damping.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <exception>
#include <limits>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include "channels.hpp"
#include "decomposition.hpp"
#include "error.hpp"
#include "states.hpp"

namespace qgain {

inline constexpr double kBoundTol = 1e-8;

struct BoundReport {
    double lhs = 0;    // entropy gain, nats
    double rhs = 0;    // lower bound, nats
    double slack = 0;  // lhs - rhs
    bool holds = false;
    double tol = kBoundTol;
};

struct SweepRow {
    double gamma = 0;
    double entropy_in = 0;
    double entropy_out = 0;
    double lhs = 0;
    double rhs = 0;
    double slack = 0;
};

inline double entropy_gain(const KrausChannel& ch, const DensityMatrix& rho) {
    if (ch.in_dim() == 0 || rho.dim() % ch.in_dim() != 0) {
        throw Error(ErrorKind::DimensionMismatch, "state dimension " + std::to_string(rho.dim()) +
                                                      " is not a multiple of channel dimension " +
                                                      std::to_string(ch.in_dim()));
    }
    const auto out = apply_channel(tensor_with_identity(ch, rho.dim() / ch.in_dim()), rho);
    return von_neumann_entropy(out) - von_neumann_entropy(rho);
}

// alpha_11 S(Omega(|h1><h1|)) + alpha_22 S(Omega(|h2><h2|)) for any qubit channel.
inline double gain_lower_bound(const TensorDecomposition& dec, const KrausChannel& ch) {
    if (ch.in_dim() != 2) {
        throw Error(ErrorKind::DimensionMismatch, "lower bound needs a qubit channel, got input dimension " +
                                                      std::to_string(ch.in_dim()));
    }
    double rhs = 0;
    const std::array<std::pair<double, const Ket2*>, 2> terms{{{dec.weight1(), &dec.h1()}, {dec.weight2(), &dec.h2()}}};
    for (const auto& [weight, h] : terms) {
        if (weight == 0.0) continue;
        const auto pure = validate_internal(ComplexMatrix::outer(*h, *h), "gain_lower_bound");
        rhs += weight * von_neumann_entropy(apply_channel(ch, pure));
    }
    return rhs;
}

inline BoundReport verify_bound(const TensorDecomposition& dec, const KrausChannel& ch, double tol = kBoundTol) {
    BoundReport report;
    report.lhs = entropy_gain(ch, reconstruct(dec));
    report.rhs = gain_lower_bound(dec, ch);
    report.slack = report.lhs - report.rhs;
    report.holds = report.slack >= -tol;
    report.tol = tol;
    return report;
}

// The qutrit seen through embed -> Id (x) Omega_gamma -> extract, written entrywise:
// [[r11 + g r22, s r12, r13], [s r21, (1-g) r22, s r23], [r31, s r32, r33]] with s = sqrt(1-g).
inline DensityMatrix induced_qutrit_map(GammaParam g, const DensityMatrix& rho3) {
    require_dim(rho3, 3, "induced_qutrit_map");
    const double gamma = g.value();
    const double s = std::sqrt(1.0 - gamma);
    const auto& r = rho3.matrix();
    ComplexMatrix out{{r(0, 0) + gamma * r(1, 1), s * r(0, 1), r(0, 2)},
                      {s * r(1, 0), (1.0 - gamma) * r(1, 1), s * r(1, 2)},
                      {r(2, 0), s * r(2, 1), r(2, 2)}};
    return validate_internal(out, "induced_qutrit_map");
}

inline constexpr double kZeroWeightThreshold = 1e-12;

// Upper-left 2x2 block normalized by r11 + r22.
inline DensityMatrix conditional_qubit_state(const DensityMatrix& rho3) {
    require_dim(rho3, 3, "conditional_qubit_state");
    const auto& r = rho3.matrix();
    const double weight = (r(0, 0) + r(1, 1)).real();
    if (weight <= kZeroWeightThreshold) {
        std::ostringstream os;
        os << "r11 + r22 = " << weight << " is below " << kZeroWeightThreshold;
        throw Error(ErrorKind::ZeroWeight, os.str(), weight);
    }
    return validate_internal(r.block(0, 0, 2, 2) / weight, "conditional_qubit_state");
}

inline void require_grid(const std::vector<double>& grid) {
    for (double g : grid) GammaParam{g};
}

// One row per gamma, in the order given.
inline std::vector<SweepRow> gamma_sweep(const TensorDecomposition& dec, const std::vector<double>& grid) {
    require_grid(grid);
    const auto rho = reconstruct(dec);
    const double s_in = von_neumann_entropy(rho);
    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (double g : grid) {
        const auto ch = amplitude_damping(GammaParam(g));
        const auto out = apply_channel(tensor_with_identity(ch, 2), rho);
        SweepRow row;
        row.gamma = g;
        row.entropy_in = s_in;
        row.entropy_out = von_neumann_entropy(out);
        row.lhs = row.entropy_out - row.entropy_in;
        row.rhs = gain_lower_bound(dec, ch);
        row.slack = row.lhs - row.rhs;
        rows.push_back(row);
    }
    return rows;
}

inline std::vector<double> default_gamma_grid() {
    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
    return grid;
}

struct EnsembleCase {
    std::uint64_t seed = 0;
    SweepRow row;
};

struct EnsembleSummary {
    std::size_t checked = 0;
    std::size_t violations = 0;
    double min_slack = std::numeric_limits<double>::infinity();
    EnsembleCase worst;                          // the (seed, gamma) with the smallest slack
    std::optional<EnsembleCase> first_violation; // in (seed, gamma) order
};

// Runs seeds first_seed .. first_seed + samples - 1 across the grid. Work is split across
// `threads` workers by seed; rows are merged in (seed, gamma) order so the summary does not
// depend on scheduling.
inline EnsembleSummary verify_ensemble(std::size_t samples, std::uint64_t first_seed, const std::vector<double>& grid,
                                       double tol = kBoundTol, unsigned threads = 0) {
    require_grid(grid);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(samples, 1)));

    std::vector<std::vector<SweepRow>> per_seed(samples);
    std::vector<std::exception_ptr> errors(threads);
    {
        std::vector<std::jthread> workers;
        for (unsigned t = 0; t < threads; ++t) {
            workers.emplace_back([&, t] {
                try {
                    for (std::size_t i = t; i < samples; i += threads) {
                        per_seed[i] = gamma_sweep(random_decomposable(first_seed + i), grid);
                    }
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    EnsembleSummary summary;
    for (std::size_t i = 0; i < samples; ++i) {
        for (const auto& row : per_seed[i]) {
            ++summary.checked;
            const EnsembleCase c{first_seed + i, row};
            if (row.slack < summary.min_slack) {
                summary.min_slack = row.slack;
                summary.worst = c;
            }
            if (row.slack < -tol) {
                ++summary.violations;
                if (!summary.first_violation) summary.first_violation = c;
            }
        }
    }
    return summary;
}

} // namespace qgain
