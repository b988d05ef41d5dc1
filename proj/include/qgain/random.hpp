// random.hpp
// Seeded samplers for test ensembles. Every sampler takes the generator by reference so a
// caller that owns one engine gets a reproducible stream.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "linalg.hpp"
#include "states.hpp"

namespace qgain {

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    return Rng(seq);
}

// Complex Ginibre matrix: independent standard-normal real and imaginary parts.
inline ComplexMatrix random_ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
    std::normal_distribution<double> normal;
    return ComplexMatrix::generate(rows, cols, [&](std::size_t, std::size_t) {
        const double re = normal(rng);
        const double im = normal(rng);
        return ComplexScalar(re, im);
    });
}

inline ComplexMatrix random_hermitian(std::size_t n, Rng& rng) {
    const auto g = random_ginibre(n, n, rng);
    return 0.5 * (g + g.adjoint());
}

// rho = G G^H / Tr(G G^H): full rank with probability one.
inline ComplexMatrix random_density_matrix(std::size_t n, Rng& rng) {
    const auto g = random_ginibre(n, n, rng);
    const auto w = g * g.adjoint();
    return w / w.trace();
}

inline DensityMatrix random_density(std::size_t n, Rng& rng) { return validate_density(random_density_matrix(n, rng)); }

// Product of `rotations` random complex Givens rotations acting on random index pairs.
inline ComplexMatrix random_unitary(std::size_t n, Rng& rng, int rotations = 24) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_int_distribution<std::size_t> index(0, n - 1);
    auto u = ComplexMatrix::identity(n);
    for (int r = 0; r < rotations && n > 1; ++r) {
        const std::size_t p = index(rng);
        std::size_t q = index(rng);
        while (q == p) q = index(rng);
        const double theta = angle(rng);
        const ComplexScalar phase = std::polar(1.0, angle(rng));
        const double c = std::cos(theta), s = std::sin(theta);
        auto g = ComplexMatrix::generate(n, n, [&](std::size_t i, std::size_t j) -> ComplexScalar {
            if (i == p && j == p) return c;
            if (i == q && j == q) return c;
            if (i == p && j == q) return -s * phase;
            if (i == q && j == p) return s * std::conj(phase);
            return i == j ? 1.0 : 0.0;
        });
        u = g * u;
    }
    return u;
}

} // namespace qgain
