#include <catch2/catch_amalgamated.hpp>

#include <numbers>

#include "qgain/bounds.hpp"
#include "qgain/decomposition.hpp"

using namespace qgain;
using Catch::Approx;

namespace {

const double kInvSqrt2 = 1 / std::numbers::sqrt2;

ErrorKind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no qgain::Error thrown");
    return ErrorKind::InternalNumericalError;
}

// The two-mode block matrix written out by hand for h1 = (x, y), h2 = (a, b), x and a real.
ComplexMatrix block_display(const ComplexMatrix& al, double x, ComplexScalar y, double a, ComplexScalar b) {
    const auto yb = std::conj(y), bb = std::conj(b);
    const auto a11 = al(0, 0), a12 = al(0, 1), a21 = al(1, 0), a22 = al(1, 1);
    return ComplexMatrix{
        {a11 * x * x, a11 * x * yb, a12 * a * x, a12 * x * bb},
        {a11 * x * y, a11 * y * yb, a12 * a * y, a12 * y * bb},
        {a21 * a * x, a21 * a * yb, a22 * a * a, a22 * a * bb},
        {a21 * b * x, a21 * b * yb, a22 * a * b, a22 * b * bb},
    };
}

} // namespace

TEST_CASE("check_form_conditions", "[decomposition]") {
    SECTION("embedded diag(1/2, 1/4, 1/4) fails the minor condition") {
        const auto rho = embed_qutrit(validate_density(ComplexMatrix::diagonal({0.5, 0.25, 0.25})));
        const auto d = check_form_conditions(rho);
        CHECK(d.minor_residual == 0.125);
        CHECK(d.det3_residual == Approx(1.0 / 32));
        CHECK(d.support_residual == 0.0);
        CHECK_FALSE(d.decomposable);
    }
    SECTION("rank-1 product state |e1 (x) h><e1 (x) h|") {
        const ComplexVector psi{0.6, ComplexScalar(0.0, 0.8), 0.0, 0.0};
        const auto rho = validate_density(ComplexMatrix::outer(psi, psi));
        const auto d = check_form_conditions(rho);
        CHECK(d.minor_residual <= 1e-15);
        CHECK(d.decomposable);
    }
    SECTION("fourth column populated") {
        const auto rho = validate_density(ComplexMatrix::identity(4) / 4.0);
        const auto d = check_form_conditions(rho);
        CHECK(d.support_residual == 0.25);
        CHECK_FALSE(d.decomposable);
    }
    SECTION("reconstructed states satisfy both conditions") {
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            const auto d = check_form_conditions(reconstruct(random_decomposable(seed)));
            CHECK(d.minor_residual <= 1e-12);
            CHECK(d.det3_residual <= 1e-12);
            CHECK(d.support_residual == 0.0);
            CHECK(d.decomposable);
        }
    }
}

TEST_CASE("reconstruct", "[decomposition]") {
    SECTION("diagonal alpha, both h = (1, 0)") {
        const TensorDecomposition dec(ComplexMatrix::identity(2) / 2.0, {1.0, 0.0}, {1.0, 0.0});
        CHECK(reconstruct(dec).matrix() == ComplexMatrix::diagonal({0.5, 0.0, 0.5, 0.0}));
    }
    SECTION("matches the hand-written block matrix for general (alpha, x, y, a, b)") {
        auto rng = make_rng(77);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int trial = 0; trial < 100; ++trial) {
            const auto al = random_density(2, rng).matrix();
            const double x = unit(rng), a = unit(rng);
            const auto y = std::polar(std::sqrt(1 - x * x), 6.0 * unit(rng));
            const auto b = std::polar(std::sqrt(1 - a * a), 6.0 * unit(rng));
            const TensorDecomposition dec(al, {x, y}, {a, b});
            CHECK(max_norm_diff(reconstruct(dec).matrix(), block_display(al, x, y, a, b)) <= 1e-15);
        }
    }
    SECTION("invalid inputs are rejected") {
        CHECK_THROWS_AS(TensorDecomposition(ComplexMatrix::identity(2) / 2.0, {1.0, 1.0}, {1.0, 0.0}), Error);
        CHECK_THROWS_AS(TensorDecomposition(ComplexMatrix::identity(2), {1.0, 0.0}, {1.0, 0.0}), Error);
        CHECK_THROWS_AS(TensorDecomposition(ComplexMatrix{{0.5, 0.6}, {0.6, 0.5}}, {1.0, 0.0}, {1.0, 0.0}), Error);
        CHECK_THROWS_AS(TensorDecomposition(ComplexMatrix::identity(3) / 3.0, {1.0, 0.0}, {1.0, 0.0}), Error);
    }
}

TEST_CASE("extract_decomposition", "[decomposition]") {
    SECTION("diagonal round trip") {
        const TensorDecomposition dec(ComplexMatrix::identity(2) / 2.0, {1.0, 0.0}, {1.0, 0.0});
        const auto got = extract_decomposition(reconstruct(dec));
        CHECK(got.h1()[0] == ComplexScalar(1.0));
        CHECK(got.h1()[1] == ComplexScalar(0.0));
        CHECK(got.alpha() == dec.alpha());
        CHECK(got.h2()[0] == ComplexScalar(1.0));
        CHECK(got.h2()[1] == ComplexScalar(0.0));
    }
    SECTION("complex h1") {
        const TensorDecomposition dec(ComplexMatrix{{0.5, 0.25}, {0.25, 0.5}}, {kInvSqrt2, ComplexScalar(0, kInvSqrt2)},
                                      {1.0, 0.0});
        const auto rho = reconstruct(dec);
        const auto got = extract_decomposition(rho);
        CHECK(max_norm_diff(reconstruct(got).matrix(), rho.matrix()) <= 1e-12);
        CHECK(std::abs(got.h1()[0] - kInvSqrt2) <= 1e-12);
        CHECK(std::abs(got.h1()[1] - ComplexScalar(0, kInvSqrt2)) <= 1e-12);
        CHECK(max_norm_diff(got.alpha(), dec.alpha()) <= 1e-12);
    }
    SECTION("phase on h1 is moved into alpha_12") {
        const double theta = 1.1;
        const auto ph = std::polar(1.0, theta);
        const TensorDecomposition dec(ComplexMatrix{{0.6, ComplexScalar(0.1, 0.2)}, {ComplexScalar(0.1, -0.2), 0.4}},
                                      {0.8 * ph, 0.6 * ph}, {1.0, 0.0});
        const auto rho = reconstruct(dec);
        const auto got = extract_decomposition(rho);
        CHECK(got.h1()[0].imag() == 0.0);
        CHECK(got.h1()[0].real() == Approx(0.8).margin(1e-12));
        CHECK(std::abs(got.alpha()(0, 1) - dec.alpha()(0, 1) * ph) <= 1e-12);
        CHECK(max_norm_diff(reconstruct(got).matrix(), rho.matrix()) <= 1e-12);
    }
    SECTION("x = 0 branch takes y = 1") {
        const TensorDecomposition dec(ComplexMatrix{{0.5, 0.2}, {0.2, 0.5}}, {0.0, ComplexScalar(0, 1)}, {1.0, 0.0});
        const auto rho = reconstruct(dec);
        const auto got = extract_decomposition(rho);
        CHECK(got.h1()[0] == ComplexScalar(0.0));
        CHECK(got.h1()[1] == ComplexScalar(1.0));
        CHECK(max_norm_diff(reconstruct(got).matrix(), rho.matrix()) <= 1e-15);
    }
    SECTION("alpha_11 = 0 branch fixes h1 = (1, 0)") {
        const TensorDecomposition dec(ComplexMatrix::diagonal({0.0, 1.0}), {0.6, 0.8}, {1.0, 0.0});
        const auto rho = reconstruct(dec);
        const auto got = extract_decomposition(rho);
        CHECK(got.h1()[0] == ComplexScalar(1.0));
        CHECK(got.alpha()(0, 1) == ComplexScalar(0.0));
        CHECK(reconstruct(got).matrix() == rho.matrix());
    }
    SECTION("not decomposable") {
        const auto rho = embed_qutrit(validate_density(ComplexMatrix::diagonal({0.5, 0.25, 0.25})));
        CHECK(kind_of([&] { extract_decomposition(rho); }) == ErrorKind::NotDecomposable);
    }
    SECTION("conditions pass at a loose tolerance but the entries conflict") {
        const auto rho = embed_qutrit(validate_density(ComplexMatrix::diagonal({0.5, 0.25, 0.25})));
        CHECK(check_form_conditions(rho, 0.2).decomposable);
        CHECK(kind_of([&] { extract_decomposition(rho, 0.2); }) == ErrorKind::InconsistentEntries);
    }
}

TEST_CASE("extract after reconstruct over the seeded ensemble", "[decomposition][property]") {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const auto dec = random_decomposable(seed);
        const auto rho = reconstruct(dec);
        const auto got = extract_decomposition(rho);
        CHECK(max_norm_diff(reconstruct(got).matrix(), rho.matrix()) <= 1e-10);
        CHECK(got.h1()[0].imag() == 0.0);
        CHECK(got.h1()[0].real() >= 0.0);
        CHECK(std::abs(got.weight1() + got.weight2() - 1) <= 1e-10);
        // Same gauge as the sampler, so the raw data agrees too.
        CHECK(std::abs(got.h1()[0] - dec.h1()[0]) <= 1e-8);
        CHECK(std::abs(got.h1()[1] - dec.h1()[1]) <= 1e-8);

        if (got.weight1() > 1e-6) {
            const auto cond = conditional_qubit_state(extract_qutrit(rho));
            CHECK(purity(cond) >= 1 - 1e-9);
        }
    }
}

TEST_CASE("random_decomposable", "[decomposition]") {
    SECTION("deterministic in the seed") {
        const auto a = random_decomposable(123), b = random_decomposable(123);
        CHECK(a.alpha() == b.alpha());
        CHECK(a.h1() == b.h1());
        CHECK(a.h2() == b.h2());
        const auto c = random_decomposable(124);
        CHECK_FALSE(a.alpha() == c.alpha());
    }
    SECTION("outputs satisfy the invariants") {
        for (std::uint64_t seed = 0; seed < 1000; ++seed) {
            const auto dec = random_decomposable(seed);
            const auto& h1 = dec.h1();
            CHECK(std::abs(std::norm(h1[0]) + std::norm(h1[1]) - 1) <= 1e-10);
            CHECK(h1[0].imag() == 0.0);
            CHECK(h1[0].real() >= 0.0);
            CHECK(h1[0].real() <= 1.0);
            CHECK(dec.h2() == Ket2{1.0, 0.0});
            CHECK(hermiticity_residual(dec.alpha()) == 0.0);
            CHECK(std::abs(dec.alpha().trace().real() - 1) <= 1e-12);
            CHECK(check_form_conditions(reconstruct(dec)).decomposable);
        }
    }
}
