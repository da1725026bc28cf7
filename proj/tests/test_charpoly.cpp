#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"

#include "girard/charpoly.hpp"

using girard::Matrix;
using girard::Rational;
using namespace girard::charpoly;

namespace {

Matrix<Rational> worked_example() {
    return Matrix<Rational>(2, {Rational(3), Rational(1), Rational(2), Rational(4)});
}

}  // namespace

TEST_SUITE("charpoly") {

TEST_CASE("2x2 worked example is exact") {
    const auto r = faddeev_leverrier(worked_example());
    CHECK(r.sigma.values == std::vector<Rational>{Rational(7), Rational(10)});
    CHECK(r.coefficients.coeffs ==
          std::vector<Rational>{Rational(10), Rational(-7), Rational(1)});
    CHECK(r.trace_sequence == std::vector<Rational>{Rational(7), Rational(-20)});
    CHECK(r.trace_identity_ok == std::vector<bool>{true, true});
    CHECK_FALSE(r.conditioning_warning);
}

TEST_CASE("3x3 identity gives the cube expansion") {
    const auto r = faddeev_leverrier(Matrix<Rational>::identity(3));
    // (X - 1)^3 = X^3 - 3X^2 + 3X - 1
    CHECK(r.coefficients.coeffs ==
          std::vector<Rational>{Rational(-1), Rational(3), Rational(-3), Rational(1)});
    CHECK(r.sigma.values == std::vector<Rational>{Rational(3), Rational(3), Rational(1)});
}

TEST_CASE("matches the cofactor-expansion oracle") {
    std::mt19937_64 gen(21);
    for (int round = 0; round < 30; ++round) {
        const std::size_t n = 1 + gen() % 5;
        const auto A = oracles::random_rational_matrix(gen, n);
        const auto r = faddeev_leverrier(A);
        const auto oracle = oracles::cofactor_charpoly(A);
        CHECK(r.coefficients == oracle);
    }
}

TEST_CASE("per-step trace identity holds on random rational matrices") {
    std::mt19937_64 gen(22);
    for (int round = 0; round < 25; ++round) {
        const std::size_t n = 1 + gen() % 8;
        const auto r = faddeev_leverrier(oracles::random_rational_matrix(gen, n));
        REQUIRE(r.trace_identity_ok.size() == n);
        for (const bool ok : r.trace_identity_ok) CHECK(ok);
    }
}

TEST_CASE("the matrix annihilates its characteristic polynomial exactly") {
    std::mt19937_64 gen(23);
    for (int round = 0; round < 20; ++round) {
        const std::size_t n = 1 + gen() % 5;
        const auto A = oracles::random_rational_matrix(gen, n);
        CHECK(cayley_hamilton_residual(A) == Rational(0));
    }
}

TEST_CASE("float mode tracks the exact result") {
    std::mt19937_64 gen(24);
    for (int round = 0; round < 20; ++round) {
        const std::size_t n = 1 + gen() % 5;
        const auto A = oracles::random_rational_matrix(gen, n);
        Matrix<double> Af(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                Af(i, j) = static_cast<double>(numerator(A(i, j))) /
                           static_cast<double>(denominator(A(i, j)));
            }
        }
        const auto exact = faddeev_leverrier(A);
        const auto approx = faddeev_leverrier(Af);
        CHECK(approx.trace_identity_ok.empty());
        for (std::size_t i = 0; i <= n; ++i) {
            const double want = static_cast<double>(numerator(exact.coefficients.coeffs[i])) /
                                static_cast<double>(denominator(exact.coefficients.coeffs[i]));
            CHECK(approx.coefficients.coeffs[i] == doctest::Approx(want).epsilon(1e-9));
        }
    }
}

TEST_CASE("float mode flags huge intermediate traces") {
    Matrix<double> A = Matrix<double>::diagonal({1e13, 1.0, 1.0});
    const auto r = faddeev_leverrier(A);
    CHECK(r.conditioning_warning);
    const auto ok = faddeev_leverrier(Matrix<double>::diagonal({3.0, 2.0, 1.0}));
    CHECK_FALSE(ok.conditioning_warning);
}

TEST_CASE("float overflow raises a runtime error") {
    Matrix<double> A = Matrix<double>::diagonal({1e308, 1e308});
    CHECK_THROWS_AS(faddeev_leverrier(A), std::runtime_error);
}

TEST_CASE("charpoly from traces agrees with the matrix recursion") {
    std::mt19937_64 gen(25);
    for (int round = 0; round < 20; ++round) {
        const std::size_t n = 1 + gen() % 6;
        const auto A = oracles::random_rational_matrix(gen, n);
        girard::symcore::PowerSums<Rational> traces;
        Matrix<Rational> power = A;
        traces.values.push_back(power.trace());
        for (std::size_t j = 2; j <= n; ++j) {
            power = power * A;
            traces.values.push_back(power.trace());
        }
        const auto via_traces = charpoly_from_traces(traces, n);
        const auto via_matrix = faddeev_leverrier(A);
        CHECK(via_traces.coefficients == via_matrix.coefficients);
        CHECK(via_traces.sigma.values == via_matrix.sigma.values);
        CHECK(via_traces.trace_sequence == via_matrix.trace_sequence);
    }
}

TEST_CASE("charpoly from traces, worked values") {
    girard::symcore::PowerSums<Rational> p1{{Rational(7), Rational(29)}};
    const auto r1 = charpoly_from_traces(p1, 2);
    CHECK(r1.sigma.values == std::vector<Rational>{Rational(7), Rational(10)});

    girard::symcore::PowerSums<Rational> p2{{Rational(2), Rational(2)}};
    const auto r2 = charpoly_from_traces(p2, 2);
    CHECK(r2.sigma.values == std::vector<Rational>{Rational(2), Rational(1)});
    // (X - 1)^2 = X^2 - 2X + 1
    CHECK(r2.coefficients.coeffs ==
          std::vector<Rational>{Rational(1), Rational(-2), Rational(1)});
}

TEST_CASE("traces of a diagonal matrix reproduce the recursion on it") {
    std::mt19937_64 gen(27);
    for (int round = 0; round < 20; ++round) {
        const std::size_t n = 1 + gen() % 6;
        const auto eigs = oracles::random_rational_vector(gen, n);
        const auto p = girard::symcore::evaluate_power_sums(eigs, n);
        const auto via_traces = charpoly_from_traces(p, n);
        const auto via_matrix = faddeev_leverrier(Matrix<Rational>::diagonal(eigs));
        CHECK(via_traces.coefficients == via_matrix.coefficients);
        CHECK(via_traces.sigma.values == via_matrix.sigma.values);
    }
}

TEST_CASE("float residual stays small relative to the power scale") {
    std::mt19937_64 gen(28);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Matrix<double> A(6);
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = 0; j < 6; ++j) A(i, j) = u(gen);
    }
    Matrix<double> power = A;
    for (int t = 1; t < 6; ++t) power = power * A;
    const double scale = power.max_magnitude();
    CHECK(cayley_hamilton_residual(A) <= 1e-9 * scale);
}

TEST_CASE("leading coefficient is exactly one in both modes") {
    std::mt19937_64 gen(29);
    const auto A = oracles::random_rational_matrix(gen, 4);
    CHECK(faddeev_leverrier(A).coefficients.coeffs.back() == Rational(1));
    Matrix<double> Af(4);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            Af(i, j) = static_cast<double>(numerator(A(i, j))) /
                       static_cast<double>(denominator(A(i, j)));
        }
    }
    CHECK(faddeev_leverrier(Af).coefficients.coeffs.back() == 1.0);
}

TEST_CASE("charpoly from traces needs enough traces") {
    girard::symcore::PowerSums<Rational> traces{{Rational(1), Rational(2)}};
    CHECK_THROWS_AS(charpoly_from_traces(traces, 3), std::invalid_argument);
    CHECK_THROWS_AS(charpoly_from_traces(traces, 0), std::invalid_argument);
}

TEST_CASE("determinant and inverse from the recursion") {
    const auto [det, inv] = determinant_and_inverse(worked_example());
    CHECK(det == Rational(10));
    REQUIRE(inv.has_value());
    CHECK((*inv)(0, 0) == Rational(2, 5));
    CHECK((*inv)(0, 1) == Rational(-1, 10));
    CHECK((*inv)(1, 0) == Rational(-1, 5));
    CHECK((*inv)(1, 1) == Rational(3, 10));

    // 1x1 and singular cases
    const auto [d1, i1] = determinant_and_inverse(Matrix<Rational>(1, {Rational(5)}));
    CHECK(d1 == Rational(5));
    REQUIRE(i1.has_value());
    CHECK((*i1)(0, 0) == Rational(1, 5));

    Matrix<Rational> singular(2, {Rational(1), Rational(2), Rational(2), Rational(4)});
    const auto [d0, i0] = determinant_and_inverse(singular);
    CHECK(d0 == Rational(0));
    CHECK_FALSE(i0.has_value());
}

TEST_CASE("random invertible matrices invert exactly") {
    std::mt19937_64 gen(26);
    int checked = 0;
    while (checked < 20) {
        const std::size_t n = 1 + gen() % 5;
        const auto A = oracles::random_rational_matrix(gen, n);
        const auto [det, inv] = determinant_and_inverse(A);
        if (!inv.has_value()) continue;
        CHECK(A * *inv == Matrix<Rational>::identity(n));
        CHECK(*inv * A == Matrix<Rational>::identity(n));
        ++checked;
    }
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(faddeev_leverrier(Matrix<Rational>()), std::invalid_argument);
    CHECK_THROWS_AS(determinant_and_inverse(Matrix<Rational>()), std::invalid_argument);
    Matrix<double> bad = Matrix<double>::diagonal({1.0, std::nan("")});
    CHECK_THROWS_AS(faddeev_leverrier(bad), std::runtime_error);
}

}  // TEST_SUITE
