#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"

#include "girard/symcore.hpp"

using girard::Rational;
using namespace girard::symcore;

TEST_SUITE("symcore") {

TEST_CASE("power sums match the direct per-element loop") {
    std::mt19937_64 gen(11);
    for (int round = 0; round < 50; ++round) {
        const std::size_t n = 1 + gen() % 10;
        const auto x = oracles::random_rational_vector(gen, n);
        const auto p = evaluate_power_sums(x, n);
        for (std::size_t j = 1; j <= n; ++j) {
            CHECK(p.values[j - 1] == oracles::direct_power_sum(x, j));
        }
    }
}

TEST_CASE("elementary values match subset enumeration up to n = 12") {
    std::mt19937_64 gen(12);
    for (std::size_t n = 1; n <= 12; ++n) {
        const auto x = oracles::random_rational_vector(gen, n);
        const auto e = evaluate_elementary(x, n);
        for (std::size_t k = 1; k <= n; ++k) {
            CHECK(e.values[k - 1] == oracles::subset_sigma(x, k));
        }
    }
}

TEST_CASE("sigma_k vanishes exactly above the variable count") {
    std::mt19937_64 gen(13);
    const auto x = oracles::random_rational_vector(gen, 4);
    const auto e = evaluate_elementary(x, 7);
    CHECK(e.var_count == 4);
    for (std::size_t k = 5; k <= 7; ++k) CHECK(e.values[k - 1] == Rational(0));
}

TEST_CASE("the two conversion directions are exact inverses") {
    std::mt19937_64 gen(14);
    for (int round = 0; round < 200; ++round) {
        const std::size_t n = 1 + gen() % 20;
        const auto x = oracles::random_rational_vector(gen, n);
        const auto p = evaluate_power_sums(x, n);
        const auto e = evaluate_elementary(x, n);

        const auto e_from_p = elementary_from_power_sums(p);
        CHECK(e_from_p.values == e.values);

        const auto p_from_e = power_sums_from_elementary(e, n);
        CHECK(p_from_e.values == p.values);
    }
}

TEST_CASE("worked conversion values") {
    // p = (7, 29)  ->  sigma = (7, 10)
    PowerSums<Rational> p{{Rational(7), Rational(29)}};
    const auto e = elementary_from_power_sums(p);
    CHECK(e.values == std::vector<Rational>{Rational(7), Rational(10)});

    // sigma = (2, 1), four power sums  ->  (2, 2, 2, 2)
    ElemSyms<Rational> sigma{{Rational(2), Rational(1)}, std::nullopt};
    const auto back = power_sums_from_elementary(sigma, 4);
    CHECK(back.values ==
          std::vector<Rational>{Rational(2), Rational(2), Rational(2), Rational(2)});
}

TEST_CASE("float-mode conversions roundtrip to close values") {
    std::mt19937_64 gen(15);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int round = 0; round < 50; ++round) {
        const std::size_t n = 1 + gen() % 8;
        std::vector<double> x(n);
        for (double& v : x) v = u(gen);
        const auto p = evaluate_power_sums(x, n);
        const auto e = elementary_from_power_sums(p);
        const auto p_back = power_sums_from_elementary(e, n);
        for (std::size_t j = 0; j < n; ++j) {
            CHECK(p_back.values[j] == doctest::Approx(p.values[j]).epsilon(1e-9));
        }
    }
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(evaluate_power_sums(std::vector<Rational>{}, 3), std::invalid_argument);
    CHECK_THROWS_AS(evaluate_power_sums(std::vector<Rational>{Rational(1)}, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(evaluate_elementary(std::vector<Rational>{}, 2), std::invalid_argument);
    CHECK_THROWS_AS(elementary_from_power_sums(PowerSums<Rational>{}), std::invalid_argument);
    CHECK_THROWS_AS(
        power_sums_from_elementary(ElemSyms<Rational>{{Rational(1)}, std::nullopt}, 0),
        std::invalid_argument);
    const std::vector<double> bad{1.0, std::nan("")};
    CHECK_THROWS_AS(evaluate_power_sums(bad, 2), std::invalid_argument);
}

TEST_CASE("normalized identity residual is exactly zero") {
    std::mt19937_64 gen(16);
    int checked = 0;
    while (checked < 100) {
        const std::size_t n = 1 + gen() % 10;
        const auto x = oracles::random_rational_vector(gen, n);
        const auto p = evaluate_power_sums(x, 1);
        if (p.values[0] == Rational(0)) continue;  // the identity needs S1 != 0
        const std::size_t k = 1 + gen() % n;
        CHECK(normalized_identity_residual(x, k) == Rational(0));
        ++checked;
    }
}

TEST_CASE("normalized identity rejects a zero first power sum") {
    const std::vector<Rational> x{Rational(1), Rational(-1)};
    CHECK_THROWS_AS(normalized_identity_residual(x, 2), std::domain_error);
}

TEST_CASE("limiting identity sides at small k") {
    const auto [l1, r1] = limiting_identity_sides(1);
    CHECK(l1 == Rational(1));
    CHECK(r1 == Rational(1));
    CHECK(l1 == r1);

    const auto [l2, r2] = limiting_identity_sides(2);
    CHECK(l2 == Rational(1));
    CHECK(r2 == Rational(-1, 3));
    CHECK(l2 != r2);

    const auto [l3, r3] = limiting_identity_sides(3);
    CHECK(l3 == Rational(1, 2));
    CHECK(r3 == Rational(7, 6));

    CHECK_THROWS_AS(limiting_identity_sides(0), std::invalid_argument);
}

}  // TEST_SUITE
