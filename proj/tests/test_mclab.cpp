#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"

#include "girard/mclab.hpp"
#include "girard/quadrature.hpp"
#include "girard/rng.hpp"

using namespace girard::mclab;

namespace {

MCConfig cfg(std::size_t n, std::size_t replicates, std::uint64_t seed, bool parallel = false) {
    MCConfig c;
    c.n = n;
    c.replicates = replicates;
    c.seed = seed;
    c.parallel = parallel;
    return c;
}

bool within_gate(const EstimateRecord& rec, double estimate, double truth) {
    return std::abs(estimate - truth) <= 5.0 * rec.stderr_ + 1e-12;
}

}  // namespace

TEST_SUITE("mclab") {

TEST_CASE("alpha = 1 collapses to exactly one") {
    const auto rec = estimate_power_ratio(1.0, cfg(100, 16, 42));
    CHECK(rec.mean == 1.0);
    CHECK(rec.stderr_ == 0.0);
    CHECK(rec.target == 1.0);
    CHECK(rec.abs_error == 0.0);
    CHECK(rec.median_of_means == 1.0);
    for (double v : rec.values) CHECK(v == 1.0);
}

TEST_CASE("k = 1 symmetric ratio is exactly one") {
    const auto rec = estimate_sym_ratio(1, cfg(50, 8, 3));
    CHECK(rec.mean == 1.0);
    CHECK(rec.stderr_ == 0.0);
    for (double v : rec.values) CHECK(v == 1.0);
}

TEST_CASE("equal exponents in the pair ratio are exactly one") {
    const auto rec = estimate_power_pair(2.5, 2.5, cfg(200, 8, 5));
    CHECK(rec.mean == 1.0);
    CHECK(rec.target == 1.0);
    CHECK(rec.stderr_ == 0.0);
}

TEST_CASE("identical generic numerator and denominator are exactly one") {
    const auto rec = estimate_generic_ratio(function_by_name("x"), function_by_name("x"),
                                            uniform01_distribution(), cfg(100, 8, 9));
    CHECK(rec.mean == 1.0);
    CHECK(rec.target == 1.0);
    CHECK(rec.abs_error == 0.0);
}

TEST_CASE("m = 1 trace ratio is exactly one") {
    const auto rec = estimate_trace_ratio(1, cfg(8, 8, 13));
    CHECK(rec.mean == 1.0);
    CHECK(rec.stderr_ == 0.0);
}

TEST_CASE("power ratio at n = 2 matches the two-dimensional integral") {
    // E[(x^2 + y^2)/(x + y)] over the unit square. Integrating out y by
    // symmetry gives 2 * Int_0^1 x^2 ln((1+x)/x) dx = (4/3) ln 2 - 1/3.
    const double truth = 4.0 * std::log(2.0) / 3.0 - 1.0 / 3.0;
    const double quad = girard::quadrature::integrate_1d(
        [](double x) { return 2.0 * x * x * std::log((1.0 + x) / x); }, 0.0, 1.0, 1e-9);
    CHECK(std::abs(quad - truth) < 1e-8);
    const auto rec = estimate_power_ratio(2.0, cfg(2, 4096, 2026));
    CHECK(within_gate(rec, rec.mean, truth));
    CHECK(rec.target == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("estimates approach their limiting constants") {
    SUBCASE("power ratio") {
        const auto rec = estimate_power_ratio(3.0, cfg(4000, 32, 7));
        CHECK(rec.target == doctest::Approx(0.5));
        CHECK(within_gate(rec, rec.mean, rec.target));
        CHECK(rec.heavy_tail == false);
        CHECK(rec.warnings.empty());
    }
    SUBCASE("symmetric-function ratio") {
        // The rescaled statistic self-averages: its replicate noise is
        // O(n^{-3/2}), far below its deterministic finite-n offset from the
        // limit. The mean therefore cannot sit within a few standard errors
        // of 1/k! at any seed; instead check it against the second-order
        // finite-sample expansion of the expected value,
        //   E = (1/k!) * (1 - 2k(k-1)/(3n) + O(1/n^2)),
        // which combines the k-subset count deficit C(n,k)/n^k with the
        // denominator-correlation correction, leaving an O(k^4/n^2) remainder.
        const std::size_t n = 10000;
        const std::size_t k = 3;
        const auto rec = estimate_sym_ratio(k, cfg(n, 16, 7));
        CHECK(rec.target == doctest::Approx(1.0 / 6.0));
        const double kk = static_cast<double>(k);
        const double nn = static_cast<double>(n);
        const double expansion = rec.target * (1.0 - 2.0 * kk * (kk - 1.0) / (3.0 * nn));
        const double allowance = 5.0 * rec.stderr_ + rec.target * std::pow(kk, 4) / (nn * nn);
        CHECK(std::abs(rec.mean - expansion) <= allowance);
        // The limit itself is still approached: the offset shrinks like 1/n.
        CHECK(rec.abs_error < 1e-4);
    }
    SUBCASE("trig ratio prefers the median of means") {
        const auto rec = estimate_trig_ratio(1.0, cfg(2000, 48, 7));
        CHECK(rec.target == doctest::Approx(std::acos(-1.0) / 4.0));
        CHECK(rec.heavy_tail);
        CHECK(!rec.warnings.empty());
        CHECK(within_gate(rec, rec.median_of_means, rec.target));
    }
    SUBCASE("geometric ratio and its diagnostics") {
        const auto rec = estimate_geometric_ratio(cfg(4000, 32, 11));
        CHECK(rec.target == doctest::Approx(2.0 / std::exp(1.0)));
        CHECK(within_gate(rec, rec.mean, rec.target));
        REQUIRE(rec.diagnostics.size() == 2);
        CHECK(rec.diagnostics[0].name == "numerator");
        CHECK(rec.diagnostics[0].target == doctest::Approx(1.0 / std::exp(1.0)));
        CHECK(std::abs(rec.diagnostics[0].mean - rec.diagnostics[0].target) <=
              5.0 * rec.diagnostics[0].stderr_ + 1e-12);
        CHECK(rec.diagnostics[1].name == "denominator");
        CHECK(rec.diagnostics[1].target == doctest::Approx(0.5));
        CHECK(std::abs(rec.diagnostics[1].mean - rec.diagnostics[1].target) <=
              5.0 * rec.diagnostics[1].stderr_ + 1e-12);
        CHECK(rec.diagnostics[0].values.size() == rec.values.size());
    }
    SUBCASE("power pair") {
        const auto rec = estimate_power_pair(2.0, 1.0, cfg(4000, 32, 7));
        CHECK(rec.target == doctest::Approx(2.0 / 3.0));
        CHECK(within_gate(rec, rec.mean, rec.target));
    }
    SUBCASE("generic ratio under a power density") {
        const auto rec = estimate_generic_ratio(function_by_name("pow:2"), function_by_name("one"),
                                                distribution_by_name("power:1"), cfg(4000, 32, 7));
        // E[x^2] under 2x dx on (0,1) is 1/2; E[1] is 1
        CHECK(rec.target == doctest::Approx(0.5));
        CHECK(within_gate(rec, rec.mean, rec.target));
    }
    SUBCASE("trace ratio") {
        const auto rec = estimate_trace_ratio(3, cfg(4000, 32, 7));
        CHECK(rec.target == doctest::Approx(0.5));
        CHECK(within_gate(rec, rec.mean, rec.target));
    }
}

TEST_CASE("shrinking error along an ascending dimension grid") {
    int improved = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto rows = convergence_table("power-ratio", {{"alpha", "2"}}, {100, 100000},
                                            cfg(1, 8, seed));
        REQUIRE(rows.size() == 2);
        if (rows[1].abs_error < rows[0].abs_error) ++improved;
    }
    CHECK(improved >= 19);
}

TEST_CASE("grid rows reproduce standalone runs") {
    const auto rows =
        convergence_table("power-ratio", {{"alpha", "2"}}, {10, 50}, cfg(1, 16, 99));
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].config.n == 10);
    CHECK(rows[1].config.n == 50);
    const auto standalone = estimate_power_ratio(2.0, cfg(50, 16, 99));
    REQUIRE(rows[1].values.size() == standalone.values.size());
    for (std::size_t i = 0; i < standalone.values.size(); ++i) {
        CHECK(rows[1].values[i] == standalone.values[i]);
    }
}

TEST_CASE("trace ratio matrix route reproduces the scalar recurrence bit for bit") {
    const std::size_t n = 8;
    const std::size_t m = 3;
    const std::uint64_t seed = 21;
    const auto rec = estimate_trace_ratio(m, cfg(n, 6, seed));
    REQUIRE(rec.values.size() == 6);
    for (std::size_t r = 0; r < 6; ++r) {
        girard::rng::CounterRng gen(
            girard::rng::substream_key(seed, kStreamTraceRatio, n, r));
        double tr1 = 0.0;
        double trm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double x = gen.next_uniform01();
            tr1 += x;
            double p = x;
            for (std::size_t t = 1; t < m; ++t) p = p * x;
            trm += p;
        }
        CHECK(rec.values[r] == trm / tr1);
    }
}

TEST_CASE("parallel scheduling never changes values") {
    const auto serial = estimate_power_ratio(2.0, cfg(500, 32, 17, false));
    const auto parallel = estimate_power_ratio(2.0, cfg(500, 32, 17, true));
    REQUIRE(serial.values.size() == parallel.values.size());
    for (std::size_t i = 0; i < serial.values.size(); ++i) {
        CHECK(serial.values[i] == parallel.values[i]);
    }
    CHECK(serial.mean == parallel.mean);
    CHECK(serial.median_of_means == parallel.median_of_means);

    const auto g1 = estimate_geometric_ratio(cfg(300, 48, 23, false));
    const auto g2 = estimate_geometric_ratio(cfg(300, 48, 23, true));
    for (std::size_t i = 0; i < g1.values.size(); ++i) CHECK(g1.values[i] == g2.values[i]);
    for (std::size_t d = 0; d < g1.diagnostics.size(); ++d) {
        for (std::size_t i = 0; i < g1.diagnostics[d].values.size(); ++i) {
            CHECK(g1.diagnostics[d].values[i] == g2.diagnostics[d].values[i]);
        }
    }
}

TEST_CASE("estimators draw from separated streams") {
    // same formula, different estimator: (sum x^2)/(sum x)
    const auto a = estimate_power_ratio(2.0, cfg(100, 8, 31));
    const auto b = estimate_power_pair(2.0, 1.0, cfg(100, 8, 31));
    bool any_different = false;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        if (a.values[i] != b.values[i]) any_different = true;
    }
    CHECK(any_different);
}

TEST_CASE("replicates are keyed by index, not draw order") {
    // rerunning with more replicates preserves the earlier ones
    const auto small = estimate_power_ratio(2.0, cfg(100, 4, 53));
    const auto large = estimate_power_ratio(2.0, cfg(100, 12, 53));
    for (std::size_t i = 0; i < 4; ++i) CHECK(small.values[i] == large.values[i]);
}

TEST_CASE("single replicate has zero standard error") {
    const auto rec = estimate_power_ratio(2.0, cfg(100, 1, 5));
    CHECK(rec.stderr_ == 0.0);
    CHECK(rec.median_of_means == rec.mean);
}

TEST_CASE("median of means tracks the mean for light tails") {
    const auto rec = estimate_power_ratio(2.0, cfg(1000, 64, 61));
    CHECK(std::abs(rec.median_of_means - rec.mean) < 10.0 * rec.stderr_ + 1e-12);
}

TEST_CASE("fractional exponents below one warn but still run") {
    const auto rec = estimate_power_ratio(0.5, cfg(1000, 16, 71));
    CHECK(!rec.warnings.empty());
    CHECK(rec.target == doctest::Approx(2.0 / 1.5));
}

TEST_CASE("negative exponents flag heavy tails") {
    const auto rec = estimate_power_pair(-0.5, 1.0, cfg(1000, 16, 73));
    CHECK(rec.heavy_tail);
    CHECK(!rec.warnings.empty());
    CHECK(rec.target == doctest::Approx(2.0 / 0.5));
}

TEST_CASE("configuration validation") {
    CHECK_THROWS_AS(estimate_power_ratio(2.0, cfg(0, 8, 1)), std::invalid_argument);
    CHECK_THROWS_AS(estimate_power_ratio(2.0, cfg(10, 0, 1)), std::invalid_argument);
    CHECK_THROWS_AS(estimate_power_ratio(0.0, cfg(10, 8, 1)), std::invalid_argument);
    CHECK_THROWS_AS(estimate_power_ratio(-1.0, cfg(10, 8, 1)), std::invalid_argument);
    CHECK_THROWS_AS(estimate_sym_ratio(0, cfg(10, 8, 1)), std::invalid_argument);
    CHECK_THROWS_AS(estimate_sym_ratio(11, cfg(10, 8, 1)), std::invalid_argument);
    CHECK_THROWS_AS(estimate_trig_ratio(-0.5, cfg(10, 8, 1)), std::invalid_argument);
    CHECK_THROWS_AS(estimate_trig_ratio(1.0, cfg(1, 8, 1)), std::domain_error);
    CHECK_THROWS_AS(estimate_power_pair(-1.0, 1.0, cfg(10, 8, 1)), std::invalid_argument);
    CHECK_THROWS_AS(estimate_power_pair(1.0, -1.5, cfg(10, 8, 1)), std::invalid_argument);
    CHECK_THROWS_AS(estimate_trace_ratio(0, cfg(10, 8, 1)), std::invalid_argument);
}

TEST_CASE("generic ratio rejects a vanishing denominator expectation") {
    NamedFunction centered{"centered", [](double x) { return x - 0.5; }};
    CHECK_THROWS_AS(estimate_generic_ratio(function_by_name("one"), centered,
                                           uniform01_distribution(), cfg(10, 8, 1)),
                    std::domain_error);
}

TEST_CASE("generic ratio rejects incomplete inputs") {
    NamedFunction broken{"broken", nullptr};
    CHECK_THROWS_AS(estimate_generic_ratio(broken, function_by_name("one"),
                                           uniform01_distribution(), cfg(10, 8, 1)),
                    std::invalid_argument);
    DistributionSpec no_sampler;
    no_sampler.name = "broken";
    CHECK_THROWS_AS(estimate_generic_ratio(function_by_name("x"), function_by_name("one"),
                                           no_sampler, cfg(10, 8, 1)),
                    std::invalid_argument);
}

TEST_CASE("dispatch by name") {
    const auto direct = estimate_power_ratio(2.0, cfg(100, 8, 19));
    const auto named = run_estimator("power-ratio", {{"alpha", "2"}}, cfg(100, 8, 19));
    CHECK(named.estimator == "power-ratio");
    for (std::size_t i = 0; i < direct.values.size(); ++i) {
        CHECK(named.values[i] == direct.values[i]);
    }

    const auto generic = run_estimator(
        "generic-ratio", {{"f", "pow:2"}, {"g", "one"}, {"dist", "power:1"}}, cfg(100, 8, 19));
    CHECK(generic.target == doctest::Approx(0.5));

    // dist defaults to the uniform distribution
    const auto defaulted = run_estimator("generic-ratio", {{"f", "x"}, {"g", "one"}},
                                         cfg(100, 8, 19));
    CHECK(defaulted.target == doctest::Approx(0.5));
}

TEST_CASE("dispatch errors") {
    CHECK_THROWS_WITH_AS(run_estimator("nope", {}, cfg(10, 8, 1)),
                         "unknown estimator: nope", std::invalid_argument);
    CHECK_THROWS_WITH_AS(run_estimator("power-ratio", {}, cfg(10, 8, 1)),
                         "missing parameter: alpha", std::invalid_argument);
    CHECK_THROWS_WITH_AS(run_estimator("geometric-ratio", {{"alpha", "2"}}, cfg(10, 8, 1)),
                         "unexpected parameter: alpha", std::invalid_argument);
    CHECK_THROWS_WITH_AS(run_estimator("power-ratio", {{"alpha", "abc"}}, cfg(10, 8, 1)),
                         "malformed value for parameter alpha: \"abc\"", std::invalid_argument);
    CHECK_THROWS_AS(run_estimator("sym-ratio", {{"k", "2.5"}}, cfg(10, 8, 1)),
                    std::invalid_argument);
}

TEST_CASE("distribution factory") {
    const auto p = power_distribution(2.0);
    CHECK(p.inverse_cdf(0.125) == doctest::Approx(0.5));
    const double total = girard::quadrature::integrate_1d(p.density, 0.0, 1.0, 1e-10);
    CHECK(total == doctest::Approx(1.0));

    const auto u = uniform01_distribution();
    CHECK(u.inverse_cdf(0.625) == 0.625);
    CHECK(u.density(0.3) == 1.0);

    CHECK(distribution_by_name("uniform01").name == "uniform01");
    CHECK(distribution_by_name("power:2").inverse_cdf(0.125) == doctest::Approx(0.5));
    CHECK_THROWS_AS(power_distribution(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(distribution_by_name("gaussian"), std::invalid_argument);
    CHECK_THROWS_AS(distribution_by_name("power:x"), std::invalid_argument);
}

TEST_CASE("function factory") {
    CHECK(function_by_name("one").eval(0.37) == 1.0);
    CHECK(function_by_name("x").eval(0.37) == 0.37);
    CHECK(function_by_name("pow:2").eval(3.0) == doctest::Approx(9.0));
    CHECK(function_by_name("sinpi").eval(0.5) == doctest::Approx(1.0));
    CHECK_THROWS_AS(function_by_name("cos"), std::invalid_argument);
    CHECK_THROWS_AS(function_by_name("pow:"), std::invalid_argument);
}

TEST_CASE("convergence table validation") {
    CHECK_THROWS_AS(convergence_table("power-ratio", {{"alpha", "2"}}, {}, cfg(1, 8, 1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(convergence_table("power-ratio", {{"alpha", "2"}}, {100, 100}, cfg(1, 8, 1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(convergence_table("power-ratio", {{"alpha", "2"}}, {100, 50}, cfg(1, 8, 1)),
                    std::invalid_argument);
}

TEST_CASE("parameters are recorded on the result") {
    const auto rec = estimate_power_ratio(2.0, cfg(100, 8, 1));
    CHECK(rec.estimator == "power-ratio");
    CHECK(rec.parameters.at("alpha") == "2");
    CHECK(rec.config.n == 100);
    CHECK(rec.config.replicates == 8);
    CHECK(rec.config.seed == 1);

    const auto gen = estimate_generic_ratio(function_by_name("x"), function_by_name("one"),
                                            distribution_by_name("power:1"), cfg(100, 8, 1));
    CHECK(gen.parameters.at("f") == "x");
    CHECK(gen.parameters.at("g") == "one");
    CHECK(gen.parameters.at("dist") == "power:1");
}

}  // TEST_SUITE
