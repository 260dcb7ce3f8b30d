#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "pvshort/numeric.hpp"
#include "pvshort/triglemma.hpp"

using namespace pvshort;

TEST_CASE("sigma hand values") {
    // alpha = 0: the harmonic partial sum.
    CHECK(sigma({1, 3, 0.0}) == Catch::Approx(11.0 / 6.0).margin(1e-12));
    // alpha = pi: the alternating sum 1/2 - 1/3 + ... - 1/9 = 641/2520.
    CHECK(sigma({2, 9, std::numbers::pi}) ==
          Catch::Approx(641.0 / 2520.0).margin(1e-10));
    // Empty window.
    CHECK(sigma({5, 4, 1.0}) == 0.0);
}

TEST_CASE("sigma matches a direct alternating oracle at alpha = pi") {
    double expect = 0.0;
    for (int n = 2; n <= 9; ++n) expect += ((n % 2 == 0) ? 1.0 : -1.0) / n;
    CHECK(sigma({2, 9, std::numbers::pi}) == Catch::Approx(expect).margin(1e-10));
}

TEST_CASE("sigma enforces the work cap and is bit-deterministic") {
    CHECK_THROWS_AS(sigma({1, 2e7, 0.5}), RangeError);
    const double a = sigma({3, 12345, 1.2345});
    const double b = sigma({3, 12345, 1.2345});
    CHECK(a == b);
}

TEST_CASE("split points at q = 10^6") {
    const auto s0 = split_points(1'000'000, 0.0, 0.05);
    CHECK(s0.mBar == 1);
    CHECK(s0.pBar == 65);
    CHECK(s0.vBar == 195);
    CHECK(s0.upperReal - static_cast<double>(s0.vBar) <= 4.0 * s0.mBar + 2.0);

    const auto s1 = split_points(1'000'000, 0.1, 0.05);
    CHECK(s1.mBar == 4);
    CHECK(s1.pBar == 21);
    CHECK(s1.vBar == 189);

    CHECK_THROWS_AS(split_points(1'000'000, 1.0 / 3.0, 0.05), RangeTooShortError);
    CHECK_THROWS_AS(split_points(10'000, 0.2, 0.05), RangeTooShortError);
}

TEST_CASE("split point properties on random valid inputs") {
    int tested = 0;
    for (int i = 0; tested < 1000 && i < 20000; ++i) {
        const std::uint64_t q = 1000 + splitmix64(i) % 9'000'000;
        const double gamma = (splitmix64(i + 12345) % 1000) / 3000.0;  // [0, 1/3)
        const double eps = 0.02 + (splitmix64(i + 777) % 100) / 1000.0;
        if (!split_precondition_holds(q, gamma, eps)) continue;
        const auto sp = split_points(q, gamma, eps);
        CHECK(sp.pBar % 2 == 1);
        CHECK(static_cast<double>(sp.vBar) <= sp.upperReal * (1 + 1e-12));
        CHECK(sp.upperReal - static_cast<double>(sp.vBar) <=
              4.0 * static_cast<double>(sp.mBar) + 2.0);
        CHECK(sp.vBar == sp.pBar * (2 * sp.mBar + 1));
        ++tested;
    }
    CHECK(tested == 1000);
}

TEST_CASE("eq4 floor hand cases") {
    const auto r = lower_bound_eq4_check(1, 3, std::numbers::pi, 100);
    CHECK(r.v == 9);
    CHECK(r.value == Catch::Approx(641.0 / 2520.0).margin(1e-10));
    CHECK(r.bound == Catch::Approx(-5.005).margin(1e-12));
    CHECK(r.holds);

    for (int j = 0; j < 16; ++j) {
        const double alpha = 2.0 * std::numbers::pi * j / 16.0;
        CHECK(lower_bound_eq4_check(1, 1, alpha, 50).holds);
    }
    CHECK_THROWS_AS(lower_bound_eq4_check(1, 2, 0.0, 100), DomainError);
    CHECK_THROWS_AS(lower_bound_eq4_check(0, 3, 0.0, 100), DomainError);
}

TEST_CASE("eq3 chain at q = 10^6") {
    const auto r0 = sigma_lower_bound_eq3(1'000'000, 0.1, 0.05, 0.0);
    CHECK(r0.value > 0.0);  // alpha = 0 makes every term positive
    CHECK(r0.holds);
    CHECK(r0.splitResidual <= 1e-10);

    for (int j = 0; j < 50; ++j) {
        const double alpha = 2.0 * std::numbers::pi * j / 50.0;
        const auto r = sigma_lower_bound_eq3(1'000'000, 0.0, 0.05, alpha);
        CHECK(r.holds);
        CHECK(r.splitResidual <= 1e-10);
    }
    CHECK_THROWS_AS(sigma_lower_bound_eq3(10'000, 0.2, 0.05, 1.0), RangeTooShortError);
}

TEST_CASE("lemma eq1 reports") {
    const auto zero = lemma_eq1(1'000'000, 0.0, 0.05, 0.0);
    CHECK(zero.lhs == 0.0);
    CHECK(zero.residual < 0.0);

    const auto r = lemma_eq1(1'000'000, 0.0, 0.05, 1.0);
    CHECK(r.mainTerm ==
          Catch::Approx((1.0 / 3.0 + 0.05) * std::log(1e6)).margin(1e-12));
    CHECK(r.residual <= 9.0);

    for (int j = 1; j < 40; ++j) {
        const double alpha = 2.0 * std::numbers::pi * j / 40.0;
        CHECK(lemma_eq1(100'000, 0.1, 0.05, alpha).lhs >= 0.0);
    }
}

TEST_CASE("lemma eq2 reports") {
    CHECK(lemma_eq2(1'000'000, 0.2, 0.05, 0.0).lhs == 0.0);

    const auto r = lemma_eq2(1'000'000, 0.2, 0.05, std::sqrt(2.0));
    CHECK(std::isfinite(r.residual));
    CHECK(r.mainTerm == Catch::Approx((2.0 / std::numbers::pi) * (1.0 / 3.0 - 0.2 + 0.05) *
                                      std::log(1e6))
                            .margin(1e-12));
    // |sin| <= 1 termwise: lhs is at most the harmonic sum over the window.
    const double harmonic =
        sigma({real_power(1'000'000, 0.2), real_power(1'000'000, 1.0 / 3.0 + 0.05), 0.0});
    CHECK(r.lhs <= harmonic + 1e-12);
}

TEST_CASE("eq2 follows from the eq3 budget along the Fourier route") {
    // lhs2 <= (2/pi) H + (2/pi)(8 + 1/(2q)) wherever the split holds.
    for (const std::uint64_t q : {100'000ULL, 1'000'000ULL}) {
        for (const double gamma : {0.0, 0.1}) {
            const double H =
                sigma({real_power(q, gamma), real_power(q, 1.0 / 3.0 + 0.05), 0.0});
            const double budget = (2.0 / std::numbers::pi) *
                                  (H + 8.0 + 1.0 / (2.0 * static_cast<double>(q)));
            for (int j = 0; j < 25; ++j) {
                const double alpha = 2.0 * std::numbers::pi * j / 25.0;
                CHECK(lemma_eq2(q, gamma, 0.05, alpha).lhs <= budget);
            }
        }
    }
}

TEST_CASE("absolute-sine Fourier expansion") {
    const auto at_half_pi = abs_sin_fourier(std::numbers::pi / 2.0, 10'000);
    CHECK(at_half_pi.truncationBound ==
          Catch::Approx((2.0 / std::numbers::pi) / 20'001.0).epsilon(1e-12));
    CHECK(std::abs(at_half_pi.approx - 1.0) <= 3.2e-5);
    CHECK(std::abs(at_half_pi.approx - 1.0) <= at_half_pi.truncationBound);

    const auto at_zero = abs_sin_fourier(0.0, 10'000);
    CHECK(std::abs(at_zero.approx) <= at_zero.truncationBound);

    for (int i = 0; i < 200; ++i) {
        const double theta = (static_cast<double>(splitmix64(i) % 100'000) / 100'000.0 - 0.5) * 30.0;
        const auto f = abs_sin_fourier(theta, 2000);
        CHECK(std::abs(f.approx - std::abs(std::sin(theta))) <= f.truncationBound);
    }
    CHECK_THROWS_AS(abs_sin_fourier(1.0, 0), DomainError);
}

TEST_CASE("telescoping partial sums are exact") {
    for (const std::uint64_t M : {1ULL, 10ULL, 1000ULL}) {
        CompensatedSum acc;
        for (std::uint64_t m = 1; m <= M; ++m)
            acc.add(1.0 / (4.0 * static_cast<double>(m) * static_cast<double>(m) - 1.0));
        const double closed = static_cast<double>(M) / (2.0 * static_cast<double>(M) + 1.0);
        CHECK(std::abs(acc.value() - closed) <= 1e-12);
    }
}
